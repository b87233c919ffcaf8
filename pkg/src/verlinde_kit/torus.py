"""Per-level finite structures.

For an algebra g and level l this module materializes the quantum Coxeter
number n_c, the lattices R_a (span of the Weyl orbit of the highest root)
and R_l = n_c*R_a, the weight torus W/R_l, its Fourier-dual torus T_l of
rational coroot coordinates, the mirror complement T_{l,0}, the alcove
C_l, and the spectrum domain T_{l,0}/W.

Torus elements carry exact rational coordinates h_j in [0,1) for
H = sum h_j H_{r_j}; the character pairing <k, H> is the exact rational
sum k.h mod 1, and character values are exp(2*pi*i*pairing) throughout.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    MirrorElement,
    TorusTooLarge,
    Unreachable,
    ValidationFailure,
)
from .intlat import IntMatrix, hnf, lattice_quotient
from .lie import LieAlgebra, weyl_group


class TorusElement:
    """Element e^{2 pi H} of the torus, H in simple-coroot coordinates mod 1."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        object.__setattr__(
            self, "coords", tuple(Fraction(c) % 1 for c in coords)
        )

    def __setattr__(self, name, value):
        raise AttributeError("TorusElement is immutable")

    def shift(self, other: "TorusElement") -> "TorusElement":
        return TorusElement(a + b for a, b in zip(self.coords, other.coords))

    def neg(self) -> "TorusElement":
        return TorusElement(-a for a in self.coords)

    def __eq__(self, other):
        return isinstance(other, TorusElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __repr__(self):
        return "TorusElement(%s)" % (", ".join(str(c) for c in self.coords),)


def pairing(k, elem: TorusElement) -> Fraction:
    """<k, H> mod 1 as an exact rational in [0, 1)."""
    if len(k) != len(elem.coords):
        raise ValidationFailure("weight/torus rank mismatch")
    return sum((int(a) * h for a, h in zip(k, elem.coords)), Fraction(0)) % 1


class LevelData:
    """All finite data of one (algebra, level) pair; immutable once built."""

    def __init__(self, algebra: LieAlgebra, level: int, config: Config = DEFAULT):
        if level < 0:
            raise ValidationFailure(f"level must be >= 0, got {level}")
        self.algebra = algebra
        self.level = int(level)
        self.n_c = algebra.dual_coxeter + self.level
        self.config = config

        orbit = algebra.weyl_orbit(algebra.highest_root)
        h, _ = hnf(IntMatrix(orbit))
        basis = [list(h.row(i)) for i in range(algebra.rank)]
        if any(all(x == 0 for x in row) for row in basis):
            raise Unreachable("long-root orbit does not span the weight space")
        self.Ra_gens = IntMatrix(basis)
        self.Rl_gens = IntMatrix([[self.n_c * x for x in row] for row in basis])

        self.weight_torus = lattice_quotient(algebra.rank, self.Rl_gens)
        if self.weight_torus.order > config.torus_cap:
            raise TorusTooLarge(
                f"|T_l| = {self.weight_torus.order} exceeds cap {config.torus_cap}"
            )
        self.weyl = weyl_group(algebra, cap=config.weyl_cap)
        self.alcove = self._enumerate_alcove()
        self._alcove_set = frozenset(self.alcove)
        self.alcove_index = {k: i for i, k in enumerate(self.alcove)}

        self.torus_elems = tuple(
            TorusElement(self.weight_torus.dual_vector(t))
            for t in self.weight_torus.elements()
        )
        assert len(set(self.torus_elems)) == self.weight_torus.order
        self.torus_index = {e: i for i, e in enumerate(self.torus_elems)}

        self.t_l0 = tuple(e for e in self.torus_elems if not self.in_mirror(e))
        self._canonical = {}
        spec = []
        for elem in self.t_l0:
            if elem in self._canonical:
                continue
            orbit_elems = {self.weyl_act(theta, elem) for theta in self.weyl}
            assert len(orbit_elems) == len(self.weyl)
            rep = min(orbit_elems)
            for member in orbit_elems:
                self._canonical[member] = rep
            spec.append(rep)
        self.spec = tuple(sorted(spec))
        self.spec_index = {e: i for i, e in enumerate(self.spec)}
        assert len(self.t_l0) == len(self.weyl) * len(self.spec)
        assert len(self.spec) == len(self.alcove)

        # integer phase table: coords as numerators over one denominator
        denom = 1
        for elem in self.torus_elems:
            for c in elem.coords:
                denom = denom * c.denominator // math.gcd(denom, c.denominator)
        self.phase_denominator = denom
        self.coord_numerators = np.array(
            [[int(c * denom) for c in e.coords] for e in self.torus_elems],
            dtype=np.int64,
        )
        self._cache = {}

    def _enumerate_alcove(self):
        n_c, comarks = self.n_c, self.algebra.comarks
        rank = self.algebra.rank
        out = []
        stack = [((), 0)]
        while stack:
            prefix, weight = stack.pop()
            if len(prefix) == rank:
                out.append(prefix)
                continue
            a = comarks[len(prefix)]
            remaining = sum(comarks[len(prefix) + 1 :])
            for x in range(1, n_c):
                total = weight + a * x
                if total + remaining > n_c - 1:
                    break
                stack.append((prefix + (x,), total))
        out.sort(key=lambda k: (self.algebra.level_pairing(k), k))
        return tuple(out)

    # -- pointwise structure ------------------------------------------------

    def pairing(self, k, elem: TorusElement) -> Fraction:
        return pairing(self.algebra.check_weight(k), elem)

    def in_torus(self, elem: TorusElement) -> bool:
        return all(
            pairing(row, elem) == 0 for row in self.Rl_gens.entries
        )

    def in_mirror(self, elem: TorusElement) -> bool:
        """True iff some positive root pairs integrally with H."""
        return any(
            pairing(r, elem) == 0 for r in self.algebra.positive_roots
        )

    def weyl_act(self, theta, elem: TorusElement) -> TorusElement:
        """Contragredient action: pairing(k, theta(H)) = pairing(theta^-1 k, H)."""
        inv = theta.inv_action
        n = self.algebra.rank
        return TorusElement(
            sum(inv[j][i] * elem.coords[j] for j in range(n)) for i in range(n)
        )

    def spec_canonical(self, elem: TorusElement) -> TorusElement:
        """Lexicographically smallest W-orbit representative in T_{l,0}."""
        rep = self._canonical.get(elem)
        if rep is None:
            if self.in_mirror(elem):
                raise MirrorElement(f"{elem!r} lies in a mirror")
            raise ValidationFailure(f"{elem!r} is not an element of T_l")
        return rep

    def subgroup_dual(self, a_gens) -> tuple:
        """T_A for the lattice A spanned by a_gens together with R_l.

        Returns the subgroup {e^H in T_l : pairing(a, H) = 0 mod 1 for all
        generators}, and checks |T_A| = |W/A| against the HNF determinant.
        """
        gens = [self.algebra.check_weight(a) for a in a_gens]
        out = tuple(
            e
            for e in self.torus_elems
            if all(pairing(a, e) == 0 for a in gens)
        )
        stacked = IntMatrix(list(gens) + self.Rl_gens.tolist())
        h, _ = hnf(stacked)
        index = 1
        for i in range(self.algebra.rank):
            index *= h[i, i] if h[i, i] else 0
        assert index and len(out) == abs(index), "dual subgroup size mismatch"
        return out

    # -- affine folding -------------------------------------------------

    def fold_affine(self, k):
        """Signed fold of a weight into the open alcove C_l.

        Returns (label, sign) with label in C_l, or (None, 0) if the orbit
        lies on a wall (finite or affine); well-defined on W/R_l classes.
        """
        vec = self.algebra.check_weight(k)
        r_plus = self.algebra.highest_root
        sign = 1
        for _ in range(1000):
            fold = self.algebra.dominant_fold(vec)
            if fold.on_wall:
                return None, 0
            vec = fold.dominant
            sign *= fold.sign
            lv = self.algebra.level_pairing(vec)
            if lv < self.n_c:
                return vec, sign
            if lv == self.n_c:
                return None, 0
            vec = tuple(x - (lv - self.n_c) * r for x, r in zip(vec, r_plus))
            sign = -sign
        raise Unreachable("affine fold failed to terminate")

    # -- weight torus indexing -------------------------------------------

    def torus_coords(self, k) -> tuple:
        """Class of the weight k in W_l = W/R_l (invariant factor coords)."""
        return self.weight_torus.to_coords(self.algebra.check_weight(k))

    def weight_classes(self):
        """All classes of W_l with a canonical weight representative each."""
        return tuple(
            (coords, self.weight_torus.from_coords(coords))
            for coords in self.weight_torus.elements()
        )


def build_level(algebra: LieAlgebra, level: int, config: Config = DEFAULT) -> LevelData:
    """Build (and cache) the LevelData for one (algebra, level) pair."""
    key = (algebra.family, algebra.rank, level, config)
    cached = _LEVELS.get(key)
    if cached is None:
        cached = _LEVELS[key] = LevelData(algebra, level, config)
    return cached


_LEVELS = {}
