"""Simple Lie algebra data in Dynkin-label coordinates.

Weights are plain integer tuples holding coordinates in the
fundamental-weight basis {w_j}; the invariant bilinear form is a rational
matrix (symmetrized inverse Cartan), normalized so the highest root has
squared length 2.  Nothing in this module leaves exact arithmetic.

Conventions
-----------
Cartan matrix entries are A[i][j] = <r_i, H_{r_j}>, so the Dynkin labels
of the simple root r_i form the i-th row of A, and the simple reflection
acts on labels by s_j(k) = k - k_j * row_j(A).  Fundamental weights are
indexed 1..rank in every public surface, matching the w_j notation.
"""

from __future__ import annotations

import functools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .config import DEFAULT
from .errors import (
    CapExceeded,
    DimensionMismatch,
    GroupTooLarge,
    InvalidType,
)
from .intlat import IntMatrix, lattice_quotient

Weight = tuple  # integer Dynkin labels, length = rank

_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")


def _chain_edges(rank):
    return [(i, i + 1) for i in range(rank - 1)]


def _cartan_entries(family: str, rank: int):
    """Cartan matrix rows for the given simple type (Bourbaki numbering)."""
    if family == "A" and rank >= 1:
        single, double = _chain_edges(rank), []
    elif family == "B" and rank >= 2:
        # r_rank is the short root: A[rank-2][rank-1] = -2
        single, double = _chain_edges(rank - 1), [(rank - 2, rank - 1)]
    elif family == "C" and rank >= 2:
        # r_rank is the long root: A[rank-1][rank-2] = -2
        single, double = _chain_edges(rank - 1), [(rank - 1, rank - 2)]
    elif family == "D" and rank >= 4:
        single, double = _chain_edges(rank - 1) + [(rank - 3, rank - 1)], []
    elif family == "E" and rank in (6, 7, 8):
        single = [(0, 2)] + [(i, i + 1) for i in range(2, rank - 1)] + [(1, 3)]
        double = []
    elif family == "F" and rank == 4:
        single, double = [(0, 1), (2, 3)], [(1, 2)]
    elif family == "G" and rank == 2:
        # row 0 is the short root: A[1][0] = -3
        a = [[2, -1], [-3, 2]]
        return a
    else:
        raise InvalidType(f"({family}, {rank}) is not a simple type")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in single:
        a[i][j] = a[j][i] = -1
    for i, j in double:
        # double bond: the root at index j is the shorter one
        a[i][j] = -2
        a[j][i] = -1
    return a


def apply_matrix(mat, vec) -> Weight:
    return tuple(sum(m * v for m, v in zip(row, vec)) for row in mat)


@dataclass(frozen=True)
class WeylElement:
    """One Weyl group element: reduced word, sign, and its action on labels."""

    word: tuple
    sign: int
    action: tuple
    inv_action: tuple

    def __hash__(self):
        return hash(self.action)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.action == other.action

    def apply(self, k: Weight) -> Weight:
        return apply_matrix(self.action, k)

    def apply_inverse(self, k: Weight) -> Weight:
        return apply_matrix(self.inv_action, k)


class FoldResult(NamedTuple):
    dominant: Weight
    sign: int
    on_wall: bool
    word: tuple


class WeightSystem:
    """Weight diagram of an irreducible module: weight -> multiplicity."""

    __slots__ = ("highest", "entries", "dimension")

    def __init__(self, highest: Weight, entries: dict):
        self.highest = highest
        self.entries = entries
        self.dimension = sum(entries.values())

    def __iter__(self):
        return iter(self.entries.items())

    def __len__(self):
        return len(self.entries)


class LieAlgebra:
    """Root-system data for one simple type.

    Immutable after construction; built through :func:`build_algebra`.
    """

    def __init__(self, family: str, rank: int):
        if family not in _FAMILIES or rank < 1:
            raise InvalidType(f"({family}, {rank}) is not a simple type")
        self.family = family
        self.rank = rank
        self.cartan = IntMatrix(_cartan_entries(family, rank))
        rows = self.cartan.entries
        self.simple_root_labels = rows
        # reflection s_j on label vectors, as a matrix
        self.reflections = tuple(
            tuple(
                tuple((1 if i == m else 0) - (rows[j][i] if m == j else 0) for m in range(rank))
                for i in range(rank)
            )
            for j in range(rank)
        )
        self._inv_cartan = self._fraction_inverse([list(r) for r in rows])
        self._inv_cartan_t = tuple(tuple(self._inv_cartan[j][i] for j in range(rank)) for i in range(rank))
        self.symmetrizer = self._symmetrizer()
        self.positive_roots = self._positive_roots()
        coeffs = [self._root_coefficients(r) for r in self.positive_roots]
        heights = [sum(c) for c in coeffs]
        self.root_heights = tuple(heights)
        top = max(range(len(heights)), key=lambda i: heights[i])
        assert heights.count(heights[top]) == 1
        self.highest_root = self.positive_roots[top]
        # normalize the form so <r_+, r_+> = 2
        norm = self._inner_with(self.symmetrizer, self.highest_root, self.highest_root)
        self.symmetrizer = tuple(d * Fraction(2) / norm for d in self.symmetrizer)
        self.form = tuple(
            tuple(self._inv_cartan[i][j] * self.symmetrizer[j] for j in range(rank))
            for i in range(rank)
        )
        self.marks = tuple(coeffs[top])
        comarks = [a * d for a, d in zip(self.marks, self.symmetrizer)]
        assert all(c.denominator == 1 for c in comarks)
        self.comarks = tuple(int(c) for c in comarks)
        self.coxeter_number = 1 + sum(self.marks)
        self.dual_coxeter = 1 + sum(self.comarks)
        self.weyl_vector = tuple(1 for _ in range(rank))
        self.center = lattice_quotient(rank, self.cartan)
        self.n_z = self.center.order
        assert 2 * len(self.positive_roots) == self.coxeter_number * rank
        self._weight_systems = {}
        self._weyl_elements = None

    # -- construction helpers -------------------------------------------

    @staticmethod
    def _fraction_inverse(rows):
        n = len(rows)
        aug = [[Fraction(x) for x in rows[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(i for i in range(col, n) if aug[i][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            scale = aug[col][col]
            aug[col] = [x / scale for x in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
        return tuple(tuple(row[n:]) for row in aug)

    def _symmetrizer(self):
        # solve A_ij d_j = A_ji d_i over the Dynkin graph (provisional scale)
        a = self.cartan.entries
        d = [None] * self.rank
        d[0] = Fraction(1)
        queue = deque([0])
        while queue:
            i = queue.popleft()
            for j in range(self.rank):
                if j != i and a[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(a[j][i], a[i][j])
                    queue.append(j)
        assert all(x is not None and x > 0 for x in d)
        return tuple(d)

    def _inner_with(self, symmetrizer, x, y):
        total = Fraction(0)
        for i in range(self.rank):
            for j in range(self.rank):
                total += x[i] * self._inv_cartan[i][j] * symmetrizer[j] * y[j]
        return total

    def _positive_roots(self):
        seen = set(tuple(r) for r in self.simple_root_labels)
        queue = deque(seen)
        while queue:
            r = queue.popleft()
            for refl in self.reflections:
                img = apply_matrix(refl, r)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        positive = []
        for root in seen:
            coeffs = self._root_coefficients(root)
            if all(c >= 0 for c in coeffs):
                positive.append((sum(coeffs), root))
        positive.sort()
        return tuple(root for _h, root in positive)

    def _root_coefficients(self, labels):
        coeffs = [sum(row[j] * labels[j] for j in range(self.rank)) for row in self._inv_cartan_t]
        assert all(c.denominator == 1 for c in coeffs)
        return tuple(int(c) for c in coeffs)

    # -- basic weight arithmetic -----------------------------------------

    def check_weight(self, k) -> Weight:
        if len(k) != self.rank:
            raise DimensionMismatch(f"weight length {len(k)} != rank {self.rank}")
        return tuple(int(x) for x in k)

    def inner(self, a, b) -> Fraction:
        """Invariant bilinear form <a, b>, exact rational."""
        a = self.check_weight(a)
        b = self.check_weight(b)
        return sum(
            (a[i] * self.form[i][j] * b[j] for i in range(self.rank) for j in range(self.rank)),
            Fraction(0),
        )

    def coroot_pairing(self, k, j: int) -> int:
        """<k, H_{r_j}> for the j-th simple coroot, j in 1..rank."""
        k = self.check_weight(k)
        if not 1 <= j <= self.rank:
            raise DimensionMismatch(f"coroot index {j} outside 1..{self.rank}")
        return k[j - 1]

    def fundamental_weight(self, j: int) -> Weight:
        if not 1 <= j <= self.rank:
            raise DimensionMismatch(f"fundamental index {j} outside 1..{self.rank}")
        return tuple(1 if i == j - 1 else 0 for i in range(self.rank))

    @property
    def fundamental_weights(self):
        return tuple(self.fundamental_weight(j) for j in range(1, self.rank + 1))

    def level_pairing(self, k) -> int:
        """<k, H_{r_+}> = sum of comarks times labels."""
        k = self.check_weight(k)
        return sum(a * x for a, x in zip(self.comarks, k))

    @property
    def simply_laced(self) -> bool:
        return all(d == 1 for d in self.symmetrizer)

    # -- Weyl group -------------------------------------------------------

    def dominant_fold(self, k) -> FoldResult:
        """Fold k into the dominant chamber by simple reflections.

        Returns (dominant, sign, on_wall, word); applying the reflections
        in word order to k reproduces dominant exactly.
        """
        vec = self.check_weight(k)
        sign = 1
        word = []
        while True:
            j = next((i for i, x in enumerate(vec) if x < 0), None)
            if j is None:
                break
            vec = tuple(x - vec[j] * r for x, r in zip(vec, self.simple_root_labels[j]))
            sign = -sign
            word.append(j + 1)
        return FoldResult(vec, sign, 0 in vec, tuple(word))

    def weyl_orbit(self, k) -> tuple:
        """Full W-orbit of a weight, by BFS over simple reflections."""
        start = self.check_weight(k)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for refl in self.reflections:
                img = apply_matrix(refl, v)
                if img not in seen:
                    seen.add(img)
                    queue.append(img)
        return tuple(sorted(seen))

    # -- weight systems (Freudenthal) --------------------------------------

    def _in_hull(self, highest, mu) -> bool:
        dom = self.dominant_fold(mu).dominant
        diff = tuple(h - m for h, m in zip(highest, dom))
        return all(c >= 0 for c in self._root_coefficients_rational(diff))

    def _root_coefficients_rational(self, labels):
        return tuple(
            sum(row[j] * labels[j] for j in range(self.rank)) for row in self._inv_cartan_t
        )

    def weight_system(self, k, cap: int | None = None) -> WeightSystem:
        """Complete weight diagram of V_k with Freudenthal multiplicities."""
        k = self.check_weight(k)
        if any(x < 0 for x in k):
            raise DimensionMismatch(f"weight_system needs a dominant weight, got {k}")
        if k in self._weight_systems:
            return self._weight_systems[k]
        cap = cap if cap is not None else DEFAULT.weight_cap
        support = {k}
        queue = deque([k])
        while queue:
            mu = queue.popleft()
            for row in self.simple_root_labels:
                nu = tuple(m - r for m, r in zip(mu, row))
                if nu not in support and self._in_hull(k, nu):
                    support.add(nu)
                    queue.append(nu)
                    if len(support) > cap:
                        raise CapExceeded(f"weight diagram exceeds cap {cap}")
        rho = self.weyl_vector
        k_rho = tuple(a + b for a, b in zip(k, rho))
        norm_top = self.inner(k_rho, k_rho)
        dominants = sorted(
            (mu for mu in support if all(x >= 0 for x in mu)),
            key=lambda mu: sum(self._root_coefficients(tuple(a - b for a, b in zip(k, mu)))),
        )
        mult = {k: 1}
        for mu in dominants:
            if mu == k:
                continue
            total = Fraction(0)
            for alpha in self.positive_roots:
                t = 1
                while True:
                    shifted = tuple(m + t * a for m, a in zip(mu, alpha))
                    if not self._in_hull(k, shifted):
                        break
                    m_up = mult.get(self.dominant_fold(shifted).dominant, 0)
                    if m_up:
                        total += m_up * self.inner(shifted, alpha)
                    t += 1
            mu_rho = tuple(a + b for a, b in zip(mu, rho))
            denom = norm_top - self.inner(mu_rho, mu_rho)
            assert denom > 0
            value = 2 * total / denom
            assert value.denominator == 1
            mult[mu] = int(value)
        entries = {}
        for mu, m in mult.items():
            for nu in self.weyl_orbit(mu):
                entries[nu] = m
        assert set(entries) == support
        system = WeightSystem(k, entries)
        assert system.dimension == self.weyl_dim(k)
        self._weight_systems[k] = system
        return system

    def weyl_dim(self, k) -> int:
        """Weyl dimension formula, exact."""
        k = self.check_weight(k)
        rho = self.weyl_vector
        num = Fraction(1)
        for alpha in self.positive_roots:
            k_rho = tuple(a + b for a, b in zip(k, rho))
            num *= self.inner(k_rho, alpha) / self.inner(rho, alpha)
        assert num.denominator == 1
        return int(num)

    # -- classical tensor coefficients -------------------------------------

    def classical_fusion(self, j, k, cap: int | None = None) -> dict:
        """Tensor product multiplicities N_{j,k}^s for dominant j, k.

        Klimyk's rule over the weight diagram of the smaller factor.
        """
        j = self.check_weight(j)
        k = self.check_weight(k)
        if self.weyl_dim(k) > self.weyl_dim(j):
            j, k = k, j
        rho = self.weyl_vector
        out = {}
        for mu, m in self.weight_system(k, cap=cap):
            shifted = tuple(a + b + r for a, b, r in zip(j, mu, rho))
            fold = self.dominant_fold(shifted)
            if fold.on_wall:
                continue
            s = tuple(x - r for x, r in zip(fold.dominant, rho))
            out[s] = out.get(s, 0) + fold.sign * m
        result = {s: n for s, n in out.items() if n != 0}
        assert all(n > 0 for n in result.values())
        return result


@functools.lru_cache(maxsize=None)
def build_algebra(family: str, rank: int) -> LieAlgebra:
    """Construct (and cache) the simple Lie algebra of the given type."""
    return LieAlgebra(family, int(rank))


def weyl_group(algebra: LieAlgebra, cap: int | None = None):
    """Full Weyl group enumeration with signs, BFS over generators.

    Raises GroupTooLarge when the group exceeds cap (default from config).
    """
    cap = cap if cap is not None else DEFAULT.weyl_cap
    if algebra._weyl_elements is not None:
        if len(algebra._weyl_elements) > cap:
            raise GroupTooLarge(f"|W| = {len(algebra._weyl_elements)} exceeds cap {cap}")
        return algebra._weyl_elements
    n = algebra.rank
    identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    start = WeylElement(word=(), sign=1, action=identity, inv_action=identity)
    seen = {identity: start}
    queue = deque([start])
    while queue:
        g = queue.popleft()
        for j, refl in enumerate(algebra.reflections):
            action = tuple(apply_matrix(refl, col) for col in zip(*g.action))
            action = tuple(zip(*action))
            if action in seen:
                continue
            inv_action = tuple(
                tuple(
                    sum(g.inv_action[r][m] * refl[m][c] for m in range(n))
                    for c in range(n)
                )
                for r in range(n)
            )
            elem = WeylElement(
                word=(j + 1,) + g.word,
                sign=-g.sign,
                action=action,
                inv_action=inv_action,
            )
            seen[action] = elem
            queue.append(elem)
            if len(seen) > cap:
                raise GroupTooLarge(f"Weyl group exceeds cap {cap}")
    elements = sorted(seen.values(), key=lambda e: (len(e.word), e.word))
    algebra._weyl_elements = tuple(elements)
    return algebra._weyl_elements
