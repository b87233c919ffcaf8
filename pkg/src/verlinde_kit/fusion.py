"""Verlinde ring at a root of unity.

The ring basis is the open alcove C_l of strictly dominant weights below
the level cutoff.  Two independent routes to the structure constants are
kept deliberately separate: fusion_kacwalton folds classical tensor
multiplicities through the affine Weyl group in exact integers (the
record path), while fusion_verlinde evaluates the character sum over the
non-mirror torus and rounds under a validated tolerance.  Tests hold the
two routes equal.

Anti-symmetric character values chi_hat_k(H) = sum over the Weyl group of
sign(theta) * exp(2 pi i <theta(k), H>) vanish on mirrors and satisfy
sum over T_l of chi_hat_k chi_hat_s-bar = |W| |T_l| delta_{ks} for k, s
in the alcove; everything here rests on that orthogonality.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .config import DEFAULT, Config
from .errors import MirrorElement, RoundingFailure, ValidationFailure
from .torus import LevelData, TorusElement, pairing


def round_validated(value: complex, tolerance: float) -> int:
    """Round to the nearest integer, failing loudly on a large residue."""
    nearest = round(value.real)
    residue = abs(value - nearest)
    if residue > tolerance:
        raise RoundingFailure(
            f"value {value!r} is {residue:.3e} from integer {nearest}"
        )
    return int(nearest)


def ell_char_value(level: LevelData, k, elem: TorusElement) -> complex:
    """chi_hat_k(e^H): the anti-symmetrized exponential sum over W."""
    k = level.algebra.check_weight(k)
    total = 0j
    for theta in level.weyl:
        p = pairing(theta.apply(k), elem)
        total += theta.sign * cmath.exp(2j * math.pi * float(p))
    return total


def weyl_denominator(level: LevelData, elem: TorusElement) -> complex:
    """chi_hat_rho(e^H) through the product over positive roots.

    The half-angle factors need one coherent lift of H, not per-root
    reductions, so pairings are taken against the canonical coordinates
    in [0, 1) without wrapping; shifting the lift by an integer vector
    is harmless because every label of 2*rho is even.
    """
    out = complex(1)
    for alpha in level.algebra.positive_roots:
        p = float(sum(a * c for a, c in zip(alpha, elem.coords)))
        out *= 2j * math.sin(math.pi * p)
    return out


def weyl_character_at(level: LevelData, k, elem: TorusElement) -> complex:
    """Character of the module with shifted highest weight k at e^H."""
    if level.in_mirror(elem):
        raise MirrorElement("character ratio undefined on a mirror")
    return ell_char_value(level, k, elem) / ell_char_value(
        level, level.algebra.weyl_vector, elem
    )


def char_table(level: LevelData) -> np.ndarray:
    """Complex matrix X[a, t] = chi_hat of alcove label a at torus element t.

    Phases come from one shared table of roots of unity indexed by exact
    integer numerators, so no accumulation error enters the exponents.
    """
    cached = level._cache.get("char_table")
    if cached is not None:
        return cached
    big_l = level.phase_denominator
    roots = np.exp(2j * np.pi * np.arange(big_l) / big_l)
    table = np.zeros((len(level.alcove), len(level.torus_elems)), dtype=complex)
    for a, k in enumerate(level.alcove):
        for theta in level.weyl:
            v = np.array(theta.apply(k), dtype=np.int64)
            nums = (level.coord_numerators @ v) % big_l
            table[a] += theta.sign * roots[nums]
    level._cache["char_table"] = table
    return table


def _nonmirror_indices(level: LevelData) -> np.ndarray:
    cached = level._cache.get("t0_idx")
    if cached is None:
        cached = np.array(
            [level.torus_index[e] for e in level.t_l0], dtype=np.intp
        )
        level._cache["t0_idx"] = cached
    return cached


def _chunked_sum(values: np.ndarray, parallelism: int) -> complex:
    """Deterministic chunked reduction, threaded when parallelism > 1."""
    if parallelism <= 1 or values.size < 2 * parallelism:
        return complex(values.sum())
    chunks = np.array_split(values, parallelism)
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        partials = list(pool.map(lambda c: complex(c.sum()), chunks))
    return sum(partials, complex(0))


def _alcove_index(level: LevelData, k) -> int:
    k = level.algebra.check_weight(k)
    idx = level.alcove_index.get(k)
    if idx is None:
        raise ValidationFailure(f"{k} is not an alcove label at this level")
    return idx


def fusion_verlinde(
    level: LevelData, k, j, s, config: Config = DEFAULT
) -> int:
    """Structure constant N_{kj}^s from the torus character sum."""
    ik, ij, isx = (_alcove_index(level, x) for x in (k, j, s))
    table = char_table(level)
    t0 = _nonmirror_indices(level)
    terms = (
        table[ik, t0]
        * table[ij, t0]
        * np.conj(table[isx, t0])
        / table[0, t0]
    )
    total = _chunked_sum(terms, config.parallelism)
    scale = len(level.weyl) * len(level.torus_elems)
    return round_validated(total / scale, config.tolerance)


def fusion_kacwalton(level: LevelData, k, j, s, config: Config = DEFAULT) -> int:
    """Structure constant N_{kj}^s by affine folding, exact integers."""
    _alcove_index(level, s)
    return _kacwalton_row(level, k, j, config).get(
        level.algebra.check_weight(s), 0
    )


def _kacwalton_row(level: LevelData, k, j, config: Config = DEFAULT) -> dict:
    """All products of k and j: classical Klimyk shifts, affine folded."""
    ck = ("kw", k, j)
    cached = level._cache.get(ck)
    if cached is not None:
        return cached
    _alcove_index(level, k)
    _alcove_index(level, j)
    alg = level.algebra
    rho = alg.weyl_vector
    lo = tuple(a - b for a, b in zip(j, rho))
    hi = k
    if alg.weyl_dim(lo) > alg.weyl_dim(tuple(a - b for a, b in zip(k, rho))):
        lo = tuple(a - b for a, b in zip(k, rho))
        hi = j
    out = {}
    for mu, m in alg.weight_system(lo, cap=config.weight_cap):
        label, sign = level.fold_affine(tuple(a + b for a, b in zip(hi, mu)))
        if label is None:
            continue
        out[label] = out.get(label, 0) + sign * m
    row = {s: n for s, n in out.items() if n != 0}
    assert all(n > 0 for n in row.values())
    level._cache[ck] = row
    return row


def involution(level: LevelData, k) -> tuple:
    """Dual label k* = -w_0(k); star axiom partner under transposition."""
    k = level.algebra.check_weight(k)
    _alcove_index(level, k)
    fold = level.algebra.dominant_fold(tuple(-x for x in k))
    assert not fold.on_wall
    return fold.dominant


def grading(level: LevelData, k) -> tuple:
    """Center class of the unshifted weight k - rho."""
    k = level.algebra.check_weight(k)
    diff = tuple(a - b for a, b in zip(k, level.algebra.weyl_vector))
    return level.algebra.center.to_coords(diff)


class FusionRing:
    """The full Verlinde ring: basis, structure tensor, star, grading.

    The tensor is built once through the exact folding route; the unit,
    star, and grading axioms are checked during construction.
    """

    def __init__(self, level: LevelData, config: Config = DEFAULT):
        self.level = level
        self.config = config
        self.basis = level.alcove
        self.index = level.alcove_index
        self.rho = self.basis[0]
        assert self.rho == level.algebra.weyl_vector
        self.star = {k: involution(level, k) for k in self.basis}
        self.grades = {k: grading(level, k) for k in self.basis}
        self.tensor = {}
        for a, k in enumerate(self.basis):
            for j in self.basis[a:]:
                row = _kacwalton_row(level, k, j, config)
                self.tensor[(k, j)] = row
                self.tensor[(j, k)] = row
        self._check_axioms()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def N(self, k, j, s) -> int:
        return self.multiply(k, j).get(self.level.algebra.check_weight(s), 0)

    def multiply(self, k, j) -> dict:
        k = self.level.algebra.check_weight(k)
        j = self.level.algebra.check_weight(j)
        row = self.tensor.get((k, j))
        if row is None:
            raise ValidationFailure(f"({k}, {j}) outside the alcove basis")
        return dict(row)

    def regular_matrix(self, k) -> list:
        """Matrix of multiplication by k: entry [a][b] = N_{k, b}^{basis a}."""
        cols = [self.multiply(k, b) for b in self.basis]
        return [[col.get(a, 0) for col in cols] for a in self.basis]

    def _check_axioms(self):
        center = self.level.algebra.center
        for j in self.basis:
            assert self.multiply(self.rho, j) == {j: 1}, "unit axiom"
        for k in self.basis:
            for j in self.basis:
                row = self.tensor[(k, j)]
                assert row.get(self.rho, 0) == (1 if j == self.star[k] else 0), (
                    "star axiom"
                )
                expect = center.add(self.grades[k], self.grades[j])
                for s in row:
                    assert self.grades[s] == expect, "grading axiom"


def build_fusion_ring(level: LevelData, config: Config = DEFAULT) -> FusionRing:
    """Build (and cache per level) the Verlinde ring."""
    key = ("ring", config)
    ring = level._cache.get(key)
    if ring is None:
        ring = level._cache[key] = FusionRing(level, config)
    return ring
