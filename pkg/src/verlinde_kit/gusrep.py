"""Unital *-representations of the Verlinde ring by integer matrices.

A representation assigns to every alcove label k a d x d integer matrix
Pi_k, determined by the generator matrices through the fusion recursion
Pi_w Pi_j = sum over s of N_{wj}^s Pi_s.  Loading seeds the generators
(from a quiver's adjacency matrices or from explicit label matrices),
extension completes the assignment by exact integer division, and
validation checks the unit, star, homomorphism, and grading axioms.

Spectral multiplicities come from the idempotent trace formula
m_Pi(e^H) = (chi_hat_rho(H) / |T_l|) * sum_k conj(chi_hat_k(H)) tr Pi_k,
rounded under a validated tolerance; floating point appears nowhere else.
"""

from __future__ import annotations

import threading

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    InputError,
    NonIntegerEntry,
    NotGraded,
    SchemaError,
    Unreachable,
    ValidationFailure,
)
from .fusion import FusionRing, char_table, round_validated
from .graphs import GradedQuiver
from .torus import TorusElement


class USRep:
    """Integer-matrix representation of a fusion ring, possibly graded.

    grades is a tuple of center classes (one per basis vector) for the
    graded case, or None.  The extension cache maps alcove labels to
    int64 matrices and is completed lazily under a lock.
    """

    def __init__(self, ring: FusionRing, dim: int, seeds: dict, grades=None):
        self.ring = ring
        self.dim = dim
        self.grades = grades
        self._known = {k: np.asarray(m, dtype=np.int64) for k, m in seeds.items()}
        self._lock = threading.Lock()
        rho = ring.rho
        eye = np.eye(dim, dtype=np.int64)
        if rho in self._known:
            if not np.array_equal(self._known[rho], eye):
                raise ValidationFailure("unit label must carry the identity")
        self._known[rho] = eye
        self._seed_labels = tuple(self._known)

    @property
    def fund_matrices(self) -> dict:
        """Pi(chi of w + rho) for each fundamental weight w, wall labels zero."""
        level = self.ring.level
        rho = level.algebra.weyl_vector
        out = {}
        for j in range(1, level.algebra.rank + 1):
            w = level.algebra.fundamental_weight(j)
            shifted = tuple(a + b for a, b in zip(w, rho))
            label, sign = level.fold_affine(shifted)
            if label is None:
                out[w] = np.zeros((self.dim, self.dim), dtype=np.int64)
            else:
                out[w] = sign * extend_rep(self, label)
        return out

    def matrix(self, k) -> np.ndarray:
        return extend_rep(self, k)

    def complete(self, order=None) -> dict:
        """Extend to every alcove label; returns the full label -> matrix map."""
        with self._lock:
            self._complete_locked(order)
            return dict(self._known)

    def _complete_locked(self, order=None):
        basis = self.ring.basis if order is None else tuple(order)
        if len(self._known) >= len(self.ring.basis):
            return
        progress = True
        while progress:
            progress = False
            for target in basis:
                if target in self._known:
                    continue
                solved = self._solve_one(target)
                if solved is not None:
                    self._known[target] = solved
                    progress = True
        missing = [k for k in self.ring.basis if k not in self._known]
        if missing:
            raise Unreachable(
                f"extension cannot reach {missing[0]}: generators do not "
                f"generate the ring"
            )

    def _solve_one(self, target):
        # find a product w * j whose row is known except for the target
        for w in self._seed_labels:
            for j in tuple(self._known):
                row = self.ring.tensor.get((w, j))
                if row is None:
                    continue
                n = row.get(target, 0)
                if n == 0:
                    continue
                if any(s != target and s not in self._known for s in row):
                    continue
                num = self._known[w] @ self._known[j]
                for s, mult in row.items():
                    if s != target:
                        num = num - mult * self._known[s]
                if (num % n != 0).any():
                    raise NonIntegerEntry(
                        f"matrix for {target} is not integral: the generator "
                        f"matrices admit no representation extension"
                    )
                return num // n
        return None


def load_usrep(ring: FusionRing, source) -> USRep:
    """Build a USRep from a quiver document or a label -> matrix mapping.

    Quiver input must match the ring's algebra; its level field is
    advisory (the ring fixes the level, so deliberately mismatched
    fixtures can be loaded for falsification tests).
    """
    level = ring.level
    if isinstance(source, GradedQuiver) or (
        isinstance(source, dict) and "vertices" in source
    ):
        quiver = source if isinstance(source, GradedQuiver) else GradedQuiver(source)
        if (quiver.family, quiver.rank) != (
            level.algebra.family,
            level.algebra.rank,
        ):
            raise ValidationFailure(
                f"quiver is over {quiver.family}{quiver.rank}, ring over "
                f"{level.algebra.family}{level.algebra.rank}"
            )
        dim = quiver.size
        seeds = {}
        rho = level.algebra.weyl_vector
        for j in range(1, level.algebra.rank + 1):
            delta = np.array(quiver.delta(j), dtype=np.int64)
            shifted = tuple(
                a + b for a, b in zip(level.algebra.fundamental_weight(j), rho)
            )
            label, sign = level.fold_affine(shifted)
            if label is None:
                if delta.any():
                    raise ValidationFailure(
                        f"fundamental {j} folds onto a wall at this level, "
                        f"so its adjacency matrix must vanish"
                    )
                continue
            cand = sign * delta
            if label in seeds and not np.array_equal(seeds[label], cand):
                raise ValidationFailure(
                    f"two fundamentals fold onto {label} with conflicting "
                    f"matrices"
                )
            seeds[label] = cand
        return USRep(ring, dim, seeds, grades=quiver.grades)
    if isinstance(source, dict):
        dim = None
        seeds = {}
        for label, mat in source.items():
            k = level.algebra.check_weight(label)
            if k not in level.alcove_index:
                raise ValidationFailure(f"{k} is not an alcove label")
            arr = np.array(mat, dtype=np.int64)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise SchemaError(f"matrix for {k} is not square")
            if dim is None:
                dim = arr.shape[0]
            elif arr.shape[0] != dim:
                raise SchemaError("matrices have inconsistent dimensions")
            seeds[k] = arr
        if dim is None:
            raise SchemaError("no matrices supplied")
        return USRep(ring, dim, seeds)
    raise SchemaError(f"cannot load a representation from {type(source).__name__}")


def extend_rep(rep: USRep, k) -> np.ndarray:
    """Matrix of the alcove label k, extending the representation as needed."""
    k = rep.ring.level.algebra.check_weight(k)
    if k not in rep.ring.level.alcove_index:
        raise ValidationFailure(f"{k} is not an alcove label at this level")
    got = rep._known.get(k)
    if got is None:
        with rep._lock:
            rep._complete_locked()
            got = rep._known[k]
    return got


def regular_rep(ring: FusionRing) -> USRep:
    """The ring acting on itself: Pi_k[s, j] = N_{kj}^s, ring-graded."""
    seeds = {
        k: np.array(ring.regular_matrix(k), dtype=np.int64) for k in ring.basis
    }
    grades = tuple(ring.grades[a] for a in ring.basis)
    return USRep(ring, ring.dim, seeds, grades=grades)


def validate(rep: USRep) -> dict:
    """Axiom report: unit, star, homomorphism, grading; never raises."""
    checks = []

    def add(axiom, ok, detail=""):
        checks.append({"axiom": axiom, "ok": bool(ok), "detail": detail})

    try:
        matrices = rep.complete()
    except (NonIntegerEntry, Unreachable) as exc:
        add("integrality", False, str(exc))
        return {"ok": False, "checks": checks}
    add("integrality", True)
    ring = rep.ring
    eye = np.eye(rep.dim, dtype=np.int64)
    add("unit", np.array_equal(matrices[ring.rho], eye))
    star_bad = [
        k
        for k in ring.basis
        if not np.array_equal(matrices[k].T, matrices[ring.star[k]])
    ]
    add(
        "star",
        not star_bad,
        "" if not star_bad else f"transpose mismatch at {star_bad[0]}",
    )
    hom_bad = None
    for k in ring.basis:
        for j in ring.basis:
            lhs = matrices[k] @ matrices[j]
            rhs = np.zeros_like(lhs)
            for s, mult in ring.tensor[(k, j)].items():
                rhs = rhs + mult * matrices[s]
            if not np.array_equal(lhs, rhs):
                hom_bad = (k, j)
                break
        if hom_bad:
            break
    add(
        "homomorphism",
        hom_bad is None,
        "" if hom_bad is None else f"product rule fails at {hom_bad}",
    )
    if rep.grades is not None:
        center = ring.level.algebra.center
        grade_bad = None
        for k in ring.basis:
            shift = ring.grades[k]
            mat = matrices[k]
            for a in range(rep.dim):
                for b in range(rep.dim):
                    if mat[a, b] and rep.grades[a] != center.add(
                        rep.grades[b], shift
                    ):
                        grade_bad = (k, a, b)
                        break
                if grade_bad:
                    break
            if grade_bad:
                break
        add(
            "grading",
            grade_bad is None,
            "" if grade_bad is None else f"entry {grade_bad[1:]} of {grade_bad[0]}",
        )
    ok = all(c["ok"] for c in checks)
    return {"ok": ok, "checks": checks}


def check_quantum_dynkin(quiver, algebra, level: int, config: Config = DEFAULT):
    """Certify a quiver as a quantum Dynkin diagram over (algebra, level).

    algebra may be a LieAlgebra or a (family, rank) pair.  Returns
    (ok, certificate); never raises on bad input, the certificate carries
    the reason instead.
    """
    from .fusion import build_fusion_ring
    from .lie import build_algebra
    from .torus import build_level

    if isinstance(algebra, tuple):
        algebra = build_algebra(*algebra)

    certificate = {
        "ok": False,
        "natural": None,
        "simple": None,
        "graded": True,
        "reason": None,
        "report": None,
    }
    try:
        parsed = quiver if isinstance(quiver, GradedQuiver) else GradedQuiver(quiver)
        certificate["simple"] = parsed.connected()
        ring = build_fusion_ring(build_level(algebra, level, config), config)
        rep = load_usrep(ring, parsed)
        report = validate(rep)
        certificate["report"] = report
        if not report["ok"]:
            bad = [c["axiom"] for c in report["checks"] if not c["ok"]]
            certificate["reason"] = f"validation failed: {', '.join(bad)}"
            return False, certificate
        matrices = rep.complete()
        certificate["natural"] = all(
            (matrices[k] >= 0).all() for k in ring.basis
        )
        certificate["ok"] = True
        return True, certificate
    except (ValidationFailure, InputError) as exc:
        certificate["reason"] = str(exc)
        return False, certificate


class SpectrumTable:
    """Multiplicities over the spectrum domain, zero off the support."""

    def __init__(self, level, entries: dict, dim: int):
        self.level = level
        self.entries = dict(entries)
        self.dim = dim

    def value_at(self, elem: TorusElement) -> int:
        """m_Pi at any torus element: zero on mirrors, W-invariant off them."""
        if self.level.in_mirror(elem):
            return 0
        return self.entries.get(self.level.spec_canonical(elem), 0)

    def items(self):
        return self.entries.items()

    def __getitem__(self, elem):
        return self.entries[elem]


def spectrum(rep: USRep, config: Config = DEFAULT) -> SpectrumTable:
    """Multiplicity table via the idempotent trace formula."""
    matrices = rep.complete()
    level = rep.ring.level
    traces = np.array(
        [int(matrices[k].trace()) for k in level.alcove], dtype=complex
    )
    table = char_table(level)
    entries = {}
    total = 0
    scale = len(level.torus_elems)
    for elem in level.spec:
        i = level.torus_index[elem]
        value = table[0, i] * (np.conj(table[:, i]) * traces).sum() / scale
        m = round_validated(value, config.tolerance)
        if m < 0:
            raise ValidationFailure(f"negative multiplicity {m} at {elem!r}")
        if m:
            entries[elem] = m
        total += m
    if total != rep.dim:
        raise ValidationFailure(
            f"spectrum total {total} differs from dimension {rep.dim}"
        )
    return SpectrumTable(level, entries, rep.dim)


def grading_shift_check(rep: USRep, config: Config = DEFAULT) -> bool:
    """Invariance of m_Pi under shifts by the root-lattice dual T_R."""
    if rep.grades is None:
        raise NotGraded("grading shift check needs a graded representation")
    level = rep.ring.level
    table = spectrum(rep, config)
    t_root = level.subgroup_dual(level.algebra.cartan.tolist())
    for elem in level.spec:
        for shift in t_root:
            moved = elem.shift(shift.neg())
            if table.value_at(moved) != table.value_at(elem):
                return False
    return True
