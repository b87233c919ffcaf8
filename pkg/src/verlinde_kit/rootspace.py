"""Quantum root spaces, quantum roots, translations, Coxeter exponents.

The quantum root space H of a representation lives inside functions from
the weight torus W_l to the representation space.  Everything of record
here is exact: the projection of a delta function has coefficients
M_m v / |T_l| where M_m = sum over theta of sign(theta) Pi(chi at the
affine fold of m + theta(rho)) is an integer matrix, so inner products
are Fractions and quantum roots are integer coefficient tensors with an
implied 1/sqrt(|T_l|).

The closed-form multiplicity theorems are the record route; the explicit
rational kernel of the difference operators (build_root_space) is a
deliberately independent oracle kept behind a size cap.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .config import DEFAULT, Config
from .errors import (
    CapExceeded,
    NonIntegral,
    NotADE,
    NotGraded,
    NotIntermediate,
    ValidationFailure,
)
from .fusion import build_fusion_ring, round_validated
from .gusrep import USRep, load_usrep, spectrum
from .torus import TorusElement, pairing


def _class_order(level):
    return tuple(level.weight_torus.elements())


def m_matrices(rep: USRep, config: Config = DEFAULT) -> dict:
    """Integer matrices M_m = sum_theta sign(theta) Pi(fold(m + theta rho)).

    Keyed by weight-torus coordinates; P(delta_j (x) v) has component
    M_{j-k} v / |T_l| at k, so this table is the whole projector.
    """
    cached = rep.__dict__.get("_m_table")
    if cached is not None:
        return cached
    level = rep.ring.level
    if level.weight_torus.order * rep.dim > config.rootspace_cap:
        raise CapExceeded(
            f"|W_l| * d = {level.weight_torus.order * rep.dim} exceeds "
            f"cap {config.rootspace_cap}"
        )
    matrices = rep.complete()
    rho = level.algebra.weyl_vector
    table = {}
    for coords in _class_order(level):
        vec = level.weight_torus.from_coords(coords)
        acc = np.zeros((rep.dim, rep.dim), dtype=np.int64)
        for theta in level.weyl:
            shifted = tuple(a + b for a, b in zip(vec, theta.apply(rho)))
            label, sign = level.fold_affine(shifted)
            if label is not None:
                acc = acc + (theta.sign * sign) * matrices[label]
        table[coords] = acc
    rep.__dict__["_m_table"] = table
    return table


def project_delta(rep: USRep, j, v, config: Config = DEFAULT) -> dict:
    """P(delta_j (x) v): exact rational function on W_l with values in H.

    Returns {class coords: tuple of Fractions}; zero classes included.
    """
    level = rep.ring.level
    table = m_matrices(rep, config)
    group = level.weight_torus
    jc = group.to_coords(level.algebra.check_weight(j))
    if len(v) != rep.dim:
        raise ValidationFailure(f"vector length {len(v)} != dim {rep.dim}")
    scale = len(level.torus_elems)
    out = {}
    for coords in _class_order(level):
        diff = group.add(jc, group.neg(coords))
        mat = table[diff]
        out[coords] = tuple(
            Fraction(int(sum(int(mat[r, c]) * v[c] for c in range(rep.dim))), scale)
            for r in range(rep.dim)
        )
    return out


def root_inner(rep: USRep, left, right, config: Config = DEFAULT) -> Fraction:
    """<P(delta_k (x) v1), P(delta_j (x) v2)> as an exact Fraction."""
    (k, v1), (j, v2) = left, right
    level = rep.ring.level
    group = level.weight_torus
    table = m_matrices(rep, config)
    diff = group.add(
        group.to_coords(level.algebra.check_weight(j)),
        group.neg(group.to_coords(level.algebra.check_weight(k))),
    )
    mat = table[diff]
    total = sum(
        int(v1[r]) * int(mat[r, c]) * int(v2[c])
        for r in range(rep.dim)
        for c in range(rep.dim)
    )
    return Fraction(total, len(level.torus_elems))


class QuantumRoot:
    """One vector sqrt(|T_l|) P(delta_k (x) e_v), stored as integer
    coefficients (the M-matrix column) with implied scale 1/sqrt(|T_l|)."""

    __slots__ = ("klass", "vertex", "coeffs")

    def __init__(self, klass, vertex, coeffs):
        self.klass = klass
        self.vertex = vertex
        self.coeffs = coeffs

    def __eq__(self, other):
        return isinstance(other, QuantumRoot) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"QuantumRoot(class={self.klass}, vertex={self.vertex})"


def quantum_root_system(rep: USRep, config: Config = DEFAULT) -> list:
    """All quantum roots: classes k with basis vectors of grade -k."""
    if rep.grades is None:
        raise NotGraded("quantum roots need a graded representation")
    level = rep.ring.level
    center = level.algebra.center
    group = level.weight_torus
    table = m_matrices(rep, config)
    order = _class_order(level)
    roots = []
    for coords in order:
        vec = group.from_coords(coords)
        want = center.neg(center.to_coords(vec))
        for vertex in range(rep.dim):
            if rep.grades[vertex] != want:
                continue
            coeffs = tuple(
                tuple(
                    int(table[group.add(kc, group.neg(coords))][r, vertex])
                    for r in range(rep.dim)
                )
                for kc in order
            )
            roots.append(QuantumRoot(coords, vertex, coeffs))
    return roots


def translate(level, j, f: dict) -> dict:
    """Translation theta_j: (theta_j f)(k) = f(k + j) on class-indexed maps."""
    group = level.weight_torus
    jc = group.to_coords(level.algebra.check_weight(j))
    return {
        coords: f[group.add(coords, jc)] for coords in _class_order(level)
    }


def translate_root(rep: USRep, j, root: QuantumRoot) -> QuantumRoot:
    """Translate a quantum root; the class shifts, coefficients reindex."""
    level = rep.ring.level
    group = level.weight_torus
    order = _class_order(level)
    index = {c: i for i, c in enumerate(order)}
    jc = group.to_coords(level.algebra.check_weight(j))
    coeffs = tuple(
        root.coeffs[index[group.add(coords, jc)]] for coords in order
    )
    return QuantumRoot(group.add(root.klass, group.neg(jc)), root.vertex, coeffs)


def multiplicity_mA(rep: USRep, a_gens, elem: TorusElement, config: Config = DEFAULT) -> int:
    """m_A(e^H) = sum over T_A of m_Pi(e^{H + H'}), closed form."""
    level = rep.ring.level
    table = spectrum(rep, config)
    return sum(
        table.value_at(elem.shift(shift))
        for shift in level.subgroup_dual(a_gens)
    )


def multiplicity_mA0(rep: USRep, a_gens, elem: TorusElement, config: Config = DEFAULT) -> int:
    """Neutral multiplicity m_{A,0} = m_A / n_z for graded reps, A inside R."""
    if rep.grades is None:
        raise NotGraded("neutral multiplicities need a graded representation")
    level = rep.ring.level
    center = level.algebra.center
    for gen in a_gens:
        if any(center.to_coords(level.algebra.check_weight(gen))):
            raise NotIntermediate(
                f"generator {tuple(gen)} lies outside the root lattice"
            )
    total = multiplicity_mA(rep, a_gens, elem, config)
    n_z = level.algebra.n_z
    if total % n_z:
        raise ValidationFailure(
            f"m_A = {total} is not divisible by n_z = {n_z}"
        )
    return total // n_z


def coxeter_exponent(level, elem: TorusElement, r) -> int:
    """Exponent Phi(e^H, r) = n_c <r, H> mod n_c, an exact integer."""
    r = level.algebra.check_weight(r)
    orbit = level.algebra.weyl_orbit(level.algebra.highest_root)
    if r not in orbit:
        raise ValidationFailure(f"{r} is not in the Weyl orbit of the highest root")
    if not level.in_torus(elem):
        raise ValidationFailure(f"{elem!r} is not an element of T_l")
    if level.in_mirror(elem):
        raise ValidationFailure("exponents are defined off the mirrors")
    value = level.n_c * pairing(r, elem)
    if value.denominator != 1:
        raise NonIntegral(f"n_c <r, H> = {value} is not an integer")
    return int(value) % level.n_c


class ExponentTable:
    """Exponent data over the spectrum: multiplicities and exponent values."""

    def __init__(self, orbit, entries, exponents):
        self.orbit = orbit
        self.entries = entries
        self.exponents = exponents

    def items(self):
        return self.entries.items()


def exponent_multiplicities(rep: USRep, config: Config = DEFAULT) -> ExponentTable:
    """m_Phi = m_{R_a} per spec point; neutral variant sums T_{R_a} / T_R
    coset representatives; for simply laced algebras asserts the neutral
    values reproduce the plain spectrum."""
    level = rep.ring.level
    algebra = level.algebra
    table = spectrum(rep, config)
    ra_gens = [list(r) for r in level.Ra_gens.entries]
    t_ra = level.subgroup_dual(ra_gens)
    graded = rep.grades is not None
    reps_of_cosets = None
    if graded:
        t_root = level.subgroup_dual(algebra.cartan.tolist())
        root_set = set(t_root)
        reps_of_cosets = []
        seen = set()
        for shift in t_ra:
            if shift in seen:
                continue
            reps_of_cosets.append(shift)
            for member in root_set:
                seen.add(shift.shift(member))
    orbit = algebra.weyl_orbit(algebra.highest_root)
    entries = {}
    exponents = {}
    for elem in level.spec:
        m_phi = sum(table.value_at(elem.shift(s)) for s in t_ra)
        m_phi0 = None
        if graded:
            m_phi0 = sum(
                table.value_at(elem.shift(s)) for s in reps_of_cosets
            )
            if algebra.simply_laced and m_phi0 != table.value_at(elem):
                raise ValidationFailure(
                    f"neutral exponent multiplicity {m_phi0} differs from "
                    f"the spectrum at {elem!r}"
                )
        entries[elem] = (m_phi, m_phi0)
        exponents[elem] = tuple(coxeter_exponent(level, elem, r) for r in orbit)
    return ExponentTable(tuple(orbit), entries, exponents)


# -- explicit kernel oracle -------------------------------------------------


def rational_kernel(rows, ncols: int) -> list:
    """Kernel basis of a rational matrix given as an iterable of rows."""
    rref = []
    pivots = []
    for row in rows:
        row = list(row)
        for pr, pc in zip(rref, pivots):
            if row[pc]:
                f = row[pc]
                row = [a - f * b for a, b in zip(row, pr)]
        piv = next((c for c, a in enumerate(row) if a), None)
        if piv is None:
            continue
        inv = row[piv]
        row = [a / inv for a in row]
        for idx, (pr, pc) in enumerate(zip(rref, pivots)):
            if pr[piv]:
                f = pr[piv]
                rref[idx] = [a - f * b for a, b in zip(pr, row)]
        rref.append(row)
        pivots.append(piv)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pr, pc in zip(rref, pivots):
            vec[pc] = -pr[free]
        basis.append(tuple(vec))
    return basis


def _solve_exact(columns, targets, ncols_hint=None):
    """Coefficients x with basis @ x = target for each target, exact.

    columns: list of basis vectors (tuples); targets: list of vectors.
    Raises ValidationFailure if some target is outside the span.
    """
    m = len(columns)
    n = len(columns[0])
    t = len(targets)
    aug = [
        [Fraction(columns[c][r]) for c in range(m)]
        + [Fraction(targets[j][r]) for j in range(t)]
        for r in range(n)
    ]
    pivots = []
    rank = 0
    for col in range(m):
        piv = next((r for r in range(rank, n) if aug[r][col]), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = aug[rank][col]
        aug[rank] = [a / inv for a in aug[rank]]
        for r in range(n):
            if r != rank and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    if rank != m:
        raise ValidationFailure("kernel basis is not independent")
    for r in range(rank, n):
        if any(aug[r][m:]):
            raise ValidationFailure("target vector outside the span")
    out = [[Fraction(0)] * t for _ in range(m)]
    for row, col in enumerate(pivots):
        for j in range(t):
            out[col][j] = aug[row][m + j]
    return out


class RootSpaceData:
    """Explicit kernel of the difference operators, with translations.

    The difference operator of a fundamental weight w acts on delta
    functions by delta_k -> sum_s m_w(s) delta_{k+s} over the weight
    diagram of w, so on function values (D_w f)(j) = sum_s m_w(s) f(j-s).
    This is the orientation under which the Fourier transform intertwines
    D_w with multiplication by the character of w, and the image of
    project_delta lies in the joint kernel of D_w (x) I - I (x) Pi_w.

    kernel and neutral_kernel are tuples of coefficient vectors over the
    flattened (class, basis-vector) index; class order follows
    weight_torus.elements().
    """

    def __init__(self, rep: USRep, config: Config = DEFAULT):
        self.rep = rep
        self.config = config
        level = rep.ring.level
        self.level = level
        group = level.weight_torus
        self.class_order = _class_order(level)
        self.class_index = {c: i for i, c in enumerate(self.class_order)}
        n_cls = len(self.class_order)
        d = rep.dim
        if n_cls * d > config.rootspace_cap:
            raise CapExceeded(
                f"|W_l| * d = {n_cls * d} exceeds cap {config.rootspace_cap}"
            )
        self.ncols = n_cls * d
        algebra = level.algebra
        fund = rep.fund_matrices
        rows = []
        for w, pi_w in fund.items():
            diagram = algebra.weight_system(w, cap=config.weight_cap)
            shifts = [
                (self._shift_table(group, tuple(-x for x in s)), mult)
                for s, mult in diagram
            ]
            for ci, coords in enumerate(self.class_order):
                for a in range(d):
                    row = [Fraction(0)] * self.ncols
                    for shift_map, mult in shifts:
                        row[shift_map[ci] * d + a] += mult
                    for b in range(d):
                        row[ci * d + b] -= int(pi_w[a, b])
                    rows.append(row)
        self.kernel = tuple(rational_kernel(rows, self.ncols))
        self._trans_cache = {}
        neutral_cols = self._neutral_columns()
        restricted = [
            [row[c] for c in neutral_cols] for row in rows
        ]
        small = rational_kernel(restricted, len(neutral_cols))
        lifted = []
        for vec in small:
            full = [Fraction(0)] * self.ncols
            for value, c in zip(vec, neutral_cols):
                full[c] = value
            lifted.append(tuple(full))
        self.neutral_kernel = tuple(lifted)
        self.dim = len(self.kernel)
        self.neutral_dim = len(self.neutral_kernel)

    def _shift_table(self, group, s):
        # class index -> index of class + s
        sc = group.to_coords(s)
        return [
            self.class_index[group.add(coords, sc)] for coords in self.class_order
        ]

    def _neutral_columns(self):
        if self.rep.grades is None:
            raise NotGraded("neutral subspace needs a graded representation")
        level = self.level
        center = level.algebra.center
        group = level.weight_torus
        cols = []
        for ci, coords in enumerate(self.class_order):
            k_class = center.to_coords(group.from_coords(coords))
            for b in range(self.rep.dim):
                if center.add(k_class, self.rep.grades[b]) == center.zero:
                    cols.append(ci * self.rep.dim + b)
        return cols

    # -- translations on the kernel ------------------------------------

    def _translation_on(self, basis, jc):
        group = self.level.weight_torus
        d = self.rep.dim
        moved = []
        for vec in basis:
            out = [Fraction(0)] * self.ncols
            for ci, coords in enumerate(self.class_order):
                src = self.class_index[group.add(coords, jc)]
                for b in range(d):
                    out[ci * d + b] = vec[src * d + b]
            moved.append(tuple(out))
        return _solve_exact(list(basis), moved)

    def _subgroup_classes(self, a_gens):
        group = self.level.weight_torus
        gens = [
            group.to_coords(self.level.algebra.check_weight(g)) for g in a_gens
        ]
        seen = {group.zero}
        frontier = [group.zero]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = group.add(cur, g)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return sorted(seen)

    def joint_dim(self, a_gens, elem: TorusElement, neutral: bool = False) -> int:
        """Dimension of the joint translation eigenspace at e^H.

        The eigenvalue of theta_a at e^H is the character exp(2 pi i
        <a, H>); the dimension is the validated-rounded trace of the
        averaged character projector on the (neutral) kernel.
        """
        basis = self.neutral_kernel if neutral else self.kernel
        if not basis:
            return 0
        if neutral:
            center = self.level.algebra.center
            for gen in a_gens:
                if any(center.to_coords(self.level.algebra.check_weight(gen))):
                    raise NotIntermediate(
                        f"generator {tuple(gen)} lies outside the root lattice"
                    )
        group = self.level.weight_torus
        classes = self._subgroup_classes(a_gens)
        total = 0j
        for a in classes:
            key = (neutral, a)
            if key not in self._trans_cache:
                self._trans_cache[key] = self._translation_on(basis, a)
            coeff = self._trans_cache[key]
            trace = sum(coeff[i][i] for i in range(len(basis)))
            rep_vec = group.from_coords(a)
            lam = cmath.exp(2j * math.pi * float(pairing(rep_vec, elem)))
            total += lam.conjugate() * float(trace)
        value = total / len(classes)
        return round_validated(value, self.config.tolerance)


def build_root_space(rep: USRep, config: Config = DEFAULT) -> RootSpaceData:
    """Materialize the kernel oracle for a representation."""
    return RootSpaceData(rep, config)


# -- Auslander-Reiten quiver ------------------------------------------------


def _ade_shape(quiver) -> str:
    """Classify an undirected simple tree as A/D/E or raise NotADE."""
    n = quiver.size
    und = set()
    for src, dst, j, mult in quiver.edges:
        if mult != 1 or j != 1:
            raise NotADE("ADE graphs carry simple edges only")
        und.add((min(src, dst), max(src, dst)))
    if not quiver.connected():
        raise NotADE("graph is not connected")
    if len(und) != n - 1:
        raise NotADE("graph is not a tree")
    degree = [0] * n
    for a, b in und:
        degree[a] += 1
        degree[b] += 1
    branches = [v for v in range(n) if degree[v] >= 3]
    if any(degree[v] > 3 for v in branches):
        raise NotADE("vertex degree exceeds 3")
    if not branches:
        return f"A{n}"
    if len(branches) > 1:
        raise NotADE("more than one branch vertex")
    adj = {v: [] for v in range(n)}
    for a, b in und:
        adj[a].append(b)
        adj[b].append(a)
    hub = branches[0]
    legs = []
    for start in adj[hub]:
        length = 1
        prev, cur = hub, start
        while degree[cur] == 2:
            nxt = next(x for x in adj[cur] if x != prev)
            prev, cur = cur, nxt
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return f"D{n}"
    if legs == [1, 2, 2] or legs == [1, 2, 3] or legs == [1, 2, 4]:
        return f"E{n}"
    raise NotADE(f"leg lengths {legs} are not an ADE shape")


def ar_quiver(graph, check: bool = True, config: Config = DEFAULT):
    """Auslander-Reiten quiver of an ADE graph plus the additivity report.

    Gamma indexes pairs (i, x) in Z_{2 n_c} x vertices with i + grade(x)
    even.  When check is set, every neutral kernel element is verified to
    satisfy f(i, x) + f(i+2, x) = sum over neighbours y of f(i+1, y)
    exactly, and the quantum root count is compared with n_c * vertices.
    """
    from .graphs import GradedQuiver
    from .torus import build_level
    from .lie import build_algebra

    quiver = graph if isinstance(graph, GradedQuiver) else GradedQuiver(graph)
    if (quiver.family, quiver.rank) != ("A", 1):
        raise NotADE("Auslander-Reiten quivers are defined over sl2 here")
    shape = _ade_shape(quiver)
    level = build_level(build_algebra("A", 1), quiver.level, config)
    n_c = level.n_c
    gamma = tuple(
        (i, x)
        for i in range(2 * n_c)
        for x in range(quiver.size)
        if (i + quiver.grades[x][0]) % 2 == 0
    )
    report = {"shape": shape, "gamma_size": len(gamma), "n_c": n_c}
    if not check:
        return gamma, report
    ring = build_fusion_ring(level, config)
    rep = load_usrep(ring, quiver)
    space = build_root_space(rep, config)
    und = {(min(s, d), max(s, d)) for s, d, _, _ in quiver.edges}
    neighbours = {x: [] for x in range(quiver.size)}
    for a, b in und:
        neighbours[a].append(b)
        neighbours[b].append(a)
    group = level.weight_torus
    index = space.class_index
    d = rep.dim

    def value(vec, i, x):
        return vec[index[group.to_coords((i,))] * d + x]

    additive_ok = True
    for vec in space.neutral_kernel:
        for i in range(2 * n_c):
            for x in range(quiver.size):
                lhs = value(vec, i, x) + value(vec, i + 2, x)
                rhs = sum(value(vec, i + 1, y) for y in neighbours[x])
                if lhs != rhs:
                    additive_ok = False
    roots = quantum_root_system(rep, config)
    distinct = len(set(roots))
    report.update(
        {
            "additive_ok": additive_ok,
            "root_count": distinct,
            "expected_root_count": n_c * quiver.size,
            "neutral_dim": space.neutral_dim,
        }
    )
    return gamma, report
