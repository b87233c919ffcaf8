"""Exact integer lattice arithmetic.

Hermite and Smith normal forms over arbitrary-precision integers, plus
finite quotients Z^n / L presented by invariant factors.  Everything here
is the record path for lattice bookkeeping (weight lattice mod level
lattice, centers, subgroup duals), so no floating point appears and all
values are immutable after construction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import DimensionMismatch, InfiniteQuotient


class IntMatrix:
    """Immutable dense matrix with exact integer entries.

    Attributes
    ----------
    rows, cols : int
        Matrix dimensions, fixed at construction.
    entries : tuple of tuple of int
        Row-major entries; arbitrary precision.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if not data or not data[0]:
            raise DimensionMismatch("matrix must be nonempty")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def tolist(self) -> list:
        return [list(row) for row in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(list(zip(*self.entries)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.cols} != {other.rows}")
        cols = other.transpose().entries
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries]
        )

    def mul_vec(self, v) -> tuple:
        if len(v) != self.cols:
            raise DimensionMismatch(f"{len(v)} != {self.cols}")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def det(self) -> int:
        """Determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise DimensionMismatch("det of non-square matrix")
        n = self.rows
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if swap is None:
                    return 0
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IntMatrix({self.tolist()!r})"


def _row_reduce(work, unimod, col, top):
    """Euclid rows top.. on column col until a single nonzero remains at top."""
    while True:
        live = [i for i in range(top, len(work)) if work[i][col] != 0]
        if not live:
            return False
        pivot = min(live, key=lambda i: abs(work[i][col]))
        work[top], work[pivot] = work[pivot], work[top]
        unimod[top], unimod[pivot] = unimod[pivot], unimod[top]
        done = True
        for i in range(top + 1, len(work)):
            if work[i][col] == 0:
                continue
            q = work[i][col] // work[top][col]
            work[i] = [a - q * b for a, b in zip(work[i], work[top])]
            unimod[i] = [a - q * b for a, b in zip(unimod[i], unimod[top])]
            if work[i][col] != 0:
                done = False
        if done:
            return True


def hnf(m: IntMatrix):
    """Hermite normal form by unimodular row operations.

    Returns (h, u) with h = u*m, u unimodular, h in row echelon with
    positive pivots and entries above each pivot reduced into [0, pivot).
    The row space of m is preserved exactly.
    """
    work = [list(row) for row in m.entries]
    unimod = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
    top = 0
    for col in range(m.cols):
        if top >= len(work):
            break
        if not _row_reduce(work, unimod, col, top):
            continue
        if work[top][col] < 0:
            work[top] = [-a for a in work[top]]
            unimod[top] = [-a for a in unimod[top]]
        for i in range(top):
            q = work[i][col] // work[top][col]
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[top])]
                unimod[i] = [a - q * b for a, b in zip(unimod[i], unimod[top])]
        top += 1
    return IntMatrix(work), IntMatrix(unimod)


def snf(m: IntMatrix):
    """Smith normal form: returns (s, u, v) with s = u*m*v diagonal,
    u and v unimodular, and each diagonal entry dividing the next."""
    a = [list(row) for row in m.entries]
    nr, nc = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(nr, nc):
        live = [(i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j] != 0]
        if not live:
            break
        i0, j0 = min(live, key=lambda ij: abs(a[ij[0]][ij[1]]))
        swap_rows(t, i0)
        swap_cols(t, j0)
        dirty = False
        for i in range(t + 1, nr):
            if a[i][t]:
                addmul_row(i, t, a[i][t] // a[t][t])
                dirty = dirty or a[i][t] != 0
        for j in range(t + 1, nc):
            if a[t][j]:
                addmul_col(j, t, a[t][j] // a[t][t])
                dirty = dirty or a[t][j] != 0
        if dirty:
            continue
        bad = next(
            (
                (i, j)
                for i in range(t + 1, nr)
                for j in range(t + 1, nc)
                if a[i][j] % a[t][t] != 0
            ),
            None,
        )
        if bad is not None:
            addmul_row(t, bad[0], -1)
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return IntMatrix(a), IntMatrix(u), IntMatrix(v)


def _inverse_unimodular(v: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix via Fraction elimination."""
    n = v.rows
    aug = [[Fraction(x) for x in v.entries[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[col])]
    out = [[x for x in row[n:]] for row in aug]
    assert all(x.denominator == 1 for row in out for x in row)
    return IntMatrix([[int(x) for x in row] for row in out])


class FiniteAbelianGroup:
    """The quotient Z^n / L for a full-rank sublattice L, in invariant
    factor coordinates.

    cyclic_orders lists the invariant factors d_1 | d_2 | ... that are
    greater than 1; coordinates are tuples modulo these.  to_coords is a
    surjective homomorphism with kernel exactly L; from_coords returns the
    canonical lattice representative (reduced against the HNF basis of L,
    one coordinate in [0, pivot) per pivot column).
    """

    __slots__ = ("ambient_rank", "cyclic_orders", "_v", "_vinv", "_diag", "_keep", "_hnf_basis", "order")

    def __init__(self, ambient_rank: int, sublattice_gens: IntMatrix):
        if sublattice_gens.cols != ambient_rank:
            raise DimensionMismatch(
                f"generators have {sublattice_gens.cols} columns, ambient rank {ambient_rank}"
            )
        s, _u, v = snf(sublattice_gens)
        diag = [s[t, t] for t in range(min(s.rows, s.cols))]
        if len(diag) < ambient_rank or any(d == 0 for d in diag):
            raise InfiniteQuotient("sublattice rank below ambient rank")
        object.__setattr__(self, "ambient_rank", ambient_rank)
        object.__setattr__(self, "_v", v)
        object.__setattr__(self, "_vinv", _inverse_unimodular(v))
        object.__setattr__(self, "_diag", tuple(diag))
        keep = tuple(i for i, d in enumerate(diag) if d > 1)
        object.__setattr__(self, "_keep", keep)
        object.__setattr__(self, "cyclic_orders", tuple(diag[i] for i in keep))
        h, _ = hnf(sublattice_gens)
        object.__setattr__(self, "_hnf_basis", tuple(h.entries[i] for i in range(ambient_rank)))
        order = 1
        for d in diag:
            order *= d
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("FiniteAbelianGroup is immutable")

    def to_coords(self, x) -> tuple:
        """Class of the lattice vector x as a tuple mod cyclic_orders."""
        if len(x) != self.ambient_rank:
            raise DimensionMismatch(f"vector length {len(x)} != {self.ambient_rank}")
        xv = [sum(int(a) * self._v[j, i] for j, a in enumerate(x)) for i in range(self.ambient_rank)]
        return tuple(xv[i] % self._diag[i] for i in self._keep)

    def from_coords(self, coords) -> tuple:
        """Canonical lattice representative of the class with given coords."""
        if len(coords) != len(self.cyclic_orders):
            raise DimensionMismatch("coordinate length mismatch")
        full = [0] * self.ambient_rank
        for pos, c in zip(self._keep, coords):
            full[pos] = int(c) % self._diag[pos]
        y = tuple(
            sum(full[j] * self._vinv[j, i] for j in range(self.ambient_rank))
            for i in range(self.ambient_rank)
        )
        return self.canonical_rep(y)

    def canonical_rep(self, x) -> tuple:
        """Unique coset representative reduced against the HNF basis."""
        vec = [int(a) for a in x]
        for brow in self._hnf_basis:
            piv = next(j for j, b in enumerate(brow) if b != 0)
            q = vec[piv] // brow[piv]
            if q:
                vec = [a - q * b for a, b in zip(vec, brow)]
        return tuple(vec)

    def contains_zero_class(self, x) -> bool:
        return all(c == 0 for c in self.to_coords(x))

    def dual_vector(self, coords) -> tuple:
        """Rational vector h realizing the character indexed by coords.

        The character of the quotient with index t sends the class of x to
        exp(2*pi*i * x.h) where h is returned here with each entry reduced
        mod 1; distinct indices give distinct h, so mapping over elements()
        enumerates the full dual group.
        """
        if len(coords) != len(self.cyclic_orders):
            raise DimensionMismatch("coordinate length mismatch")
        full = [Fraction(0)] * self.ambient_rank
        for pos, c in zip(self._keep, coords):
            full[pos] = Fraction(int(c), self._diag[pos])
        return tuple(
            sum(self._v[j, i] * full[i] for i in range(self.ambient_rank)) % 1
            for j in range(self.ambient_rank)
        )

    def elements(self):
        """All classes as coordinate tuples, in lexicographic order."""
        return itertools.product(*(range(d) for d in self.cyclic_orders))

    def add(self, a, b) -> tuple:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.cyclic_orders))

    def neg(self, a) -> tuple:
        return tuple((-x) % d for x, d in zip(a, self.cyclic_orders))

    @property
    def zero(self) -> tuple:
        return tuple(0 for _ in self.cyclic_orders)


def lattice_quotient(ambient_rank: int, sublattice_gens: IntMatrix) -> FiniteAbelianGroup:
    """Finite quotient Z^ambient_rank / (row span of sublattice_gens)."""
    return FiniteAbelianGroup(ambient_rank, sublattice_gens)
