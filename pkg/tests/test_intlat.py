"""Integer lattice arithmetic: normal forms and finite quotients."""

import random
from fractions import Fraction

import pytest

from verlinde_kit.errors import DimensionMismatch, InfiniteQuotient
from verlinde_kit.intlat import (
    FiniteAbelianGroup,
    IntMatrix,
    hnf,
    lattice_quotient,
    snf,
)


def det2(m):
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def test_intmatrix_basics():
    m = IntMatrix([[1, 2], [3, 4]])
    assert m.rows == 2 and m.cols == 2
    assert m[1, 0] == 3
    assert m.transpose().tolist() == [[1, 3], [2, 4]]
    assert (m @ IntMatrix.identity(2)) == m
    assert m.mul_vec((1, 1)) == (3, 7)
    assert m.det() == -2
    with pytest.raises(AttributeError):
        m.rows = 5
    with pytest.raises(DimensionMismatch):
        IntMatrix([[1, 2], [3]])


def test_det_bareiss_frozen():
    m = IntMatrix([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert m.det() == 4  # A3 Cartan determinant
    assert IntMatrix([[2, -2], [-1, 2]]).det() == 2
    assert IntMatrix([[2, -1], [-3, 2]]).det() == 1


def test_hnf_frozen():
    h, u = hnf(IntMatrix([[2, 4], [6, 8]]))
    assert h.tolist() == [[2, 0], [0, 4]]
    assert abs(u.det()) == 1
    assert (u @ IntMatrix([[2, 4], [6, 8]])) == h


def test_snf_frozen():
    s, u, v = snf(IntMatrix([[2, 4], [6, 8]]))
    assert s.tolist() == [[2, 0], [0, 4]]
    assert (u @ IntMatrix([[2, 4], [6, 8]]) @ v) == s
    s, _, _ = snf(IntMatrix([[1, 1], [1, -1]]))
    assert s.tolist() == [[1, 0], [0, 2]]


def test_normal_forms_random():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.choice((2, 3))
        m = IntMatrix([[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)])
        if m.det() == 0:
            continue
        h, u = hnf(m)
        assert abs(u.det()) == 1
        assert (u @ m) == h
        # echelon with positive pivots, reduced above
        pivots = []
        for i in range(n):
            row = h.row(i)
            j = next(c for c, x in enumerate(row) if x != 0)
            pivots.append(j)
            assert row[j] > 0
            for above in range(i):
                assert 0 <= h[above, j] < row[j]
        assert pivots == sorted(pivots)
        s, us, vs = snf(m)
        assert (us @ m @ vs) == s
        assert abs(us.det()) == 1 and abs(vs.det()) == 1
        diag = [s[i, i] for i in range(n)]
        assert all(s[i, j] == 0 for i in range(n) for j in range(n) if i != j)
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b % a == 0
        prod = 1
        for d in diag:
            prod *= d
        assert prod == abs(m.det())


def test_quotient_frozen():
    g = lattice_quotient(2, IntMatrix([[2, 0], [0, 2]]))
    assert g.cyclic_orders == (2, 2)
    assert g.order == 4
    assert g.to_coords((2, 0)) == g.zero
    assert g.to_coords((1, 1)) == g.add(g.to_coords((1, 0)), g.to_coords((0, 1)))
    # Z^2 / <(1,1),(1,-1)> is cyclic of order 2
    g2 = lattice_quotient(2, IntMatrix([[1, 1], [1, -1]]))
    assert g2.cyclic_orders == (2,)
    assert g2.to_coords((1, 1)) == (0,)
    assert g2.to_coords((1, 0)) == (1,)


def test_quotient_infinite():
    with pytest.raises(InfiniteQuotient):
        lattice_quotient(2, IntMatrix([[1, 1], [2, 2]]))


def test_quotient_roundtrip_random():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.choice((2, 3))
        while True:
            m = IntMatrix([[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)])
            if m.det() != 0:
                break
        g = lattice_quotient(n, m)
        assert g.order == abs(m.det())
        for coords in g.elements():
            rep = g.from_coords(coords)
            assert g.to_coords(rep) == coords
            assert g.canonical_rep(rep) == rep
        # classes hit by a box of representatives exhaust the quotient
        seen = {
            g.to_coords((x, 0) if n == 2 else (x, y, 0))
            for x in range(-8, 9)
            for y in range(-8, 9)
        }
        vec = rng.sample(range(-9, 9), n)
        shifted = [a + b for a, b in zip(vec, m.row(0))]
        assert g.to_coords(vec) == g.to_coords(shifted)


def test_dual_vectors_are_characters():
    g = lattice_quotient(2, IntMatrix([[2, 0], [0, 4]]))
    duals = [g.dual_vector(t) for t in g.elements()]
    assert len(set(duals)) == g.order
    for h in duals:
        # characters kill the sublattice
        for row in ((2, 0), (0, 4)):
            val = sum(Fraction(a) * c for a, c in zip(row, h))
            assert val.denominator == 1
    # pairing table is a perfect pairing: rows distinct
    reps = [g.from_coords(t) for t in g.elements()]
    rows = [
        tuple(sum(Fraction(a) * c for a, c in zip(rep, h)) % 1 for rep in reps)
        for h in duals
    ]
    assert len(set(rows)) == g.order


def test_dual_vector_matches_group_order_random():
    rng = random.Random(3)
    for _ in range(20):
        while True:
            m = IntMatrix([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
            if m.det() != 0:
                break
        g = lattice_quotient(2, m)
        duals = {g.dual_vector(t) for t in g.elements()}
        assert len(duals) == g.order
