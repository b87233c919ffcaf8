"""Root system data, Weyl folding, weight diagrams, tensor coefficients."""

import random
from fractions import Fraction

import pytest

from verlinde_kit.errors import InvalidType
from verlinde_kit.lie import apply_matrix, build_algebra, weyl_group


def test_invalid_types():
    for family, rank in (("D", 3), ("E", 9), ("E", 5), ("G", 3), ("F", 5), ("H", 2), ("A", 0)):
        with pytest.raises(InvalidType):
            build_algebra(family, rank)


def test_cartan_frozen():
    assert build_algebra("A", 2).cartan.tolist() == [[2, -1], [-1, 2]]
    assert build_algebra("B", 2).cartan.tolist() == [[2, -2], [-1, 2]]
    assert build_algebra("C", 2).cartan.tolist() == [[2, -1], [-2, 2]]
    assert build_algebra("G", 2).cartan.tolist() == [[2, -1], [-3, 2]]
    d4 = build_algebra("D", 4).cartan.tolist()
    assert d4[1] == [-1, 2, -1, -1]  # central node
    f4 = build_algebra("F", 4).cartan.tolist()
    assert f4[1][2] == -2 and f4[2][1] == -1
    e6 = build_algebra("E", 6).cartan
    assert e6.det() == 3


def test_numeric_invariants_frozen():
    # (family, rank): marks, comarks, coxeter, dual coxeter, n_z, |roots+|
    cases = {
        ("A", 1): ((1,), (1,), 2, 2, 2, 1),
        ("A", 2): ((1, 1), (1, 1), 3, 3, 3, 3),
        ("A", 3): ((1, 1, 1), (1, 1, 1), 4, 4, 4, 6),
        ("B", 2): ((1, 2), (1, 1), 4, 3, 2, 4),
        ("G", 2): ((3, 2), (1, 2), 6, 4, 1, 6),
        ("D", 4): ((1, 2, 1, 1), (1, 2, 1, 1), 6, 6, 4, 12),
        ("F", 4): ((2, 3, 4, 2), (2, 3, 2, 1), 12, 9, 1, 24),
        ("E", 6): ((1, 2, 2, 3, 2, 1), (1, 2, 2, 3, 2, 1), 12, 12, 3, 36),
    }
    for (family, rank), expect in cases.items():
        g = build_algebra(family, rank)
        marks, comarks, cox, dual, n_z, n_pos = expect
        assert g.marks == marks
        assert g.comarks == comarks
        assert g.coxeter_number == cox
        assert g.dual_coxeter == dual
        assert g.n_z == n_z
        assert len(g.positive_roots) == n_pos


def test_symmetrizer_and_form():
    b2 = build_algebra("B", 2)
    assert b2.symmetrizer == (Fraction(1), Fraction(1, 2))
    g2 = build_algebra("G", 2)
    assert g2.symmetrizer == (Fraction(1, 3), Fraction(1))
    for g in (build_algebra("A", 3), b2, g2, build_algebra("F", 4)):
        # highest root normalized to squared length 2
        assert g.inner(g.highest_root, g.highest_root) == 2
        # simple root norms are twice the symmetrizer entries
        for i, row in enumerate(g.simple_root_labels):
            assert g.inner(row, row) == 2 * g.symmetrizer[i]
        # form is symmetric
        n = g.rank
        assert all(g.form[i][j] == g.form[j][i] for i in range(n) for j in range(n))


def test_inner_frozen():
    a1 = build_algebra("A", 1)
    assert a1.inner((1,), (1,)) == Fraction(1, 2)
    a2 = build_algebra("A", 2)
    assert a2.inner((1, 0), (0, 1)) == Fraction(1, 3)
    assert a2.inner((1, 1), (1, 1)) == 2


def test_level_pairing():
    g2 = build_algebra("G", 2)
    assert g2.level_pairing((1, 1)) == 3
    assert g2.level_pairing((2, 1)) == 4
    b2 = build_algebra("B", 2)
    assert b2.level_pairing((1, 1)) == 2
    # level pairing is <k, H_{r_+}> = 2<k, r_+>/<r_+, r_+>
    for g in (g2, b2, build_algebra("A", 3)):
        for k in ((1, 0) + (0,) * (g.rank - 2), (1,) * g.rank):
            assert g.level_pairing(k) == g.inner(k, g.highest_root)


def test_dominant_fold_frozen():
    a2 = build_algebra("A", 2)
    fold = a2.dominant_fold((-1, 2))
    assert fold.dominant == (1, 1)
    assert fold.sign == -1
    assert not fold.on_wall
    fold0 = a2.dominant_fold((0, 1))
    assert fold0.on_wall and fold0.dominant == (0, 1)


def test_dominant_fold_replay_random():
    rng = random.Random(23)
    for g in (build_algebra("A", 3), build_algebra("B", 2), build_algebra("G", 2)):
        for _ in range(80):
            k = tuple(rng.randint(-6, 6) for _ in range(g.rank))
            fold = g.dominant_fold(k)
            assert all(x >= 0 for x in fold.dominant)
            assert fold.sign == (-1) ** len(fold.word)
            assert fold.on_wall == (0 in fold.dominant)
            vec = k
            for j in fold.word:
                vec = apply_matrix(g.reflections[j - 1], vec)
            assert vec == fold.dominant


def test_weyl_orbit():
    b2 = build_algebra("B", 2)
    long_roots = b2.weyl_orbit(b2.highest_root)
    assert len(long_roots) == 4
    assert len(b2.weyl_orbit((1, 1))) == 8  # regular orbit has |W| elements
    a2 = build_algebra("A", 2)
    assert set(a2.weyl_orbit((1, 0))) == {(1, 0), (-1, 1), (0, -1)}


def test_weyl_group_structure():
    a2 = build_algebra("A", 2)
    w = weyl_group(a2)
    assert len(w) == 6
    assert sum(1 for e in w if e.sign == -1) == 3
    assert w[0].word == () and w[0].sign == 1
    b2 = build_algebra("B", 2)
    assert len(weyl_group(b2)) == 8
    assert len(weyl_group(build_algebra("A", 3))) == 24
    for e in weyl_group(b2):
        k = (2, 3)
        assert e.apply_inverse(e.apply(k)) == k
        # sign is the determinant parity
        vec = k
        for j in reversed(e.word):
            vec = apply_matrix(b2.reflections[j - 1], vec)
        assert vec == e.apply(k)


def test_weyl_group_longest_element():
    # the longest element maps rho to -rho
    for name, rank in (("A", 2), ("B", 2), ("G", 2)):
        g = build_algebra(name, rank)
        rho = g.weyl_vector
        images = {e.apply(rho) for e in weyl_group(g)}
        assert len(images) == len(weyl_group(g))
        assert tuple(-x for x in rho) in images


def test_weight_system_frozen():
    a1 = build_algebra("A", 1)
    ws = a1.weight_system((2,))
    assert dict(ws) == {(2,): 1, (0,): 1, (-2,): 1}
    assert ws.dimension == 3
    a2 = build_algebra("A", 2)
    adj = a2.weight_system((1, 1))
    assert adj.dimension == 8
    assert adj.entries[(0, 0)] == 2
    g2 = build_algebra("G", 2)
    adj2 = g2.weight_system((0, 1))
    assert adj2.dimension == 14
    assert adj2.entries[(0, 0)] == 2


def test_weyl_dim_frozen():
    a2 = build_algebra("A", 2)
    assert a2.weyl_dim((1, 0)) == 3
    assert a2.weyl_dim((1, 1)) == 8
    assert a2.weyl_dim((3, 0)) == 10
    b2 = build_algebra("B", 2)
    assert b2.weyl_dim((1, 0)) == 5
    assert b2.weyl_dim((0, 1)) == 4
    assert build_algebra("G", 2).weyl_dim((1, 0)) == 7


def test_classical_fusion_frozen():
    a1 = build_algebra("A", 1)
    assert a1.classical_fusion((1,), (1,)) == {(0,): 1, (2,): 1}
    assert a1.classical_fusion((2,), (2,)) == {(0,): 1, (2,): 1, (4,): 1}
    a2 = build_algebra("A", 2)
    assert a2.classical_fusion((1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}
    assert a2.classical_fusion((1, 0), (1, 0)) == {(2, 0): 1, (0, 1): 1}
    assert a2.classical_fusion((1, 1), (1, 1)) == {
        (0, 0): 1,
        (1, 1): 2,
        (3, 0): 1,
        (0, 3): 1,
        (2, 2): 1,
    }


def test_classical_fusion_dimension_rule_random():
    rng = random.Random(5)
    for g in (build_algebra("A", 2), build_algebra("B", 2), build_algebra("G", 2)):
        for _ in range(12):
            j = tuple(rng.randint(0, 2) for _ in range(g.rank))
            k = tuple(rng.randint(0, 2) for _ in range(g.rank))
            out = g.classical_fusion(j, k)
            total = sum(n * g.weyl_dim(s) for s, n in out.items())
            assert total == g.weyl_dim(j) * g.weyl_dim(k)
            assert all(n > 0 for n in out.values())
