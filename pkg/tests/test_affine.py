import pytest

from qtnabla.scalar import ONE, Q
from qtnabla.affine import (
    AffinePermutation, b_poly_degree, canonical_transposition, coarea_path,
    dimv, double_coset, edges, edges_refined, from_finite, identity,
    is_m_restricted, is_m_stable, iter_wplus, left_coset_min_max, max_area,
    paff, raths_series, standardize, tau, transposition, verify_paff, wvec,
)


def test_window_validation():
    with pytest.raises(ValueError):
        AffinePermutation((1, 3))  # both odd
    w = AffinePermutation((3, 2, 12, 5))
    assert w.n == 4
    assert w(5) == 7  # periodicity
    assert w(0) == 5 - 4


def test_length_basics():
    assert identity(4).length() == 0
    assert AffinePermutation((2, 1)).length() == 1
    w = AffinePermutation((3, 2, 12, 5))
    assert w.length() == w.inverse().length()


def test_length_inverse_random():
    import random
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(2, 4)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        w = AffinePermutation(tuple(perm[i] + n * rng.randint(0, 3) for i in range(n)))
        assert w.length() == w.inverse().length()
        assert (w * w.inverse()).is_identity()


def test_d_grade_additive():
    u = AffinePermutation((3, 2, 12, 5))
    v = AffinePermutation((5, 2, 3, 4))
    assert (u * v).d_grade() == u.d_grade() + v.d_grade()


def test_m_stability():
    for m in (1, 2, 3, 5):
        assert is_m_stable(identity(3), m)
    # kn-stability is automatic for every positive affine permutation
    for w in iter_wplus(2, 2):
        assert is_m_stable(w, 2) and is_m_stable(w, 4)


def test_reflection_length_dichotomy():
    w = AffinePermutation((3, 2, 12, 5))
    for a in range(1, 5):
        for b in range(a + 1, a + 6):
            if (b - a) % 4 == 0:
                continue
            t = transposition(4, a, b)
            assert (t * w).length() != w.length()


def test_edges_paper_example():
    w = AffinePermutation((3, 2, 12, 5))
    got = edges(w, 4)
    assert len(got) == 4
    results = {(transposition(4, a, b) * w).window for a, b in got}
    assert results == {(2, 3, 12, 5), (3, 2, 9, 8), (4, 2, 11, 5), (3, 4, 10, 5)}
    assert dimv(w, 4) == 6 - 4 == 2


def test_edges_identity_empty():
    assert edges(identity(4), 4) == []


def test_edges_monotone_in_m():
    w = AffinePermutation((3, 2, 12, 5))
    for m in range(1, 8):
        assert set(edges(w, m)) <= set(edges(w, m + 1))


def test_edges_refined_total():
    w = AffinePermutation((3, 2, 12, 5))
    refined = edges_refined(w, 4)
    assert sum(refined.values()) == len(edges(w, 4))


def test_max_area_closed_form():
    # validated internally against the lattice count; spot values
    assert max_area(4, 4) == 6
    assert max_area(2, 2) == 1
    assert max_area(1, 5) == 0
    assert max_area(3, 6) == 6
    for n in range(1, 9):
        for m in range(1, 9):
            max_area(n, m)  # the closed form assertion runs inside


def test_dimv_n1():
    for w in iter_wplus(1, 4):
        assert dimv(w, 3) == 0


def test_canonical_transposition():
    assert canonical_transposition(4, 9, 12) == (1, 4)
    assert canonical_transposition(4, 5, 2) == (2, 5) or canonical_transposition(4, 5, 2) == (1, 4)


def test_standardize_paper_pair():
    a = (3, 3, 3, 1, 2, 3, 1)
    assert standardize(a, "<") == (4, 5, 6, 1, 3, 7, 2)
    assert standardize(a, ">") == (1, 2, 3, 6, 5, 4, 7)
    assert standardize((1, 2, 5), "<") == (1, 2, 3)


def test_tau_paper_value():
    assert tau((2, 1, 0, 0)).window == (12, 7, 2, 1)


def test_paff_paper_example():
    m, a, b = (2, 1, 0, 0), (2, 3, 1, 1), (1, 2, 1, 1)
    assert standardize(a, "<") == (3, 4, 1, 2)
    assert standardize(tuple(reversed(b)), ">") == (2, 3, 1, 4)
    w = paff(m, a, b)
    assert w.window == (3, 2, 12, 5)
    assert w.d_grade() == 3


def test_paff_zero_m_full_block():
    # m = 0, constant labels: the longest element of S_n
    w = paff((0, 0, 0), (1, 1, 1), (1, 1, 1))
    assert w.window == (3, 2, 1)


def test_paff_n1():
    assert paff((4,), (2,), (7,)).window == (5,)


def test_double_coset_paper_listing():
    w = AffinePermutation((3, 2, 12, 5))
    coset = double_coset(w, (1, 3), (2, 1, 1))
    assert {v.window for v in coset} == {
        (2, 3, 12, 5), (2, 4, 11, 5), (3, 2, 12, 5),
        (3, 4, 10, 5), (4, 2, 11, 5), (4, 3, 10, 5)}
    lw = w.length()
    assert all(v.length() < lw for v in coset if v != w)


def test_trivial_coset():
    w = AffinePermutation((3, 2, 12, 5))
    assert double_coset(w, (1, 1, 1, 1), (1, 1, 1, 1)) == {w}


def test_coset_min_max_wrapper():
    from qtnabla.affine import coset_min_max
    w = AffinePermutation((3, 2, 12, 5))
    assert coset_min_max(w, (1, 1, 1, 1), (1, 1, 1, 1)) == (w, w)
    wmin, wmax = coset_min_max(w, (1, 3), (2, 1, 1))
    assert wmax == w
    assert wmin.window == (3, 4, 10, 5) and wmin.length() == 4
    assert coset_min_max(w) == left_coset_min_max(w)


def test_left_coset_min_max_figure_pair():
    from qtnabla.affine import rational_area_sequence
    m = (3, 3, 3, 2, 0, 0)
    a = (1, 1, 5, 4, 2, 5)
    w = paff(m, a, (1,) * 6)
    wmin, wmax = left_coset_min_max(w)
    assert wmin.window == (19, 20, 5, 16, 21, 6)
    assert wmax.window == (24, 23, 2, 15, 22, 1)
    assert rational_area_sequence(wmin, 12) == (0, 2, 4, 4, 1, 2)
    assert rational_area_sequence(wmax, 12) == (0, 1, 2, 1, 0, 1)
    diff = tuple(x - y for x, y in zip(rational_area_sequence(wmin, 12),
                                       rational_area_sequence(wmax, 12)))
    assert diff == (0, 1, 2, 3, 1, 1)
    # the sorted edge-class vector is the coarea of the rational path
    assert coarea_path(wmin, 12) == tuple(sorted(wvec(wmin, 12)))
    assert sum(wvec(wmin, 12)) == 30 - dimv(wmin, 12)


def test_left_coset_extremes_are_extreme():
    from qtnabla.affine import young_subgroup
    w = paff((1, 0), (2, 1), (1, 1))
    wmin, wmax = left_coset_min_max(w)
    lengths = {(from_finite(p) * w).length() for p in young_subgroup((w.n,))}
    assert wmin.length() == min(lengths)
    assert wmax.length() == max(lengths)


def test_identity_wvec_zero():
    assert wvec(identity(3), 1) == (0, 0, 0)


def test_verify_paff_sweep():
    report = verify_paff(2, 1, 3, 3)
    assert report["ok"], report["failures"]
    report = verify_paff(3, 1, 2, 3)
    assert report["ok"], report["failures"]


def test_b_poly_degree_matches_dimv():
    for w in iter_wplus(2, 3):
        assert b_poly_degree(w, 1) == dimv(w, 2)
        assert b_poly_degree(w, 2) == dimv(w, 4)


def test_raths_n1():
    series = raths_series(1, 1, 3)
    expected = (ONE / ((ONE - Q) * (ONE - Q).swap_qt())).t_expand(3)
    assert series == expected
