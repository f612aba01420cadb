from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from qlcm.errors import CoprimalityError, DomainError, UnsupportedBase
from qlcm.progression import (
    GeometricShift,
    cnk,
    f_eval,
    from_geometric,
    gap,
    k_index,
    l_index,
    make_progression,
    term,
    terms,
)
from qlcm.qcalc import q_int

GRID = oracles.valid_grid()
GRID_Q2 = [t for t in GRID if t[0] >= 2]
grid_points = st.sampled_from(GRID)
grid_points_q2 = st.sampled_from(GRID_Q2)


def test_make_progression_ok():
    p = make_progression(2, 1, 0)
    assert (p.q, p.r, p.u0) == (2, 1, 0)


@pytest.mark.parametrize("args, which", [((2, 2, 2), "u0,r"), ((2, 1, 1), "u1,q")])
def test_make_progression_coprimality(args, which):
    with pytest.raises(CoprimalityError) as exc:
        make_progression(*args)
    assert exc.value.which == which


@pytest.mark.parametrize("args", [(0, 1, 0), (2, 0, 1), (2, 1, -1), (2.0, 1, 0)])
def test_make_progression_domain(args):
    with pytest.raises(DomainError):
        make_progression(*args)


def test_u0_zero_forces_r_one():
    for r in range(2, 8):
        with pytest.raises(CoprimalityError):
            make_progression(3, r, 0)


@pytest.mark.parametrize(
    "abq, expected",
    [((1, 1, 2), (2, 1, 2)), ((2, 1, 2), (2, 2, 3)), ((1, -1, 2), (2, 1, 0))],
)
def test_from_geometric(abq, expected):
    gs = GeometricShift(*abq)
    p = from_geometric(gs)
    assert (p.q, p.r, p.u0) == expected
    for n in range(11):
        assert term(p, n) == gs.term(n)


def test_from_geometric_b_zero_is_invalid():
    # b = 0 gives gcd(aq, b) = aq; the image (3, 2, 1) would have gcd(u1, q) = 3
    with pytest.raises(CoprimalityError):
        GeometricShift(1, 0, 3)
    with pytest.raises(CoprimalityError):
        make_progression(3, 2, 1)


@pytest.mark.parametrize("abq", [(1, -2, 2), (0, 1, 2), (2, 2, 3), (1, 2, 2), (1, 1, 1)])
def test_geometric_rejects(abq):
    with pytest.raises(DomainError):
        GeometricShift(*abq)


@given(st.integers(1, 4), st.integers(-4, 6), st.integers(2, 7))
def test_geometric_image_always_valid(a, b, q):
    try:
        gs = GeometricShift(a, b, q)
    except DomainError:
        return
    p = from_geometric(gs)
    assert gcd(p.u0, p.r) == 1 and gcd(p.u1, p.q) == 1


def test_term_values():
    assert term(make_progression(2, 1, 0), 5) == 31
    assert term(make_progression(3, 1, 1), 4) == 41
    for q, r, u0 in GRID:
        assert term(make_progression(q, r, u0), 0) == u0
    with pytest.raises(DomainError):
        term(make_progression(2, 1, 0), -1)


@given(grid_points, st.integers(0, 30), st.integers(0, 30))
def test_terms_agree_with_term(t, a, b):
    p = make_progression(*t)
    lo, hi = min(a, b), max(a, b)
    assert terms(p, lo, hi) == [term(p, i) for i in range(lo, hi + 1)]


def test_gap_values():
    assert gap(make_progression(2, 3, 2), 5, 2) == 84
    assert gap(make_progression(2, 3, 4), 5, 2) == 84
    assert gap(make_progression(3, 1, 1), 1, 4) == 39
    assert gap(make_progression(3, 1, 1), 4, 1) == 39
    assert gap(make_progression(3, 1, 1), 6, 6) == 0


@given(grid_points, st.integers(0, 40), st.integers(0, 40))
def test_gap_identity(t, i, j):
    p = make_progression(*t)
    assert gap(p, i, j) == abs(oracles.u(*t, i) - oracles.u(*t, j))


@given(grid_points, st.integers(0, 40))
def test_coprimality_of_terms(t, n):
    p = make_progression(*t)
    un = term(p, n)
    assert gcd(un, p.r) == 1
    if n >= 1:
        assert gcd(un, p.q) == 1


def test_cnk_values(mersenne):
    assert cnk(mersenne, 4, 3).value == 105
    assert cnk(mersenne, 4, 2).value == 105
    for n in range(1, 8):
        assert cnk(mersenne, n, n).value == term(mersenne, n)
    with pytest.raises(DomainError):
        cnk(mersenne, 3, 0)
    with pytest.raises(DomainError):
        cnk(mersenne, 3, 4)


@given(grid_points, st.integers(1, 20), st.data())
def test_cnk_matches_oracle(t, n, data):
    k = data.draw(st.integers(1, n))
    c = cnk(make_progression(*t), n, k).value
    assert c == oracles.cnk(*t, n, k)
    assert c > 0


@given(grid_points, st.integers(2, 20), st.data())
def test_cnk_ratio_law(t, n, data):
    k = data.draw(st.integers(2, n))
    p = make_progression(*t)
    ratio = cnk(p, n, k).value / cnk(p, n, k - 1).value
    assert ratio == Fraction(q_int(n - k + 1, p.q), term(p, k - 1))


def test_f_eval_values(mersenne, base3):
    assert f_eval(mersenne, 3) == 16
    assert f_eval(mersenne, 0) == Fraction(1, 4)
    assert f_eval(base3, 2) == 15


def test_q1_rejected():
    p = make_progression(1, 2, 1)
    for call in (lambda: f_eval(p, 1), lambda: k_index(p, 3), lambda: l_index(p, 3)):
        with pytest.raises(UnsupportedBase):
            call()


@given(grid_points_q2, st.integers(-5, 30))
def test_f_step_bound(t, x):
    p = make_progression(*t)
    assert p.q * f_eval(p, x - 1) <= f_eval(p, x)


@given(grid_points_q2, st.integers(1, 30), st.data())
def test_threshold_forms_agree(t, n, data):
    k = data.draw(st.integers(1, n))
    p = make_progression(*t)
    assert (f_eval(p, k) <= p.q**n) == (q_int(n - k + 1, p.q) >= term(p, k - 1))


@pytest.mark.parametrize("n, expected", [(4, 3), (5, 3), (2, 2), (1, 1)])
def test_k_index_values(mersenne, n, expected):
    assert k_index(mersenne, n) == expected


def test_k_index_closed_form(mersenne):
    for n in range(1, 60):
        assert k_index(mersenne, n) == n // 2 + 1


def test_k_index_against_scan():
    for t in GRID_Q2:
        p = make_progression(*t)
        for n in range(1, 26):
            k = k_index(p, n)
            assert k == oracles.k_n(*t, n)
            assert k <= n
            assert f_eval(p, k) <= p.q**n < f_eval(p, k + 1)


def test_k_index_can_be_nonpositive():
    # f(1) = u0 (q-1) + 1 = 7 > 2 = q^1
    p = make_progression(2, 1, 6)
    assert k_index(p, 1) <= 0
    assert l_index(p, 1) == 1


def test_l_index_values(mersenne, base3):
    assert l_index(mersenne, 1) == 1
    assert l_index(mersenne, 4) == 3
    assert l_index(base3, 1) == 1
    for t in GRID_Q2:
        p = make_progression(*t)
        for n in range(1, 20):
            assert 1 <= l_index(p, n) <= n
