import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctcong.laurent import ONE, LaurentPoly
from ctcong.numeric import sym_mod
from ctcong.series import (
    NonUnitConstantTerm,
    OutOfBox,
    diagonal,
    invert_product,
    invert_unit,
    prepare_rational,
    rational_ct,
)

x, y = LaurentPoly.var("x"), LaurentPoly.var("y")
xi, yi = LaurentPoly.var("x", -1), LaurentPoly.var("y", -1)


def truncate(P, vars, box):
    terms = {e: c for e, c in P.in_vars(vars).items() if all(0 <= i <= b for i, b in zip(e, box))}
    return LaurentPoly(terms, vars)


def naive_inverse(R, vars, box):
    """1/R as sum of (1 - R)^j; R must have constant term 1."""
    assert R.constant_term() == 1
    E = 1 - R
    total, power = ONE, ONE
    for _ in range(sum(box)):
        power = truncate(power * E, vars, box)
        total = total + power
    return truncate(total, vars, box)


@st.composite
def unit_polys(draw, vars=("x", "y"), max_deg=2):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in vars]).filter(any)
    terms = draw(st.dictionaries(exps, st.integers(-4, 4), max_size=4))
    terms[(0,) * len(vars)] = 1
    return LaurentPoly(terms, vars)


@given(unit_polys(), st.integers(0, 6), st.integers(0, 6))
def test_inverse_matches_naive_oracle(R, bx, by):
    S = invert_unit(R, None, (bx, by), ("x", "y"))
    expect = naive_inverse(R, ("x", "y"), (bx, by))
    for e in itertools.product(range(bx + 1), range(by + 1)):
        assert S.coeff(e) == expect.in_vars(("x", "y")).get(e, 0)


@given(unit_polys(), st.sampled_from([5, 7, 101]))
def test_inverse_times_r_is_one_in_box(R, m):
    box = (5, 4)
    S = invert_unit(R, m, box, ("x", "y"))
    series = LaurentPoly(S.coefficients(), ("x", "y"))
    prod = truncate(series * R, ("x", "y"), box).mod_reduce(m)
    assert prod == ONE


@given(unit_polys(), unit_polys(), st.sampled_from([7, 11]))
def test_invert_product_equals_inverse_of_product(A, B, m):
    box = (4, 4)
    chained = invert_product([A, B], m, box, ("x", "y"))
    direct = invert_unit(A * B, m, box, ("x", "y"))
    assert chained.coefficients() == direct.coefficients()


def test_univariate_examples():
    S = invert_unit(1 + x + x**2, None, 8)
    assert [S.coeff((n,)) for n in range(9)] == [1, -1, 0, 1, -1, 0, 1, -1, 0]
    S = invert_unit(1 + x**2, None, 6)
    assert [S.coeff((n,)) for n in range(7)] == [1, 0, -1, 0, 1, 0, -1]


def test_unit_check():
    with pytest.raises(NonUnitConstantTerm):
        invert_unit(2 + x, None, 3)
    with pytest.raises(NonUnitConstantTerm):
        invert_unit(5 + x, 5, 3)
    assert invert_unit(2 + x, 7, 3).coeff((0,)) == sym_mod(pow(2, -1, 7), 7)


def test_out_of_box():
    S = invert_unit(1 + x, None, 3)
    with pytest.raises(OutOfBox):
        S.coeff((4,))
    assert S.coeff({"x": 3}) == -1


def test_central_binomial_instance():
    # sum_{n<7} C(2n, n) mod 7 as CT[(B^7 - 1)/(B - 1)] with B(x^7) after Frobenius
    B = 2 + x + xi
    numer = B.frobenius(7) - 1
    assert rational_ct(numer, [B - 1], 7) == 1


def test_bivariate_instance():
    P, Q = (1 + y) * (1 + xi), (1 + x) * (1 + yi)
    numer = (P.frobenius(5) - 1) * (Q.frobenius(5) - 1)
    assert rational_ct(numer, [P - 1, Q - 1], 5) == -1


@given(st.integers(0, 5), st.integers(0, 5))
def test_larger_box_cannot_change_result(bx, by):
    P, Q = (1 + y) * (1 + xi), (1 + x) * (1 + yi)
    numer = (P.frobenius(7) - 1) * (Q.frobenius(7) - 1)
    prep = prepare_rational(numer, [P - 1, Q - 1], 7)
    base = rational_ct(numer, [P - 1, Q - 1], 7)
    grown = tuple(b + d for b, d in zip(prep.box, (bx, by)))
    assert rational_ct(numer, [P - 1, Q - 1], 7, box=grown) == base


def test_box_comes_from_contributing_terms():
    prep = prepare_rational(x**-3 + x**5 * y**-2, [1 + x], None)
    assert prep.box == (3, 0)


def test_diagonal_recurrence():
    S = invert_product([1 + y + x * y, 1 + x + x * y], None, 30, ("x", "y"))
    a = [diagonal(S, n) for n in range(31)]
    assert a[:2] == [1, -1]
    for n in range(29):
        assert a[n + 2] + a[n + 1] + a[n] == 0


def test_diagonal_mod_matches_exact():
    factors = [1 + y + x * y, 1 + x + x * y]
    exact = invert_product(factors, None, 12, ("x", "y"))
    modular = invert_product(factors, 10**9 + 7, 12, ("x", "y"))
    assert all(diagonal(exact, n) == diagonal(modular, n) for n in range(13))
