import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ctcong.ctseq import (
    REGISTRY,
    SequenceSpec,
    UnknownSequence,
    ct_term,
    custom_spec,
    direct_term,
    get_spec,
    has_padic_path,
    partial_sum_exact,
)
from ctcong.laurent import LaurentPoly
from ctcong.numeric import sym_mod

x = LaurentPoly.var("x")


def index_tuples(arity, total):
    for idx in itertools.product(range(total + 1), repeat=arity):
        if sum(idx) <= total:
            yield idx


@pytest.mark.parametrize("sid", sorted(REGISTRY))
def test_constant_term_matches_formula(sid):
    spec = REGISTRY[sid]
    total = {1: 12, 2: 8, 3: 6}.get(spec.arity, 4)
    for idx in index_tuples(spec.arity, total):
        assert ct_term(spec, idx) == direct_term(spec, idx), (sid, idx)


def test_known_terms():
    def first(sid, n=8):
        return [direct_term(get_spec(sid), (i,)) for i in range(n)]

    assert first("central_binomial") == [1, 2, 6, 20, 70, 252, 924, 3432]
    assert first("catalan") == [1, 1, 2, 5, 14, 42, 132, 429]
    assert first("motzkin") == [1, 1, 2, 4, 9, 21, 51, 127]
    assert first("central_trinomial") == [1, 1, 3, 7, 19, 51, 141, 393]
    assert direct_term(get_spec("multinomial3"), (1, 2, 3)) == 60


def test_get_spec():
    assert get_spec("multinomial7").arity == 7
    assert get_spec("multinomial7").vars == tuple(f"x{i}" for i in range(1, 8))
    with pytest.raises(UnknownSequence):
        get_spec("nope")
    with pytest.raises(UnknownSequence):
        get_spec("multinomial1")


def test_spec_validation():
    with pytest.raises(ValueError):
        SequenceSpec("bad", ())
    with pytest.raises(ValueError):
        SequenceSpec("bad", (x,), min_prime=7)


def test_custom_spec_falls_back_to_ct():
    spec = custom_spec([2 + x + x**-1], 1 - x)
    assert [direct_term(spec, (n,)) for n in range(6)] == [1, 1, 2, 5, 14, 42]


@pytest.mark.parametrize(
    "sid,bounds,m,expected",
    [
        ("central_binomial", [5], 25, -1),  # 99
        ("catalan", [5], 25, -2),  # 23
        ("motzkin", [7], 7, -2),  # 89
        ("multinomial3", [3, 3, 3], 27, 1),
    ],
)
def test_partial_sum_examples(sid, bounds, m, expected):
    assert partial_sum_exact(get_spec(sid), bounds, m) == expected


def _oracle_cases():
    for sid in sorted(REGISTRY):
        spec = REGISTRY[sid]
        if not has_padic_path(spec) or spec.arity > 3:
            continue
        for p in (3, 5, 7):
            for k in (1, 2, 3):
                yield sid, p, k


@pytest.mark.parametrize("sid,p,k", list(_oracle_cases()))
def test_exact_and_padic_agree(sid, p, k):
    spec = REGISTRY[sid]
    bounds = [p + i for i in range(spec.arity)]
    m = p**k
    exact = partial_sum_exact(spec, bounds, m, method="exact")
    assert partial_sum_exact(spec, bounds, m, method="padic") == exact
    assert partial_sum_exact(spec, bounds, m, method="padic-python") == exact


@given(st.lists(st.integers(1, 9), min_size=2, max_size=4), st.sampled_from([3, 5, 7]))
def test_multinomial_padic_property(bounds, p):
    spec = get_spec(f"multinomial{len(bounds)}")
    m = p**3
    assert partial_sum_exact(spec, bounds, m, "padic") == partial_sum_exact(spec, bounds, m, "exact")


def test_custom_exact_sum_matches_builtin():
    spec = custom_spec([1 + x + x**-1], 1 - x**2)
    for p in (3, 5, 7, 11):
        for k in (1, 2):
            assert partial_sum_exact(spec, [p], p**k) == partial_sum_exact(get_spec("motzkin"), [p], p**k)


def test_partial_sum_errors():
    spec = get_spec("catalan")
    with pytest.raises(ValueError):
        partial_sum_exact(spec, [0], 5)
    with pytest.raises(ValueError):
        partial_sum_exact(spec, [5], 12, method="padic")
    with pytest.raises(ValueError):
        partial_sum_exact(custom_spec([x]), [5], 5, method="padic")
    with pytest.raises(ValueError):
        partial_sum_exact(spec, [5, 5], 5)
    assert partial_sum_exact(spec, [6], 12) == sym_mod(1 + 1 + 2 + 5 + 14 + 42, 12)
