import random

import pytest

from ctcong import _accel, _kernels_py
from ctcong.numeric import padic_table, sym_mod
from ctcong.ctseq import get_spec, partial_sum_exact

needs_ext = pytest.mark.skipif(not _accel.compiled_available(), reason="extension not built")


def random_division(rng, nvars):
    shape = [rng.randint(1, 6) for _ in range(nvars)]
    size = 1
    for s in shape:
        size *= s
    m = rng.choice([7, 101, 65537, 2_147_483_647])
    data = [rng.randrange(m) for _ in range(size)]
    offsets, coeffs = [], []
    for _ in range(rng.randint(0, 4)):
        e = tuple(rng.randint(0, 2) for _ in range(nvars))
        if any(e) and e not in offsets:
            offsets.append(e)
            coeffs.append(rng.randrange(m))
    inv = rng.randrange(1, m)
    return data, shape, offsets, coeffs, inv, m


@needs_ext
@pytest.mark.parametrize("seed", range(40))
def test_series_divide_backends_agree(seed):
    rng = random.Random(seed)
    args = random_division(rng, rng.randint(1, 4))
    compiled = _accel.series_divide(*args)
    python = _accel.series_divide(*args, force_python=True)
    assert compiled == python


@needs_ext
@pytest.mark.parametrize("p,k,power", [(3, 1, 1), (3, 3, 1), (5, 3, 2), (7, 2, 1), (13, 3, 2)])
def test_box_sum_backends_agree(p, k, power):
    rng = random.Random(p * 100 + k)
    bounds = [rng.randint(1, 2 * p) for _ in range(3)]
    val, unit, inv = padic_table(p, k).tables(sum(bounds))
    a = _accel.multinomial_box_sum(bounds, val, unit, inv, p, k, power)
    b = _accel.multinomial_box_sum(bounds, val, unit, inv, p, k, power, force_python=True)
    assert a == b


def test_exact_series_divide_by_unit():
    # 1 / (1 + x) over integers: 1, -1, 1, -1
    data = [1, 0, 0, 0]
    _kernels_py.series_divide(data, [4], [(1,)], [1], 1, None)
    assert data == [1, -1, 1, -1]


def test_env_var_forces_python(monkeypatch):
    monkeypatch.setenv("CTCONG_PURE_PYTHON", "1")
    assert _accel.backend_name() == "python"
    assert partial_sum_exact(get_spec("multinomial3"), [5, 5, 5], 125) == sym_mod(
        partial_sum_exact(get_spec("multinomial3"), [5, 5, 5], 125, method="exact"), 125
    )


def test_large_modulus_uses_python_path():
    m = 10**12 + 39
    data = [1, 0, 0, 0, 0]
    out = _accel.series_divide(data, [5], [(1,)], [m - 1], 1, m)
    assert out == [1, 1, 1, 1, 1]
