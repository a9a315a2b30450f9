"""Kernel backend selection.

The compiled extension is preferred; ``CTCONG_PURE_PYTHON=1`` forces the
reference implementation. Exact (``modulus=None``) series work and moduli
too large for 64-bit products always go through the Python kernels.
"""

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

# products of two residues must fit in a signed 64-bit integer
INT64_SAFE_MODULUS = 3_000_000_000


def compiled_available() -> bool:
    return _compiled is not None


def backend_name() -> str:
    return "compiled" if _use_compiled() else "python"


def _use_compiled() -> bool:
    return _compiled is not None and os.environ.get("CTCONG_PURE_PYTHON", "") not in ("1", "true")


def series_divide(data, shape, offsets, coeffs, inv_lead, modulus, force_python=False):
    """Divide ``data`` (flat list) by a factor; returns the new flat list."""
    if (
        not force_python
        and _use_compiled()
        and modulus is not None
        and modulus < INT64_SAFE_MODULUS
    ):
        arr = np.asarray(data, dtype=np.int64).copy()
        offs = np.asarray(offsets, dtype=np.int64).reshape(len(coeffs), len(shape))
        _compiled.series_divide(
            arr,
            np.asarray(shape, dtype=np.int64),
            np.ascontiguousarray(offs),
            np.asarray([c % modulus for c in coeffs], dtype=np.int64),
            int(inv_lead),
            int(modulus),
        )
        return arr.tolist()
    data = list(data)
    _kernels_py.series_divide(data, shape, offsets, coeffs, inv_lead, modulus)
    return data


def multinomial_box_sum(bounds, val, unit, inv_unit, p, kpow, power, force_python=False):
    n = sum(bounds)
    if not force_python and _use_compiled() and p**kpow < INT64_SAFE_MODULUS:
        as64 = lambda xs: np.asarray(xs[: n + 1], dtype=np.int64)
        return int(
            _compiled.multinomial_box_sum(
                np.asarray(bounds, dtype=np.int64),
                as64(val),
                as64(unit),
                as64(inv_unit),
                int(p),
                int(kpow),
                int(power),
            )
        )
    return _kernels_py.multinomial_box_sum(bounds, val, unit, inv_unit, p, kpow, power)
