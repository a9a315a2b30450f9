"""Pure-Python versions of the compiled kernels, same signatures and results.

Used when the extension is not built or ``CTCONG_PURE_PYTHON=1``. Also the
only path for exact (unbounded) arithmetic: pass ``modulus=None``.
"""

from itertools import product


def series_divide(data, shape, offsets, coeffs, inv_lead, modulus):
    """In-place truncated power-series division; see the compiled twin.

    With ``modulus=None`` the arithmetic is exact and ``inv_lead`` must be +-1.
    """
    shape = [int(n) for n in shape]
    ndim = len(shape)
    strides = [1] * ndim
    for j in range(ndim - 2, -1, -1):
        strides[j] = strides[j + 1] * shape[j + 1]
    terms = []
    for u, c in zip(offsets, coeffs):
        u = [int(i) for i in u]
        flat = sum(i * s for i, s in zip(u, strides))
        terms.append((u, flat, int(c)))
    m = modulus
    f = 0
    for idx in product(*[range(n) for n in shape]):
        acc = data[f]
        for u, flat, c in terms:
            for i, lo in zip(idx, u):
                if i < lo:
                    break
            else:
                acc -= c * data[f - flat]
        acc *= inv_lead
        data[f] = acc % m if m is not None else acc
        f += 1


def multinomial_box_sum(bounds, val, unit, inv_unit, p, kpow, power):
    """Sum of multinomial(m)**power over the box ``0 <= m_i < bounds_i`` mod p**kpow."""
    pk = p**kpow
    total = 0
    for idx in product(*[range(int(b)) for b in bounds]):
        s = sum(idx)
        e = (val[s] - sum(val[i] for i in idx)) * power
        if e >= kpow:
            continue
        base = unit[s]
        for i in idx:
            base = base * inv_unit[i] % pk
        total += pow(base, power, pk) * p**e
    return total % pk
