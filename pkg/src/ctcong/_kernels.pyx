# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. ``_kernels_py`` holds the reference versions."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


def series_divide(i64[::1] data, i64[::1] shape, i64[:, ::1] offsets,
                  i64[::1] coeffs, i64 inv_lead, i64 modulus):
    """Divide the box-truncated series ``data`` in place by ``lead + sum coeffs * x^offsets``.

    Cells are visited in row-major order; every offset is nonnegative and
    nonzero, so each read lands on an already-final cell.
    """
    cdef Py_ssize_t ndim = shape.shape[0]
    cdef Py_ssize_t nterms = offsets.shape[0]
    cdef Py_ssize_t ncells = data.shape[0]
    cdef Py_ssize_t f, t, j
    cdef i64 acc, run, m = modulus
    cdef bint ok
    cdef i64 *idx = <i64 *> malloc(ndim * sizeof(i64))
    cdef i64 *stride = <i64 *> malloc(ndim * sizeof(i64))
    cdef i64 *flat = <i64 *> malloc((nterms + 1) * sizeof(i64))
    cdef i64 *neg = <i64 *> malloc((nterms + 1) * sizeof(i64))
    try:
        run = 1
        for j in range(ndim - 1, -1, -1):
            stride[j] = run
            run *= shape[j]
            idx[j] = 0
        for t in range(nterms):
            flat[t] = 0
            for j in range(ndim):
                flat[t] += offsets[t, j] * stride[j]
            neg[t] = (m - coeffs[t] % m) % m
        for f in range(ncells):
            acc = data[f]
            for t in range(nterms):
                ok = True
                for j in range(ndim):
                    if idx[j] < offsets[t, j]:
                        ok = False
                        break
                if ok:
                    acc = (acc + neg[t] * data[f - flat[t]]) % m
            data[f] = acc * inv_lead % m
            # odometer
            j = ndim - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < shape[j]:
                    break
                idx[j] = 0
                j -= 1
    finally:
        free(idx)
        free(stride)
        free(flat)
        free(neg)


def multinomial_box_sum(i64[::1] bounds, i64[::1] val, i64[::1] unit,
                        i64[::1] inv_unit, i64 p, int kpow, int power):
    """Sum of multinomial(m)**power over 0 <= m_i < bounds_i, modulo p**kpow.

    ``val``/``unit``/``inv_unit`` are the p-adic factorial tables mod p**kpow.
    """
    cdef Py_ssize_t v = bounds.shape[0]
    cdef Py_ssize_t j
    cdef i64 pk = 1, total = 0, term, base, e, s, vs
    cdef int q
    cdef i64 *idx = <i64 *> malloc(v * sizeof(i64))
    cdef i64 *ppow = <i64 *> malloc((kpow + 1) * sizeof(i64))
    for j in range(v):
        if bounds[j] <= 0:
            free(idx)
            free(ppow)
            return 0
    try:
        for q in range(kpow):
            pk *= p
        ppow[0] = 1
        for q in range(1, kpow + 1):
            ppow[q] = ppow[q - 1] * p
        for j in range(v):
            idx[j] = 0
        while True:
            s = 0
            vs = 0
            base = 1
            for j in range(v):
                s += idx[j]
                vs += val[idx[j]]
                base = base * inv_unit[idx[j]] % pk
            e = (val[s] - vs) * power
            if e < kpow:
                base = base * unit[s] % pk
                term = 1
                for q in range(power):
                    term = term * base % pk
                term = term * ppow[e] % pk
                total += term
                if total >= pk:
                    total -= pk
            j = v - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < bounds[j]:
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                break
    finally:
        free(idx)
        free(ppow)
    return total
