# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for exact integer convolution.

Counts and values are int64 throughout; callers are responsible for
proving that no intermediate quantity can overflow (total output mass
and value magnitudes below 2**63) before entering these kernels.
"""


def dense_accumulate(const long long[::1] av, const long long[::1] ac,
                     const long long[::1] bv, const long long[::1] bc,
                     long long lo, long long[::1] out):
    """out[av[i] + bv[j] - lo] += ac[i] * bc[j] for all i, j."""
    cdef Py_ssize_t i, j, na = av.shape[0], nb = bv.shape[0]
    cdef long long base, ci
    for i in range(na):
        base = av[i] - lo
        ci = ac[i]
        for j in range(nb):
            out[base + bv[j]] += ci * bc[j]


def sum_of_squares(const long long[::1] counts):
    """Exact sum of counts[i]**2 (caller guarantees it fits in int64)."""
    cdef Py_ssize_t i, n = counts.shape[0]
    cdef long long acc = 0
    for i in range(n):
        acc += counts[i] * counts[i]
    return acc
