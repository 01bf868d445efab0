# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernel for multiply-and-reduce in Q[x]/(f).

Coefficients are arbitrary exact Python numbers (Fraction); the win over
the pure-Python version comes from removing interpreter overhead in the
double loop, which dominates the runtime of the sampling test suites.
"""

BACKEND = "cython"


def mulmod(list a, list b, list red):
    """Product of coefficient vectors a, b modulo the minimal polynomial.

    ``red`` holds the reduction rows: red[k] is the coefficient vector of
    x^(n+k) in the power basis 1, x, ..., x^(n-1).
    """
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i, j, k
    cdef list full = [0] * (2 * n - 1)
    cdef object ai
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n):
            full[i + j] = full[i + j] + ai * b[j]
    cdef list out = full[:n]
    cdef object c
    cdef list row
    for k in range(n - 1, 2 * n - 1):
        c = full[k]
        if c == 0:
            continue
        if k < n:
            continue
        row = red[k - n]
        for i in range(n):
            out[i] = out[i] + c * row[i]
    return out


def addmul(list acc, object c, list v):
    """In-place acc += c * v for coefficient vectors; returns acc."""
    cdef Py_ssize_t i, n = len(acc)
    if c == 0:
        return acc
    for i in range(n):
        acc[i] = acc[i] + c * v[i]
    return acc
