"""Pure-Python fallback for the multiply-and-reduce kernel.

Mirrors the API of the compiled module ``_mulmod`` exactly; which one is
in use can be read off ``divherm.kernel.BACKEND``.
"""

BACKEND = "python"


def mulmod(a, b, red):
    """Product of coefficient vectors a, b modulo the minimal polynomial.

    ``red`` holds the reduction rows: red[k] is the coefficient vector of
    x^(n+k) in the power basis 1, x, ..., x^(n-1).
    """
    n = len(a)
    full = [0] * (2 * n - 1)
    for i in range(n):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(n):
            full[i + j] = full[i + j] + ai * b[j]
    out = full[:n]
    for k in range(n, 2 * n - 1):
        c = full[k]
        if c == 0:
            continue
        row = red[k - n]
        for i in range(n):
            out[i] = out[i] + c * row[i]
    return out


def addmul(acc, c, v):
    """In-place acc += c * v for coefficient vectors; returns acc."""
    if c == 0:
        return acc
    for i in range(len(acc)):
        acc[i] = acc[i] + c * v[i]
    return acc
