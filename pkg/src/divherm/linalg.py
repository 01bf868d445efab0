"""Exact linear algebra helpers.

Three layers, all dense and desk-scale:

* rational Gaussian elimination over ``fractions.Fraction``;
* generic elimination over any field-like element type that implements
  ``+ - * /`` and ``is_zero`` (used for matrices over number fields);
* integer lattice routines: Smith normal form with transforms, integer
  linear solve, and Hermite-style lattice membership/equality.
"""

from fractions import Fraction


# ---------------------------------------------------------------------------
# rational elimination


def solve_rational(A, b):
    """Solve A x = b over the rationals; return None if inconsistent.

    A is a list of rows; underdetermined systems return one solution
    (free variables set to zero).
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [u - f * v for u, v in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return x


def kernel_basis_rational(A):
    """Basis of the right kernel of A over the rationals."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [u - f * v for u, v in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][fc]
        basis.append(v)
    return basis


def rank_rational(A):
    n = len(A[0]) if A else 0
    return n - len(kernel_basis_rational(A)) if A else 0


# ---------------------------------------------------------------------------
# generic field elimination (duck-typed entries)


def _is_zero(x):
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z() if callable(z) else z
    return x == 0


def det_generic(M):
    """Determinant by fraction-free-ish Gaussian elimination with division.

    Entries must support +, -, *, / and equality-with-zero via is_zero().
    """
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    det = None
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(M[i][c])), None)
        if p is None:
            return M[0][0] - M[0][0]  # a zero of the right type
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        piv = M[c][c]
        det = piv if det is None else det * piv
        for i in range(c + 1, n):
            if _is_zero(M[i][c]):
                continue
            f = M[i][c] / piv
            M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    if sign < 0:
        det = (M[0][0] - M[0][0]) - det
    return det


def invert_generic(M, one):
    """Inverse of a square matrix with field-like entries; None if singular."""
    n = len(M)
    zero = one - one
    A = [row[:] + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if not _is_zero(A[i][c])), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        inv = one / A[c][c]
        A[c] = [v * inv for v in A[c]]
        for i in range(n):
            if i != c and not _is_zero(A[i][c]):
                f = A[i][c]
                A[i] = [u - f * v for u, v in zip(A[i], A[c])]
    return [row[n:] for row in A]


def mat_mul_generic(A, B):
    n, k, m = len(A), len(B), len(B[0])
    return [
        [sum((A[i][t] * B[t][j] for t in range(1, k)), A[i][0] * B[0][j]) for j in range(m)]
        for i in range(n)
    ]


# ---------------------------------------------------------------------------
# integer lattice routines


def smith_normal_form(A):
    """Smith normal form with transforms: returns (D, U, V), U*A*V = D.

    A is a list of integer rows; D has the elementary divisors on the
    diagonal, each dividing the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row i -= q * row j
        D[i] = [a - q * b for a, b in zip(D[i], D[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(m):
            D[r][i] -= q * D[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # find a pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0:
                    if piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    row_op(i, t, q)
                    if D[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    col_op(j, t, q)
                    if D[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        # divisibility sweep: fold any entry not divisible by the pivot
        d = D[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if D[i][j] % d != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_op(t, bad, -1)  # add row `bad` into row t, restart block
            continue
        t += 1
    for i in range(min(m, n)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    return D, U, V


def elementary_divisors(A):
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i] != 0]


def solve_integer(A, b):
    """One integer solution x of A x = b, or None.

    A: list of integer rows (m x n), b: length-m integer vector.
    """
    m = len(A)
    D, U, V = smith_normal_form(A)
    n = len(A[0]) if m else 0
    c = [sum(U[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(min(m, n)):
        d = D[i][i]
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    for i in range(min(m, n), m):
        if c[i] != 0:
            return None
    return [sum(V[i][k] * y[k] for k in range(n)) for i in range(n)]


def lattice_membership(gens, v):
    """Is rational vector v in the Z-span of the rational vectors `gens`?"""
    if not gens:
        return all(x == 0 for x in v)
    den = 1
    for row in list(gens) + [list(v)]:
        for x in row:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    A = [[int(Fraction(x) * den) for x in row] for row in gens]
    bb = [int(Fraction(x) * den) for x in v]
    # columns are unknown multipliers: solve gens^T c = v
    At = [list(col) for col in zip(*A)]
    return solve_integer(At, bb) is not None


def lattice_equal(gens1, gens2):
    """Do two generating sets span the same Z-lattice?"""
    return all(lattice_membership(gens1, v) for v in gens2) and all(
        lattice_membership(gens2, v) for v in gens1
    )


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def hnf_rows(rows):
    """Row Hermite normal form of an integer matrix; returns the nonzero
    rows (positive leading entries, entries above a pivot reduced mod it).
    """
    A = [list(r) for r in rows]
    if not A:
        return []
    m, n = len(A), len(A[0])
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if A[i][c]:
                piv = i
                break
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            while A[i][c]:
                q = A[r][c] // A[i][c]
                A[r] = [x - q * y for x, y in zip(A[r], A[i])]
                A[r], A[i] = A[i], A[r]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        for i in range(r):
            q = A[i][c] // A[r][c]
            if q:
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
        r += 1
    return [row for row in A[:r]]
