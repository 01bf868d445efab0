"""Moduli-lattice machinery: skew-hermitian forms T, the Riemann form E,
polarization type via Smith reduction, the numeric representation Phi, and
lattice splittings.

The Riemann form on D^2 is E(alpha, beta) = Tr_{D|Q}(sum_ij alpha_i t_ij
J(beta_j)) with T = (t_ij) skew-hermitian (T = -T^*); on the Z-lattice
spanned by an order in D it has an integer Gram matrix after primitive
scaling, whose elementary divisors give the polarization type.
"""

from fractions import Fraction

from .linalg import (
    hnf_rows,
    lattice_equal,
    lattice_membership,
    rank_rational,
    smith_normal_form,
)

import numpy as np


def field_trace(x):
    """Trace to Q of a number field element (regular representation)."""
    field = x.field
    total = Fraction(0)
    basis = [field.one()]
    for _ in range(field.degree - 1):
        basis.append(basis[-1] * field.gen())
    for j, b in enumerate(basis):
        total += (x * b).coords[j]
    return total


class SkewHermitianT:
    """A 2x2 skew-hermitian matrix over D (T = -T^* exactly)."""

    def __init__(self, plane, entries, case):
        self.plane = plane
        self.entries = [list(row) for row in entries]
        self.case = case
        J = plane.algebra.involute
        for i in range(2):
            for j in range(2):
                if J(self.entries[j][i]) != -self.entries[i][j]:
                    raise ValueError("matrix is not skew-hermitian")

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]


def make_T(plane, case, element=None):
    """The standard skew-hermitian T for the plane.

    case "d1" or "d_ge3": T = sqrt(-eta) * H; case "d2a": T_a = sqrt(a) H;
    case "d2b": T_b = e H; case "custom": element * H for a supplied skew
    element.
    """
    alg = plane.algebra
    zero = alg.zero()
    if case in ("d1", "d_ge3"):
        if alg.sqrt_minus_eta is None:
            raise ValueError("sqrt(-eta) is not registered")
        t = alg.from_K(alg.sqrt_minus_eta)
    elif case == "d2a":
        t = alg.from_L(alg.L.gen())
    elif case == "d2b":
        t = alg.e()
    elif case == "custom":
        if element is None:
            raise ValueError("custom case needs an element")
        t = element
    else:
        raise ValueError("unknown case %r" % case)
    return SkewHermitianT(plane, [[zero, t], [t, zero]], case)


def riemann_form(plane, T, alpha, beta):
    """E(alpha, beta) = Tr_{D|Q}(sum alpha_i t_ij J(beta_j)), exact."""
    J = plane.algebra.involute
    a = _as_pair(plane, alpha)
    b = _as_pair(plane, beta)
    total = None
    for i in range(2):
        for j in range(2):
            term = a[i] * T[i, j] * J(b[j])
            total = term if total is None else total + term
    return field_trace(plane.algebra.reduced_trace(total))


def _as_pair(plane, v):
    if hasattr(v, "x1"):
        return (v.x1, v.x2)
    return (plane._coerce(v[0]), plane._coerce(v[1]))


class LatticeSpec:
    """A Z-basis of an order in D together with the ambient plane."""

    def __init__(self, plane, order_basis=None, x_vectors=None):
        self.plane = plane
        self.order_basis = list(order_basis or plane.order_basis())
        self.x_vectors = x_vectors
        self.validate()

    def validate(self):
        coords = [b.q_coords() for b in self.order_basis]
        if rank_rational(coords) != len(coords):
            raise ValueError("order basis is not Z-linearly independent")
        for a in self.order_basis:
            for b in self.order_basis:
                if not lattice_membership(coords, (a * b).q_coords()):
                    raise ValueError(
                        "order basis is not multiplicatively closed"
                    )
        return True


def polarization_type(lat, T):
    """Gram matrix of E on the Z-basis of order^2, primitively scaled,
    with its elementary divisors."""
    plane = lat.plane
    basis = []
    zero = plane.algebra.zero()
    for b in lat.order_basis:
        basis.append((b, zero))
    for b in lat.order_basis:
        basis.append((zero, b))
    n = len(basis)
    gram = [
        [riemann_form(plane, T, basis[i], basis[j]) for j in range(n)]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if gram[i][j] != -gram[j][i]:
                raise AssertionError("Riemann form is not alternating")
    num_gcd, den_lcm = 0, 1
    for row in gram:
        for x in row:
            num_gcd = _gcd(num_gcd, x.numerator)
            den_lcm = den_lcm * x.denominator // _gcd(den_lcm, x.denominator)
    if num_gcd == 0:
        return {"gram": gram, "scale": None, "elementary_divisors": [],
                "degenerate": True, "principal": False}
    scale = Fraction(num_gcd, den_lcm)
    scaled = [[int(x / scale) for x in row] for row in gram]
    D, _, _ = smith_normal_form(scaled)
    divisors = [D[i][i] for i in range(min(n, n)) if D[i][i] != 0]
    det = _int_det(scaled)
    return {
        "gram": scaled,
        "scale": scale,
        "elementary_divisors": divisors,
        "degenerate": det == 0 or len(divisors) < n,
        "principal": det != 0 and all(e == 1 for e in divisors),
    }


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _int_det(A):
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        for r in range(col + 1, n):
            f = M[r][col] / M[col][col]
            for c in range(col, n):
                M[r][c] -= f * M[col][c]
    return int(det)


class PhiRealization:
    """Numeric realization of D acting on D^2 as complex N x N matrices.

    The real vector space D^2 (x) R carries the complex structure given by
    right multiplication by iota (iota = sqrt(-eta)/sqrt(eta) for second
    kind, iota = ec/sqrt(ab) for quaternions); left multiplications commute
    with it and restrict to the +i eigenspace, giving Phi.
    """

    def __init__(self, plane, tolerance=1e-9):
        self.plane = plane
        self.algebra = plane.algebra
        self.tolerance = tolerance
        alg = self.algebra
        self.basis = alg.q_basis()
        self.dimD = len(self.basis)
        self._coords = [b.q_coords() for b in self.basis]
        if alg.involution.kind == "first":
            a_val = -Fraction(alg.L.minpoly[0])
            b_val = Fraction(alg.gamma.coords[0])
            iota = alg.e() * alg.from_L(alg.L.gen())  # e*c, square -ab
            norm = float(a_val * b_val)
            if norm <= 0:
                raise ValueError("quaternion data is not totally indefinite")
            Jmat = self._right_mult_matrix(iota) / np.sqrt(norm)
        else:
            if alg.sqrt_minus_eta is None:
                raise ValueError("sqrt(-eta) is not registered")
            iota = alg.from_K(alg.sqrt_minus_eta)
            Jmat = self._right_mult_matrix(iota) / np.sqrt(float(alg.eta))
        if np.linalg.norm(Jmat @ Jmat + np.eye(2 * self.dimD)) > 1e-8:
            raise ValueError("complex structure does not square to -1")
        vals, vecs = np.linalg.eig(Jmat)
        cols = [k for k in range(len(vals)) if abs(vals[k] - 1j) < 1e-6]
        self.N = len(cols)
        if self.N != self.dimD:
            raise ValueError("+i eigenspace has unexpected dimension")
        self.V = vecs[:, cols]
        # the +/- i eigenspaces are conjugate but not orthogonal; use a
        # full solve against [V, conj(V)] to read off +i components
        self._full_inv = np.linalg.inv(
            np.hstack([self.V, self.V.conj()])
        )

    def _coords_of(self, x):
        return x.q_coords()

    def _ambient_matrix(self, x, side):
        """Real matrix of left/right multiplication by x on D^2."""
        n = self.dimD
        M = np.zeros((2 * n, 2 * n))
        for j, b in enumerate(self.basis):
            prod = x * b if side == "left" else b * x
            co = self._coords_of(prod)
            for i in range(n):
                M[i, j] = float(co[i])
                M[n + i, n + j] = float(co[i])
        return M

    def _right_mult_matrix(self, x):
        return self._ambient_matrix(x, "right")

    def phi(self, a):
        """Complex N x N matrix of left multiplication by a on D^2."""
        M = self._ambient_matrix(a, "left")
        return (self._full_inv @ (M @ self.V))[: self.N]

    def vector_numeric(self, v):
        """Complex coordinates of a pair in D^2."""
        pair = _as_pair(self.plane, v)
        real = np.array(
            [float(c) for c in pair[0].q_coords()]
            + [float(c) for c in pair[1].q_coords()]
        )
        return (self._full_inv @ real)[: self.N]


def phi_numeric(plane, a, realization=None):
    real = realization or PhiRealization(plane)
    return real.phi(a)


def split_quaternion_basis(plane):
    """The split subfield L' = k(ec) of a quaternion plane, with c.

    Verifies (ec)^2 = -ab, c(ec) = -a e, and D = L' + c L' as an exact
    direct sum of k-modules.
    """
    alg = plane.algebra
    if alg.d != 2 or alg.involution.kind != "first":
        raise ValueError("split_quaternion_basis needs a quaternion plane")
    a_val = -Fraction(alg.L.minpoly[0])
    b_val = Fraction(alg.gamma.coords[0])
    c = alg.from_L(alg.L.gen())
    e = alg.e()
    ec = e * c
    if ec * ec != alg.one() * (-a_val * b_val):
        raise AssertionError("(ec)^2 != -ab")
    if c * ec != e * (-a_val):
        raise AssertionError("c(ec) != -a e")
    Lp_basis = [alg.one(), ec]
    full = [u.q_coords() for u in Lp_basis] + [
        (c * u).q_coords() for u in Lp_basis
    ]
    if rank_rational(full) != 4:
        raise AssertionError("L' + cL' is not a direct sum spanning D")
    return {"L_basis": Lp_basis, "c": c, "minus_ab": -a_val * b_val}


def _pair_mult(a, vec):
    return (a * vec[0], a * vec[1])


def _pair_coords(pair):
    return list(pair[0].q_coords()) + list(pair[1].q_coords())


def lattice_splitting(plane, x_vectors):
    """Decompose Lambda' = Delta' x as a direct sum of d O_L-stable
    sublattices (L' = k(ec) in the quaternion case)."""
    alg = plane.algebra
    x = [_as_pair(plane, v) for v in [x_vectors[0], x_vectors[1]]]
    if alg.involution.kind == "first":
        data = split_quaternion_basis(plane)
        subfield_basis = data["L_basis"]
        steps = [alg.one(), data["c"]]
        gen = subfield_basis[1]  # ec generates L' over k
    else:
        subfield_basis = [alg.from_L(alg.L.one())]
        th = alg.from_L(alg.L.gen())
        for _ in range(alg.L.degree - 1):
            subfield_basis.append(subfield_basis[-1] * th)
        steps = [alg.one()]
        for _ in range(alg.d - 1):
            steps.append(steps[-1] * alg.e())
        gen = th
    # x entries must lie in the subfield span
    span = [u.q_coords() for u in subfield_basis]
    for pair in x:
        for entry in pair:
            if not _in_q_span(span, entry.q_coords()):
                raise ValueError("x has entries outside the splitting subfield")
    summands = []
    for step in steps:
        gens = []
        for u in subfield_basis:
            for pair in x:
                gens.append(_pair_coords(_pair_mult(step * u, pair)))
        summands.append(gens)
    ranks = [rank_rational(g) for g in summands]
    union = [row for g in summands for row in g]
    direct = rank_rational(union) == sum(ranks)
    # Lambda' from the Delta' order basis (the natural order for d >= 3,
    # O_{L'} + c O_{L'} in the quaternion case)
    if alg.involution.kind == "first":
        order = [s * u for s in steps for u in subfield_basis]
    else:
        order = alg.q_basis()
    lam_gens = []
    for b in order:
        for pair in x:
            lam_gens.append(_pair_coords(_pair_mult(b, pair)))
    spans_lambda = lattice_equal(union, lam_gens)
    # O_L-stability of each summand: multiplication by the subfield
    # generator (acting through Phi, i.e. on the left) preserves it
    stable = True
    offender = None
    for idx, (step, gens) in enumerate(zip(steps, summands)):
        for u in subfield_basis:
            for pair in x:
                moved = _pair_coords(_pair_mult(gen * step * u, pair))
                if not lattice_membership(gens, moved):
                    stable = False
                    offender = (idx, str(u))
    return {
        "summands": len(summands),
        "ranks": ranks,
        "direct_sum": direct,
        "spans_lambda_prime": spans_lambda,
        "ol_stable": stable,
        "offender": offender,
    }


def _in_q_span(span, v):
    return rank_rational(span) == rank_rational(span + [list(v)])


def delta_prime_index(plane):
    """Index of Delta' = O_{L'} + c O_{L'} in the natural order Delta
    (quaternion case), as |det| of the change of basis."""
    alg = plane.algebra
    data = split_quaternion_basis(plane)
    delta = [b.q_coords() for b in alg.q_basis()]
    prime = [u.q_coords() for u in data["L_basis"]] + [
        (data["c"] * u).q_coords() for u in data["L_basis"]
    ]
    from .linalg import solve_rational

    n = len(delta)
    A = [[delta[j][i] for j in range(n)] for i in range(len(delta[0]))]
    M = []
    for row in prime:
        M.append([Fraction(c) for c in solve_rational(A, row)])
    det = Fraction(1)
    mat = [row[:] for row in M]
    for col in range(n):
        piv = next((r for r in range(col, n) if mat[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        for r in range(col + 1, n):
            f = mat[r][col] / mat[col][col]
            for c2 in range(col, n):
                mat[r][c2] -= f * mat[col][c2]
    return abs(det)
