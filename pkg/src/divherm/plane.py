"""The hyperbolic plane (D^2, h) over a cyclic division algebra with
involution, with h given by the matrix [[0,1],[1,0]]:

    h(x, y) = x1*J(y2) + x2*J(y1).

Vectors are rows and matrices act from the right throughout.
"""

from fractions import Fraction

from .algebras import AlgebraElement, CyclicAlgebra
from .fields import Automorphism, FieldElement, NumberField, TowerMap
from .linalg import (
    det_generic,
    kernel_basis_rational,
    lattice_membership,
    solve_integer,
)


class PlaneVector:
    __slots__ = ("plane", "x1", "x2")

    def __init__(self, plane, x1, x2):
        self.plane = plane
        self.x1 = x1
        self.x2 = x2

    def __eq__(self, other):
        return (
            isinstance(other, PlaneVector)
            and other.plane is self.plane
            and self.x1 == other.x1
            and self.x2 == other.x2
        )

    def __hash__(self):
        return hash((id(self.plane), self.x1, self.x2))

    def __mul__(self, g):
        """Row-vector action v * g."""
        if not isinstance(g, GroupMatrix) or g.plane is not self.plane:
            raise ValueError("plane mismatch")
        return PlaneVector(self.plane, self.x1 * g.a + self.x2 * g.c, self.x1 * g.b + self.x2 * g.d)

    def is_zero(self):
        return self.x1.is_zero() and self.x2.is_zero()

    def to_json(self):
        return {
            "algebra": self.plane.algebra.label,
            "xi1": self.x1.to_json(),
            "xi2": self.x2.to_json(),
        }

    def __repr__(self):
        return "PlaneVector(%r, %r)" % (self.x1, self.x2)


class GroupMatrix:
    __slots__ = ("plane", "a", "b", "c", "d")

    def __init__(self, plane, a, b, c, d):
        self.plane = plane
        self.a, self.b, self.c, self.d = a, b, c, d

    def __mul__(self, other):
        if not isinstance(other, GroupMatrix) or other.plane is not self.plane:
            raise ValueError("plane mismatch")
        return GroupMatrix(
            self.plane,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __eq__(self, other):
        return (
            isinstance(other, GroupMatrix)
            and other.plane is self.plane
            and self.a == other.a
            and self.b == other.b
            and self.c == other.c
            and self.d == other.d
        )

    def __hash__(self):
        return hash((id(self.plane), self.a, self.b, self.c, self.d))

    def star(self):
        """Conjugate transpose under the involution."""
        J = self.plane.J
        return GroupMatrix(self.plane, J(self.a), J(self.c), J(self.b), J(self.d))

    def inverse(self):
        plane = self.plane
        if plane.is_unitary(self):
            s = self.star()
            # g^{-1} = H g* H for unitary g
            return GroupMatrix(plane, s.d, s.c, s.b, s.a)
        alg = plane.algebra
        blocks = plane._block_rep(self)
        from .linalg import invert_generic

        inv = invert_generic(blocks, alg.L.one())
        if inv is None:
            raise ZeroDivisionError("matrix is singular")
        n = alg.d
        parts = []
        for bi in range(2):
            for bj in range(2):
                sub = [[inv[bi * n + r][bj * n + c] for c in range(n)] for r in range(n)]
                x = alg.coords_from_rep(sub)
                if x is None:
                    raise ArithmeticError("inverse blocks not in the algebra image")
                parts.append(x)
        return GroupMatrix(plane, parts[0], parts[1], parts[2], parts[3])

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def to_json(self):
        return {
            "algebra": self.plane.algebra.label,
            "entries": [e.to_json() for e in self.entries()],
        }

    def __repr__(self):
        return "GroupMatrix(%r, %r, %r, %r)" % self.entries()


class HyperbolicPlane:
    def __init__(self, algebra):
        if algebra.involution is None:
            raise ValueError("algebra needs a registered involution")
        self.algebra = algebra
        self.J = algebra.involute

    # -- constructors --------------------------------------------------

    def vector(self, x1, x2):
        return PlaneVector(self, self._coerce(x1), self._coerce(x2))

    def matrix(self, a, b, c, d):
        return GroupMatrix(self, *(self._coerce(v) for v in (a, b, c, d)))

    def identity(self):
        one, zero = self.algebra.one(), self.algebra.zero()
        return GroupMatrix(self, one, zero, zero, one)

    def _coerce(self, v):
        if isinstance(v, AlgebraElement):
            if v.algebra is not self.algebra:
                raise ValueError("algebra mismatch")
            return v
        if isinstance(v, FieldElement):
            if v.field is self.algebra.L:
                return self.algebra.from_L(v)
            if v.field is self.algebra.K:
                return self.algebra.from_K(v)
            raise ValueError("field element not in L or K")
        return self.algebra.from_K(Fraction(v))

    # -- the form ------------------------------------------------------

    def herm_form(self, x, y):
        if x.plane is not self or y.plane is not self:
            raise ValueError("plane mismatch")
        return x.x1 * self.J(y.x2) + x.x2 * self.J(y.x1)

    def is_isotropic(self, x):
        return self.herm_form(x, x).is_zero()

    def is_unitary(self, g):
        J = self.J
        # g H g* = H row by row: h(r1,r1)=0, h(r1,r2)=1, h(r2,r2)=0
        r1 = PlaneVector(self, g.a, g.b)
        r2 = PlaneVector(self, g.c, g.d)
        one = self.algebra.one()
        return (
            self.herm_form(r1, r1).is_zero()
            and self.herm_form(r2, r2).is_zero()
            and self.herm_form(r1, r2) == one
        )

    def _block_rep(self, g):
        alg = self.algebra
        n = alg.d
        reps = [[alg.matrix_rep(g.a), alg.matrix_rep(g.b)], [alg.matrix_rep(g.c), alg.matrix_rep(g.d)]]
        out = []
        for bi in range(2):
            for r in range(n):
                out.append(reps[bi][0][r] + reps[bi][1][r])
        return out

    def is_special(self, g):
        return det_generic(self._block_rep(g)) == self.algebra.L.one()

    def dieudonne_expression(self, g):
        """Reduced norm of a*d - a*c*a^{-1}*b; defined when a is invertible."""
        a_inv = self.algebra.inverse(g.a)
        x = g.a * g.d - g.a * g.c * a_inv * g.b
        return self.algebra.reduced_norm(x)

    # -- SU <-> SL2 in the field case (d = 1) ----------------------------

    def _require_d1(self):
        if self.algebra.d != 1:
            raise ValueError("field-case operation requires d=1")
        if self.algebra.sqrt_minus_eta is None:
            raise ValueError("sqrt(-eta) not registered")

    def su_sl2_iso(self, m, direction):
        self._require_d1()
        alg = self.algebra
        s = alg.from_K(alg.sqrt_minus_eta)
        if direction == "from_sl2":
            al, be, ga, de = (Fraction(v) for row in m for v in row)
            if al * de - be * ga != 1:
                raise ValueError("determinant must be 1")
            half = Fraction(1, 2)
            g = GroupMatrix(
                self,
                alg.from_K(de),
                alg.inverse(s) * (2 * ga),
                s * (be * half),
                alg.from_K(al),
            )
            return g
        if direction == "to_sl2":
            g = m
            if not (self.is_unitary(g) and self.is_special(g)):
                raise ValueError("matrix is not in SU")
            s_inv = alg.inverse(s)
            half = Fraction(1, 2)
            al, de = g.d, g.a
            be = g.c * s_inv * 2
            ga = g.b * s * half
            out = []
            for x in (al, be, ga, de):
                z = x.coords[0]
                if not z.is_rational():
                    raise ValueError("entry not of the Eq-shape over k")
                out.append(z.rational_value())
            al, be, ga, de = out
            if al * de - be * ga != 1:
                raise ValueError("image determinant is not 1")
            return [[al, be], [ga, de]]
        raise ValueError("direction must be to_sl2 or from_sl2")

    # -- stabilizers ------------------------------------------------------

    def stabilizer_membership(self, g, which):
        if which == "parabolic":
            return g.c.is_zero() and self.is_unitary(g)
        if which == "compact":
            return g.a == g.d and g.b == g.c and self.is_unitary(g)
        raise ValueError("which must be parabolic or compact")

    def skew_basis(self):
        """Q-basis of {b in D : b + J(b) = 0}."""
        alg = self.algebra
        basis = alg.q_basis()
        m = len(basis)
        cols = [(b + self.J(b)).q_coords() for b in basis]
        A = [list(r) for r in zip(*cols)]
        vs = kernel_basis_rational(A)
        out = []
        for v in vs:
            acc = alg.zero()
            for c, b in zip(v, basis):
                if c != 0:
                    acc = acc + b * c
            out.append(acc)
        return out

    def unipotent_dimension(self):
        if self.algebra.involution.kind != "second":
            raise ValueError("requires a second-kind involution")
        return len(self.skew_basis())

    # -- isotropic completion ----------------------------------------------

    def complete_isotropic(self, xi):
        if xi.is_zero():
            raise ValueError("zero vector")
        if not self.is_isotropic(xi):
            raise ValueError("vector is not isotropic")
        alg = self.algebra
        if not xi.x1.is_zero():
            top = (alg.zero(), alg.inverse(self.J(xi.x1)))
        else:
            top = (alg.inverse(self.J(xi.x2)), alg.zero())
        M = GroupMatrix(self, top[0], top[1], xi.x1, xi.x2)
        if not self.is_unitary(M):
            raise ArithmeticError("completion failed unitarity")
        return M

    def integral_complete(self, xi, bezout):
        """Unitary completion with entries staying in the order, given a
        witness (x, y) with xi1*x + xi2*y = 1.
        """
        if not self.is_isotropic(xi):
            raise ValueError("vector is not isotropic")
        x, y = bezout
        if xi.x1 * x + xi.x2 * y != self.algebra.one():
            raise ValueError("bezout witness fails xi1*x + xi2*y = 1")
        J = self.J
        xp = PlaneVector(self, J(y), J(x))
        eps = self.herm_form(xp, xp)
        if not eps.is_zero():
            # correction: xi'' = xi' - delta * xi with delta = xi1'*J(xi2'),
            # which satisfies delta + J(delta) = eps
            delta = xp.x1 * J(xp.x2)
            xp = PlaneVector(self, xp.x1 - delta * xi.x1, xp.x2 - delta * xi.x2)
        if not self.herm_form(xp, xp).is_zero():
            raise ArithmeticError("corrected row is not isotropic")
        if self.herm_form(xi, xp) != self.algebra.one():
            raise ArithmeticError("pairing h(xi, xi'') != 1")
        M = GroupMatrix(self, xp.x1, xp.x2, xi.x1, xi.x2)
        if not self.is_unitary(M):
            raise ArithmeticError("completion failed unitarity")
        return M

    def bezout_witness(self, xi, order_basis=None):
        """Exact search for (x, y) in the order with xi1*x + xi2*y = 1,
        by an integer linear solve over the order basis; None if none exists.
        """
        alg = self.algebra
        basis = order_basis if order_basis is not None else alg.q_basis()
        cols = [(xi.x1 * b).q_coords() for b in basis] + [(xi.x2 * b).q_coords() for b in basis]
        A = [list(r) for r in zip(*cols)]
        # clear denominators (entries may be non-integral for fractional xi)
        den = 1
        for row in A:
            for v in row:
                den = den * v.denominator // _gcd(den, v.denominator)
        target = alg.one().q_coords()
        Ai = [[int(v * den) for v in row] for row in A]
        ti = [int(v * den) for v in target]
        sol = solve_integer(Ai, ti)
        if sol is None:
            return None
        m = len(basis)
        xs = alg.zero()
        ys = alg.zero()
        for c, b in zip(sol[:m], basis):
            if c:
                xs = xs + b * c
        for c, b in zip(sol[m:], basis):
            if c:
                ys = ys + b * c
        return xs, ys

    # -- subfield subgroups ------------------------------------------------

    def embed_subgroup(self, m, case):
        alg = self.algebra
        rows = [[v for v in row] for row in m]
        if case == "d1":
            self._require_d1()
            return self.su_sl2_iso(rows, "from_sl2")
        if case == "d2":
            if alg.d != 2 or alg.involution.kind != "first":
                raise ValueError("d2 case needs a quaternion algebra")
            al, be, ga, de = (Fraction(v) for row in rows for v in row)
            if al * de - be * ga != 1:
                raise ValueError("determinant must be 1")
            s = alg.e() * alg.from_L(alg.L.gen())  # s^2 = -ab
            return GroupMatrix(
                self,
                alg.from_K(al),
                alg.inverse(s) * (2 * be),
                s * (ga * Fraction(1, 2)),
                alg.from_K(de),
            )
        if case == "d_ge3":
            if alg.d < 3:
                raise ValueError("d_ge3 case needs d >= 3")
            if alg.sqrt_minus_eta is None:
                raise ValueError("sqrt(-eta) not registered")
            ell_map = alg.involution.ell_map
            ell = ell_map.source

            def lift(v):
                if isinstance(v, FieldElement):
                    if v.field is not ell:
                        raise ValueError("entry not in ell")
                    return alg.from_L(ell_map.embed(v))
                return alg.from_K(Fraction(v))

            al, be, ga, de = (lift(v) for row in rows for v in row)
            one = alg.one()
            if al * de - be * ga != one:
                raise ValueError("determinant must be 1")
            s = alg.from_K(alg.sqrt_minus_eta)
            return GroupMatrix(
                self,
                al,
                alg.inverse(s) * 2 * be,
                s * ga * Fraction(1, 2),
                de,
            )
        raise ValueError("case must be d1, d2 or d_ge3")

    # -- arithmetic group membership ----------------------------------------

    def order_basis(self):
        """The natural order O_L + e O_L + ... (power basis of O_L assumed)."""
        return self.algebra.q_basis()

    def gamma_membership(self, g, order_basis=None):
        basis = order_basis if order_basis is not None else self.order_basis()
        if not self.is_unitary(g):
            return "neither"
        gens = [b.q_coords() for b in basis]
        for x in g.entries():
            if not lattice_membership(gens, x.q_coords()):
                return "neither"
        if all(x.is_in_L() for x in g.entries()):
            in_OL = all(
                all(c.denominator == 1 for c in x.coords[0].coords) for x in g.entries()
            )
            if in_OL:
                return "in Gamma_OL"
        return "in Gamma_Delta"

    # -- samplers (for property tests and suites) ----------------------------

    def random_skew(self, rng, height=2):
        basis = self.skew_basis()
        acc = self.algebra.zero()
        for b in basis:
            c = rng.randint(-height, height)
            if c:
                acc = acc + b * c
        return acc

    def random_unitary(self, rng, steps=5):
        alg = self.algebra
        g = self.identity()
        zero, one = alg.zero(), alg.one()
        for _ in range(steps):
            kind = rng.randrange(3)
            if kind == 0:
                b = self.random_skew(rng)
                g = g * GroupMatrix(self, one, b, zero, one)
            elif kind == 1:
                b = self.random_skew(rng)
                g = g * GroupMatrix(self, one, zero, b, one)
            else:
                while True:
                    u = alg.random_element(rng, 1)
                    try:
                        d_entry = alg.inverse(self.J(u))
                        break
                    except (ZeroDivisionError, ArithmeticError):
                        continue
                g = g * GroupMatrix(self, u, zero, zero, d_entry)
        return g

    def random_isotropic(self, rng, steps=4):
        g = self.random_unitary(rng, steps)
        return PlaneVector(self, g.c, g.d)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# congruence subgroups over the (commutative) base


class RationalIdeal:
    """Fractional ideal (q) of Z inside Q."""

    def __init__(self, q):
        q = Fraction(q)
        if q == 0:
            raise ValueError("zero ideal")
        self.q = abs(q)

    def contains(self, x):
        return (Fraction(x) / self.q).denominator == 1

    def inverse(self):
        return RationalIdeal(1 / self.q)

    def ring_contains(self, x):
        return Fraction(x).denominator == 1

    def __repr__(self):
        return "RationalIdeal(%s)" % self.q


def congruence_sl2_membership(m, ideal_c):
    """Membership in SL2(O, c): a, d integral, b in c^{-1}, c-entry in c.

    Entries may be Fractions or FieldElements of the relevant field;
    ideal_c must provide contains / inverse / ring_contains.
    """
    (a, b), (c, d) = m
    det = a * d - b * c
    if det != 1:
        raise ValueError("determinant must be 1")
    cinv = ideal_c.inverse()
    return (
        ideal_c.ring_contains(a)
        and ideal_c.ring_contains(d)
        and cinv.contains(b)
        and ideal_c.contains(c)
    )


# ---------------------------------------------------------------------------
# the field case d = 1 packaged as a trivial cyclic algebra


def make_field_plane(label, minpoly, bar_image, s_coords, eta):
    """Hyperbolic plane over an imaginary quadratic field K.

    minpoly: coefficients of the defining polynomial of K (degree 2);
    bar_image: coordinates of the conjugate of the generator;
    s_coords: coordinates of s = sqrt(-eta) in K.
    """
    from .algebras import InvolutionSpec

    K = NumberField(label, minpoly)
    Q = NumberField("Q", [-1, 1])
    K_map = TowerMap(K, K, K.gen(), "id")
    sigma = Automorphism(K, K.gen(), "id")
    alg = CyclicAlgebra("plane(%s)" % label, K, K_map, sigma, K.one(), 1)
    bar = Automorphism(K, K.element(list(bar_image)), "bar")
    ell_map = TowerMap(Q, K, K.one(), "Q->%s" % label)
    alg.register_involution(
        InvolutionSpec("second", omega=Q.one(), ell_map=ell_map, bar=bar)
    )
    alg.register_sqrt_minus_eta(K.element(list(s_coords)), eta)
    return HyperbolicPlane(alg)
