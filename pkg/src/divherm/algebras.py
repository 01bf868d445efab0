"""Cyclic algebras D = (L/K, sigma, gamma) with involutions.

Elements are stored as coordinate vectors (z_0, ..., z_{d-1}) over L,
denoting z_0 + e z_1 + ... + e^{d-1} z_{d-1} (scalars to the right of the
powers of e).  The defining relations are e^d = gamma and e z = sigma(z) e,
realized concretely inside M_d(L) by the standard shift/diagonal matrices.
"""

from fractions import Fraction

from .fields import Automorphism, DescentError, FieldElement, TowerMap
from .linalg import (
    det_generic,
    invert_generic,
    kernel_basis_rational,
    lattice_equal,
    mat_mul_generic,
    solve_rational,
)


class ZeroDivisorError(ArithmeticError):
    """Non-invertible nonzero element found; carries the witness."""

    def __init__(self, witness):
        super().__init__("nonzero element with singular matrix representation: %r" % (witness,))
        self.witness = witness


class InvolutionSpec:
    """Involution data; 'second' kind per the omega construction, 'first'
    kind the quaternion canonical involution.

    Second kind requires: bar, the conjugation automorphism of L (order 2,
    commuting with sigma, nontrivial on K); ell_map, the tower of the real
    subfield ell into L; omega in ell with gamma*bar(gamma) = N_{ell|k}(omega).
    """

    def __init__(self, kind, omega=None, ell_map=None, bar=None):
        if kind not in ("first", "second"):
            raise ValueError("kind must be 'first' or 'second'")
        self.kind = kind
        self.omega = omega
        self.ell_map = ell_map
        self.bar = bar


class CyclicAlgebra:
    def __init__(self, label, L, K_map, sigma, gamma, d, division_assumed=False):
        if d < 1:
            raise ValueError("d must be positive")
        if sigma.field is not L:
            raise ValueError("sigma must act on L")
        if K_map.target is not L:
            raise ValueError("K_map must land in L")
        if d == 1:
            if not sigma.is_identity():
                raise ValueError("d=1 requires the identity automorphism")
        elif sigma.order() != d:
            raise ValueError("sigma must have order exactly d")
        if not sigma.fixes(K_map.embed(K_map.source.gen())):
            raise ValueError("sigma must fix K pointwise")
        if gamma.field is not K_map.source:
            raise ValueError("gamma must be an element of K")
        if gamma.is_zero():
            raise ValueError("gamma must be nonzero")
        self.label = label
        self.L = L
        self.K_map = K_map
        self.K = K_map.source
        self.sigma = sigma
        self.gamma = gamma
        self.gamma_L = K_map.embed(gamma)
        self.d = d
        self.division_assumed = division_assumed
        self.involution = None
        self.sqrt_minus_eta = None  # FieldElement of K
        self.eta = None  # positive rational with sqrt_minus_eta^2 = -eta
        # powers of sigma as automorphisms (index = exponent mod d)
        pows = [Automorphism(L, L.gen(), "id")]
        for _ in range(d - 1):
            pows.append(sigma.compose(pows[-1]))
        self._sigma_pows = pows
        # matrix representation of e and its powers
        n = d
        zero, one = L.zero(), L.one()
        E = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(n - 1):
            E[i][i + 1] = one
        if n > 1:
            E[n - 1][0] = self.gamma_L
        else:
            E[0][0] = self.gamma_L
        self._E = E
        eye = [[one if i == j else zero for j in range(n)] for i in range(n)]
        self._E_pows = [eye]
        for _ in range(d - 1):
            self._E_pows.append(mat_mul_generic(self._E_pows[-1], E))
        self._rep_solver = None
        self._j_basis = None

    # -- constructors ------------------------------------------------------

    def element(self, coords):
        coords = list(coords)
        if len(coords) > self.d:
            raise ValueError("too many coordinates")
        out = []
        for c in coords:
            if isinstance(c, FieldElement):
                if c.field is not self.L:
                    raise ValueError("coordinate not in L")
                out.append(c)
            else:
                out.append(self.L.from_rational(Fraction(c)))
        out += [self.L.zero()] * (self.d - len(out))
        return AlgebraElement(self, tuple(out))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def e(self):
        if self.d == 1:
            return self.element([self.gamma_L])
        return self.element([0, 1])

    def from_L(self, z):
        return self.element([z])

    def from_K(self, x):
        if isinstance(x, (int, Fraction)):
            x = self.K.from_rational(x)
        return self.from_L(self.K_map.embed(x))

    def random_element(self, rng, height=3):
        return self.element([self.L.random_element(rng, height) for _ in range(self.d)])

    def q_basis(self):
        """Q-basis e^i * theta^j of D, as algebra elements."""
        out = []
        theta_pows = [self.L.one()]
        for _ in range(self.L.degree - 1):
            theta_pows.append(theta_pows[-1] * self.L.gen())
        for i in range(self.d):
            for tp in theta_pows:
                coords = [self.L.zero()] * self.d
                coords[i] = tp
                out.append(AlgebraElement(self, tuple(coords)))
        return out

    # -- involution --------------------------------------------------------

    def register_involution(self, spec):
        if spec.kind == "first":
            if self.d != 2:
                raise ValueError("first-kind (canonical) involution requires d=2")
            self.involution = spec
            return
        bar, ell_map, omega = spec.bar, spec.ell_map, spec.omega
        if bar is None or ell_map is None or omega is None:
            raise ValueError("second-kind involution needs bar, ell_map, omega")
        if bar.field is not self.L or bar.order() != 2:
            raise ValueError("bar must be an order-2 automorphism of L")
        if bar.compose(self.sigma).gen_image != self.sigma.compose(bar).gen_image:
            raise ValueError("bar must commute with sigma")
        gK = self.K_map.embed(self.K.gen())
        if self.K.degree > 1 and bar(gK) == gK:
            raise ValueError("bar must act nontrivially on K")
        if omega.field is not ell_map.source:
            raise ValueError("omega must lie in ell")
        omega_L = ell_map.embed(omega)
        if bar(omega_L) != omega_L:
            raise ValueError("omega must be fixed by bar (omega in ell)")
        # N_{ell|k}(omega) = omega * sigma(omega) * ... (sigma generates Gal(ell/k))
        norm = self.L.one()
        for i in range(self.d):
            norm = norm * self._sigma_pows[i](omega_L)
        if norm != self.gamma_L * bar(self.gamma_L):
            raise ValueError(
                "norm precondition fails: N_{ell|k}(omega) != gamma * bar(gamma)"
            )
        self.involution = spec
        # J(e^i) = omega * sigma(omega) * ... * sigma^{i-1}(omega) * (e^i)^{-1}
        jb = [self.one()]
        for i in range(1, self.d):
            w = self.L.one()
            for j in range(i):
                w = w * self._sigma_pows[j](omega_L)
            coords = [self.L.zero()] * self.d
            coords[i] = self.L.one()
            e_i = AlgebraElement(self, tuple(coords))
            jb.append(self.from_L(w) * self.inverse(e_i))
        self._j_basis = jb
        # involution axioms on a spanning set
        for x in (self.e(), self.from_L(self.L.gen())):
            for y in (self.e(), self.from_L(self.L.gen())):
                assert self.involute(x * y) == self.involute(y) * self.involute(x)
            assert self.involute(self.involute(x)) == x

    def register_sqrt_minus_eta(self, s, eta):
        """s in K with s^2 = -eta (eta a positive rational); K = k(s)."""
        if isinstance(s, (list, tuple)):
            s = self.K.element(s)
        eta = Fraction(eta)
        if s.field is not self.K or (s * s) != self.K.from_rational(-eta) or eta <= 0:
            raise ValueError("need s^2 = -eta with eta > 0")
        self.sqrt_minus_eta = s
        self.eta = eta

    def involute(self, x):
        if self.involution is None:
            raise ValueError("no involution registered on %s" % self.label)
        if self.involution.kind == "first":
            tr = self.reduced_trace(x)
            return self.from_K(tr) - x
        bar = self.involution.bar
        out = self.zero()
        for i, z in enumerate(x.coords):
            if z.is_zero():
                continue
            out = out + self.from_L(bar(z)) * self._j_basis[i]
        return out

    # -- representation ----------------------------------------------------

    def matrix_rep(self, x):
        n = self.d
        zero = self.L.zero()
        out = [[zero for _ in range(n)] for _ in range(n)]
        for i, z in enumerate(x.coords):
            if z.is_zero():
                continue
            diag = [self._sigma_pows[j](z) for j in range(n)]
            Ei = self._E_pows[i]
            for r in range(n):
                for c in range(n):
                    v = Ei[r][c]
                    if not v.is_zero():
                        out[r][c] = out[r][c] + v * diag[c]
        return out

    def coords_from_rep(self, M):
        """Recover the coordinate vector from a matrix in the image of
        matrix_rep, by exact linear solve against the representation basis.

        Returns None if M is not in the image.
        """
        nL = self.L.degree

        def flatten(mat):
            out = []
            for row in mat:
                for entry in row:
                    out.extend(entry.coords)
            return out

        if self._rep_solver is None:
            basis = self.q_basis()
            cols = [flatten(self.matrix_rep(b)) for b in basis]
            self._rep_solver = (basis, [list(r) for r in zip(*cols)])
        basis, A = self._rep_solver
        sol = solve_rational(A, flatten(M))
        if sol is None:
            return None
        acc = self.zero()
        for c, b in zip(sol, basis):
            if c != 0:
                acc = acc + b * c
        R = self.matrix_rep(acc)
        for ru, rv in zip(R, M):
            for u, v in zip(ru, rv):
                if not (u - v).is_zero():
                    return None
        return acc

    def inverse(self, x):
        Minv = invert_generic(self.matrix_rep(x), self.L.one())
        if Minv is None:
            if x.is_zero():
                raise ZeroDivisionError("inverse of zero")
            raise ZeroDivisorError(x)
        out = self.coords_from_rep(Minv)
        if out is None or not (x * out - self.one()).is_zero():
            raise ArithmeticError("inverse reconstruction failed")
        return out

    def reduced_norm(self, x):
        det = det_generic(self.matrix_rep(x))
        try:
            return self.K_map.descend(det)
        except DescentError:
            raise ArithmeticError("reduced norm failed to descend to K")

    def reduced_trace(self, x):
        M = self.matrix_rep(x)
        tr = M[0][0]
        for i in range(1, self.d):
            tr = tr + M[i][i]
        try:
            return self.K_map.descend(tr)
        except DescentError:
            raise ArithmeticError("reduced trace failed to descend to K")

    def reduced_norm_trace(self, x, which):
        if which == "norm":
            return self.reduced_norm(x)
        if which == "trace":
            return self.reduced_trace(x)
        raise ValueError("which must be 'norm' or 'trace'")

    # -- plus/minus decomposition under J -----------------------------------

    def plus_minus_split(self):
        """Bases of A+ = {x : J(x)=x} and qA+ over k = Q.

        Returns (plus_basis, q_plus_basis); verifies dim = d^2 each, that
        q*A+ equals the -1 eigenspace, and the direct-sum property.
        """
        if self.involution is None or self.involution.kind != "second":
            raise ValueError("plus_minus_split needs a second-kind involution")
        if self.sqrt_minus_eta is None:
            raise ValueError("sqrt(-eta) not registered")
        basis = self.q_basis()
        m = len(basis)

        def coords_of(x):
            out = []
            for z in x.coords:
                out.extend(z.coords)
            return out

        eye = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        Jmat = [coords_of(self.involute(b)) for b in basis]
        Jmat = [list(r) for r in zip(*Jmat)]  # column j = J(basis_j)
        plus_vs = kernel_basis_rational([[Jmat[i][j] - eye[i][j] for j in range(m)] for i in range(m)])
        minus_vs = kernel_basis_rational([[Jmat[i][j] + eye[i][j] for j in range(m)] for i in range(m)])

        def assemble(v):
            acc = self.zero()
            for c, b in zip(v, basis):
                if c != 0:
                    acc = acc + b * c
            return acc

        plus = [assemble(v) for v in plus_vs]
        q = self.from_K(self.sqrt_minus_eta)
        q_plus = [q * p for p in plus]
        exp = self.d * self.d * (self.K.degree // 2)
        if len(plus) != exp or len(minus_vs) != exp:
            raise ArithmeticError("unexpected eigenspace dimensions: %d, %d" % (len(plus), len(minus_vs)))
        if not lattice_equal([coords_of(x) for x in q_plus], minus_vs) and not _span_equal(
            [coords_of(x) for x in q_plus], minus_vs
        ):
            raise ArithmeticError("q*A+ does not match the -1 eigenspace")
        return plus, q_plus


def _span_equal(gens1, gens2):
    from .linalg import rank_rational

    r1 = rank_rational(gens1)
    r2 = rank_rational(gens2)
    return r1 == r2 == rank_rational(gens1 + gens2)


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        self.algebra = algebra
        self.coords = coords

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.from_K(Fraction(other))
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("algebra mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        return AlgebraElement(
            self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return AlgebraElement(
            self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return AlgebraElement(self.algebra, tuple(a * q for a in self.coords))
        other = self._check(other)
        alg = self.algebra
        d = alg.d
        out = [alg.L.zero()] * d
        for j, w in enumerate(other.coords):
            if w.is_zero():
                continue
            twist = alg._sigma_pows[(d - j) % d]
            for i, z in enumerate(self.coords):
                if z.is_zero():
                    continue
                term = twist(z) * w
                slot = i + j
                if slot >= d:
                    slot -= d
                    term = term * alg.gamma_L
                out[slot] = out[slot] + term
        return AlgebraElement(alg, tuple(out))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return self._check(other) * self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.from_K(Fraction(other))
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            return NotImplemented
        return all((a - b).is_zero() for a, b in zip(self.coords, other.coords))

    def __hash__(self):
        return hash((id(self.algebra), tuple(c.coords for c in self.coords)))

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def is_in_L(self):
        return all(c.is_zero() for c in self.coords[1:])

    def inverse(self):
        return self.algebra.inverse(self)

    def conj(self):
        return self.algebra.involute(self)

    def q_coords(self):
        """Rational coordinate vector w.r.t. the Q-basis e^i theta^j."""
        out = []
        for z in self.coords:
            out.extend(z.coords)
        return out

    def to_json(self):
        return [[str(c) for c in z.coords] for z in self.coords]

    def __repr__(self):
        return "AlgebraElement(%s, %s)" % (self.algebra.label, [list(z.coords) for z in self.coords])


# ---------------------------------------------------------------------------
# quaternion specialization


def make_quaternion(a, b, label=None):
    """Quaternion algebra (a, b) over Q as the cyclic algebra (Q(sqrt a)/Q, sigma, b).

    Returns the algebra with the canonical (first-kind) involution
    registered; the generators are c = sqrt(a) (from L) and e with e^2 = b,
    e*c = -c*e.
    """
    from .fields import NumberField

    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("a, b must be nonzero")
    ell = NumberField("Q(sqrt(%s))" % a, [-a, 0, 1])
    Q = NumberField("Q", [-1, 1])
    K_map = TowerMap(Q, ell, ell.one(), label="Q->Q(sqrt(%s))" % a)
    sigma = Automorphism(ell, -ell.gen(), "conj")
    alg = CyclicAlgebra(
        label or "quat(%s,%s)" % (a, b), ell, K_map, sigma, Q.from_rational(b), 2
    )
    alg.register_involution(InvolutionSpec("first"))
    return alg
