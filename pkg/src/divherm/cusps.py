"""Ideal classes in quadratic fields and cusp classification.

Binary quadratic forms (Gauss reduction for negative discriminant,
reduction cycles for positive) back the ideal-class computations; cusp
equivalence of integral isotropic vectors is decided through the
form class of the ideal generated by the coordinates, with explicit
unitary integral witnesses in the commutative case.
"""

import math
from fractions import Fraction

from .fields import FieldElement, NumberField
from .linalg import hnf_rows, lattice_membership
from .plane import GroupMatrix, HyperbolicPlane, PlaneVector, make_field_plane


def _is_square(n):
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _squarefree(n):
    n = abs(n)
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def is_fundamental_discriminant(D):
    if D == 0 or D == 1 or _is_square(D):
        return False
    if D % 4 == 1 or D % 4 == -3:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return _squarefree(m) and m % 4 in (2, 3)
    return False


def _gcd3(a, b, c):
    return math.gcd(math.gcd(abs(a), abs(b)), abs(c))


class FormClass:
    """A class of primitive binary quadratic forms a x^2 + b xy + c y^2."""

    def __init__(self, a, b, c, cycle=None):
        self.a, self.b, self.c = a, b, c
        self.disc = b * b - 4 * a * c
        self.cycle = cycle  # frozenset of triples in the positive case

    def key(self):
        if self.cycle is not None:
            return ("cycle", self.disc, tuple(sorted(self.cycle)))
        return ("form", self.a, self.b, self.c)

    def __eq__(self, other):
        return isinstance(other, FormClass) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_principal(self):
        if self.disc < 0:
            return self.a == 1
        return any(t[0] == 1 for t in self.cycle)

    def to_json(self):
        return {"form": [self.a, self.b, self.c], "disc": self.disc}

    def __repr__(self):
        return "FormClass(%d, %d, %d)" % (self.a, self.b, self.c)


def reduce_form_imaginary(a, b, c):
    if b * b - 4 * a * c >= 0 or a <= 0:
        raise ValueError("not a positive definite form")
    while True:
        if abs(b) > a:
            # translate b into (-a, a]
            r = b % (2 * a)
            if r > a:
                r -= 2 * a
            c = c + (r * r - b * b) // (4 * a)
            b = r
            continue
        if a > c:
            a, b, c = c, -b, a
            continue
        break
    if b < 0 and (a == c or -b == a):
        b = -b
    return a, b, c


def _rho_real(a, b, c, sd):
    # one reduction step for indefinite forms
    ac = abs(c)
    k = (sd + b) // (2 * ac)
    b2 = -b + 2 * ac * k
    D = b * b - 4 * a * c
    c2 = (b2 * b2 - D) // (4 * c)
    return c, b2, c2


def _is_reduced_real(a, b, c, sd):
    return 0 < b <= sd and sd - b < 2 * abs(a) < sd + b + 2 and abs(sd - 2 * abs(a)) < b


def _reduced_forms(D):
    out = []
    if D < 0:
        amax = math.isqrt(-D // 3) + 1
        for a in range(1, amax + 1):
            for b in range(-a, a + 1):
                num = b * b - D
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if c < a:
                    continue
                if _gcd3(a, b, c) != 1:
                    continue
                if b < 0 and (a == c or -b == a):
                    continue
                out.append((a, b, c))
        return out
    sd = math.isqrt(D)
    for b in range(1, sd + 1):
        if (D - b * b) % 4:
            continue
        prod = (b * b - D) // 4  # = a*c < 0
        for a in range(1, sd + 1):
            if prod % a:
                continue
            for aa in (a, -a):
                c = prod // aa
                if abs(sd - 2 * abs(aa)) < b and _gcd3(aa, b, c) == 1:
                    out.append((aa, b, c))
    return out


def class_number(disc, bound=10**6):
    if abs(disc) > bound:
        raise ValueError("discriminant exceeds configured bound")
    if not is_fundamental_discriminant(disc):
        raise ValueError("%d is not a fundamental discriminant" % disc)
    forms = _reduced_forms(disc)
    if disc < 0:
        return len(forms)
    # partition into reduction cycles
    sd = math.isqrt(disc)
    remaining = set(forms)
    cycles = 0
    while remaining:
        start = next(iter(remaining))
        f = start
        while True:
            remaining.discard(f)
            f = _rho_real(*f, sd)
            if f == start:
                break
        cycles += 1
    return cycles


def form_cycle(a, b, c):
    D = b * b - 4 * a * c
    sd = math.isqrt(D)
    f = (a, b, c)
    while not _is_reduced_real(*f, sd):
        f = _rho_real(*f, sd)
    start = f
    cyc = []
    while True:
        cyc.append(f)
        f = _rho_real(*f, sd)
        if f == start:
            break
    return frozenset(cyc)


# ---------------------------------------------------------------------------
# ideals in quadratic fields (power-basis ring of integers Z[theta])


class QuadIdeal:
    """Fractional ideal of a quadratic field K = Q[theta], theta^2 + p theta + q = 0
    (monic integral minimal polynomial, Z[theta] assumed maximal).

    Stored as a Z-basis in Hermite normal form with a common denominator.
    """

    def __init__(self, field, gens):
        if field.degree != 2:
            raise ValueError("need a quadratic field")
        cs = field.minpoly
        if any(c.denominator != 1 for c in cs) or cs[2] != 1:
            raise ValueError("minimal polynomial must be monic integral")
        self.field = field
        self.p = int(cs[1])
        self.q = int(cs[0])
        vecs = []
        for g in gens:
            if isinstance(g, (int, Fraction)):
                g = field.from_rational(Fraction(g))
            if g.field is not field:
                raise ValueError("generator not in the field")
            vecs.append(list(g.coords))
            vecs.append(list((g * field.gen()).coords))
        den = 1
        for v in vecs:
            for x in v:
                den = den * x.denominator // math.gcd(den, x.denominator)
        rows = hnf_rows([[int(x * den) for x in v] for v in vecs])
        if len(rows) != 2:
            raise ValueError("zero ideal")
        self.den = den
        self.rows = rows

    # -- basic data ------------------------------------------------------

    def basis(self):
        K = self.field
        return [
            K.element([Fraction(r[0], self.den), Fraction(r[1], self.den)])
            for r in self.rows
        ]

    def conj_elem(self, x):
        """Conjugate of a field element: theta -> -p - theta."""
        a0, a1 = x.coords
        return self.field.element([a0 - self.p * a1, -a1])

    def elem_norm(self, x):
        n = (x * self.conj_elem(x)).coords
        assert n[1] == 0
        return n[0]

    def norm(self):
        d = Fraction(self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0])
        return abs(d) / (self.den * self.den)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            g = self.basis()
            return QuadIdeal(self.field, [x * Fraction(other) for x in g])
        if other.field is not self.field:
            raise ValueError("field mismatch")
        return QuadIdeal(self.field, [x * y for x in self.basis() for y in other.basis()])

    __rmul__ = __mul__

    def conj(self):
        return QuadIdeal(self.field, [self.conj_elem(x) for x in self.basis()])

    def inverse(self):
        return self.conj() * (1 / self.norm())

    def contains(self, x):
        if isinstance(x, (int, Fraction)):
            x = self.field.from_rational(Fraction(x))
        gens = [[Fraction(v, self.den) for v in r] for r in self.rows]
        return lattice_membership(gens, list(x.coords))

    def ring_contains(self, x):
        if isinstance(x, (int, Fraction)):
            return Fraction(x).denominator == 1
        return all(c.denominator == 1 for c in x.coords)

    def __eq__(self, other):
        if not (isinstance(other, QuadIdeal) and other.field is self.field):
            return NotImplemented
        mine = [[Fraction(x, self.den) for x in r] for r in self.rows]
        theirs = [[Fraction(x, other.den) for x in r] for r in other.rows]
        return mine == theirs

    def __hash__(self):
        return hash((id(self.field), self.den, tuple(map(tuple, self.rows))))

    def find_generator(self, height=60):
        """An element generating the ideal, if principal; bounded search
        over the Z-basis (None when the bound is exhausted).
        """
        N = self.norm()
        al, be = self.basis()
        for x in range(0, height + 1):
            for y in range(-height, height + 1):
                if x == 0 and y <= 0:
                    continue
                g = al * x + be * y
                if g.is_zero():
                    continue
                if abs(self.elem_norm(g)) == N and self.contains(g):
                    cand = QuadIdeal(self.field, [g])
                    if cand == self:
                        return g
        return None

    def to_json(self):
        return {
            "field": self.field.label,
            "den": self.den,
            "hnf": [list(r) for r in self.rows],
        }

    def __repr__(self):
        return "QuadIdeal(%s, den=%d, %s)" % (self.field.label, self.den, self.rows)


def ideal_class(ideal):
    """Reduced form of the ideal's class; equal output iff equivalent ideals."""
    al, be = ideal.basis()
    # orientation: (alpha*conj(beta) - conj(alpha)*beta) must be a positive
    # multiple of sqrt(disc) = 2*theta + p
    delta = al * ideal.conj_elem(be) - ideal.conj_elem(al) * be
    r = delta.coords[1] / 2
    if r == 0:
        raise ValueError("degenerate basis")
    if r < 0:
        al, be = be, al
    Na = ideal.norm()
    a = ideal.elem_norm(al) / Na
    b = (al * ideal.conj_elem(be) + ideal.conj_elem(al) * be).coords[0] / Na
    c = ideal.elem_norm(be) / Na
    assert a.denominator == b.denominator == c.denominator == 1
    a, b, c = int(a), int(b), int(c)
    D = b * b - 4 * a * c
    if D < 0:
        if a < 0:
            a, b, c = -a, -b, -c
        return FormClass(*reduce_form_imaginary(a, b, c))
    return FormClass(a, b, c, cycle=form_cycle(a, b, c))


# ---------------------------------------------------------------------------
# cusp classification


def vector_ideal(xi):
    """The ideal generated by the two coordinates of a d=1 plane vector."""
    plane = xi.plane
    if plane.algebra.d != 1:
        raise ValueError("vector_ideal is the commutative-case operation")
    return QuadIdeal(plane.algebra.K, [xi.x1.coords[0], xi.x2.coords[0]])


def cusp_equivalent(xi, eta, height=60, mode="auto"):
    """Decide cusp equivalence of integral vectors over a d=1 plane.

    Two pictures are supported.  "unitary": both vectors h-isotropic,
    witness in U(O_K^2, h) (with a "special" flag for the block
    determinant).  "sl2": arbitrary nonzero vectors regarded as rational
    boundary points of SL2(O_K), witness a determinant-1 integral 2x2
    matrix over K.  "auto" picks "unitary" when both vectors are
    h-isotropic.  In both pictures the verdict follows the ideal class of
    the coordinates; the witness g satisfies (eta*lam)*g = xi for the
    returned scaling lam.  When a principal generator is not found within
    the search bound the verdict is "equivalent, witness search exhausted".
    """
    plane = xi.plane
    if plane is not eta.plane or plane.algebra.d != 1:
        raise ValueError("need two vectors over the same d=1 plane")
    if xi.is_zero() or eta.is_zero():
        raise ValueError("vectors must be nonzero")
    if mode == "auto":
        mode = "unitary" if plane.is_isotropic(xi) and plane.is_isotropic(eta) else "sl2"
    if mode == "unitary" and not (plane.is_isotropic(xi) and plane.is_isotropic(eta)):
        raise ValueError("unitary mode needs isotropic vectors")
    if mode == "sl2":
        return _cusp_equivalent_sl2(xi, eta, height)
    a_xi, a_eta = vector_ideal(xi), vector_ideal(eta)
    cls_xi, cls_eta = ideal_class(a_xi), ideal_class(a_eta)
    if cls_xi != cls_eta:
        return {"verdict": "inequivalent", "certificates": (cls_xi, cls_eta)}
    # scale eta so that both vectors generate the same ideal
    lam = (a_xi * a_eta.inverse()).find_generator(height)
    if lam is None:
        return {"verdict": "equivalent, witness search exhausted"}
    alg = plane.algebra
    lam_a = alg.from_K(lam)
    eta2 = PlaneVector(plane, eta.x1 * lam_a, eta.x2 * lam_a)
    M_xi = _unitary_completion(plane, xi, a_xi, height)
    M_eta = _unitary_completion(plane, eta2, a_xi, height)
    if M_xi is None or M_eta is None:
        return {"verdict": "equivalent, witness search exhausted"}
    g = M_eta.inverse() * M_xi
    if not plane.is_unitary(g):
        raise ArithmeticError("witness failed unitarity")
    if any(not a_xi.ring_contains(x.coords[0]) for x in g.entries()):
        return {"verdict": "equivalent, witness search exhausted"}
    check = PlaneVector(plane, eta2.x1, eta2.x2) * g
    if not (check.x1 == xi.x1 and check.x2 == xi.x2):
        raise ArithmeticError("witness does not map eta to xi")
    return {
        "verdict": "equivalent",
        "witness": g,
        "scaling": lam,
        "special": plane.is_special(g),
    }


def _cusp_equivalent_sl2(xi, eta, height):
    plane = xi.plane
    K = plane.algebra.K
    a_xi, a_eta = vector_ideal(xi), vector_ideal(eta)
    cls_xi, cls_eta = ideal_class(a_xi), ideal_class(a_eta)
    if cls_xi != cls_eta:
        return {"verdict": "inequivalent", "certificates": (cls_xi, cls_eta)}
    lam = (a_xi * a_eta.inverse()).find_generator(height)
    if lam is None:
        return {"verdict": "equivalent, witness search exhausted"}
    ex1, ex2 = eta.x1.coords[0] * lam, eta.x2.coords[0] * lam
    M_xi = _sl2_completion(K, xi.x1.coords[0], xi.x2.coords[0], a_xi)
    M_eta = _sl2_completion(K, ex1, ex2, a_xi)
    if M_xi is None or M_eta is None:
        return {"verdict": "equivalent, witness search exhausted"}
    # M_eta^{-1} (det 1: adjugate) times M_xi
    inv = [[M_eta[1][1], -M_eta[0][1]], [-M_eta[1][0], M_eta[0][0]]]
    g = [
        [
            inv[0][0] * M_xi[0][0] + inv[0][1] * M_xi[1][0],
            inv[0][0] * M_xi[0][1] + inv[0][1] * M_xi[1][1],
        ],
        [
            inv[1][0] * M_xi[0][0] + inv[1][1] * M_xi[1][0],
            inv[1][0] * M_xi[0][1] + inv[1][1] * M_xi[1][1],
        ],
    ]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    if det != K.one():
        raise ArithmeticError("witness determinant is not 1")
    if any(not a_xi.ring_contains(v) for row in g for v in row):
        return {"verdict": "equivalent, witness search exhausted"}
    if not (ex1 * g[0][0] + ex2 * g[1][0] == xi.x1.coords[0] and ex1 * g[0][1] + ex2 * g[1][1] == xi.x2.coords[0]):
        raise ArithmeticError("witness does not map eta to xi")
    return {"verdict": "equivalent", "witness": g, "scaling": lam, "special": True}


def _sl2_completion(K, x1, x2, ideal):
    """Determinant-1 matrix over K with bottom row (x1, x2) and top row in
    the inverse ideal: [[-t1, -t2], [x1, x2]] with x1*t2 - x2*t1 = 1.
    """
    inv = ideal.inverse()
    al, be = inv.basis()
    cols = [
        list((-x2 * al).coords),
        list((-x2 * be).coords),
        list((x1 * al).coords),
        list((x1 * be).coords),
    ]
    den = 1
    for col in cols:
        for v in col:
            den = den * v.denominator // math.gcd(den, v.denominator)
    A = [[int(cols[j][i] * den) for j in range(4)] for i in range(2)]
    from .linalg import solve_integer

    sol = solve_integer(A, [den, 0])
    if sol is None:
        return None
    t1 = al * sol[0] + be * sol[1]
    t2 = al * sol[2] + be * sol[3]
    assert x1 * t2 - x2 * t1 == K.one()
    return [[-t1, -t2], [x1, x2]]


def _unitary_completion(plane, xi, ideal, height):
    """Unitary matrix with bottom row xi, using a pairing witness
    xi1*x + xi2*y = 1 with x, y in the inverse ideal.
    """
    inv = ideal.inverse()
    al, be = inv.basis()
    alg = plane.algebra
    x1, x2 = xi.x1.coords[0], xi.x2.coords[0]
    # solve x1*(a*al + b*be) + x2*(c*al + d*be) = 1 over integers a,b,c,d
    cols = []
    for gen in (al, be):
        cols.append(list((x1 * gen).coords))
    for gen in (al, be):
        cols.append(list((x2 * gen).coords))
    den = 1
    for col in cols:
        for v in col:
            den = den * v.denominator // math.gcd(den, v.denominator)
    A = [[int(cols[j][i] * den) for j in range(4)] for i in range(2)]
    from .linalg import solve_integer

    sol = solve_integer(A, [den, 0])
    if sol is None:
        return None
    x = al * sol[0] + be * sol[1]
    y = al * sol[2] + be * sol[3]
    return plane.integral_complete(xi, (alg.from_K(x), alg.from_K(y)))


def cusp_count(plane, order_basis=None):
    alg = plane.algebra
    if alg.d == 1:
        return class_number(field_discriminant(alg.K))
    if alg.d == 2:
        if alg.K.degree != 1:
            raise ValueError("d=2 supported over k=Q only")
        return 1
    if alg.K.degree != 2:
        raise ValueError("d>=3 supported for imaginary quadratic K over Q only")
    return class_number(field_discriminant(alg.K))


def field_discriminant(K):
    cs = K.minpoly
    if K.degree != 2 or any(c.denominator != 1 for c in cs) or cs[2] != 1:
        raise ValueError("need a monic integral quadratic field")
    return int(cs[1] * cs[1] - 4 * cs[0])


def field_plane_of(plane):
    """The d=1 plane over K attached to a d>=3 plane (same K presentation)."""
    alg = plane.algebra
    K = alg.K
    bar = alg.involution.bar
    gK = alg.K_map.embed(K.gen())
    bar_img = alg.K_map.descend(bar(gK))
    cs = K.minpoly
    p = make_field_plane(
        K.label, [c for c in cs], list(bar_img.coords), list(alg.sqrt_minus_eta.coords),
        alg.eta,
    )
    return p


def norm_isotropy_transfer(xi, target_plane):
    """(N_{D|K}(xi1), N_{D|K}(xi2)) as a vector of the d=1 plane over K.

    target_plane must be a d=1 plane whose field has the same minimal
    polynomial as K; the result is verified isotropic.
    """
    plane = xi.plane
    alg = plane.algebra
    Kt = target_plane.algebra.K
    if Kt.minpoly != alg.K.minpoly:
        raise ValueError("target plane is over a different field")
    n1 = alg.reduced_norm(xi.x1)
    n2 = alg.reduced_norm(xi.x2)
    v = target_plane.vector(Kt.element(list(n1.coords)), Kt.element(list(n2.coords)))
    if not xi.is_zero() and not target_plane.is_isotropic(v):
        raise ArithmeticError("norm transfer failed isotropy")
    return v


def enumerate_cusp_classes(plane, height=5):
    """Brute-force cusp classes over the d=1 plane's field K, in the
    SL2(O_K) picture: every nonzero integral vector spans a rational
    boundary point (the invariant form is alternating, so all vectors are
    isotropic there), and vectors are classified by the ideal class of
    their coordinates.  Returns (count, dict class -> representative).
    """
    alg = plane.algebra
    K = alg.K
    reps = {}
    rng = range(-height, height + 1)
    for a0 in range(0, height + 1):
        for a1 in rng:
            for b0 in rng:
                for b1 in rng:
                    if a0 == a1 == b0 == b1 == 0:
                        continue
                    g = math.gcd(math.gcd(a0, abs(a1)), math.gcd(abs(b0), abs(b1)))
                    if g > 1:
                        continue  # scaling does not change the class
                    x1 = K.element([a0, a1])
                    x2 = K.element([b0, b1])
                    cls = ideal_class(QuadIdeal(K, [x1, x2]))
                    reps.setdefault(cls, plane.vector(x1, x2))
    return len(reps), reps
