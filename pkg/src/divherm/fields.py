"""Exact arithmetic in absolute number fields Q[x]/(f).

Every field is an absolute extension of Q with a power basis; relative
structures (subfields, Galois actions, relative trace/norm) are realized
through TowerMap and Automorphism objects.  All exact paths use
arbitrary-precision rationals; numeric embeddings are double precision
refined by Newton iteration.
"""

from fractions import Fraction

import numpy as np

from . import kernel
from .linalg import solve_rational


class DescentError(ValueError):
    """An element expected to lie in a subfield failed to descend."""


# ---------------------------------------------------------------------------
# polynomial utilities over Fraction (dense, ascending coefficients)


def poly_trim(p):
    while p and p[-1] == 0:
        p = p[:-1]
    return p


def poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = poly_trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(poly_trim(r)) - 1 >= db:
        r = poly_trim(r)
        d = len(r) - 1 - db
        c = r[-1] / lb
        q[d] = c
        for i, bc in enumerate(b):
            r[i + d] -= c * bc
        r = r[:-1]
    return poly_trim(q), poly_trim(r)


def poly_ext_gcd(a, b):
    """Extended gcd for polynomials over Q: returns (g, s, t), s*a + t*b = g."""
    r0, r1 = [Fraction(x) for x in a], [Fraction(x) for x in b]
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]

    def pmul(p, q):
        if not p or not q:
            return []
        out = [Fraction(0)] * (len(p) + len(q) - 1)
        for i, pi in enumerate(p):
            for j, qj in enumerate(q):
                out[i + j] += pi * qj
        return out

    def psub(p, q):
        n = max(len(p), len(q))
        p = p + [Fraction(0)] * (n - len(p))
        q = q + [Fraction(0)] * (n - len(q))
        return poly_trim([x - y for x, y in zip(p, q)])

    while poly_trim(r1):
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    return poly_trim(r0), s0, t0


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _poly_mod_p(f, p):
    return [int(c) % p for c in f]


def _polymul_mod_p(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _polydivmod_mod_p(a, b, p):
    a = a[:]
    while a and a[-1] == 0:
        a.pop()
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p) if p > 2 else b[-1]
    q = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv) % p
        d = len(a) - 1 - db
        q[d] = c
        for i, bc in enumerate(b):
            a[i + d] = (a[i + d] - c * bc) % p
        while a and a[-1] == 0:
            a.pop()
    return q, a


def factor_poly_mod_p(f, p, search_bound=2_000_000):
    """Factor an integer polynomial modulo a small prime by trial division.

    Returns the list of monic irreducible factors (with repetition); the
    leading unit is discarded.  Brute force over all monic divisors of
    degree up to half the remaining degree.
    """
    if p >= 1000:
        raise ValueError("prime %d too large for brute-force factorization" % p)
    g = _poly_mod_p(f, p)
    while g and g[-1] == 0:
        g.pop()
    if not g:
        raise ValueError("polynomial is zero mod %d" % p)
    # make monic
    inv = pow(g[-1], p - 2, p) if p > 2 else g[-1]
    g = [(c * inv) % p for c in g]
    factors = []
    deg = len(g) - 1
    d = 1
    while 2 * d <= deg:
        if p**d > search_bound:
            raise ValueError("search space too large (p=%d, degree %d)" % (p, d))
        found = False
        for idx in range(p**d):
            cand = []
            t = idx
            for _ in range(d):
                cand.append(t % p)
                t //= p
            cand.append(1)  # monic
            q, r = _polydivmod_mod_p(g, cand, p)
            if not r:
                factors.append(cand)
                g = q
                deg = len(g) - 1
                found = True
                break
        if not found:
            d += 1
    if deg >= 1:
        factors.append(g)
    return factors


def parse_rational(s):
    if isinstance(s, str):
        return Fraction(s)
    return Fraction(s)


# ---------------------------------------------------------------------------


class NumberField:
    """Q[x]/(minpoly) with a power basis.

    minpoly is given as ascending coefficients and must be monic and
    irreducible; irreducibility is certified by a rational-root screen
    plus irreducibility modulo some small prime (sufficient for every
    desk-scale field in scope).
    """

    def __init__(self, label, minpoly, assume_irreducible=False):
        coeffs = [Fraction(c) for c in minpoly]
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.label = label
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if self.degree < 1:
            raise ValueError("degree must be at least 1")
        if not assume_irreducible:
            self._certify_irreducible()
        # reduction rows: coordinates of x^(n+k) for k = 0 .. n-2
        n = self.degree
        rows = []
        cur = [-c for c in coeffs[:-1]]  # x^n
        rows.append(cur[:])
        for _ in range(n - 2):
            nxt = [Fraction(0)] + cur[:-1]
            top = cur[-1]
            if top != 0:
                for i in range(n):
                    nxt[i] += top * rows[0][i]
            rows.append(nxt)
            cur = nxt
        self._red = rows
        self._embeddings = None

    # -- construction helpers

    def element(self, coords):
        coords = list(coords)
        if len(coords) > self.degree:
            raise ValueError("too many coordinates")
        coords = coords + [0] * (self.degree - len(coords))
        return FieldElement(self, tuple(Fraction(c) for c in coords))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        if self.degree == 1:
            return self.element([-self.minpoly[0]])
        return self.element([0, 1])

    def from_rational(self, q):
        return self.element([Fraction(q)])

    def random_element(self, rng, height=3):
        return self.element([Fraction(rng.randint(-height, height)) for _ in range(self.degree)])

    # -- irreducibility

    def _certify_irreducible(self):
        if self.degree == 1:
            return
        # rational root screen (catches linear factors immediately)
        c0 = self.minpoly[0]
        den = 1
        for c in self.minpoly:
            den = den * c.denominator // _igcd(den, c.denominator)
        ip = [int(c * den) for c in self.minpoly]
        if ip[0] == 0:
            raise ValueError("%s: minpoly has root 0" % self.label)
        for r in _divisors(abs(ip[0])):
            for s in _divisors(abs(ip[-1])):
                for root in (Fraction(r, s), Fraction(-r, s)):
                    if sum(c * root**i for i, c in enumerate(self.minpoly)) == 0:
                        raise ValueError("%s: minpoly has rational root %s" % (self.label, root))
        for p in _SMALL_PRIMES:
            if ip[-1] % p == 0:
                continue
            if p ** (self.degree // 2) > 200_000:
                continue
            try:
                fac = factor_poly_mod_p(ip, p)
            except ValueError:
                continue
            if len(fac) == 1:
                return  # irreducible mod p => irreducible over Q
        raise ValueError(
            "%s: could not certify irreducibility of %s with small-prime test"
            % (self.label, list(self.minpoly))
        )

    # -- numeric embeddings

    @property
    def embeddings(self):
        """Roots of minpoly as refined complex doubles, deterministic order."""
        if self._embeddings is None:
            coeffs = [float(c) for c in reversed(self.minpoly)]
            roots = np.roots(coeffs)
            refined = []
            for r in roots:
                z = complex(r)
                for _ in range(50):
                    fz = self._eval_complex(z)
                    dz = self._eval_complex_deriv(z)
                    if dz == 0:
                        break
                    step = fz / dz
                    z -= step
                    if abs(step) < 1e-15:
                        break
                if abs(self._eval_complex(z)) > 1e-9:
                    raise ArithmeticError("embedding refinement failed for %s" % self.label)
                refined.append(z)
            refined.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
            self._embeddings = tuple(refined)
        return self._embeddings

    def _eval_complex(self, z):
        acc = 0j
        for c in reversed(self.minpoly):
            acc = acc * z + complex(c)
        return acc

    def _eval_complex_deriv(self, z):
        acc = 0j
        n = self.degree
        for i in range(n, 0, -1):
            acc = acc * z + i * complex(self.minpoly[i])
        return acc

    def real_embedding_indices(self, tol=1e-9):
        return [i for i, r in enumerate(self.embeddings) if abs(r.imag) < tol]

    def __repr__(self):
        return "NumberField(%s)" % self.label


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, FieldElement):
            other = self.field.from_rational(other)
        if other.field is not self.field:
            raise ValueError("field mismatch: %s vs %s" % (self.field.label, other.field.label))
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement(self.field, tuple(a * q for a in self.coords))
        other = self._check(other)
        prod = kernel.mulmod(list(self.coords), list(other.coords), self.field._red)
        return FieldElement(self.field, tuple(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in %s" % self.field.label)
        g, s, _ = poly_ext_gcd(list(self.coords), list(self.field.minpoly))
        if len(g) != 1:
            raise ArithmeticError("non-invertible element (reducible modulus?)")
        inv = [c / g[0] for c in s]
        return self.field.element(inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return FieldElement(self.field, tuple(a / q for a in self.coords))
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        if not isinstance(other, FieldElement) or other.field is not self.field:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash((id(self.field), self.coords))

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def is_rational(self):
        return all(c == 0 for c in self.coords[1:])

    def rational_value(self):
        if not self.is_rational():
            raise DescentError("element is not rational: %s" % (self.coords,))
        return self.coords[0]

    def numeric(self, i=0):
        root = self.field.embeddings[i]
        acc = 0j
        for c in reversed(self.coords):
            acc = acc * root + complex(c)
        return acc

    def __repr__(self):
        return "FieldElement(%s, %s)" % (self.field.label, list(self.coords))


def numeric_embed(x, i=0):
    """Complex image of x under the i-th embedding of its field."""
    return x.numeric(i)


# ---------------------------------------------------------------------------


class Automorphism:
    """Field automorphism determined by the image of the generator."""

    def __init__(self, field, gen_image, label=""):
        self.field = field
        self.label = label or "aut"
        if isinstance(gen_image, (list, tuple)):
            gen_image = field.element(gen_image)
        self.gen_image = gen_image
        # check the defining relation f(sigma(theta)) = 0
        acc = field.zero()
        for c in reversed(field.minpoly):
            acc = acc * gen_image + field.from_rational(c)
        if not acc.is_zero():
            raise ValueError("generator image is not a root of the minimal polynomial")
        # coordinate matrix: column j = coords of gen_image^j
        n = field.degree
        cols = []
        p = field.one()
        for _ in range(n):
            cols.append(p.coords)
            p = p * gen_image
        self.matrix = [[cols[j][i] for j in range(n)] for i in range(n)]

    def __call__(self, x):
        if x.field is not self.field:
            raise ValueError("automorphism field mismatch")
        n = self.field.degree
        out = [Fraction(0)] * n
        for j, c in enumerate(x.coords):
            if c == 0:
                continue
            col = self.matrix
            for i in range(n):
                out[i] += c * col[i][j]
        return FieldElement(self.field, tuple(out))

    def compose(self, other):
        return Automorphism(self.field, self(other.gen_image), "%s*%s" % (self.label, other.label))

    def order(self, bound=24):
        gen = self.field.gen()
        img = self.gen_image
        for k in range(1, bound + 1):
            if img == gen:
                return k
            img = self(img)
        raise ArithmeticError("order exceeds bound %d" % bound)

    def is_identity(self):
        return self.gen_image == self.field.gen()

    def fixes(self, x):
        return self(x) == x

    def __repr__(self):
        return "Automorphism(%s, %s)" % (self.field.label, self.label)


class TowerMap:
    """Embedding of one absolute field into another, by generator image.

    Optionally carries the relative Galois generator (an Automorphism of
    the target fixing the image of the source) so relative traces and
    norms can be formed from the conjugate orbit and descended.
    """

    def __init__(self, source, target, gen_image, label=""):
        self.source = source
        self.target = target
        self.label = label or ("%s->%s" % (source.label, target.label))
        if isinstance(gen_image, (list, tuple)):
            gen_image = target.element(gen_image)
        if target.degree % source.degree != 0:
            raise ValueError("degree of source does not divide degree of target")
        self.gen_image = gen_image
        acc = target.zero()
        for c in reversed(source.minpoly):
            acc = acc * gen_image + target.from_rational(c)
        if not acc.is_zero():
            raise ValueError("tower map: generator image fails the source minimal polynomial")
        # column j of the matrix: target coordinates of gen_image^j
        cols = []
        p = target.one()
        for _ in range(source.degree):
            cols.append(p.coords)
            p = p * gen_image
        self._cols = cols
        self.relative_degree = target.degree // source.degree
        self.rel_galois = None

    def register_galois(self, aut):
        """Register the generator of Gal(target / source image)."""
        if aut.field is not self.target:
            raise ValueError("automorphism acts on the wrong field")
        if not aut.fixes(self.embed(self.source.gen())):
            raise ValueError("automorphism does not fix the subfield image")
        if aut.order() != self.relative_degree:
            raise ValueError("automorphism order does not match the relative degree")
        self.rel_galois = aut

    def embed(self, x):
        if isinstance(x, (int, Fraction)):
            x = self.source.from_rational(x)
        if x.field is not self.source:
            raise ValueError("tower map source mismatch")
        n = self.target.degree
        out = [Fraction(0)] * n
        for j, c in enumerate(x.coords):
            if c == 0:
                continue
            col = self._cols[j]
            for i in range(n):
                out[i] += c * col[i]
        return FieldElement(self.target, tuple(out))

    def descend(self, y):
        """Express y in source coordinates; DescentError if impossible."""
        if y.field is not self.target:
            raise ValueError("tower map target mismatch")
        A = [[self._cols[j][i] for j in range(self.source.degree)] for i in range(self.target.degree)]
        sol = solve_rational(A, list(y.coords))
        if sol is None:
            raise DescentError("element does not lie in the subfield %s" % self.source.label)
        return self.source.element(sol)

    def is_in_subfield(self, y):
        try:
            self.descend(y)
            return True
        except DescentError:
            return False

    def __repr__(self):
        return "TowerMap(%s)" % self.label


def relative_trace_norm(x, sub, which):
    """Relative trace or norm through a TowerMap with registered orbit.

    x lives in sub.target; the result is descended into sub.source, with
    the descent acting as the internal consistency check.
    """
    if sub.rel_galois is None:
        raise ValueError("no Galois orbit registered for tower %s" % sub.label)
    if which not in ("trace", "norm"):
        raise ValueError("which must be 'trace' or 'norm'")
    sigma = sub.rel_galois
    acc = x
    conj = x
    for _ in range(sub.relative_degree - 1):
        conj = sigma(conj)
        acc = acc + conj if which == "trace" else acc * conj
    return sub.descend(acc)


# ---------------------------------------------------------------------------
# JSON interface


def load_fields(doc):
    """Load fields/towers/automorphisms from a parsed JSON document.

    Schema: {"fields": [{"label", "minpoly": ["p/q", ...]}, ...],
             "towers": [{"source", "target", "generator_image": [...]}, ...],
             "automorphisms": [{"field", "label", "generator_image": [...]}]}
    Returns (fields, towers, automorphisms) dictionaries keyed by label.
    """
    fields = {}
    for spec in doc.get("fields", []):
        fields[spec["label"]] = NumberField(
            spec["label"], [parse_rational(c) for c in spec["minpoly"]]
        )
    towers = {}
    for spec in doc.get("towers", []):
        src, tgt = fields[spec["source"]], fields[spec["target"]]
        tm = TowerMap(src, tgt, [parse_rational(c) for c in spec["generator_image"]])
        towers[tm.label] = tm
    autos = {}
    for spec in doc.get("automorphisms", []):
        f = fields[spec["field"]]
        a = Automorphism(f, [parse_rational(c) for c in spec["generator_image"]], spec.get("label", ""))
        autos[(spec["field"], a.label)] = a
    return fields, towers, autos
