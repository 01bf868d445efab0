"""Numeric tube-domain realizations of the unitary groups of the planes.

For a plane with a second-kind involution (d = 1 or d >= 3) the group is
numerically a unitary group U(d,d).  The exact matrix representation sends
the involution J to W-twisted conjugate transpose, rep(J(x)) = W rep(x)^H
W^{-1}, for a positive diagonal matrix W determined (up to a positive
scalar) by the involution; conjugating the representation by W^{1/2} turns
J into plain conjugate transpose, so the block matrix of a unitary group
element preserves the split form [[0, I], [I, 0]] on both sides.  A further
fixed rescaling of the second block of coordinates by i moves the action to
the standard unbounded realization {tau : Im tau > 0} of the domain of type
I_{d,d} with base point i*I; in these coordinates the numeric value of
sqrt(-eta) appearing in the displayed coefficient matrices becomes the real
number sqrt(eta).

For a quaternion plane (d = 2, first-kind involution) the algebra splits as
M_2(R) at a real place and the group preserves the alternating form
[[0, S], [S, 0]] with S = [[0, 1], [-1, 0]]; conjugation by q = diag(I_2, S)
turns it into the standard Sp(4, R) acting on the Siegel space of symmetric
2x2 tau with Im tau > 0.
"""

from fractions import Fraction

import numpy as np

from .fields import FieldElement, numeric_embed
from .plane import GroupMatrix


def _hermitian_sqrt(W):
    vals, vecs = np.linalg.eigh(W)
    if vals.min() <= 0:
        raise ValueError("matrix is not positive definite")
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def _block(M, d):
    return M[:d, :d], M[:d, d:], M[d:, :d], M[d:, d:]


class TubePoint:
    """A point of the tube domain: one complex d x d block per real place."""

    def __init__(self, blocks, tolerance=1e-9):
        self.blocks = tuple(np.asarray(b, dtype=complex) for b in blocks)
        self.tolerance = tolerance

    def imag_min_eig(self):
        out = []
        for b in self.blocks:
            out.append(np.linalg.eigvalsh((b - b.conj().T) / 2j).min())
        return min(out)

    def symmetry_defect(self):
        return max(np.linalg.norm(b - b.T) for b in self.blocks)

    def is_in_domain(self, kind="type1"):
        if self.imag_min_eig() <= -self.tolerance:
            return False
        if kind == "siegel" and self.symmetry_defect() > self.tolerance:
            return False
        return True

    def distance(self, other):
        return max(
            np.linalg.norm(a - b) for a, b in zip(self.blocks, other.blocks)
        )

    def __repr__(self):
        return "TubePoint(%r)" % (self.blocks,)


class NumericGroupElement:
    """Realized numeric matrices of a group element, one per real place."""

    def __init__(self, realization, blocks, source=None):
        self.realization = realization
        self.blocks = tuple(np.asarray(b, dtype=complex) for b in blocks)
        self.source = source

    def form_residual(self):
        F = self.realization.realized_form()
        return max(
            np.linalg.norm(M.conj().T @ F @ M - F) for M in self.blocks
        )

    def __matmul__(self, other):
        return NumericGroupElement(
            self.realization,
            [a @ b for a, b in zip(self.blocks, other.blocks)],
        )


class TubeRealization:
    """Numeric realization of the unitary group of a plane at a real place.

    kind is "type1" (d = 1 or d >= 3, second-kind involution, domain of
    type I_{d,d}) or "siegel" (d = 2 quaternion, Siegel upper half space).
    """

    def __init__(self, plane, tolerance=1e-9):
        self.plane = plane
        self.algebra = plane.algebra
        self.d = self.algebra.d
        self.tolerance = tolerance
        if self.algebra.involution.kind == "first":
            self.kind = "siegel"
            self._init_siegel()
        else:
            self.kind = "type1"
            self._init_type1()

    # -- construction --------------------------------------------------------

    def _init_type1(self):
        alg = self.algebra
        if alg.sqrt_minus_eta is None:
            raise ValueError("sqrt(-eta) must be registered on the algebra")
        L = alg.L
        bar = alg.involution.bar
        s_L = alg.K_map.embed(alg.sqrt_minus_eta)
        theta = L.gen()
        self.embedding = None
        for i in range(L.degree):
            ok = (
                abs(numeric_embed(bar(theta), i) - np.conj(numeric_embed(theta, i)))
                < 1e-8
            )
            if ok and numeric_embed(s_L, i).imag > 0:
                self.embedding = i
                break
        if self.embedding is None:
            raise ValueError("no embedding is compatible with the involution")
        self.s_value = numeric_embed(s_L, self.embedding).imag  # sqrt(eta)
        d = self.d
        # solve rep(J(g)) W = W rep(g)^H on algebra generators
        gens = [alg.from_L(theta)]
        if d > 1:
            gens.append(alg.e())
        rows = []
        for g in gens:
            A = self.repnum(alg.involute(g))
            B = self.repnum(g).conj().T
            rows.append(np.kron(np.eye(d), A) - np.kron(B.T, np.eye(d)))
        system = np.vstack(rows)
        _, svals, Vh = np.linalg.svd(system)
        if d > 1 and svals[-2] < 1e-8:
            raise ValueError("involution transport matrix is not unique")
        W = Vh[-1].reshape(d, d)
        idx = np.unravel_index(abs(W).argmax(), W.shape)
        W = W / W[idx]
        W = (W + W.conj().T) / 2
        eigs = np.linalg.eigvalsh(W)
        if eigs.max() < 0:
            W = -W
            eigs = -eigs[::-1]
        if eigs.min() <= 0:
            raise ValueError("involution transport matrix is indefinite")
        self.W = W
        self.Wh = _hermitian_sqrt(W)
        self.Wh_inv = np.linalg.inv(self.Wh)

    def _init_siegel(self):
        alg = self.algebra
        # L = Q(sqrt a); pick the real embedding with sqrt(a) > 0
        self.embedding = None
        for i in range(alg.L.degree):
            v = numeric_embed(alg.L.gen(), i)
            if abs(v.imag) < 1e-10 and v.real > 0:
                self.embedding = i
                break
        if self.embedding is None:
            raise ValueError("quaternion algebra is not split at a real place")
        self.sqrt_a = numeric_embed(alg.L.gen(), self.embedding).real
        self.a_value = Fraction(-alg.L.minpoly[0])
        self.b_value = Fraction(alg.gamma.coords[0])
        self.S = np.array([[0.0, 1.0], [-1.0, 0.0]])
        self.q = np.block(
            [[np.eye(2), np.zeros((2, 2))], [np.zeros((2, 2)), self.S]]
        )
        self.q_inv = np.linalg.inv(self.q)

    # -- numeric matrices ----------------------------------------------------

    def repnum(self, x):
        M = self.algebra.matrix_rep(x)
        d = self.d
        return np.array(
            [[numeric_embed(M[r][c], self.embedding) for c in range(d)]
             for r in range(d)],
            dtype=complex,
        )

    def split(self, x):
        """Numeric image of x under the splitting that sends J to ^H."""
        if self.kind == "siegel":
            return self.repnum(x)
        return self.Wh_inv @ self.repnum(x) @ self.Wh

    def block_matrix(self, g):
        return np.block(
            [
                [self.split(g.a), self.split(g.b)],
                [self.split(g.c), self.split(g.d)],
            ]
        )

    def realize(self, g):
        """Realized matrix acting on the domain by block Mobius action."""
        M = self.block_matrix(g)
        d = self.d
        if self.kind == "siegel":
            return (self.q @ M @ self.q_inv).real
        A, B, C, D = _block(M, d)
        return np.block([[A, 1j * B], [-1j * C, D]])

    def element(self, g):
        return NumericGroupElement(self, [self.realize(g)], source=g)

    def realized_form(self):
        d = self.d
        if self.kind == "siegel":
            return np.block(
                [[np.zeros((d, d)), np.eye(d)], [-np.eye(d), np.zeros((d, d))]]
            )
        return 1j * np.block(
            [[np.zeros((d, d)), np.eye(d)], [-np.eye(d), np.zeros((d, d))]]
        )

    def form_matrix(self):
        """The transported hermitian (or i times alternating) form matrix."""
        d = self.d
        if self.kind == "siegel":
            return 1j * np.block(
                [[np.zeros((d, d)), self.S], [self.S, np.zeros((d, d))]]
            )
        Z = np.zeros((d, d))
        return np.block([[Z, self.W], [self.W, Z]])

    def base_point(self):
        return TubePoint([1j * np.eye(self.d)], tolerance=self.tolerance)

    def random_point(self, rng, scale=1):
        d = self.d
        pos = np.array(
            [[rng.uniform(-scale, scale) for _ in range(d)] for _ in range(d)]
        )
        im = pos @ pos.T + 0.1 * np.eye(d)
        if self.kind == "siegel":
            re = np.array(
                [[rng.uniform(-scale, scale) for _ in range(d)]
                 for _ in range(d)]
            )
            return TubePoint([(re + re.T) / 2 + 1j * im],
                             tolerance=self.tolerance)
        # a domain point is R + i*H with R hermitian and H positive definite
        raw = np.array(
            [[complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))
              for _ in range(d)] for _ in range(d)]
        )
        re = (raw + raw.conj().T) / 2
        return TubePoint([re + 1j * im], tolerance=self.tolerance)


def mobius(M, tau):
    d = tau.shape[0]
    A, B, C, D = _block(np.asarray(M, dtype=complex), d)
    den = C @ tau + D
    if np.linalg.cond(den) > 1e12:
        raise ZeroDivisionError("near-singular denominator in Mobius action")
    return (A @ tau + B) @ np.linalg.inv(den)


def act(g, tau):
    """Block Mobius action of a NumericGroupElement on a TubePoint."""
    blocks = [mobius(M, t) for M, t in zip(g.blocks, tau.blocks)]
    return TubePoint(blocks, tolerance=tau.tolerance)


def signature_of_matrix(H, tolerance=1e-9):
    H = np.asarray(H, dtype=complex)
    eigs = np.linalg.eigvalsh((H + H.conj().T) / 2)
    if min(abs(e) for e in eigs) < tolerance:
        raise ValueError("form is numerically degenerate")
    pos = int(sum(1 for e in eigs if e > 0))
    return (pos, len(eigs) - pos)


def signature_of_form(plane, tolerance=1e-9):
    """Signature (p, q) of the realized form at each real place."""
    real = TubeRealization(plane, tolerance)
    return [signature_of_matrix(real.form_matrix(), tolerance)]


def diagonal_action_formula(realization, m, tau):
    """Componentwise fractional-linear action of an embedded 2x2 element.

    m is a 2x2 matrix over ell (d >= 3), over the rationals (d = 1 or the
    quaternion case); tau must have diagonal blocks.  The coefficients are
    the sigma-conjugates of the entries arranged along the diagonal of the
    matrix representation, with sqrt(-eta) taken at its realized (real)
    value.
    """
    real = realization
    d = real.d
    (t,) = tau.blocks
    if np.linalg.norm(t - np.diag(np.diag(t))) > real.tolerance:
        raise ValueError("tau must be diagonal")
    diag = np.diag(t)
    if real.kind == "siegel":
        al, be, ga, de = (Fraction(v) for row in m for v in row)
        if al * de - be * ga != 1:
            raise ValueError("determinant must be 1")
        sa = real.sqrt_a
        b = float(real.b_value)
        t1, t2 = diag
        num1 = float(al) * b * t1 + 2 * float(be) / sa
        den1 = float(ga) * sa / 2 * b * t1 + float(de)
        num2 = float(al) * t2 + 2 * float(be) / sa
        den2 = float(ga) * sa / 2 * t2 + float(de)
        out = np.diag([num1 / den1 / b, num2 / den2])
        return TubePoint([out], tolerance=tau.tolerance)
    alg = real.algebra
    s = real.s_value  # realized value of sqrt(-eta)

    def conj_diag(v):
        if isinstance(v, FieldElement):
            x = alg.from_L(alg.involution.ell_map.embed(v))
        else:
            x = alg.from_K(Fraction(v))
        return np.diag(real.repnum(x)).real

    if d == 1:
        # the d = 1 isomorphism carries [[al, be], [ga, de]] to the matrix
        # with diagonal (de, al)
        al, be, ga, de = (Fraction(v) for row in m for v in row)
        if al * de - be * ga != 1:
            raise ValueError("determinant must be 1")
        a_j = np.array([float(de)])
        b_j = np.array([2 * float(ga) / s])
        c_j = np.array([float(be) * s / 2])
        d_j = np.array([float(al)])
    else:
        al, be, ga, de = (conj_diag(v) for row in m for v in row)
        a_j, d_j = al, de
        b_j = 2 * be / s
        c_j = ga * s / 2
    out = (a_j * diag + b_j) / (c_j * diag + d_j)
    return TubePoint([np.diag(out)], tolerance=tau.tolerance)


def _random_sl2(rng, field, height=3, steps=3):
    """Random element of SL_2 over a number field (or the rationals)."""
    def rand_entry():
        if field is None:
            return Fraction(rng.randint(-height, height))
        coords = [
            Fraction(rng.randint(-height, height))
            for _ in range(field.degree)
        ]
        return field.element(coords)

    def one():
        return Fraction(1) if field is None else field.one()

    def zero():
        return Fraction(0) if field is None else field.from_rational(0)

    m = [[one(), zero()], [zero(), one()]]
    for _ in range(steps):
        x = rand_entry()
        if rng.random() < 0.5:
            e = [[one(), x], [zero(), one()]]
        else:
            e = [[one(), zero()], [x, one()]]
        m = [
            [
                m[0][0] * e[0][0] + m[0][1] * e[1][0],
                m[0][0] * e[0][1] + m[0][1] * e[1][1],
            ],
            [
                m[1][0] * e[0][0] + m[1][1] * e[1][0],
                m[1][0] * e[0][1] + m[1][1] * e[1][1],
            ],
        ]
    return m


def subdomain_preserved(plane, case, rng, samples=50, tolerance=1e-9):
    """Check that embedded 2x2 subgroups preserve their subdomains.

    case "d_ge3": images of diagonal points under embedded SL_2(ell) stay
    diagonal.  case "d2": images of diag(tau1, b*tau1) under embedded
    SL_2(Q) stay of that shape (and symmetric, in the domain).
    """
    real = TubeRealization(plane, tolerance)
    worst = 0.0
    checked = 0
    for _ in range(samples):
        if case == "d_ge3":
            ell = plane.algebra.involution.ell_map.source
            m = _random_sl2(rng, ell, height=2, steps=3)
            g = plane.embed_subgroup(m, "d_ge3")
            diag = [
                complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
                for _ in range(real.d)
            ]
            tau = TubePoint([np.diag(diag)], tolerance=tolerance)
            img = act(real.element(g), tau)
            (t,) = img.blocks
            off = np.linalg.norm(t - np.diag(np.diag(t)))
            formula = diagonal_action_formula(real, m, tau)
            off = max(off, img.distance(formula))
        elif case == "d2":
            m = _random_sl2(rng, None, height=3, steps=3)
            g = plane.embed_subgroup(m, "d2")
            b = float(real.b_value)
            t1 = complex(rng.uniform(-2, 2), rng.uniform(0.2, 3))
            tau = TubePoint([np.diag([t1, b * t1])], tolerance=tolerance)
            img = act(real.element(g), tau)
            (t,) = img.blocks
            off = abs(t[0, 1]) + abs(t[1, 0]) + abs(t[1, 1] - b * t[0, 0])
            formula = diagonal_action_formula(real, m, tau)
            off = max(off, img.distance(formula))
        else:
            raise ValueError("case must be d_ge3 or d2")
        if not img.is_in_domain(real.kind):
            return {
                "check": "subdomain_preserved",
                "case": case,
                "samples": checked,
                "pass": False,
                "reason": "image left the domain",
            }
        worst = max(worst, off)
        checked += 1
    return {
        "check": "subdomain_preserved",
        "case": case,
        "samples": checked,
        "max_residual": worst,
        "tolerance": tolerance,
        "pass": worst < tolerance,
    }


def symplectic_conjugation_check(plane, rng, samples=50, tolerance=1e-9):
    """q g q^{-1} lies in Sp(4, R) for unitary g of a quaternion plane."""
    real = TubeRealization(plane, tolerance)
    if real.kind != "siegel":
        raise ValueError("symplectic conjugation check needs a d=2 plane")
    J = real.realized_form()
    worst = 0.0
    for _ in range(samples):
        g = plane.random_unitary(rng, steps=4)
        M = real.realize(g)
        worst = max(worst, np.linalg.norm(M.T @ J @ M - J))
    return {
        "check": "symplectic_conjugation",
        "samples": samples,
        "max_residual": worst,
        "tolerance": tolerance,
        "pass": worst < tolerance,
    }


def compact_sample(plane, t):
    """A rational point of the compact stabilizer [[a, c], [c, a]].

    For second-kind planes: a = (1 - eta t^2)/(1 + eta t^2) and
    c = sqrt(-eta) * 2t/(1 + eta t^2), so a^2 + eta u^2 = 1 and the matrix
    is unitary of compact shape; it fixes the base point i*I.
    """
    alg = plane.algebra
    if alg.involution.kind == "first":
        # for split quaternions the [[a, c], [c, a]] set is the stabilizer
        # of a pair of symplectic planes and is not compact
        raise ValueError("compact samples require a second-kind involution")
    if alg.sqrt_minus_eta is None:
        raise ValueError("sqrt(-eta) must be registered")
    t = Fraction(t)
    eta = Fraction(alg.eta)
    den = 1 + eta * t * t
    a = alg.from_K(alg.K_map.source.from_rational((1 - eta * t * t) / den))
    c = alg.from_K(alg.sqrt_minus_eta * (2 * t / den))
    return GroupMatrix(plane, a, c, c, a)
