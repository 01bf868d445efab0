import random
from fractions import Fraction

from divherm import catalog
from divherm.plane import GroupMatrix, RationalIdeal, congruence_sl2_membership

P1 = catalog.field_plane_disc_minus7()
P2 = catalog.quaternion_plane()
P3 = catalog.example_plane()


def test_hermitian_form_values():
    A1 = P1.algebra
    v01, v11, v10 = P1.vector(0, 1), P1.vector(1, 1), P1.vector(1, 0)
    assert P1.herm_form(v01, v01).is_zero()
    assert P1.herm_form(v11, v11) == A1.from_K(2)
    assert P1.herm_form(v10, v01) == A1.one()
    assert P1.is_isotropic(v01) and not P1.is_isotropic(v11)
    s = A1.from_K(A1.sqrt_minus_eta)
    assert P1.is_isotropic(P1.vector(s.coords[0], A1.one().coords[0]))


def test_su_sl2_round_trip():
    rng = random.Random(11)
    for _ in range(30):
        while True:
            a, b, c = (Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                       for _ in range(3))
            if a != 0:
                d = (1 + b * c) / a
                break
        m = [[a, b], [c, d]]
        g = P1.su_sl2_iso(m, "from_sl2")
        assert P1.is_unitary(g) and P1.is_special(g)
        assert P1.su_sl2_iso(g, "to_sl2") == m
    g1 = P1.su_sl2_iso([[1, 2], [0, 1]], "from_sl2")
    g2 = P1.su_sl2_iso([[1, 0], [3, 1]], "from_sl2")
    assert P1.su_sl2_iso(g1 * g2, "to_sl2") == [
        [Fraction(7), Fraction(2)], [Fraction(3), Fraction(1)]]


def test_integral_completion_d1():
    A1 = P1.algebra
    xi = P1.vector(A1.from_K(A1.sqrt_minus_eta), A1.from_K(2))
    assert P1.is_isotropic(xi)
    bz = P1.bezout_witness(xi)
    assert bz is not None
    M = P1.integral_complete(xi, bz)
    assert P1.is_unitary(M) and P1.is_special(M)
    assert M.c == xi.x1 and M.d == xi.x2
    xi2 = P1.vector(0, 1)
    M2 = P1.integral_complete(xi2, P1.bezout_witness(xi2))
    assert P1.gamma_membership(M2) == "in Gamma_OL"


def test_random_unitary_and_completion():
    rng = random.Random(4)
    for plane, n in ((P1, 10), (P3, 4)):
        for _ in range(n):
            g = plane.random_unitary(rng, steps=2)
            assert plane.is_unitary(g)
            assert g * g.inverse() == plane.identity()
            xi = plane.random_isotropic(rng, steps=2)
            if xi.is_zero():
                continue
            M = plane.complete_isotropic(xi)
            assert plane.is_unitary(M) and M.c == xi.x1 and M.d == xi.x2


def test_embed_subgroup_d_ge3():
    ell = P3.algebra.involution.ell_map.source
    t = ell.gen()
    m1 = [[ell.one() + t, t], [ell.one(), ell.one()]]
    m2 = [[ell.one(), ell.from_rational(0)], [t * t, ell.one()]]
    g1 = P3.embed_subgroup(m1, "d_ge3")
    g2 = P3.embed_subgroup(m2, "d_ge3")
    assert P3.is_unitary(g1)
    prod = [[m1[0][0] * m2[0][0] + m1[0][1] * m2[1][0],
             m1[0][0] * m2[0][1] + m1[0][1] * m2[1][1]],
            [m1[1][0] * m2[0][0] + m1[1][1] * m2[1][0],
             m1[1][0] * m2[0][1] + m1[1][1] * m2[1][1]]]
    assert g1 * g2 == P3.embed_subgroup(prod, "d_ge3")


def test_embedded_integrality_congruence():
    ell = P3.algebra.involution.ell_map.source
    t = ell.gen()
    uinv = t * t + t - ell.from_rational(2)
    assert t * uinv == ell.one()
    gd = P3.embed_subgroup([[t, ell.from_rational(0)],
                            [ell.from_rational(0), uinv]], "d_ge3")
    assert P3.gamma_membership(gd) == "in Gamma_OL"
    gl = P3.embed_subgroup([[ell.one(), ell.from_rational(0)],
                            [ell.from_rational(2), ell.one()]], "d_ge3")
    assert P3.gamma_membership(gl) == "in Gamma_OL"
    gu = P3.embed_subgroup([[ell.one(), ell.from_rational(7)],
                            [ell.from_rational(0), ell.one()]], "d_ge3")
    assert P3.gamma_membership(gu) == "in Gamma_OL"
    g_bad = P3.embed_subgroup([[ell.one(), ell.one()],
                               [ell.from_rational(0), ell.one()]], "d_ge3")
    assert P3.gamma_membership(g_bad) == "neither"


def test_embed_subgroup_d2():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    g = P2.embed_subgroup(m, "d2")
    assert P2.is_unitary(g)
    h = P2.embed_subgroup([[Fraction(1), Fraction(1)],
                           [Fraction(0), Fraction(1)]], "d2")
    gh = P2.embed_subgroup([[Fraction(2), Fraction(3)],
                            [Fraction(1), Fraction(2)]], "d2")
    assert g * h == gh
    assert len(P2.skew_basis()) == 3


def test_unipotent_dimension():
    assert P1.unipotent_dimension() == 1
    assert P3.unipotent_dimension() == 9


def test_stabilizers():
    rng = random.Random(2)
    A1 = P1.algebra
    b = P1.random_skew(rng)
    gp = GroupMatrix(P1, A1.one(), b, A1.zero(), A1.one())
    assert P1.stabilizer_membership(gp, "parabolic")
    assert not P1.stabilizer_membership(P1.matrix(1, 1, 0, 1), "parabolic")
    assert P1.stabilizer_membership(P1.identity(), "compact")


def test_congruence_sl2():
    c2 = RationalIdeal(2)
    assert congruence_sl2_membership(
        [[Fraction(1), Fraction(1, 2)], [Fraction(0), Fraction(1)]], c2)
    assert not congruence_sl2_membership(
        [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(2)]], c2)
    assert congruence_sl2_membership(
        [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]], c2)
