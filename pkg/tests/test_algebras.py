import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divherm.algebras import (
    CyclicAlgebra,
    InvolutionSpec,
    ZeroDivisorError,
    make_quaternion,
)
from divherm.fields import Automorphism, NumberField, TowerMap


def _degree18():
    """The degree-18 algebra over Q(zeta7)/K with gamma' = 2 conj(gamma)."""
    L = NumberField("Q(zeta7)", [1] * 7)
    K = NumberField("K", [2, 1, 1])
    ell = NumberField("ell", [-1, -2, 1, 1])
    gamma_L = L.element([0, 1, 1, 0, 1, 0])
    K_map = TowerMap(K, L, gamma_L, "K->L")
    ell_map = TowerMap(ell, L, L.element([-1, 0, -1, -1, -1, -1]), "ell->L")
    sigma = Automorphism(L, L.element([0, 0, 1, 0, 0, 0]), "sigma")
    bar = Automorphism(L, L.element([-1, -1, -1, -1, -1, -1]), "bar")
    alg = CyclicAlgebra("Dtest", L, K_map, sigma, K.element([-2, -2]), 3)
    alg.register_involution(
        InvolutionSpec("second", omega=ell.from_rational(2), ell_map=ell_map,
                       bar=bar))
    alg.register_sqrt_minus_eta(K.element([1, 2]), 7)
    return alg


DT = _degree18()
Q23 = make_quaternion(2, 3)


def test_defining_relations():
    e = DT.e()
    z = DT.from_L(DT.L.gen())
    assert e * z == DT.from_L(DT.sigma(DT.L.gen())) * e
    assert e * e * e == DT.from_K(DT.gamma)
    e2 = Q23.e()
    c = Q23.from_L(Q23.L.gen())
    assert e2 * e2 == 3 and c * c == 2 and e2 * c == -(c * e2)


def test_norm_trace_and_inverse():
    rng = random.Random(7)
    for _ in range(10):
        x = DT.random_element(rng, 2)
        y = DT.random_element(rng, 2)
        assert DT.reduced_norm(x * y) == DT.reduced_norm(x) * DT.reduced_norm(y)
        assert DT.reduced_trace(x + y) == DT.reduced_trace(x) + DT.reduced_trace(y)
        if not x.is_zero():
            assert x * x.inverse() == DT.one()
        assert DT.coords_from_rep(DT.matrix_rep(x)) == x


def test_involution_axioms():
    rng = random.Random(11)
    bar = DT.involution.bar
    assert DT.involute(DT.from_L(DT.L.gen())) == DT.from_L(bar(DT.L.gen()))
    for _ in range(10):
        x = DT.random_element(rng, 2)
        y = DT.random_element(rng, 2)
        assert DT.involute(x * y) == DT.involute(y) * DT.involute(x)
        assert DT.involute(DT.involute(x)) == x
    q = DT.from_K(DT.sqrt_minus_eta)
    assert DT.involute(q) == -q


def test_plus_minus_split():
    plus, qplus = DT.plus_minus_split()
    assert len(plus) == 9 and len(qplus) == 9
    for p in plus:
        assert DT.involute(p) == p
    for m in qplus:
        assert DT.involute(m) == -m


def test_quaternion_canonical_involution():
    rng = random.Random(3)
    c = Q23.from_L(Q23.L.gen())
    e = Q23.e()
    assert Q23.involute(c) == -c and Q23.involute(e) == -e
    for _ in range(10):
        x = Q23.random_element(rng, 3)
        assert Q23.from_K(Q23.reduced_norm(x)) == x * Q23.involute(x)
        tr = Q23.reduced_trace(x).coords[0]
        assert x + Q23.involute(x) == Q23.one() * tr


coeff = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(st.lists(coeff, min_size=4, max_size=4),
       st.lists(coeff, min_size=4, max_size=4))
def test_quaternion_norm_multiplicative(a, b):
    L = Q23.L

    def mk(v):
        return Q23.element([L.element(v[:2]), L.element(v[2:])])

    x, y = mk(a), mk(b)
    assert Q23.reduced_norm(x * y) == Q23.reduced_norm(x) * Q23.reduced_norm(y)


def test_division_vs_split():
    rng = random.Random(9)
    # (2,3) is division: every nonzero sample inverts
    for _ in range(10):
        x = Q23.random_element(rng, 4)
        if not x.is_zero():
            x.inverse()
    # (2,2) is split: 2 + sqrt(2) + e has reduced norm 0
    S = make_quaternion(2, 2)
    w = S.from_L(S.L.from_rational(2) + S.L.gen()) + S.e()
    with pytest.raises(ZeroDivisorError) as exc:
        w.inverse()
    assert exc.value.witness == w
