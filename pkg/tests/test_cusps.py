import random

import pytest

from divherm import catalog
from divherm.cusps import (
    QuadIdeal,
    class_number,
    cusp_count,
    cusp_equivalent,
    enumerate_cusp_classes,
    ideal_class,
)
from divherm.fields import NumberField
from divherm.plane import make_field_plane


def test_class_numbers():
    assert class_number(-7) == 1
    assert class_number(-23) == 3
    assert class_number(-4) == 1
    assert class_number(-20) == 2
    assert class_number(-163) == 1
    assert class_number(5) == 1
    assert class_number(8) == 1
    assert class_number(12) == 2  # narrow class number
    with pytest.raises(ValueError):
        class_number(-12)  # not fundamental


def test_quad_ideals():
    K7 = NumberField("K7", [2, 1, 1])
    one = QuadIdeal(K7, [1])
    assert ideal_class(one).a == 1
    assert ideal_class(one) == ideal_class(QuadIdeal(K7, [K7.gen()]))
    assert ideal_class(one).to_json()["form"] == [1, 1, 2]
    assert one.norm() == 1
    g = QuadIdeal(K7, [K7.gen()])
    assert g.norm() == 2
    assert g * g.inverse() == one
    K5 = NumberField("K5", [5, 0, 1])
    P2 = QuadIdeal(K5, [2, K5.element([1, 1])])
    f = ideal_class(P2)
    assert (f.a, f.b, f.c) == (2, 2, 3)
    assert ideal_class(QuadIdeal(K5, [1])).key() == ("form", 1, 0, 5)
    assert (P2 * P2).find_generator() is not None  # class has order 2
    assert P2.find_generator() is None  # non-principal


def test_cusp_equivalence_disc_minus7():
    P = catalog.field_plane_disc_minus7()
    r = cusp_equivalent(P.vector(0, 1), P.vector(1, 0))
    assert r["verdict"] == "equivalent"
    assert P.is_unitary(r["witness"])
    rng = random.Random(3)
    checked = 0
    for _ in range(20):
        g = P.random_unitary(rng, steps=4)
        if P.gamma_membership(g) == "neither":
            continue
        eta = P.vector(0, 1)
        r2 = cusp_equivalent(eta * g, eta)
        assert r2["verdict"] == "equivalent"
        checked += 1
    assert checked > 0


def test_inequivalence_certificates_disc_minus5():
    P5 = catalog.field_plane_disc_minus5()
    K = P5.algebra.K
    v1 = P5.vector(0, 1)
    v2 = P5.vector(K.from_rational(2), K.element([1, 1]))
    r = cusp_equivalent(v1, v2)
    assert r["verdict"] == "inequivalent"
    c1, c2 = r["certificates"]
    assert (c1.a, c1.b, c1.c) == (1, 0, 5)
    assert (c2.a, c2.b, c2.c) == (2, 2, 3)


def test_cusp_counts():
    assert cusp_count(catalog.field_plane_disc_minus7()) == 1
    P23 = make_field_plane("K23", [6, 1, 1], [-1, -1], [1, 2], 23)
    assert cusp_count(P23) == 3


def test_enumeration_matches_class_group():
    P5 = catalog.field_plane_disc_minus5()
    n, reps = enumerate_cusp_classes(P5, height=4)
    assert n == 2
    keys = sorted(cls.key() for cls in reps)
    assert keys == [("form", 1, 0, 5), ("form", 2, 2, 3)]
