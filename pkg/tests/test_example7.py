import json
from fractions import Fraction

from divherm import example7
from divherm.fields import factor_poly_mod_p


def test_cyclotomic_factorization_mod_2():
    factors = factor_poly_mod_p([1] * 7, 2)
    assert len(factors) == 2
    assert all(len(f) == 4 for f in factors)  # two cubics
    assert sorted(factors) == sorted([[1, 1, 0, 1], [1, 0, 1, 1]])


def test_multiplicative_order():
    assert [pow(2, k, 7) for k in (1, 2, 3)] == [2, 4, 1]


def test_tower_and_certificate():
    tower, algebra, cert = example7.full_certificate()
    assert cert.reverify()
    concl = cert.conclusions
    assert concl["is_division_algebra"] is True
    assert concl["landherr_involution_exists"] is True
    assert concl["cusp_count"] == 1
    # N(gamma) = 2 and the invariants sum to 0 mod 1
    gamma = tower["K"].element([0, 1])
    gamma_bar = tower["K"].element([-1, -1])
    prod = gamma * gamma_bar
    assert prod == tower["K"].from_rational(2)
    assert cert.invariant_sum() == 0
    invs = sorted(rec["invariant"] for rec in cert.local_data
                  if rec["invariant"] != 0)
    assert invs == [Fraction(-1, 3), Fraction(1, 3)]


def test_certificate_serializes():
    _, _, cert = example7.full_certificate()
    blob = json.dumps(cert.to_json())
    assert "division" in blob or "cusp_count" in blob


def test_norm_equation_probe():
    rep = example7.norm_equation_probe(bound=4)
    assert rep["witness"] is None
    assert rep["obstruction"]["2_inert_in_ell"] is True
    assert rep["unit_checks"]["N(eta1)"] == "1"


def test_reduced_forms_disc_minus7():
    assert example7.reduced_forms_disc(-7) == [(1, 1, 2)]
