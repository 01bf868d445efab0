"""The compiled kernel and the pure-Python fallback must agree exactly."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from divherm import kernel
from divherm import _mulmod_py

coeff = st.one_of(
    st.integers(min_value=-50, max_value=50),
    st.fractions(min_value=-10, max_value=10, max_denominator=7),
)


def _vectors(n):
    return st.lists(coeff, min_size=n, max_size=n)


@settings(max_examples=200, deadline=None)
@given(st.data(), st.integers(min_value=2, max_value=6))
def test_mulmod_backends_agree(data, n):
    a = data.draw(_vectors(n))
    b = data.draw(_vectors(n))
    red = [data.draw(_vectors(n)) for _ in range(n - 1)]
    assert kernel.mulmod(a, b, red) == _mulmod_py.mulmod(a, b, red)


@settings(max_examples=100, deadline=None)
@given(st.data(), st.integers(min_value=1, max_value=6))
def test_addmul_backends_agree(data, n):
    acc1 = data.draw(_vectors(n))
    acc2 = list(acc1)
    c = data.draw(coeff)
    v = data.draw(_vectors(n))
    assert kernel.addmul(acc1, c, v) == _mulmod_py.addmul(acc2, c, v)


def test_mulmod_reduces_x_squared():
    # x*x modulo x^2 + 1 (red row for x^2 is [-1, 0])
    assert kernel.mulmod([0, 1], [0, 1], [[-1, 0]]) == [-1, 0]


def test_mulmod_handles_fractions():
    a = [Fraction(1, 2), Fraction(1, 3)]
    b = [Fraction(2), Fraction(3)]
    red = [[Fraction(-2), Fraction(-1)]]
    assert kernel.mulmod(a, b, red) == _mulmod_py.mulmod(a, b, red)
