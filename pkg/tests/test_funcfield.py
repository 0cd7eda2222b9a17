import random
from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from tsvs.errors import DivisionByZero, NoFit
from tsvs.funcfield import DiffOperator, FunctionField, fit_operator, hasse_apply, hasse_series
from tsvs.poly import Poly

F = FunctionField("t")
t = F.gen
T = sympy.Symbol("t")

small = st.lists(st.integers(-4, 4), min_size=1, max_size=3)


@st.composite
def ratfuncs(draw):
    num = Poly(draw(small))
    den = Poly(draw(small))
    if not den:
        den = Poly([1])
    return F.element(num, den)


def to_sympy(x):
    def poly(p):
        return sum(sympy.Rational(c.numerator, c.denominator) * T ** i for i, c in enumerate(p.coeffs))

    return poly(x.num) / poly(x.den)


class TestRatFunc:
    def test_normal_form(self):
        x = (t * t - 1) / (2 * t - 2)
        assert x.num == Poly([Fraction(1, 2), Fraction(1, 2)])
        assert x.den == Poly([1])

    def test_format(self):
        assert ((t * t + 1) / (t - 1)).format() == "(t^2 + 1)/(t - 1)"
        assert (1 / (t * t)).format() == "1/t^2"
        assert (2 * t / (t + 1)).format() == "2*t/(t + 1)"

    def test_evaluation_and_pole(self):
        x = (t * t + 1) / (t - 1)
        assert x(3) == 5
        with pytest.raises(DivisionByZero):
            x(1)

    def test_zero_inverse(self):
        with pytest.raises(DivisionByZero):
            F.zero.inverse()

    def test_substitute(self):
        x = 1 / (t + 1)
        assert x.substitute(t * t) == 1 / (t * t + 1)

    @given(ratfuncs(), ratfuncs(), ratfuncs())
    @settings(max_examples=60)
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - a == F.zero
        if a:
            assert a * a.inverse() == F.one

    @given(ratfuncs(), ratfuncs())
    @settings(max_examples=25, deadline=None)
    def test_against_sympy(self, a, b):
        expected = to_sympy(a) * to_sympy(b) + to_sympy(a) - to_sympy(b)
        assert sympy.cancel(to_sympy(a * b + a - b) - expected) == 0
        if b:
            assert sympy.cancel(to_sympy(a / b) - to_sympy(a) / to_sympy(b)) == 0


class TestHasse:
    def test_monomials(self):
        assert hasse_apply(2, t ** 5) == 10 * t ** 3
        assert hasse_apply(6, t ** 5) == F.zero
        assert hasse_apply(0, t ** 5) == t ** 5

    def test_inverse(self):
        # D_j(1/t) = (-1)^j / t^(j+1)
        for j in range(5):
            assert hasse_apply(j, 1 / t) == Fraction((-1) ** j) / t ** (j + 1)

    @pytest.mark.parametrize("seed", range(10))
    def test_against_sympy_derivatives(self, seed):
        rng = random.Random(seed)
        x = F.random_element(rng, max_degree=3)
        e = to_sympy(x)
        for j, d in enumerate(hasse_series(x, 4)):
            assert sympy.simplify(to_sympy(d) - sympy.diff(e, T, j) / factorial(j)) == 0

    @given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 6))
    def test_leibniz_on_monomials(self, a, b, level):
        lhs = hasse_apply(level, t ** (a + b))
        rhs = F.zero
        for i in range(level + 1):
            rhs = rhs + hasse_apply(i, t ** a) * hasse_apply(level - i, t ** b)
        assert lhs == rhs

    def test_iterate_identity(self):
        # D_i D_j = C(i+j, i) D_{i+j}
        x = (t ** 3 + 2) / (t + 5)
        for i in range(3):
            for j in range(3):
                assert hasse_apply(i, hasse_apply(j, x)) == comb(i + j, i) * hasse_apply(i + j, x)


class TestDiffOperator:
    def test_apply(self):
        L = DiffOperator(F, {1: t, 2: 2})
        assert L.format() == "t*D1 + 2*D2"
        assert L.apply(t * t) == 2 * t * t + 2

    def test_zero_format(self):
        assert DiffOperator(F).format() == "0"

    def test_composition(self):
        D1 = DiffOperator.hasse(F, 1)
        D2 = DiffOperator.hasse(F, 2)
        assert D1 * D1 == 2 * D2
        assert D1 * D2 == DiffOperator(F, {3: 3})
        tD1 = DiffOperator(F, {1: t})
        assert tD1 * tD1 == DiffOperator(F, {1: t, 2: 2 * t * t})

    @pytest.mark.parametrize("seed", range(5))
    def test_composition_matches_application(self, seed):
        rng = random.Random(seed)
        A = DiffOperator(F, {j: F.random_element(rng, max_degree=1) for j in range(3)})
        B = DiffOperator(F, {j: F.random_element(rng, max_degree=1) for j in range(3)})
        for _ in range(3):
            x = F.random_element(rng)
            assert (A * B).apply(x) == A.apply(B.apply(x))


class TestFit:
    def test_recovers_operators(self):
        samples = [(t ** k, hasse_apply(1, t ** k)) for k in range(1, 6)]
        assert fit_operator(samples, 2) == DiffOperator.hasse(F, 1)
        L = DiffOperator(F, {1: 2 * t})
        samples = [(t ** k, L.apply(t ** k)) for k in range(1, 6)]
        assert fit_operator(samples, 2) == L

    def test_no_fit_for_nonlinear_map(self):
        # x -> x^2 is not a differential operator; more samples than unknowns expose it
        samples = [(t ** k, t ** (2 * k)) for k in range(1, 7)]
        with pytest.raises(NoFit):
            fit_operator(samples, 2)
