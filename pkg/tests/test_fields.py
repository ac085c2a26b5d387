from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degwild.errors import StructuralError
from degwild.fields import MultiQuad, RatFunc, mq_inv, mq_lift, mq_mul

S = RatFunc.s()

mpmath.mp.dps = 50

small_q = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@st.composite
def ratfuncs(draw, nonzero=False):
    num = draw(st.lists(small_q, min_size=1, max_size=3))
    den = draw(st.lists(small_q, min_size=1, max_size=2))
    if not any(den):
        den = [Fraction(1)]
    f = RatFunc(num, den)
    if nonzero and not f:
        f = RatFunc(1)
    return f


@st.composite
def multiquads(draw, level=3, nonzero=False):
    coords = {}
    for m in draw(st.lists(st.integers(0, 2 ** level - 1), max_size=4)):
        coords[frozenset(j + 1 for j in range(level) if m >> j & 1)] = draw(ratfuncs())
    x = MultiQuad(level, coords)
    if nonzero and not x:
        x = MultiQuad.scalar(1, level)
    return x


def numeric(x: MultiQuad, s_value: int = 20) -> mpmath.mpf:
    """Independent evaluation: substitute s and take real square roots."""
    total = mpmath.mpf(0)
    for subset in x.support():
        c = x.coeff(subset).evaluate(Fraction(s_value))
        term = mpmath.mpf(c.numerator) / c.denominator
        for j in subset:
            term *= mpmath.sqrt(s_value - j)
        total += term
    return total


def mu(*js, level=3, coeff=1):
    return MultiQuad.mu(js, level, coeff)


# ---------------------------------------------------------------- RatFunc


class TestRatFunc:
    def test_canonical_form(self):
        f = RatFunc([Fraction(-2), Fraction(0), Fraction(2)], [Fraction(-2), Fraction(2)])
        # (2s^2 - 2)/(2s - 2) = s + 1
        assert f == S + 1
        assert f.den == (Fraction(1),)

    def test_denominator_monic(self):
        f = RatFunc([1], [Fraction(1), Fraction(3)])
        assert f.den[-1] == 1

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc([1], [])

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            RatFunc().inverse()

    @given(ratfuncs(), ratfuncs(), ratfuncs())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a

    @given(ratfuncs(nonzero=True))
    @settings(max_examples=60, deadline=None)
    def test_inverse(self, a):
        assert a * a.inverse() == 1

    @given(ratfuncs(), ratfuncs(), st.integers(7, 40))
    @settings(max_examples=60, deadline=None)
    def test_evaluation_is_homomorphism(self, a, b, point):
        # oracle: Fraction arithmetic after substituting a rational point
        v = Fraction(point, 7)
        try:
            av, bv = a.evaluate(v), b.evaluate(v)
            sv, pv = (a + b).evaluate(v), (a * b).evaluate(v)
        except ZeroDivisionError:
            return
        assert sv == av + bv
        assert pv == av * bv

    @given(ratfuncs())
    @settings(max_examples=40, deadline=None)
    def test_normalizing_twice(self, a):
        again = RatFunc(a.num, a.den)
        assert again.num == a.num and again.den == a.den


# ---------------------------------------------------------------- MultiQuad


class TestMultiQuadExamples:
    def test_square_of_generator(self):
        assert mq_mul(mu(1), mu(1)) == MultiQuad.scalar(S - 1, 3)

    def test_disjoint_product(self):
        assert mq_mul(mu(1), mu(2)) == mu(1, 2)

    def test_difference_of_squares(self):
        one = MultiQuad.scalar(1, 3)
        got = mq_mul(one + mu(1), one - mu(1))
        assert got == MultiQuad.scalar(2 - S, 3)

    def test_inverse_of_generator(self):
        assert mq_inv(mu(1)) == mu(1, coeff=(S - 1).inverse())

    def test_inverse_of_scalar(self):
        c = RatFunc([3, 1], [1, 0, 1])
        assert mq_inv(MultiQuad.scalar(c, 3)) == MultiQuad.scalar(c.inverse(), 3)

    def test_inverse_by_conjugate(self):
        one = MultiQuad.scalar(1, 3)
        expected = (one - mu(1)) * (2 - S).inverse()
        assert mq_inv(one + mu(1)) == expected

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            mq_inv(MultiQuad(3))

    def test_lift_identity(self):
        assert mq_lift(MultiQuad.scalar(1, 2), 5) == MultiQuad.scalar(1, 5)

    def test_lift_then_square(self):
        u = mq_lift(mu(1, level=1), 3)
        assert u * u == MultiQuad.scalar(S - 1, 3)

    def test_lift_down_rejected(self):
        with pytest.raises(StructuralError):
            mq_lift(mu(1), 2)

    def test_level_mismatch(self):
        with pytest.raises(StructuralError):
            mq_mul(mu(1, level=2), mu(1, level=3))

    def test_render(self):
        assert str(mu(1, 2, coeff=2)) == "(2)*sqrt((s - 1)*(s - 2))"

    def test_zero_coords_dropped(self):
        x = MultiQuad(3, {frozenset(): RatFunc(), frozenset({1}): RatFunc(2)})
        assert x.support() == [frozenset({1})]


class TestMultiQuadProperties:
    @given(multiquads(), multiquads(), multiquads())
    @settings(max_examples=40, deadline=None)
    def test_ring_axioms(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a

    @given(multiquads(nonzero=True))
    @settings(max_examples=40, deadline=None)
    def test_inverse(self, a):
        assert a * mq_inv(a) == MultiQuad.scalar(1, a.level)

    @given(multiquads(), multiquads())
    @settings(max_examples=40, deadline=None)
    def test_numeric_oracle(self, a, b):
        # independent check of the mu-rule: real square roots at s = 20
        for got, want in ((a * b, numeric(a) * numeric(b)), (a + b, numeric(a) + numeric(b))):
            assert abs(numeric(got) - want) <= mpmath.mpf(10) ** -20 * (1 + abs(want))

    @given(multiquads(), multiquads(), st.integers(1, 3))
    @settings(max_examples=40, deadline=None)
    def test_conjugation_is_homomorphism(self, a, b, j):
        assert (a * b).conjugate(j) == a.conjugate(j) * b.conjugate(j)
        assert (a + b).conjugate(j) == a.conjugate(j) + b.conjugate(j)

    @given(multiquads(level=2), multiquads(level=2), st.integers(2, 5))
    @settings(max_examples=40, deadline=None)
    def test_lift_commutes(self, a, b, n):
        assert mq_lift(a, n) * mq_lift(b, n) == mq_lift(a * b, n)

    @given(st.lists(ratfuncs(), min_size=8, max_size=8), st.lists(ratfuncs(), min_size=8, max_size=8))
    @settings(max_examples=40, deadline=None)
    def test_coordinates_injective(self, xs, ys):
        subsets = [frozenset(j + 1 for j in range(3) if m >> j & 1) for m in range(8)]
        a = MultiQuad(3, dict(zip(subsets, xs)))
        b = MultiQuad(3, dict(zip(subsets, ys)))
        assert (a == b) == (xs == ys)
        assert (not a) == all(not v for v in xs)
