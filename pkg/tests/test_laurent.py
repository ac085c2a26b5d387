from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from degwild.errors import PrecisionExhausted, StructuralError
from degwild.laurent import LaurentSeries, SeriesEvaluator, ord, substitute, with_adaptive_precision
from degwild.parsing import parse_poly
from degwild.sampling import random_poly, sample_rng

XY = ["x", "y"]
F = Fraction


def series(draw_low, coeffs, prec):
    return LaurentSeries(draw_low, [F(c) for c in coeffs], prec)


truncated = st.builds(
    series,
    st.integers(-4, 4),
    st.lists(st.integers(-3, 3), min_size=1, max_size=8),
    st.none(),
).map(lambda s: s if s.is_exact_zero() else s.truncate(s.low + 6))


class TestOrd:
    def test_inspection(self):
        f = LaurentSeries.exact({-2: F(1), 1: F(1)}).truncate(5)
        assert ord(f) == -2

    def test_product(self):
        f = LaurentSeries.monomial(F(1), -2) * LaurentSeries.monomial(F(1), 3)
        assert ord(f) == 1

    def test_exhausted(self):
        f = LaurentSeries(-3, [0, 0, 0], 0)
        with pytest.raises(PrecisionExhausted):
            ord(f)

    def test_cancellation_loses_nothing_silently(self):
        y = LaurentSeries(0, [F(1)] * 4, 4)
        with pytest.raises(PrecisionExhausted):
            ord(y - y)

    def test_render(self):
        f = LaurentSeries(-2, [F(3), 0, F(-1)], 3)
        assert str(f) == "3*t^-2 + -1 + O(t^3)"

    @given(truncated, truncated)
    @settings(max_examples=100, deadline=None)
    def test_additivity(self, f, g):
        try:
            of, og = ord(f), ord(g)
        except (PrecisionExhausted, ValueError):
            return
        assert ord(f * g) == of + og
        try:
            assert ord(f + g) >= min(of, og)
        except (PrecisionExhausted, ValueError):
            pass

    @given(truncated, truncated)
    @settings(max_examples=100, deadline=None)
    def test_precision_rules(self, f, g):
        s = f + g
        if f.prec is not None and g.prec is not None:
            assert s.prec == min(f.prec, g.prec)
        p = f * g
        if p.prec is not None and f.coeffs and g.coeffs:
            assert p.prec >= min(f.prec + g.low, g.prec + f.low)


class TestSubstitute:
    def test_monomial(self):
        args = [LaurentSeries.monomial(F(1), -1), LaurentSeries.monomial(F(1), 1)]
        assert substitute(parse_poly("x*y", XY), args) == LaurentSeries.monomial(F(1), 0)

    def test_cube(self):
        args = [LaurentSeries.monomial(F(1), -2), LaurentSeries.monomial(F(1), 0)]
        assert substitute(parse_poly("x^3", XY), args) == LaurentSeries.monomial(F(1), -6)

    def test_y1_leading_term(self, cb5):
        f = parse_poly("y^2 - (s - 1)*x^3", XY, "QQ(s)")
        img = substitute(f, cb5.series_args(cb5.window))
        assert img.ord() == -3
        assert img.leading_coeff() == cb5.e[1]

    def test_wrong_arity(self):
        with pytest.raises(StructuralError):
            substitute(parse_poly("x", XY), [LaurentSeries.monomial(F(1), 1)])

    def test_against_sympy_series(self):
        # x = 1/t, y = 1/(1 - t) truncated; oracle: sympy's own series
        t = sympy.symbols("t")
        y_exact = 1 / (1 - t)
        args = [LaurentSeries.monomial(F(1), -1), LaurentSeries(0, [F(1)] * 12, 12)]
        for i in range(20):
            f = random_poly(sample_rng(11, i), 2, max_degree=3)
            img = substitute(f, args)
            x_, y_ = sympy.symbols("x y")
            expr = sum(
                sympy.Rational(c.numerator, c.denominator) * x_ ** e[0] * y_ ** e[1]
                for e, c in f.terms.items()
            )
            top = img.prec if img.prec is not None else img.low + len(img.coeffs) + 2
            ref = sympy.series(expr.subs({x_: 1 / t, y_: y_exact}), t, 0, top).removeO()
            shifted = sympy.Poly(sympy.expand(ref * t ** 5), t)
            for e in range(img.low, top):
                want = shifted.coeff_monomial(t ** (e + 5))
                got = img.coeff(e)
                assert sympy.Rational(got.numerator, got.denominator) == want

    @pytest.mark.parametrize("seed", range(5))
    def test_homomorphism(self, seed):
        args = [LaurentSeries.exact({-1: F(1), 2: F(3)}), LaurentSeries(-1, [F(k + 1) for k in range(10)], 9)]
        ev = SeriesEvaluator(args)
        for i in range(20):
            r = sample_rng(seed, i)
            f, g = random_poly(r, 2), random_poly(r, 2)
            assert ev.evaluate(f * g).agrees_with(ev.evaluate(f).mul(ev.evaluate(g)))
            assert ev.evaluate(f + g).agrees_with(ev.evaluate(f) + ev.evaluate(g))

    def test_capped_evaluation_matches_full(self):
        args = [LaurentSeries.monomial(F(1), -2), LaurentSeries(-3, [F(k % 3 + 1) for k in range(15)], 12)]
        ev = SeriesEvaluator(args)
        for i in range(30):
            f = random_poly(sample_rng(5, i), 2, max_degree=4)
            full = ev.evaluate(f)
            for cap in (-8, -2, 3):
                part = ev.evaluate(f, cap)
                assert part.agrees_with(full)
                assert part.prec == (cap if full.prec is None else min(cap, full.prec))

    def test_precision_soundness(self):
        # a longer truncation of the same series never changes known coefficients
        short = [LaurentSeries.monomial(F(1), -1), LaurentSeries(0, [F(1)] * 6, 6)]
        long = [LaurentSeries.monomial(F(1), -1), LaurentSeries(0, [F(1)] * 20, 20)]
        for i in range(30):
            f = random_poly(sample_rng(9, i), 2, max_degree=4)
            a, b = substitute(f, short), substitute(f, long)
            assert a.agrees_with(b)
            if a.prec is not None:
                assert b.prec is None or b.prec >= a.prec


class TestAdaptive:
    def test_retries_until_resolved(self):
        calls = []

        def compute(w):
            calls.append(w)
            if w < 40:
                raise PrecisionExhausted("not yet")
            return w

        assert with_adaptive_precision(compute, 10, 96) == 40
        assert calls == [10, 20, 40]

    def test_gives_up_at_cap(self):
        def compute(w):
            raise PrecisionExhausted("never")

        with pytest.raises(PrecisionExhausted, match="cap 96"):
            with_adaptive_precision(compute, 12, 96)
