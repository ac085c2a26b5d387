from __future__ import annotations

from itertools import product

import pytest

from degwild.degfun import (
    NEG_INF,
    GradedDegree,
    GroupValue,
    LndDegree,
    LocalizedDegree,
    LocalizedDerivation,
    LocalizedElem,
    check_axioms,
    deg_of_derivation_graded,
    deg_of_derivation_laurent_sandwich,
    deg_of_derivation_lnd,
    degree,
    degree_localized,
    delta,
    gr,
    gr_derivation,
    tame_oracle,
)
from degwild.errors import PreconditionError, StructuralError
from degwild.groupvalue import gmax
from degwild.parsing import parse_derivation, parse_poly
from degwild.poly import Derivation, Poly, Weighting, nilpotency_index
from degwild.sampling import random_homogeneous, random_nonzero_poly, random_poly, sample_rng
from degwild.wild import ConstructionA

XY = ["x", "y"]
ZT = ["z", "t"]


def P(text, names=XY):
    return parse_poly(text, names)


def D_(text, names=XY):
    return parse_derivation(text, names)


def monomials(nvars, max_total):
    for exps in product(range(max_total + 1), repeat=nvars):
        if sum(exps) <= max_total:
            yield Poly.monomial(exps)


def brute_max_delta(df, D, nvars, max_total):
    return gmax(delta(df, D, m) for m in monomials(nvars, max_total))


class TestGroupValue:
    def test_order(self):
        assert NEG_INF < GroupValue(-100)
        assert GroupValue((1, -5)) > GroupValue((0, 9))
        assert GroupValue(3) == 3

    def test_absorbing(self):
        assert GroupValue(4) + NEG_INF == NEG_INF
        assert NEG_INF - GroupValue(2) == NEG_INF

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            GroupValue((1, 2)) < GroupValue(1)


class TestDegree:
    def test_graded(self):
        assert degree(GradedDegree(Weighting([2, 3])), P("y^2 + x^2")) == 6

    def test_lnd(self):
        df = LndDegree(D_("0,1", ZT))
        assert degree(df, P("z*t^2", ZT)) == 2
        assert degree(df, Poly.zero(2)) == NEG_INF

    def test_lnd_cap(self):
        with pytest.raises(PreconditionError):
            LndDegree(D_("y,x")).degree(P("x"))

    def test_delta_graded(self):
        assert delta(GradedDegree(Weighting([2, 3])), Derivation.partial(1, 2), P("y")) == -3

    def test_delta_of_constant(self):
        assert delta(GradedDegree(Weighting([2, 3])), Derivation.partial(1, 2), P("x^4")) == NEG_INF

    def test_delta_relation(self):
        df = GradedDegree(Weighting([1, 4]))
        D = D_("y^2, x*y")
        for i in range(50):
            f = random_nonzero_poly(sample_rng(2, i), 2)
            d = delta(df, D, f)
            if d.is_finite():
                assert df.degree(D(f)) == d + df.degree(f)


class TestTameGraded:
    w23 = Weighting([2, 3])

    def test_partial_y(self):
        cert = deg_of_derivation_graded(self.w23, [], [P("x"), P("y")], Derivation.partial(1, 2), XY)
        assert cert.value == -3 and cert.argmax == "y"

    def test_zero(self):
        cert = deg_of_derivation_graded(self.w23, [], [P("x"), P("y")], Derivation.zero(2))
        assert cert.value == NEG_INF and cert.argmax is None

    def test_brute_force_example(self):
        w = Weighting([1, 1])
        D = D_("y^2, x^2")
        cert = deg_of_derivation_graded(w, [], [P("x"), P("y")], D)
        assert cert.value == 1
        assert brute_max_delta(GradedDegree(w), D, 2, 8) == 1

    def test_non_homogeneous_generator(self):
        with pytest.raises(StructuralError):
            deg_of_derivation_graded(self.w23, [], [P("x + y")], Derivation.partial(1, 2))

    @pytest.mark.parametrize("seed", range(6))
    def test_random_derivations_against_brute_force(self, seed):
        rng = sample_rng(seed, 0)
        w = Weighting([int(rng.integers(1, 4)), int(rng.integers(1, 4))])
        D = Derivation([random_poly(rng, 2, max_degree=3) for _ in range(2)])
        cert = deg_of_derivation_graded(w, [], Poly.gens(2), D)
        df = GradedDegree(w)
        assert brute_max_delta(df, D, 2, 8) == cert.value
        report = tame_oracle(df, D, cert.value, lambda r: random_poly(r, 2, max_degree=5), 100, seed)
        assert report["ok"]


class TestTameLnd:
    Delta = D_("0,1", ZT)

    def test_kernel_gap_instance(self):
        cert = deg_of_derivation_lnd(self.Delta, P("t", ZT), [P("z", ZT)], D_("z, t^2", ZT), ZT)
        assert cert.value == 1
        # kernel generators alone under-report
        assert cert.extra["kernelOnlyValue"] == 0

    def test_delta_itself(self):
        cert = deg_of_derivation_lnd(self.Delta, P("t", ZT), [P("z", ZT)], self.Delta, ZT)
        assert cert.value == -1

    def test_z_times_delta_brute_force(self):
        D = D_("0, z", ZT)
        cert = deg_of_derivation_lnd(self.Delta, P("t", ZT), [P("z", ZT)], D, ZT)
        assert cert.value == -1
        df = LndDegree(self.Delta)
        brute = gmax(delta(df, D, Poly.monomial((a, b))) for a in range(7) for b in range(7))
        assert brute == -1

    def test_kernel_gap_brute_force(self):
        D = D_("z, t^2", ZT)
        df = LndDegree(self.Delta)
        assert gmax(delta(df, D, Poly.monomial((a, b))) for a in range(7) for b in range(7)) == 1

    def test_bad_slice(self):
        with pytest.raises(PreconditionError):
            deg_of_derivation_lnd(self.Delta, P("t^2", ZT), [], self.Delta, ZT)
        with pytest.raises(PreconditionError):
            deg_of_derivation_lnd(self.Delta, P("z", ZT), [], self.Delta, ZT)

    def test_kernel_membership(self):
        with pytest.raises(PreconditionError):
            deg_of_derivation_lnd(self.Delta, P("t", ZT), [P("z + t", ZT)], self.Delta, ZT)

    def test_not_nilpotent(self):
        with pytest.raises(PreconditionError):
            deg_of_derivation_lnd(D_("z, 1", ZT), P("t", ZT), [], self.Delta, ZT, cap=10)

    def test_oracle(self):
        D = D_("z*t, t^2 + z", ZT)
        cert = deg_of_derivation_lnd(self.Delta, P("t", ZT), [P("z", ZT)], D, ZT)
        rep = tame_oracle(LndDegree(self.Delta), D, cert.value, lambda r: random_poly(r, 2, max_degree=5), 200, 1)
        assert rep["ok"] and rep["maxSampledDelta"] == cert.value.to_json()


class TestTameSandwich:
    w = Weighting([1, -1])

    def test_example(self):
        D = D_("y, 0")
        cert = deg_of_derivation_laurent_sandwich(self.w, D)
        assert cert.value == -2
        assert brute_max_delta(GradedDegree(self.w), D, 2, 8) == -2

    def test_euler(self):
        assert deg_of_derivation_laurent_sandwich(self.w, D_("x, 0")).value == 0

    def test_zero(self):
        assert deg_of_derivation_laurent_sandwich(self.w, Derivation.zero(2)).value == NEG_INF

    @pytest.mark.parametrize("seed", range(4))
    def test_random_against_brute_force(self, seed):
        rng = sample_rng(seed, 1)
        w = Weighting([int(rng.integers(-2, 3)), int(rng.integers(-2, 3))])
        D = Derivation([random_poly(rng, 2, max_degree=2) for _ in range(2)])
        cert = deg_of_derivation_laurent_sandwich(w, D)
        assert brute_max_delta(GradedDegree(w), D, 2, 6) <= cert.value
        # equality is attained at a variable
        assert cert.value == gmax(d for _, d in cert.deltas)


class TestLocalized:
    w23 = Weighting([2, 3])

    def test_examples(self):
        df = GradedDegree(self.w23)
        assert degree_localized(df, LocalizedElem(P("x"), P("x"))) == 0
        assert degree_localized(df, LocalizedElem(P("y"), P("x"))) == 1

    def test_zero_denominator(self):
        with pytest.raises(ZeroDivisionError):
            LocalizedElem(P("x"), Poly.zero(2))

    def test_representative_independence(self):
        df = LocalizedDegree(GradedDegree(self.w23))
        for i in range(40):
            r = sample_rng(4, i)
            x, s, u = (random_nonzero_poly(r, 2) for _ in range(3))
            assert df.degree(LocalizedElem(x, s)) == df.degree(LocalizedElem(x * u, s * u))

    def test_one_over_s(self):
        df = LocalizedDegree(GradedDegree(self.w23))
        base = GradedDegree(self.w23)
        for i in range(40):
            r = sample_rng(5, i)
            s = random_nonzero_poly(r, 2)
            D = Derivation([random_poly(r, 2, max_degree=3) for _ in range(2)])
            one = Poly.constant(1, 2)
            assert delta(df, D, LocalizedElem(one, s)) == delta(base, D, s)

    def test_quotient_bound(self):
        df = LocalizedDegree(GradedDegree(self.w23))
        base = GradedDegree(self.w23)
        for i in range(40):
            r = sample_rng(6, i)
            x, s = random_nonzero_poly(r, 2), random_nonzero_poly(r, 2)
            D = Derivation([random_poly(r, 2, max_degree=3) for _ in range(2)])
            lhs = delta(df, D, LocalizedElem(x, s))
            assert lhs <= max(delta(base, D, x), delta(base, D, s))

    def test_localized_derivation_is_derivation(self):
        D = LocalizedDerivation(D_("y^2, x"))
        for i in range(20):
            r = sample_rng(8, i)
            a = LocalizedElem(random_poly(r, 2), random_nonzero_poly(r, 2))
            b = LocalizedElem(random_poly(r, 2), random_nonzero_poly(r, 2))
            assert D(a * b) == a * D(b) + b * D(a)

    def test_restricted_denominators(self):
        df = LocalizedDegree(GradedDegree(self.w23), in_denominators=lambda s: s.is_constant())
        with pytest.raises(PreconditionError):
            df.degree(LocalizedElem(P("x"), P("y")))


class TestLeadingForms:
    w23 = Weighting([2, 3])

    def test_examples(self):
        assert gr(self.w23, P("y^2 + x^2")) == P("y^2")
        assert gr(self.w23, Poly.zero(2)) == Poly.zero(2)

    def test_multiplicative(self):
        df = GradedDegree(self.w23)
        for i in range(100):
            r = sample_rng(12, i)
            f, g = random_poly(r, 2), random_poly(r, 2)
            assert gr(df, f * g) == gr(df, f) * gr(df, g)
            assert df.degree(gr(df, f)) == df.degree(f)

    def test_gr_of_homogeneous_derivation(self):
        assert gr_derivation(self.w23, Derivation.partial(1, 2)) == Derivation.partial(1, 2)

    def test_component_extraction(self):
        assert gr_derivation(Weighting([1, 1]), D_("x + y^2, 0")) == D_("y^2, 0")

    def test_degree_shift_and_leibniz(self):
        w = Weighting([1, 2])
        D = D_("y + x^3 + 1, x*y + x")
        d = deg_of_derivation_laurent_sandwich(w, D).value
        G = gr_derivation(w, D, d)
        assert not G.is_zero()
        for i in range(50):
            r = sample_rng(13, i)
            f, g = random_homogeneous(r, w), random_homogeneous(r, w)
            assert G(f * g) == f * G(g) + g * G(f)
            img = G(f)
            if img:
                assert w.homogeneous_degree(img) == w.homogeneous_degree(f) + d

    @pytest.mark.parametrize("images", ["1 + y, 0", "0, x^2 + 1"])
    def test_lnd_stays_lnd(self, images):
        w = Weighting([1, 1])
        D = D_(images)
        G = gr_derivation(w, D)
        assert not G.is_zero()
        for v in Poly.gens(2):
            assert nilpotency_index(G, v) is not None


class TestAxiomHarness:
    def test_graded(self):
        rep = check_axioms(GradedDegree(Weighting([2, 3])),
                           lambda r: random_poly(r, 2, zero_rate=0.05), 150, seed=1,
                           D=Derivation.partial(1, 2))
        assert rep["verdict"] == "pass" and rep["samples"] == 150

    def test_lnd(self):
        rep = check_axioms(LndDegree(D_("0,1", ZT)), lambda r: random_poly(r, 2, zero_rate=0.05), 150, seed=2)
        assert rep["verdict"] == "pass"

    def test_laurent_a(self):
        rep = check_axioms(ConstructionA().degree_function(),
                           lambda r: random_poly(r, 2, zero_rate=0.05), 100, seed=3)
        assert rep["verdict"] == "pass"

    def test_detects_a_broken_degree(self):
        class Broken(GradedDegree):
            def degree(self, f):
                d = super().degree(f)
                return d if d.is_neg_inf() else GroupValue(int(d) // 2)

        rep = check_axioms(Broken(Weighting([1, 1])), lambda r: random_nonzero_poly(r, 2), 50, seed=0)
        assert rep["verdict"] == "fail"
        assert {f["axiom"] for f in rep["failures"]} & {"deg(xy) = deg x + deg y"}

    def test_report_is_deterministic(self):
        args = (GradedDegree(Weighting([1, 2])), lambda r: random_poly(r, 2), 30)
        assert check_axioms(*args, seed=9) == check_axioms(*args, seed=9)
