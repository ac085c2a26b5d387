"""Degree functions, the jump delta_D, and tame formulas for deg(D).

A degree function maps ring elements to G u {-inf} with

    deg x = -inf  iff  x = 0,
    deg(xy) = deg x + deg y,
    deg(x + y) <= max(deg x, deg y)   (equality when deg x != deg y).

Four kinds are provided: a weighted grading, the pullback of -ord along a
substitution into Laurent series, deg_Delta for a locally nilpotent Delta,
and the extension of any of these to fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import PrecisionExhausted, PreconditionError, StructuralError
from .groupvalue import NEG_INF, GroupValue, gmax
from .laurent import DEFAULT_WINDOW_CAP, LaurentSeries, SeriesEvaluator, with_adaptive_precision
from .parsing import default_names, format_poly
from .poly import Derivation, Poly, Weighting, homogeneous_component, nilpotency_index
from .sampling import PRNG_NAME, sample_rng

__all__ = [
    "GroupValue",
    "NEG_INF",
    "DegreeFunction",
    "GradedDegree",
    "LaurentDegree",
    "LndDegree",
    "LocalizedDegree",
    "LocalizedElem",
    "LocalizedDerivation",
    "DerivationDegree",
    "degree",
    "delta",
    "deg_of_derivation_graded",
    "deg_of_derivation_lnd",
    "deg_of_derivation_laurent_sandwich",
    "degree_localized",
    "gr",
    "gr_derivation",
    "tame_oracle",
    "check_axioms",
]


class DegreeFunction:
    kind = "abstract"

    def degree(self, f) -> GroupValue:
        raise NotImplementedError

    def describe(self) -> dict:
        return {"kind": self.kind}

    def __call__(self, f) -> GroupValue:
        return self.degree(f)


class GradedDegree(DegreeFunction):
    """deg f = largest weight of a monomial of f."""

    kind = "graded"

    def __init__(self, weighting: Weighting):
        self.weighting = weighting

    def degree(self, f: Poly) -> GroupValue:
        return self.weighting.degree(f)

    def describe(self) -> dict:
        return {"kind": self.kind, "weights": [w.to_json() for w in self.weighting.weights]}


class LaurentDegree(DegreeFunction):
    """deg f = -ord f(args), with args recomputed at growing precision windows.

    ``args_at(window)`` returns the series substituted for the variables when
    the caller asks for a given window; an order that cannot be read off at
    one window is retried at twice the window, up to ``cap``.
    """

    kind = "laurent"

    def __init__(
        self,
        args_at: Callable[[int], Sequence[LaurentSeries]],
        window: int = 36,
        cap: int = DEFAULT_WINDOW_CAP,
        label: str = "laurent",
    ):
        self.args_at = args_at
        self.window = window
        self.cap = cap
        self.label = label
        self._evaluators: dict[int, SeriesEvaluator] = {}

    @classmethod
    def fixed(cls, args: Sequence[LaurentSeries], label: str = "laurent") -> "LaurentDegree":
        args = list(args)
        return cls(lambda _w: args, window=1, cap=1, label=label)

    def evaluator(self, window: int) -> SeriesEvaluator:
        if window not in self._evaluators:
            self._evaluators[window] = SeriesEvaluator(self.args_at(window))
        return self._evaluators[window]

    def order(self, f: Poly) -> tuple[int, object]:
        """(ord, leading coefficient) of the image of a nonzero ``f``."""
        return with_adaptive_precision(
            lambda w: self.evaluator(w).order(f), self.window, self.cap
        )

    def image(self, f: Poly, window: int | None = None) -> LaurentSeries:
        return self.evaluator(window or self.window).evaluate(f)

    def degree(self, f: Poly) -> GroupValue:
        if not f:
            return NEG_INF
        return GroupValue(-self.order(f)[0])

    def describe(self) -> dict:
        return {"kind": self.kind, "instance": self.label, "window": self.window, "cap": self.cap}


class LndDegree(DegreeFunction):
    """deg_Delta f = max{n : Delta^n f != 0}."""

    kind = "lnd"

    def __init__(self, Delta: Derivation, cap: int = 64):
        self.Delta = Delta
        self.cap = cap

    def degree(self, f: Poly) -> GroupValue:
        if not f:
            return NEG_INF
        n = nilpotency_index(self.Delta, f, self.cap)
        if n is None:
            raise PreconditionError(
                f"Delta did not annihilate the element within {self.cap} steps"
            )
        return GroupValue(n - 1)

    def describe(self) -> dict:
        return {"kind": self.kind, "cap": self.cap}


# ---------------------------------------------------------------------------
# fractions
# ---------------------------------------------------------------------------


class LocalizedElem:
    """num/den with den != 0; equality is cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.constant(1, num.nvars)
        if not den:
            raise ZeroDivisionError("fraction with zero denominator")
        if num.nvars != den.nvars:
            raise StructuralError("numerator and denominator live in different rings")
        self.num = num
        self.den = den

    def _lift(self, other) -> "LocalizedElem":
        if isinstance(other, LocalizedElem):
            return other
        if isinstance(other, Poly):
            return LocalizedElem(other)
        return LocalizedElem(Poly.constant(other, self.num.nvars))

    def __add__(self, other):
        o = self._lift(other)
        return LocalizedElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return LocalizedElem(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return LocalizedElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "LocalizedElem":
        return LocalizedElem(self.den, self.num)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = self._lift(other)
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __str__(self):
        names = default_names(self.num.nvars)
        return f"({format_poly(self.num, names)})/({format_poly(self.den, names)})"

    __repr__ = __str__


class LocalizedDerivation:
    """The unique extension of D to fractions: (x/s)' = (x's - xs')/s^2."""

    def __init__(self, D: Derivation):
        self.base = D

    def __call__(self, e: LocalizedElem) -> LocalizedElem:
        if isinstance(e, Poly):
            e = LocalizedElem(e)
        D = self.base
        return LocalizedElem(D(e.num) * e.den - e.num * D(e.den), e.den * e.den)


class LocalizedDegree(DegreeFunction):
    """DEG(x/s) = deg x - deg s, for a base degree function on the numerators.

    ``in_denominators`` optionally restricts the multiplicative set.
    """

    kind = "localized"

    def __init__(self, base: DegreeFunction, in_denominators: Callable[[Poly], bool] | None = None):
        self.base = base
        self.in_denominators = in_denominators

    def degree(self, e) -> GroupValue:
        if isinstance(e, Poly):
            e = LocalizedElem(e)
        if self.in_denominators is not None and not self.in_denominators(e.den):
            raise PreconditionError("denominator outside the multiplicative set")
        if not e.num:
            return NEG_INF
        return self.base.degree(e.num) - self.base.degree(e.den)

    def describe(self) -> dict:
        return {"kind": self.kind, "base": self.base.describe()}


def degree(df: DegreeFunction, f) -> GroupValue:
    return df.degree(f)


def degree_localized(df: DegreeFunction, e: LocalizedElem) -> GroupValue:
    if not isinstance(df, LocalizedDegree):
        df = LocalizedDegree(df)
    return df.degree(e)


def delta(df: DegreeFunction, D, f) -> GroupValue:
    """delta_D(f) = deg(Df) - deg f, and -inf for f = 0."""
    if not f:
        return NEG_INF
    if isinstance(f, LocalizedElem) and isinstance(D, Derivation):
        D = LocalizedDerivation(D)
    return df.degree(D(f)) - df.degree(f)


# ---------------------------------------------------------------------------
# tame formulas
# ---------------------------------------------------------------------------


@dataclass
class DerivationDegree:
    """Value of deg(D) with the generator attaining it."""

    value: GroupValue
    argmax: str | None
    deltas: list[tuple[str, GroupValue]]
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "value": self.value.to_json(),
            "argmaxGenerator": self.argmax,
            "deltas": [{"generator": g, "delta": d.to_json()} for g, d in self.deltas],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        out.update(self.extra)
        return out


def _certify(df, D, gens: Sequence[Poly], names) -> DerivationDegree:
    deltas = [(format_poly(g, names), delta(df, D, g)) for g in gens]
    value = gmax(d for _, d in deltas)
    argmax = None
    if value.is_finite():
        argmax = next(g for g, d in deltas if d == value)
    return DerivationDegree(value, argmax, deltas)


def deg_of_derivation_graded(
    w: Weighting,
    zs: Sequence[Poly],
    xs: Sequence[Poly],
    D: Derivation,
    names: Sequence[str] | None = None,
) -> DerivationDegree:
    """max of delta_D over degree-0 generators zs and homogeneous generators xs."""
    names = names or default_names(w.nvars)
    for z in zs:
        hd = w.homogeneous_degree(z)
        if hd is None or (z and hd != GroupValue((0,) * w.arity)):
            raise StructuralError(f"{format_poly(z, names)} is not homogeneous of degree 0")
    for x in xs:
        if w.homogeneous_degree(x) is None:
            raise StructuralError(f"generator {format_poly(x, names)} is not homogeneous")
    cert = _certify(GradedDegree(w), D, list(zs) + list(xs), names)
    if zs:
        cert.notes.append("degree-0 part assumed algebraic over the listed zs")
    return cert


def _require_locally_nilpotent(Delta: Derivation, cap: int):
    for i in range(Delta.nvars):
        if nilpotency_index(Delta, Poly.var(i, Delta.nvars), cap) is None:
            raise PreconditionError(
                f"Delta is not nilpotent on variable {i + 1} within {cap} steps"
            )


def deg_of_derivation_lnd(
    Delta: Derivation,
    t: Poly,
    zs: Sequence[Poly],
    D: Derivation,
    names: Sequence[str] | None = None,
    cap: int = 64,
) -> DerivationDegree:
    """deg_Delta(D) = max{delta_D(z_1), ..., delta_D(z_m), delta_D(t)}.

    Needs Delta(t) != 0 = Delta^2(t) and zs in ker Delta.  The value over the
    kernel generators alone is reported separately: it can be strictly
    smaller, so dropping t gives a wrong answer.
    """
    names = names or default_names(Delta.nvars)
    _require_locally_nilpotent(Delta, cap)
    dt = Delta(t)
    if not dt:
        raise PreconditionError("Delta(t) = 0; t must be a local slice")
    if Delta(dt):
        raise PreconditionError("Delta^2(t) != 0; t must be a local slice")
    for z in zs:
        if Delta(z):
            raise PreconditionError(f"{format_poly(z, names)} is not in ker Delta")
    df = LndDegree(Delta, cap)
    cert = _certify(df, D, list(zs) + [t], names)
    kernel_only = gmax(d for _, d in cert.deltas[:-1])
    cert.extra["kernelOnlyValue"] = kernel_only.to_json()
    cert.notes.append("ker Delta assumed algebraic over the listed zs")
    return cert


def deg_of_derivation_laurent_sandwich(
    w: Weighting, D: Derivation, names: Sequence[str] | None = None
) -> DerivationDegree:
    """max_i delta_D(X_i) for a grading in which every variable is homogeneous."""
    names = names or default_names(w.nvars)
    if D.nvars != w.nvars:
        raise StructuralError("weighting and derivation disagree on variable count")
    return _certify(GradedDegree(w), D, Poly.gens(w.nvars), names)


def tame_oracle(
    df: DegreeFunction,
    D,
    claimed: GroupValue,
    sampler: Callable,
    samples: int,
    seed: int,
) -> dict:
    """Sample f and confirm delta_D(f) <= claimed; report the largest jump seen."""
    violations = []
    seen = NEG_INF
    for i in range(samples):
        f = sampler(sample_rng(seed, i))
        d = delta(df, D, f)
        seen = max(seen, d)
        if d > claimed:
            violations.append({"sample": i, "input": str_elem(f), "delta": d.to_json()})
    return {
        "samples": samples,
        "maxSampledDelta": seen.to_json(),
        "violations": violations,
        "ok": not violations,
    }


# ---------------------------------------------------------------------------
# leading forms
# ---------------------------------------------------------------------------


def gr(df: GradedDegree | Weighting, f: Poly) -> Poly:
    """Top homogeneous component of ``f`` (0 for f = 0)."""
    w = df.weighting if isinstance(df, GradedDegree) else df
    if not f:
        return f
    return homogeneous_component(f, w, w.degree(f))


def gr_derivation(df: GradedDegree | Weighting, D: Derivation, d: GroupValue | None = None) -> Derivation:
    """Homogeneous derivation sending X_i to the degree-(w_i + d) part of D(X_i)."""
    w = df.weighting if isinstance(df, GradedDegree) else df
    if d is None:
        d = deg_of_derivation_laurent_sandwich(w, D).value
    if d.is_neg_inf():
        return Derivation.zero(D.nvars)
    images = [homogeneous_component(im, w, wi + d) for im, wi in zip(D.images, w.weights)]
    return Derivation(images)


# ---------------------------------------------------------------------------
# axiom harness
# ---------------------------------------------------------------------------


def str_elem(x) -> str:
    if isinstance(x, Poly):
        return format_poly(x)
    return str(x)


def check_axioms(
    df: DegreeFunction,
    sampler: Callable,
    samples: int,
    seed: int = 0,
    D=None,
    value_check: Callable[[GroupValue], bool] | None = None,
    value_check_name: str = "value",
) -> dict:
    """Test the degree-function axioms on ``samples`` random pairs.

    With a derivation ``D`` the harness also checks
    delta(xy) <= max(delta x, delta y).  ``value_check`` is an extra predicate
    on every finite degree met (for example membership in a value monoid).
    Precision failures are recorded per sample and do not stop the run.
    """
    failures = []
    precision_errors = []
    values: set = set()

    def fail(i, inputs, axiom, lhs, rhs):
        failures.append({
            "sample": i,
            "input": [str_elem(v) for v in inputs],
            "axiom": axiom,
            "lhs": lhs.to_json() if isinstance(lhs, GroupValue) else lhs,
            "rhs": rhs.to_json() if isinstance(rhs, GroupValue) else rhs,
        })

    for i in range(samples):
        rng = sample_rng(seed, i)
        x, y = sampler(rng), sampler(rng)
        try:
            s, p = x + y, x * y
            dx, dy, ds, dp = (df.degree(v) for v in (x, y, s, p))
            for v, dv in ((x, dx), (y, dy), (s, ds), (p, dp)):
                if dv.is_neg_inf() != (not v):
                    fail(i, (x, y), "deg = -inf iff zero", dv, "zero" if not v else "nonzero")
                if dv.is_finite():
                    values.add(dv)
                    if value_check is not None and not value_check(dv):
                        fail(i, (x, y), value_check_name, dv, "expected value set")
            if dp != dx + dy:
                fail(i, (x, y), "deg(xy) = deg x + deg y", dp, dx + dy)
            top = max(dx, dy)
            if ds > top:
                fail(i, (x, y), "deg(x+y) <= max", ds, top)
            if dx != dy and ds != top:
                fail(i, (x, y), "deg(x+y) = max when degrees differ", ds, top)
            if D is not None and x and y:
                lhs = delta(df, D, p)
                rhs = max(delta(df, D, x), delta(df, D, y))
                if lhs > rhs:
                    fail(i, (x, y), "delta(xy) <= max(delta x, delta y)", lhs, rhs)
        except PrecisionExhausted as exc:
            precision_errors.append({"sample": i, "error": str(exc)})

    report = dict(df.describe())
    report.update({
        "samples": samples,
        "seed": seed,
        "prng": PRNG_NAME,
        "failures": failures,
        "precisionErrors": precision_errors,
        "valuesSeen": sorted(v.to_json() for v in values) if all(v.arity == 1 for v in values) else None,
        "verdict": "pass" if not failures and not precision_errors else "fail",
    })
    return report
