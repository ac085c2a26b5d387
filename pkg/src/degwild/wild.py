"""Two wild degree functions with computable witnesses, and the F_i expansion.

Construction A pulls -ord back along x = t^-1, y = f(t) = sum a_j t^j.  The
elements g_n = x^n y - sum_{j<n} a_j x^{n-j} all have degree 0 while
d/dy g_n = x^n has degree n, so delta_{d/dy} is unbounded.

Construction B is N-valued: x = t^-2, y = t^-3 sum a_n t^{3n}, with the a_n
chosen in a multiquadratic tower so that y_{p+1} = y_p^2 - e_p^2 x^3 keeps
degree 3 while deg(d/dy y_p) = 3p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .degfun import LaurentDegree, check_axioms
from .errors import ConstructionError, PrecisionExhausted, PreconditionError, StructuralError
from .fields import MultiQuad, RatFunc
from .groupvalue import GroupValue
from .laurent import DEFAULT_WINDOW_CAP, LaurentSeries, SeriesEvaluator
from .parsing import format_poly
from .poly import Derivation, Poly
from .sampling import PRNG_NAME, random_nonzero_poly, random_ratfunc, sample_rng

LEVEL_CAP = 12
DEFAULT_WINDOW = 36


# ---------------------------------------------------------------------------
# expansion in products of F_i
# ---------------------------------------------------------------------------


@dataclass
class Expansion:
    """f = sum coeff * prod_{i in S} F_i, with F_0 = Y, F_{i+1} = F_i^2 - a_i."""

    terms: list[tuple[frozenset, Poly]]
    F: list[Poly]
    y_index: int

    def mu(self, S) -> Poly:
        out = Poly.constant(1, self.F[0].nvars)
        for i in sorted(S):
            out = out * self.F[i]
        return out

    def reconstruct(self) -> Poly:
        total = Poly.zero(self.F[0].nvars)
        for S, c in self.terms:
            total = total + c * self.mu(S)
        return total

    def to_json(self, names: Sequence[str] | None = None) -> list:
        return [
            {"set": sorted(S), "coeff": format_poly(c, names)} for S, c in self.terms
        ]

    def __str__(self):
        body = ", ".join(
            "({" + ",".join(map(str, sorted(S))) + "}, " + format_poly(c) + ")"
            for S, c in self.terms
        )
        return f"[{body}]"


def _as_poly(v, nvars: int) -> Poly:
    if isinstance(v, Poly):
        if v.nvars != nvars:
            raise StructuralError("expansion parameter in a different ring")
        return v
    return Poly.constant(v, nvars)


def expand(f: Poly, a: Sequence, y_index: int | None = None) -> Expansion:
    """Unique expansion of ``f`` in the products mu(S) of the F_i.

    The a_i must not involve Y.  Leading Y-degree d has binary digits S, and
    deg_Y mu(S) = sum_{i in S} 2^i = d, so subtracting lc * mu(S) lowers the
    Y-degree; repeating terminates.
    """
    if not f:
        raise PreconditionError("cannot expand the zero polynomial")
    y = f.nvars - 1 if y_index is None else y_index
    a = [_as_poly(v, f.nvars) for v in a]
    for v in a:
        if v.uses_var(y):
            raise PreconditionError("the a_i must not involve Y")
    d = f.degree_in(y)
    if d >= 2 ** len(a):
        raise PreconditionError(
            f"Y-degree {d} needs at least {d.bit_length()} parameters a_i, got {len(a)}"
        )
    F = [Poly.var(y, f.nvars)]
    for i in range(max(len(a) - 1, 0)):
        F.append(F[-1] * F[-1] - a[i])
    exp = Expansion([], F, y)
    mus: dict[frozenset, Poly] = {}
    r = f
    while r:
        d = r.degree_in(y)
        S = frozenset(i for i in range(d.bit_length()) if d >> i & 1)
        if S not in mus:
            mus[S] = exp.mu(S)
        lc = r.coefficient_in(y, d)
        exp.terms.append((S, lc))
        r = r - lc * mus[S]
    return exp


# ---------------------------------------------------------------------------
# construction A
# ---------------------------------------------------------------------------


class ConstructionA:
    """x = t^-1, y = sum_{j <= T} a_j t^j + O(t^{T+1}).

    ``coeffs=None`` means a_j = 1 for every j, truncated where the window
    asks; a finite list fixes T = len(coeffs) - 1 once and for all.
    """

    def __init__(self, coeffs: Sequence | None = None, window: int = DEFAULT_WINDOW,
                 cap: int = DEFAULT_WINDOW_CAP):
        self.coeffs = None if coeffs is None else [Fraction(c) for c in coeffs]
        self.window = window
        self.cap = cap
        self.names = ["x", "y"]

    @classmethod
    def random(cls, seed: int, length: int, zero_rate: float = 0.3, **kw) -> "ConstructionA":
        rng = sample_rng(seed, 0)
        coeffs = [
            Fraction(0) if rng.random() < zero_rate else Fraction(int(rng.integers(1, 6)))
            for _ in range(length)
        ]
        return cls(coeffs, **kw)

    def coeff(self, j: int) -> Fraction:
        if self.coeffs is None:
            return Fraction(1)
        if j >= len(self.coeffs):
            raise PrecisionExhausted(f"a_{j} is beyond the supplied coefficients")
        return self.coeffs[j]

    def truncation(self, window: int) -> int:
        T = window // 2
        if self.coeffs is not None:
            T = min(T, len(self.coeffs) - 1)
        return T

    def series_args(self, window: int) -> list[LaurentSeries]:
        T = self.truncation(window)
        x = LaurentSeries.monomial(Fraction(1), -1)
        y = LaurentSeries(0, [self.coeff(j) for j in range(T + 1)], T + 1)
        return [x, y]

    def degree_function(self) -> LaurentDegree:
        return LaurentDegree(self.series_args, self.window, self.cap, label="construction A")

    def g(self, n: int) -> Poly:
        x, y = Poly.gens(2)
        out = x ** n * y
        for j in range(n):
            out = out - self.coeff(j) * x ** (n - j)
        return out

    def params(self) -> dict:
        return {
            "coeffs": "all ones" if self.coeffs is None else [str(c) for c in self.coeffs],
            "window": self.window,
            "cap": self.cap,
        }


@dataclass
class WitnessRow:
    index: int
    deg: GroupValue | None
    degD: GroupValue | None
    delta: GroupValue | None
    expected: bool
    skipped: bool = False
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "p_or_n": self.index,
            "deg": None if self.deg is None else self.deg.to_json(),
            "degD": None if self.degD is None else self.degD.to_json(),
            "delta": None if self.delta is None else self.delta.to_json(),
            "matchesClosedForm": self.expected,
        }
        if self.skipped:
            out["skipped"] = True
        out.update(self.extra)
        return out


def constructA_witness(cfg: ConstructionA, n_max: int, D: Derivation | None = None) -> list[WitnessRow]:
    """deg g_n and delta_D(g_n) from the series, n = 0..n_max (a_n = 0 skipped)."""
    D = D or Derivation.partial(1, 2)
    df = cfg.degree_function()
    rows = []
    for n in range(n_max + 1):
        if cfg.coeff(n) == 0:
            rows.append(WitnessRow(n, None, None, None, True, skipped=True))
            continue
        g = cfg.g(n)
        dg = df.degree(g)
        dD = df.degree(D(g))
        d = dD - dg
        rows.append(WitnessRow(n, dg, dD, d, dg == 0 and d == n))
    return rows


def constructA_generic_check(cfg: ConstructionA, n: int, window: int | None = None) -> dict:
    """For D = u d/dx - v d/dy: t^n D(g_n) = t^2 [alpha_n + eps_n] u - v.

    The u-part is t^n times the image of dg_n/dx, compared coefficientwise
    with t^2 (sum_{j<n} j a_j t^{j-1} + sum_{j>=n} n a_j t^{j-1}); the v-part
    is t^n times the image of dg_n/dy, which must be exactly 1.
    """
    window = window or cfg.window
    ev = SeriesEvaluator(cfg.series_args(window))
    g = cfg.g(n)
    u_part = ev.evaluate(g.partial(0)).shift(n)
    v_part = ev.evaluate(g.partial(1)).shift(n)
    T = cfg.truncation(window)
    expected = {}
    for j in range(T + 1):
        c = (j if j < n else n) * cfg.coeff(j)
        if c:
            expected[j + 1] = c
    exp_series = LaurentSeries.exact(expected).truncate(u_part.prec)
    return {
        "n": n,
        "uCoefficient": str(u_part),
        "expectedUCoefficient": str(exp_series),
        "vCoefficient": str(v_part),
        "matches": u_part.agrees_with(exp_series) and v_part == LaurentSeries.monomial(Fraction(1), 0),
    }


# ---------------------------------------------------------------------------
# construction B
# ---------------------------------------------------------------------------


def horizon(window: int) -> int:
    """Largest n with a_n needed to know y below t^(window/2)."""
    return (window // 2 + 3) // 3


class ConstructionB:
    """Built instance: e_p = sqrt(s - (p+1)), a_n solved so f_{n,n}(a) = e_n.

    ``vals[p][q]`` holds f_{p,q}(a), the coefficient of t^{3(q-p)-3} in the
    series of y_p; row 0 is the a_q themselves and

        f_{p+1, p+1+n} = sum_{i=0}^{n+1} f_{p,p+i} f_{p,p+1+n-i}.
    """

    def __init__(self, steps: int = 5, level: int = 8, window: int = DEFAULT_WINDOW,
                 level_cap: int = LEVEL_CAP):
        if steps < 0:
            raise PreconditionError("steps must be non-negative")
        self.steps = steps
        self.window = window
        self.level_cap = level_cap
        self.H = max(horizon(window), steps)
        need = self.H + 1
        if level < need:
            level = need
        if level > level_cap:
            raise PrecisionExhausted(
                f"window {window} with {steps} steps needs tower level {level} > cap {level_cap}"
            )
        self.level = level
        self.e = [MultiQuad.sqrt_index(p + 1, level) for p in range(level)]
        self.a: list[MultiQuad] = []
        self.vals: list[list] = [[None] * (self.H + 1) for _ in range(self.H + 1)]
        self.slopes: list[MultiQuad] = []
        self._solve()
        self._F: list[Poly] = []
        self._bigger: dict[int, ConstructionB] = {}

    # solving -------------------------------------------------------------
    def _fill_column(self, q: int, aq: MultiQuad):
        V = self.vals
        V[0][q] = aq
        for p in range(q):
            n = q - p - 1
            tot = MultiQuad(self.level)
            for i in range(n + 2):
                tot = tot + V[p][p + i] * V[p][q - i]
            V[p + 1][q] = tot

    def _solve(self):
        N = self.level
        zero, one = MultiQuad(N), MultiQuad.scalar(1, N)
        self.vals[0][0] = self.e[0]
        self.a = [self.e[0]]
        two_power_prod = one
        for q in range(1, self.H + 1):
            # vals[q-1][q] is affine in a_q; read off intercept and slope
            self._fill_column(q, zero)
            rest = self.vals[q - 1][q]
            self._fill_column(q, one)
            slope = self.vals[q - 1][q] - rest
            if not slope:
                raise ConstructionError("coefficient of the new unknown vanishes", step=q)
            if slope != two_power_prod:
                raise ConstructionError("coefficient of the new unknown differs from 2^(q-1) e_0...e_(q-2)", step=q)
            self.slopes.append(slope)
            aq = (self.e[q] / (2 * self.e[q - 1]) - rest) / slope
            self._fill_column(q, aq)
            if self.vals[q][q] != self.e[q]:
                raise ConstructionError("f_(q,q)(a) != e_q after solving", step=q)
            self.a.append(aq)
            two_power_prod = two_power_prod * 2 * self.e[q - 1]
        if len({str(v) for v in self.e}) != len(self.e):
            raise ConstructionError("the e_p are not pairwise distinct")

    def F(self, p: int) -> Poly:
        """F_p in k_1[X, Y]; built on demand since deg_Y F_p = 2^p."""
        X, Y = Poly.gens(2, RatFunc(1))
        if not self._F:
            self._F.append(Y)
        while len(self._F) <= p:
            q = len(self._F) - 1
            self._F.append(self._F[q] * self._F[q] - (RatFunc.s() - (q + 1)) * X ** 3)
        return self._F[p]

    # series --------------------------------------------------------------
    def x_series(self) -> LaurentSeries:
        return LaurentSeries.monomial(Fraction(1), -2)

    def y_series(self) -> LaurentSeries:
        coeffs = []
        for n, an in enumerate(self.a):
            if n:
                coeffs.extend([0, 0])
            coeffs.append(an)
        return LaurentSeries(-3, coeffs, 3 * self.H)

    def series_args(self, window: int) -> list[LaurentSeries]:
        if window <= self.window:
            return [self.x_series(), self.y_series()]
        if window not in self._bigger:
            self._bigger[window] = ConstructionB(self.steps, self.level, window, self.level_cap)
        return self._bigger[window].series_args(window)

    def degree_function(self, cap: int = DEFAULT_WINDOW_CAP) -> LaurentDegree:
        return LaurentDegree(self.series_args, self.window, cap, label="construction B")

    def y_chain(self) -> tuple[list[LaurentSeries], list[LaurentSeries]]:
        """Series of y_p = F_p(x, y) and of (dF_p/dY)(x, y), p = 0..steps.

        Evaluated along y_{p+1} = y_p^2 - e_p^2 x^3 and
        D y_{p+1} = 2 y_p D y_p, the same homomorphism as substituting into
        F_p but without the precision loss of expanding y^(2^p).
        """
        x3 = self.x_series() ** 3
        ys = [self.y_series()]
        dys = [LaurentSeries(0, [1], None)]
        for p in range(self.steps):
            yp = ys[-1]
            ys.append(yp.mul(yp) - x3.scale(self.e[p] * self.e[p]))
            dys.append(yp.mul(dys[-1]).scale(2))
        return ys, dys

    def params(self) -> dict:
        return {"steps": self.steps, "level": self.level, "window": self.window,
                "horizon": self.H, "levelCap": self.level_cap}


def constructB_build(steps: int = 5, window: int = DEFAULT_WINDOW, level: int = 8) -> ConstructionB:
    return ConstructionB(steps, level, window)


def constructB_witness(cb: ConstructionB, p_max: int | None = None) -> list[WitnessRow]:
    """(p, deg y_p, deg D y_p, delta) read off the series, D = d/dy."""
    p_max = cb.steps if p_max is None else p_max
    if p_max > cb.steps:
        raise PreconditionError(f"p_max {p_max} exceeds the built steps {cb.steps}")
    ys, dys = cb.y_chain()
    rows = []
    for p in range(p_max + 1):
        oy, lead = ys[p].ord(), ys[p].leading_coeff()
        od = dys[p].ord()
        dg, dD = GroupValue(-oy), GroupValue(-od)
        d = dD - dg
        ok = dg == 3 and dD == 3 * p and d == 3 * p - 3 and lead == cb.e[p]
        rows.append(WitnessRow(p, dg, dD, d, ok, extra={"leadingCoeffIsE": lead == cb.e[p]}))
    return rows


def constructB_cross_check(cb: ConstructionB, p_max: int = 3) -> dict:
    """Compare the recursive series of y_p with (a) direct substitution into
    F_p and (b) the table of f_{p,q} values, below the common precision."""
    ys, dys = cb.y_chain()
    ev = SeriesEvaluator(cb.series_args(cb.window))
    direct = []
    for p in range(min(p_max, cb.steps) + 1):
        s = ev.evaluate(cb.F(p))
        sd = ev.evaluate(cb.F(p).partial(1))
        direct.append({"p": p, "agrees": s.agrees_with(ys[p]) and sd.agrees_with(dys[p])})
    table = True
    for p in range(min(cb.steps, cb.H) + 1):
        for q in range(p, cb.H + 1):
            e = 3 * (q - p) - 3
            if ys[p].prec is not None and e < ys[p].prec and ys[p].coeff(e) != cb.vals[p][q]:
                table = False
    return {"substitution": direct, "tableAgrees": table}


def in_two_three_monoid(v: GroupValue) -> bool:
    return v.is_finite() and int(v) >= 0 and int(v) != 1


def k1_sampler(max_degree: int = 5, max_terms: int = 4) -> Callable:
    def draw(rng):
        return random_nonzero_poly(rng, 2, max_degree=max_degree, max_terms=max_terms,
                                   coeff=random_ratfunc)
    return draw


def constructB_monoid_check(cb: ConstructionB, samples: int = 200, seed: int = 0,
                            max_degree: int = 5) -> dict:
    """Degrees of random k_1-polynomials in (x, y) must lie in <2,3>."""
    df = cb.degree_function()
    draw = k1_sampler(max_degree)
    failures, errors, seen = [], [], {}
    for i in range(samples):
        f = draw(sample_rng(seed, i))
        try:
            d = df.degree(f)
        except PrecisionExhausted as exc:
            errors.append({"sample": i, "error": str(exc)})
            continue
        seen[int(d)] = seen.get(int(d), 0) + 1
        if not in_two_three_monoid(d):
            failures.append({"sample": i, "input": format_poly(f), "deg": d.to_json()})
    return {
        "samples": samples,
        "seed": seed,
        "prng": PRNG_NAME,
        "maxDegree": max_degree,
        "degreeCounts": {str(k): seen[k] for k in sorted(seen)},
        "failures": failures,
        "precisionErrors": errors,
        "verdict": "pass" if not failures and not errors else "fail",
    }


def constructB_injectivity_check(cb: ConstructionB, samples: int = 100, seed: int = 0,
                                 max_degree: int = 3) -> dict:
    """Distinct sampled k_1-polynomials must have images differing below the
    precision bound (evidence that substitution is injective)."""
    ev = SeriesEvaluator(cb.series_args(cb.window))
    draw = k1_sampler(max_degree)
    collisions, undecided = [], 0
    for i in range(samples):
        rng = sample_rng(seed, i)
        f, g = draw(rng), draw(rng)
        if f == g:
            continue
        diff = ev.evaluate(f - g)
        if not diff.coeffs:
            if diff.prec is None:
                collisions.append({"sample": i, "f": format_poly(f), "g": format_poly(g)})
            else:
                undecided += 1
    return {"samples": samples, "collisions": collisions, "undecided": undecided,
            "verdict": "pass" if not collisions and not undecided else "fail"}


@dataclass
class NegativeDegreeElement:
    w: Poly
    deg: GroupValue
    leading: MultiQuad
    expected_leading: MultiQuad

    def to_json(self) -> dict:
        return {
            "w": format_poly(self.w, ["x", "y"]),
            "deg": self.deg.to_json(),
            "leadingCoeff": str(self.leading),
            "leadingIs2a0a3": self.leading == self.expected_leading,
        }


def constructB_negative_degree_element(cb: ConstructionB) -> NegativeDegreeElement:
    """w = y^2 - a0^2 x^3 - 2 a1 y - 2 a0 a2 + a1^2, which has positive order."""
    if len(cb.a) < 4:
        raise PreconditionError("need a_0..a_3; enlarge the window")
    a0, a1, a2, a3 = cb.a[:4]
    one = MultiQuad.scalar(1, cb.level)
    X, Y = Poly.gens(2, one)
    w = Y * Y - (a0 * a0) * X ** 3 - (2 * a1) * Y + Poly.constant(a1 * a1 - 2 * a0 * a2, 2)
    ord_w, lead = cb.degree_function().order(w)
    return NegativeDegreeElement(w, GroupValue(-ord_w), lead, 2 * a0 * a3)


def constructB_axioms(cb: ConstructionB, samples: int, seed: int = 0, max_degree: int = 3) -> dict:
    """Axiom suite for the construction B degree function over k_1[x, y]."""
    D = Derivation.partial(1, 2)
    D = Derivation([im.map_coeffs(RatFunc._coerce) for im in D.images])
    return check_axioms(
        cb.degree_function(),
        k1_sampler(max_degree, 3),
        samples,
        seed,
        D=D,
        value_check=in_two_three_monoid,
        value_check_name="degree in <2,3>",
    )
