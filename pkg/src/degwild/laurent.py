"""Truncated Laurent series in t with explicit precision tracking.

A series stores exact coefficients for the exponents ``low .. prec-1``;
everything at or above ``prec`` is unknown.  ``prec=None`` marks an exact
Laurent polynomial (all coefficients past the stored ones are zero).

Leading zero coefficients are stripped on construction, so ``low`` is either
the true order or, when nothing nonzero is known, equal to ``prec``.
Products use the usual bound

    prec(f*g) = min(prec(f) + low(g), prec(g) + low(f)),

which is exact because ``low`` is a genuine lower bound for the order.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .errors import PrecisionExhausted, StructuralError
from .poly import Poly

DEFAULT_WINDOW_CAP = 96


class LaurentSeries:
    __slots__ = ("low", "coeffs", "prec")

    def __init__(self, low: int, coeffs: Sequence, prec: int | None = None):
        coeffs = list(coeffs)
        if prec is not None:
            if prec < low:
                raise StructuralError(f"precision bound {prec} below lowest exponent {low}")
            n = prec - low
            if len(coeffs) > n:
                del coeffs[n:]
            else:
                coeffs.extend([0] * (n - len(coeffs)))
        else:
            while coeffs and not coeffs[-1]:
                coeffs.pop()
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        if k:
            coeffs = coeffs[k:]
            low += k
        if prec is None and not coeffs:
            low = 0
        self.low = low
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # constructors --------------------------------------------------------
    @classmethod
    def monomial(cls, c, k: int) -> "LaurentSeries":
        """Exact c * t^k."""
        return cls(k, [c], None)

    @classmethod
    def exact(cls, coeffs_by_exp: dict) -> "LaurentSeries":
        if not coeffs_by_exp:
            return cls(0, [], None)
        lo, hi = min(coeffs_by_exp), max(coeffs_by_exp)
        return cls(lo, [coeffs_by_exp.get(e, 0) for e in range(lo, hi + 1)], None)

    @classmethod
    def zero(cls, prec: int | None = None) -> "LaurentSeries":
        return cls(0 if prec is None else prec, [], prec)

    # queries -------------------------------------------------------------
    def is_exact(self) -> bool:
        return self.prec is None

    def is_exact_zero(self) -> bool:
        return self.prec is None and not self.coeffs

    def ord(self) -> int:
        """Least exponent with a nonzero coefficient."""
        if self.coeffs:
            return self.low
        if self.prec is None:
            raise ValueError("the zero series has no finite order")
        raise PrecisionExhausted(
            f"all coefficients below t^{self.prec} vanish; order undetermined"
        )

    def leading_coeff(self):
        self.ord()
        return self.coeffs[0]

    def coeff(self, e: int):
        if self.prec is not None and e >= self.prec:
            raise PrecisionExhausted(f"coefficient of t^{e} is beyond precision t^{self.prec}")
        k = e - self.low
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def items(self) -> Iterator[tuple[int, object]]:
        for k, c in enumerate(self.coeffs):
            if c:
                yield self.low + k, c

    # arithmetic ----------------------------------------------------------
    def _lift(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            return other
        return LaurentSeries(0, [other], None)

    def __add__(self, other):
        other = self._lift(other)
        if other.is_exact_zero():
            return self
        if self.is_exact_zero():
            return other
        precs = [p for p in (self.prec, other.prec) if p is not None]
        prec = min(precs) if precs else None
        low = min(self.low, other.low)
        if prec is not None:
            low = min(low, prec)
            hi = prec
        else:
            hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (hi - low)
        for src in (self, other):
            for k, c in enumerate(src.coeffs):
                e = src.low + k - low
                if e >= len(out):
                    break
                out[e] = out[e] + c
        return LaurentSeries(low, out, prec)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.low, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def scale(self, k) -> "LaurentSeries":
        if not k:
            return LaurentSeries.zero(self.prec)
        return LaurentSeries(self.low, [c * k for c in self.coeffs], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        return LaurentSeries(
            self.low + k, self.coeffs, None if self.prec is None else self.prec + k
        )

    def truncate(self, prec: int | None) -> "LaurentSeries":
        if prec is None or (self.prec is not None and self.prec <= prec):
            return self
        return LaurentSeries(min(self.low, prec), self.coeffs, prec)

    def mul(self, other: "LaurentSeries", cap: int | None = None) -> "LaurentSeries":
        """Product, computing only coefficients below ``cap`` when given."""
        other = self._lift(other)
        a, b = self, other
        if a.is_exact_zero() or b.is_exact_zero():
            return LaurentSeries.zero()
        precs = []
        if a.prec is not None:
            precs.append(a.prec + b.low)
        if b.prec is not None:
            precs.append(b.prec + a.low)
        if cap is not None:
            precs.append(cap)
        prec = min(precs) if precs else None
        low = a.low + b.low
        if prec is not None and prec <= low:
            return LaurentSeries(prec, [], prec)
        # exact single term: shift and scale
        if a.prec is None and len(a.coeffs) == 1:
            a, b = b, a
        if b.prec is None and len(b.coeffs) == 1:
            c = b.coeffs[0]
            out = LaurentSeries(a.low + b.low, [x * c for x in a.coeffs], prec)
            return out
        if prec is None:
            n = len(a.coeffs) + len(b.coeffs) - 1
        else:
            n = prec - low
        out = [0] * n
        ac, bc = a.coeffs, b.coeffs
        for i, x in enumerate(ac):
            if i >= n:
                break
            if not x:
                continue
            for j in range(min(len(bc), n - i)):
                y = bc[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return LaurentSeries(low, out, prec)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return self.mul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = LaurentSeries(0, [1], None)
        for _ in range(n):
            result = result.mul(self)
        return result

    # comparison ----------------------------------------------------------
    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Coefficientwise equality below the common precision bound."""
        precs = [p for p in (self.prec, other.prec) if p is not None]
        bound = min(precs) if precs else None
        lo = min(self.low, other.low)
        hi = bound
        if hi is None:
            hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.low, self.coeffs, self.prec) == (other.low, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.low, self.coeffs, self.prec))

    def __str__(self):
        parts = []
        for e, c in self.items():
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                parts.append(mono if cs == "1" else f"{cs}*{mono}")
        if self.prec is not None:
            parts.append(f"O(t^{self.prec})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"LaurentSeries({self})"


def ord(f: LaurentSeries) -> int:  # noqa: A001 - mirrors the valuation's name
    return f.ord()


class SeriesEvaluator:
    """Evaluates polynomials at fixed series arguments, caching powers."""

    def __init__(self, args: Sequence[LaurentSeries]):
        self.args = list(args)
        self._powers: list[dict[int, LaurentSeries]] = [
            {1: a} for a in self.args
        ]

    def power(self, i: int, k: int) -> LaurentSeries:
        cache = self._powers[i]
        if k not in cache:
            half = self.power(i, k // 2)
            sq = half.mul(half)
            cache[k] = sq if k % 2 == 0 else sq.mul(self.args[i])
        return cache[k]

    def lowest_exponent(self, f: Poly) -> int:
        return min(
            sum(k * a.low for k, a in zip(e, self.args)) for e in f.terms
        )

    def evaluate(self, f: Poly, cap: int | None = None) -> LaurentSeries:
        if f.nvars != len(self.args):
            raise StructuralError(
                f"{len(self.args)} series supplied for {f.nvars} variables"
            )
        total = LaurentSeries.zero()
        for exps, c in f.terms.items():
            factors = [self.power(i, k) for i, k in enumerate(exps) if k]
            if not factors:
                term = LaurentSeries(0, [c], None)
                if cap is not None:
                    term = term.truncate(cap)
            else:
                lows = [F.low for F in factors]
                acc = factors[0]
                rest = sum(lows[1:])
                if cap is not None:
                    acc = acc.truncate(cap - rest)
                for F, lo in zip(factors[1:], lows[1:]):
                    rest -= lo
                    acc = acc.mul(F, None if cap is None else cap - rest)
                term = acc.scale(c)
            total = total + term
        if cap is not None:
            total = total.truncate(cap)
        return total

    def order(self, f: Poly, start: int = 4) -> tuple[int, object]:
        """(ord, leading coefficient) of the image of ``f``.

        Coefficients are computed lazily from the lowest possible exponent in
        doubling chunks; PrecisionExhausted means the natural precision of the
        arguments is not enough.
        """
        if not f:
            raise ValueError("the zero polynomial has no order")
        lb = self.lowest_exponent(f)
        k = start
        while True:
            cap = lb + k
            s = self.evaluate(f, cap)
            if s.coeffs:
                return s.low, s.coeffs[0]
            if s.prec is not None and s.prec < cap:
                raise PrecisionExhausted(
                    f"image vanishes below t^{s.prec}, the precision of the arguments"
                )
            k *= 2


def substitute(f: Poly, args: Sequence[LaurentSeries]) -> LaurentSeries:
    """Image of ``f`` under X_i -> args[i] (a ring homomorphism)."""
    return SeriesEvaluator(args).evaluate(f)


def windows(start: int, cap: int = DEFAULT_WINDOW_CAP) -> Iterator[int]:
    w = start
    while w < cap:
        yield w
        w *= 2
    yield cap


def with_adaptive_precision(
    compute: Callable[[int], object], start: int, cap: int = DEFAULT_WINDOW_CAP
):
    """Call ``compute(window)`` with doubling windows until it stops raising
    PrecisionExhausted; re-raise once ``cap`` has been tried."""
    last = None
    for w in windows(start, cap):
        try:
            return compute(w)
        except PrecisionExhausted as exc:
            last = exc
    raise PrecisionExhausted(f"precision cap {cap} reached: {last}")
