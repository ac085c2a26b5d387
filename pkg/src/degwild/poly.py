"""Sparse multivariate polynomials, derivations and weighted gradings.

A ``Poly`` is a map from exponent tuples to nonzero coefficients.  The
coefficient field is implicit: anything closed under ``+ - * /`` that mixes
with ``int`` works (``Fraction``, ``RatFunc``, ``MultiQuad``).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import StructuralError
from .groupvalue import NEG_INF, GroupValue

Exps = tuple


def _is_zero(c) -> bool:
    return not c


class Poly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict | None = None, _trusted: bool = False):
        self.nvars = nvars
        self._hash = None
        if _trusted:
            self.terms = terms
            return
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise StructuralError(f"exponent {exps} does not match {nvars} variables")
            if any(e < 0 for e in exps):
                raise StructuralError(f"negative exponent in {exps}")
            if exps in clean:
                c = clean[exps] + c
            if _is_zero(c):
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self.terms = clean

    # constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {}, True)

    @classmethod
    def constant(cls, c, nvars: int) -> "Poly":
        if _is_zero(c):
            return cls(nvars, {}, True)
        return cls(nvars, {(0,) * nvars: c}, True)

    @classmethod
    def var(cls, i: int, nvars: int, one=Fraction(1)) -> "Poly":
        if not 0 <= i < nvars:
            raise StructuralError(f"variable index {i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): one}, True)

    @classmethod
    def monomial(cls, exps: Sequence[int], c=Fraction(1)) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def gens(cls, nvars: int, one=Fraction(1)) -> list["Poly"]:
        return [cls.var(i, nvars, one) for i in range(nvars)]

    # basic queries -------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or list(self.terms) == [(0,) * self.nvars]

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def coefficient_in(self, i: int, k: int) -> "Poly":
        """Coefficient of X_i^k, as a polynomial not involving X_i."""
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Poly(self.nvars, out, True)

    def uses_var(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise StructuralError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(other, self.nvars)

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                v = out[e] + c
                if _is_zero(v):
                    del out[e]
                else:
                    out[e] = v
            else:
                out[e] = c
        return Poly(self.nvars, out, True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()}, True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return Poly(self.nvars, {e: c for e, c in out.items() if not _is_zero(c)}, True)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, k) -> "Poly":
        if _is_zero(k):
            return Poly(self.nvars, {}, True)
        out = {}
        for e, c in self.terms.items():
            v = k * c
            if not _is_zero(v):
                out[e] = v
        return Poly(self.nvars, out, True)

    def __truediv__(self, k):
        if isinstance(k, Poly):
            if not k.is_constant() or not k:
                raise StructuralError("only division by nonzero constants is supported")
            k = k.constant_term()
        return Poly(self.nvars, {e: c / k for e, c in self.terms.items()}, True)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(Fraction(1), self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # calculus ------------------------------------------------------------
    def partial(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return Poly(self.nvars, out, True)

    def map_coeffs(self, fn: Callable) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not _is_zero(v):
                out[e] = v
        return Poly(self.nvars, out, True)

    def evaluate(self, values: Sequence, one=None):
        """Substitute ``values`` for the variables (a ring homomorphism).

        Powers of each value are cached; ``one`` is the unit of the target
        ring and defaults to the integer 1.
        """
        if len(values) != self.nvars:
            raise StructuralError(
                f"{len(values)} values supplied for {self.nvars} variables"
            )
        powers: list[dict] = [{0: 1 if one is None else one} for _ in values]

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k - 1) * values[i] if k > 1 else values[i]
            return cache[k]

        total = None
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) if term is None else term * pw(i, k)
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            return 0 if one is None else one * 0
        return total

    def sorted_terms(self) -> list:
        """Terms in graded lexicographic order, largest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self):
        from .parsing import format_poly

        return f"Poly({format_poly(self)})"


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------


class Derivation:
    """k-derivation of k[X_1..X_n], determined by the images of the variables."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[Poly]):
        images = list(images)
        if not images:
            raise StructuralError("a derivation needs at least one variable")
        n = images[0].nvars
        if n != len(images) or any(im.nvars != n for im in images):
            raise StructuralError("derivation images must be polynomials in all variables")
        self.images = images

    @property
    def nvars(self) -> int:
        return len(self.images)

    @classmethod
    def partial(cls, i: int, nvars: int) -> "Derivation":
        return cls([Poly.constant(Fraction(int(j == i)), nvars) for j in range(nvars)])

    @classmethod
    def zero(cls, nvars: int) -> "Derivation":
        return cls([Poly.zero(nvars) for _ in range(nvars)])

    def __call__(self, f: Poly) -> Poly:
        return apply_derivation(self, f)

    def is_zero(self) -> bool:
        return not any(self.images)

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.nvars != self.nvars:
            raise StructuralError("variable count mismatch")
        return Derivation([a + b for a, b in zip(self.images, other.images)])

    def __rmul__(self, f) -> "Derivation":
        # f * D, for f a polynomial or scalar
        return Derivation([f * im for im in self.images])

    def iterate(self, f: Poly, n: int) -> Poly:
        for _ in range(n):
            if not f:
                break
            f = self(f)
        return f

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.images == other.images

    def __hash__(self):
        return hash(tuple(self.images))

    def __repr__(self):
        from .parsing import format_poly

        return "Derivation(" + ", ".join(format_poly(im) for im in self.images) + ")"


def apply_derivation(D: Derivation, f: Poly) -> Poly:
    """D(f) = sum_i df/dX_i * D(X_i)."""
    if f.nvars != D.nvars:
        raise StructuralError(
            f"derivation on {D.nvars} variables applied to polynomial in {f.nvars}"
        )
    out = Poly.zero(f.nvars)
    for i, im in enumerate(D.images):
        if im:
            d = f.partial(i)
            if d:
                out = out + d * im
    return out


def nilpotency_index(D: Derivation, f: Poly, cap: int = 64) -> int | None:
    """Least n with D^n(f) = 0, or None if not reached within ``cap`` steps."""
    for n in range(cap + 1):
        if not f:
            return n
        f = D(f)
    return None


# ---------------------------------------------------------------------------
# gradings
# ---------------------------------------------------------------------------


class Weighting:
    """Grading of k[X_1..X_n] with X_i homogeneous of degree weights[i]."""

    __slots__ = ("weights",)

    def __init__(self, weights: Iterable):
        ws = [w if isinstance(w, GroupValue) else GroupValue(w) for w in weights]
        if any(w.is_neg_inf() for w in ws):
            raise StructuralError("weights must be finite")
        if len({w.arity for w in ws}) > 1:
            raise StructuralError("weights must share one arity")
        self.weights = ws

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def arity(self) -> int:
        return self.weights[0].arity if self.weights else 1

    def monomial_degree(self, exps: Sequence[int]) -> GroupValue:
        acc = [0] * self.arity
        for e, w in zip(exps, self.weights):
            if e:
                for k, v in enumerate(w.value):
                    acc[k] += e * v
        return GroupValue(tuple(acc))

    def components(self, f: Poly) -> dict[GroupValue, Poly]:
        if f.nvars != self.nvars:
            raise StructuralError("weighting and polynomial disagree on variable count")
        parts: dict[GroupValue, dict] = {}
        for e, c in f.terms.items():
            parts.setdefault(self.monomial_degree(e), {})[e] = c
        return {d: Poly(f.nvars, t, True) for d, t in parts.items()}

    def degree(self, f: Poly) -> GroupValue:
        if not f:
            return NEG_INF
        return max(self.monomial_degree(e) for e in f.terms)

    def homogeneous_degree(self, f: Poly) -> GroupValue | None:
        """Degree of ``f`` if it is homogeneous (zero counts as homogeneous of
        every degree and yields NEG_INF), else None."""
        if not f:
            return NEG_INF
        degs = {self.monomial_degree(e) for e in f.terms}
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self):
        return f"Weighting({[str(w) for w in self.weights]})"


def homogeneous_component(f: Poly, w: Weighting, d) -> Poly:
    d = d if isinstance(d, GroupValue) else GroupValue(d)
    return w.components(f).get(d, Poly.zero(f.nvars))
