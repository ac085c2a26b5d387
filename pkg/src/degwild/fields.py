"""Exact scalar fields.

Three layers are provided:

* ``Rational``: arbitrary precision rationals (``fractions.Fraction``).
* ``RatFunc``: the rational function field Q(s), kept in lowest terms with a
  monic denominator.
* ``MultiQuad``: the tower K_N = Q(s)(u_1, ..., u_N) with u_j^2 = s - j,
  stored in the basis of square-free products mu(F) = prod_{j in F} u_j.

Subsets F of {1, ..., N} are encoded as bitmasks (bit j-1 stands for u_j)
internally; the public ``coords`` view uses frozensets.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import StructuralError

Rational = Fraction

# ---------------------------------------------------------------------------
# dense univariate polynomials over Q: tuples of Fraction, low degree first,
# no trailing zeros; the zero polynomial is ().
# ---------------------------------------------------------------------------

UPoly = tuple

_ONE = (Fraction(1),)


def _trim(c: list) -> tuple:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def upoly(coeffs: Iterable) -> UPoly:
    return _trim([Fraction(c) for c in coeffs])


def _padd(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, v in enumerate(b):
        c[i] += v
    return _trim(c)


def _psub(a: UPoly, b: UPoly) -> UPoly:
    c = list(a) + [Fraction(0)] * (len(b) - len(a))
    for i, v in enumerate(b):
        c[i] -= v
    return _trim(c)


def _pmul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        k = a[0]
        return tuple(k * v for v in b)
    if len(b) == 1:
        k = b[0]
        return tuple(k * v for v in a)
    c = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                c[i + j] += u * v
    return tuple(Fraction(v) for v in c)


def _pscale(a: UPoly, k) -> UPoly:
    if not k:
        return ()
    return tuple(k * v for v in a)


def _pdivmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    lc = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if c:
            c = c / lc
            q[k - db] = c
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def _pmonic(a: UPoly) -> UPoly:
    lc = a[-1]
    if lc == 1:
        return a
    return tuple(v / lc for v in a)


def _pgcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd via Euclid."""
    if len(a) == 1 and a[0] or len(b) == 1 and b[0]:
        return _ONE
    while b:
        a, b = b, _pdivmod(a, b)[1]
        if len(b) == 1:
            return _ONE
    return _pmonic(a) if a else ()


def _pstr(a: UPoly, var: str = "s") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = str(c)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if c == 1 else f"{c}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# Q(s)
# ---------------------------------------------------------------------------


class RatFunc:
    """Element num/den of Q(s) with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=_ONE, _normalized: bool = False):
        if isinstance(num, (int, Fraction)):
            num = upoly((num,))
        if isinstance(den, (int, Fraction)):
            den = upoly((den,))
        if not _normalized:
            num, den = upoly(num), upoly(den)
            if not den:
                raise ZeroDivisionError("RatFunc with zero denominator")
            if not num:
                den = _ONE
            else:
                g = _pgcd(num, den)
                if g != _ONE:
                    num = _pdivmod(num, g)[0]
                    den = _pdivmod(den, g)[0]
                lc = den[-1]
                if lc != 1:
                    num = tuple(v / lc for v in num)
                    den = tuple(v / lc for v in den)
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers ------------------------------------------------
    @classmethod
    def s(cls) -> "RatFunc":
        return cls((Fraction(0), Fraction(1)), _ONE, True)

    @classmethod
    def from_poly(cls, coeffs: Iterable) -> "RatFunc":
        return cls(upoly(coeffs), _ONE, True)

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFunc(upoly((x,)), _ONE, True)
        return NotImplemented

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        na, da, nb, db = self.num, self.den, other.num, other.den
        if not na:
            return other
        if not nb:
            return self
        if da == db:
            if da == _ONE:
                return RatFunc(_padd(na, nb), _ONE, True)
            return RatFunc(_padd(na, nb), da)
        if da == _ONE:
            return RatFunc(_padd(_pmul(na, db), nb), db, True)
        if db == _ONE:
            return RatFunc(_padd(na, _pmul(nb, da)), da, True)
        g = _pgcd(da, db)
        if g == _ONE:
            return RatFunc(_padd(_pmul(na, db), _pmul(nb, da)), _pmul(da, db), True)
        s = _pdivmod(da, g)[0]
        t = _padd(_pmul(na, _pdivmod(db, g)[0]), _pmul(nb, s))
        if not t:
            return RatFunc((), _ONE, True)
        g2 = _pgcd(t, g)
        # quotients of monic polynomials stay monic
        if g2 == _ONE:
            return RatFunc(t, _pmul(s, db), True)
        return RatFunc(_pdivmod(t, g2)[0], _pmul(s, _pdivmod(db, g2)[0]), True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(tuple(-v for v in self.num), self.den, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc((), _ONE, True)
            return RatFunc(_pscale(self.num, Fraction(other)), self.den, True)
        if not isinstance(other, RatFunc):
            return NotImplemented
        na, da, nb, db = self.num, self.den, other.num, other.den
        if not na or not nb:
            return RatFunc((), _ONE, True)
        if da == _ONE and db == _ONE:
            return RatFunc(_pmul(na, nb), _ONE, True)
        g1 = _pgcd(na, db)
        g2 = _pgcd(nb, da)
        if g1 != _ONE:
            na = _pdivmod(na, g1)[0]
            db = _pdivmod(db, g1)[0]
        if g2 != _ONE:
            nb = _pdivmod(nb, g2)[0]
            da = _pdivmod(da, g2)[0]
        num, den = _pmul(na, nb), _pmul(da, db)
        lc = den[-1]
        if lc != 1:
            num = tuple(v / lc for v in num)
            den = tuple(v / lc for v in den)
        return RatFunc(num, den, True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(s)")
        num, den = self.den, self.num
        lc = den[-1]
        return RatFunc(tuple(v / lc for v in num), tuple(v / lc for v in den), True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc(_ONE, _ONE, True)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison ----------------------------------------------------------
    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            if self.den == _ONE and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and self.den == _ONE

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    def evaluate(self, value):
        num = sum((c * value**k for k, c in enumerate(self.num)), Fraction(0))
        den = sum((c * value**k for k, c in enumerate(self.den)), Fraction(0))
        return num / den

    def __str__(self):
        n = _pstr(self.num)
        if self.den == _ONE:
            return n
        if len(self.num) > 1 or (self.num and self.num[0] < 0):
            n = f"({n})"
        return f"{n}/({_pstr(self.den)})"

    def __repr__(self):
        return f"RatFunc({self})"


# ---------------------------------------------------------------------------
# multiquadratic tower
# ---------------------------------------------------------------------------

Scalar = Union[int, Fraction, RatFunc]


@lru_cache(maxsize=None)
def _square_factor(mask: int) -> RatFunc:
    """prod_{j in mask} (s - j), the value of mu(F)^2."""
    p = _ONE
    j = 1
    while mask:
        if mask & 1:
            p = _pmul(p, (Fraction(-j), Fraction(1)))
        mask >>= 1
        j += 1
    return RatFunc(p, _ONE, True)


def mask_of(subset: Iterable[int]) -> int:
    m = 0
    for j in subset:
        if j < 1:
            raise StructuralError(f"square root index must be >= 1, got {j}")
        m |= 1 << (j - 1)
    return m


def subset_of(mask: int) -> frozenset:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return frozenset(out)


class MultiQuad:
    """Element of K_N = Q(s)(u_1, ..., u_N), u_j^2 = s - j.

    ``level`` is N.  Coordinates are indexed by subsets of {1..N}; zero
    coordinates are never stored, so an element is zero iff it has no
    coordinates.  This relies on the family mu(F) being linearly independent
    over Q(s), which holds because the s - j are pairwise coprime and not
    squares.
    """

    __slots__ = ("level", "_c", "_hash")

    def __init__(self, level: int, coords=None, _trusted: bool = False):
        if level < 0:
            raise StructuralError("tower level must be non-negative")
        self.level = level
        self._hash = None
        if _trusted:
            self._c = coords
            return
        c = {}
        limit = 1 << level
        for key, val in (coords or {}).items():
            m = key if isinstance(key, int) else mask_of(key)
            if m >= limit:
                raise StructuralError(f"basis element {subset_of(m)} exceeds level {level}")
            val = RatFunc._coerce(val)
            if val is NotImplemented:
                raise TypeError(f"coordinate must be a rational function, got {type(val)}")
            if val:
                c[m] = c[m] + val if m in c else val
                if not c[m]:
                    del c[m]
        self._c = c

    # constructors --------------------------------------------------------
    @classmethod
    def scalar(cls, value: Scalar, level: int) -> "MultiQuad":
        return cls(level, {0: value})

    @classmethod
    def mu(cls, subset: Iterable[int], level: int, coeff: Scalar = 1) -> "MultiQuad":
        return cls(level, {mask_of(subset): coeff})

    @classmethod
    def sqrt_index(cls, j: int, level: int) -> "MultiQuad":
        """u_j = sqrt(s - j)."""
        if not 1 <= j <= level:
            raise StructuralError(f"u_{j} is not in K_{level}")
        return cls.mu((j,), level)

    @property
    def coords(self) -> dict:
        return {subset_of(m): v for m, v in self._c.items()}

    def coeff(self, subset: Iterable[int]) -> RatFunc:
        return self._c.get(mask_of(subset), RatFunc())

    def support(self) -> list[frozenset]:
        return [subset_of(m) for m in sorted(self._c)]

    def _coerce(self, other) -> "MultiQuad":
        if isinstance(other, MultiQuad):
            if other.level != self.level:
                raise StructuralError(
                    f"tower level mismatch: K_{self.level} vs K_{other.level}"
                )
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return MultiQuad(self.level, {0: RatFunc._coerce(other)} if other else {}, True)
        return NotImplemented

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._c:
            return self
        c = dict(self._c)
        for m, v in other._c.items():
            if m in c:
                w = c[m] + v
                if w:
                    c[m] = w
                else:
                    del c[m]
            else:
                c[m] = v
        return MultiQuad(self.level, c, True)

    __radd__ = __add__

    def __neg__(self):
        return MultiQuad(self.level, {m: -v for m, v in self._c.items()}, True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            if not other:
                return MultiQuad(self.level, {}, True)
            return MultiQuad(self.level, {m: v * other for m, v in self._c.items()}, True)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, list] = {}
        for f, a in self._c.items():
            for g, b in other._c.items():
                common = f & g
                v = a * b
                if common:
                    v = v * _square_factor(common)
                acc.setdefault(f ^ g, []).append(v)
        c = {}
        for m, vals in acc.items():
            total = vals[0]
            for v in vals[1:]:
                total = total + v
            if total:
                c[m] = total
        return MultiQuad(self.level, c, True)

    __rmul__ = __mul__

    def conjugate(self, j: int) -> "MultiQuad":
        """sigma_j: u_j -> -u_j, fixing the other generators."""
        bit = 1 << (j - 1)
        return MultiQuad(
            self.level, {m: (-v if m & bit else v) for m, v in self._c.items()}, True
        )

    def inverse(self) -> "MultiQuad":
        """Rationalize one generator at a time: x^-1 = sigma(x) / (x sigma(x))."""
        if not self._c:
            raise ZeroDivisionError("inverse of zero in the tower")
        num = MultiQuad(self.level, {0: RatFunc(_ONE, _ONE, True)}, True)
        y = self
        for j in range(self.level, 0, -1):
            bit = 1 << (j - 1)
            if not any(m & bit for m in y._c):
                continue
            c = y.conjugate(j)
            num = num * c
            y = y * c
        assert list(y._c) == [0], "rationalization left a non-scalar"
        return num * y._c[0].inverse()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFunc)):
            if not other:
                raise ZeroDivisionError("division by zero in the tower")
            return self * (RatFunc._coerce(other).inverse())
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = MultiQuad(self.level, {0: RatFunc(_ONE, _ONE, True)}, True)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def lift(self, new_level: int) -> "MultiQuad":
        if new_level < self.level:
            raise StructuralError(f"cannot lift K_{self.level} element to K_{new_level}")
        return MultiQuad(new_level, dict(self._c), True)

    # comparison ----------------------------------------------------------
    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, MultiQuad) and other.level != self.level:
            return False
        try:
            other = self._coerce(other)
        except StructuralError:
            return False
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            if not self._c or list(self._c) == [0]:
                self._hash = hash(self._c.get(0, 0))
            else:
                self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._c)

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for m in sorted(self._c):
            v = self._c[m]
            if m == 0:
                parts.append(str(v))
                continue
            rad = "*".join(f"(s - {j})" for j in sorted(subset_of(m)))
            parts.append(f"({v})*sqrt({rad})")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiQuad[{self.level}]({self})"


def mq_mul(x: MultiQuad, y: MultiQuad) -> MultiQuad:
    if x.level != y.level:
        raise StructuralError(f"tower level mismatch: K_{x.level} vs K_{y.level}")
    return x * y


def mq_inv(x: MultiQuad) -> MultiQuad:
    return x.inverse()


def mq_lift(x: MultiQuad, new_level: int) -> MultiQuad:
    return x.lift(new_level)
