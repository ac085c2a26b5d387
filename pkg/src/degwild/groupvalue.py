"""Totally ordered value group Z^k (lexicographic) with a bottom element."""

from __future__ import annotations

from functools import total_ordering


@total_ordering
class GroupValue:
    """A value in G u {-inf}, G = Z^arity ordered lexicographically.

    ``GroupValue(3)`` is shorthand for the arity-1 value (3,);
    ``GroupValue(None)`` is -inf.  Arity-1 values compare equal to ints.
    """

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is None or isinstance(value, tuple):
            self.value = value
        elif isinstance(value, int):
            self.value = (value,)
        else:
            self.value = tuple(int(v) for v in value)

    @property
    def arity(self) -> int:
        return 1 if self.value is None else len(self.value)

    def is_neg_inf(self) -> bool:
        return self.value is None

    def is_finite(self) -> bool:
        return self.value is not None

    def _other(self, other):
        if isinstance(other, GroupValue):
            return other
        if isinstance(other, int):
            return GroupValue(other)
        return None

    def __eq__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.value is None:
            return other.value is not None
        if other.value is None:
            return False
        if len(self.value) != len(other.value):
            raise ValueError("comparing group values of different arity")
        return self.value < other.value

    def __hash__(self):
        if self.value is not None and len(self.value) == 1:
            return hash(self.value[0])
        return hash(self.value)

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.value is None or other.value is None:
            return NEG_INF
        if len(self.value) != len(other.value):
            raise ValueError("adding group values of different arity")
        return GroupValue(tuple(a + b for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        if self.value is None:
            raise ArithmeticError("-inf has no negative")
        return GroupValue(tuple(-a for a in self.value))

    def __sub__(self, other):
        """``a - b`` for finite b; -inf stays -inf (used for deg(Dx) - deg(x))."""
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __int__(self):
        if self.value is None or len(self.value) != 1:
            raise ValueError(f"{self} is not an integer value")
        return self.value[0]

    def to_json(self):
        if self.value is None:
            return "-inf"
        if len(self.value) == 1:
            return self.value[0]
        return list(self.value)

    def __str__(self):
        if self.value is None:
            return "-inf"
        if len(self.value) == 1:
            return str(self.value[0])
        return "(" + ",".join(map(str, self.value)) + ")"

    def __repr__(self):
        return f"GroupValue({self})"


NEG_INF = GroupValue(None)


def gmax(values) -> GroupValue:
    """max over an iterable; -inf for an empty one."""
    best = NEG_INF
    for v in values:
        if v > best:
            best = v
    return best
