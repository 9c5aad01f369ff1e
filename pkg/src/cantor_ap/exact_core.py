"""Exact rationals and canonical unions of closed intervals inside [0, 1].

Every coordinate in the package is a :class:`fractions.Fraction`; nothing is
ever rounded.  An :class:`IntervalSet` is always canonical: components are
sorted, pairwise disjoint, and separated by a gap of positive length
(touching components are merged).
"""

from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import InvalidInput

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InvalidInput(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer.  Decimal notation is rejected."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise InvalidInput(f"expected 'p/q' or an integer, got {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InvalidInput(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    """Lowest-terms ``"p/q"``; integers keep the ``/1``."""
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]``; ``lo == hi`` is a single point."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidInput(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def of(cls, lo, hi) -> Interval:
        return cls(as_rational(lo), as_rational(hi))

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def meets(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    @classmethod
    def from_json(cls, pair: Sequence[str]) -> Interval:
        if len(pair) != 2:
            raise InvalidInput(f"interval must be a [lo, hi] pair, got {pair!r}")
        return cls(parse_rational(pair[0]), parse_rational(pair[1]))

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


class IntervalSet:
    """Canonical finite union of closed intervals in [0, 1].

    Build one with :func:`canonicalize`; the constructor trusts its input.
    """

    __slots__ = ("components", "_los", "_his")

    def __init__(self, components: Sequence[Interval] = ()):
        self.components: tuple[Interval, ...] = tuple(components)
        self._los = None
        self._his = None

    def _index(self):
        if self._los is None:
            self._los = [c.lo for c in self.components]
            self._his = [c.hi for c in self.components]
        return self._los, self._his

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.components)) + "}"

    def __contains__(self, x) -> bool:
        los, his = self._index()
        i = bisect_right(los, x) - 1
        return i >= 0 and x <= his[i]

    def to_json(self) -> list[list[str]]:
        return [c.to_json() for c in self.components]

    @classmethod
    def from_json(cls, doc: Iterable[Sequence[str]]) -> IntervalSet:
        return canonicalize([Interval.from_json(p) for p in doc])

    def clip(self, lo: Fraction, hi: Fraction) -> IntervalSet:
        """Intersection with the single interval ``[lo, hi]`` (bisect, no scan)."""
        if lo > hi:
            return EMPTY
        los, his = self._index()
        start = bisect_left(his, lo)
        stop = bisect_right(los, hi)
        out = []
        for c in self.components[start:stop]:
            a = c.lo if c.lo > lo else lo
            b = c.hi if c.hi < hi else hi
            out.append(c if (a is c.lo and b is c.hi) else Interval(a, b))
        return IntervalSet(out)


EMPTY = IntervalSet()
UNIT = IntervalSet([Interval(ZERO, ONE)])


def _check_unit(iv: Interval):
    if iv.lo < 0 or iv.hi > 1:
        raise InvalidInput(f"interval {iv!r} is not inside [0, 1]")


def _merge_sorted(items: Iterable[Interval]) -> IntervalSet:
    out: list[Interval] = []
    for iv in items:
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return IntervalSet(out)


def canonicalize(raw: Iterable[Interval]) -> IntervalSet:
    """Sort and merge arbitrary closed intervals inside [0, 1]."""
    items = list(raw)
    for iv in items:
        _check_unit(iv)
    items.sort(key=lambda iv: (iv.lo, iv.hi))
    return _merge_sorted(items)


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return _merge_sorted(sorted(a.components + b.components, key=lambda iv: iv.lo))


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    """Two-pointer sweep over both component lists."""
    ca, cb = a.components, b.components
    i = j = 0
    out = []
    while i < len(ca) and j < len(cb):
        x, y = ca[i], cb[j]
        lo = x.lo if x.lo > y.lo else y.lo
        hi = x.hi if x.hi < y.hi else y.hi
        if lo <= hi:
            out.append(Interval(lo, hi))
        if x.hi < y.hi:
            i += 1
        else:
            j += 1
    # Pieces from one sweep are disjoint and, being clipped from separated
    # components, separated by positive gaps.
    return IntervalSet(out)


def intersect_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    it = iter(sets)
    try:
        acc = next(it)
    except StopIteration:
        raise InvalidInput("intersection of an empty family") from None
    for s in it:
        if not acc:
            break
        acc = intersect(acc, s)
    return acc


def reduce_mod1(a: Fraction) -> Fraction:
    return a - (a.numerator // a.denominator)


def translate_mod1(s: IntervalSet, a) -> IntervalSet:
    """Shift ``s`` by ``a`` on the circle [0, 1).

    A component whose image crosses 1 is split into ``[lo+a, 1]`` and
    ``[0, hi+a-1]``.  A component ending exactly at 1 stays at 1 and one
    starting exactly at 1 moves to 0, so ``translate_mod1(s, 0) == s``.
    """
    a = reduce_mod1(as_rational(a))
    if a == 0:
        return s
    out = []
    for c in s.components:
        u, v = c.lo + a, c.hi + a
        if v <= 1:
            out.append(Interval(u, v))
        elif u >= 1:
            out.append(Interval(u - 1, v - 1))
        else:
            out.append(Interval(u, ONE))
            out.append(Interval(ZERO, v - 1))
    out.sort(key=lambda iv: iv.lo)
    return _merge_sorted(out)


def measure(s: IntervalSet) -> Fraction:
    return sum((c.hi - c.lo for c in s.components), ZERO)


def _check_len(length) -> Fraction:
    length = as_rational(length)
    if length <= 0:
        raise InvalidInput(f"packing length must be positive, got {length}")
    return length


def pack_count(s: IntervalSet, length) -> int:
    """Number of length-``length`` intervals packed greedily into ``s``."""
    length = _check_len(length)
    return sum((c.hi - c.lo) // length for c in s.components)


def pack_intervals(s: IntervalSet, length) -> list[Interval]:
    """Left-aligned greedy packing; consecutive pieces share endpoints."""
    length = _check_len(length)
    out = []
    for c in s.components:
        n = (c.hi - c.lo) // length
        lo = c.lo
        for _ in range(n):
            hi = lo + length
            out.append(Interval(lo, hi))
            lo = hi
    return out
