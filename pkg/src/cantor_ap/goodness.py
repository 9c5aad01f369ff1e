"""The k-good test for a window J against a family of mod-1 translates.

J (of length ``1/N**k``) is k-good when the part of J lying in every
translate ``X_delta + a`` with ``delta = 1/N**(k+1)`` holds at least
``ceil(N/2)`` interior-disjoint intervals of length ``1/N**(k+1)``.  The
test returns those intervals as witnesses so that refinement can pick up
where it left off.

Translates are exact rationals.  A family approximating irrational shifts
is certified only for the rational values actually supplied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .cantor import (
    CantorParams,
    Window,
    approximant_in_window,
    components_in_window,
    stage_for_delta,
)
from .errors import InvalidInput
from .exact_core import (
    Interval,
    IntervalSet,
    as_rational,
    format_rational,
    intersect,
    pack_intervals,
    reduce_mod1,
)


@dataclass(frozen=True)
class TranslateFamily:
    """Shifts ``a_1, ..., a_r`` reduced into [0, 1).

    ``ap`` is ``(d, r)`` when the family is ``0, -d, ..., -(r-1)d`` mod 1, so
    that a common point x gives the progression ``x, x+d, ..., x+(r-1)d``.
    """

    translates: tuple[Fraction, ...]
    ap: Optional[tuple[Fraction, int]] = None

    def __post_init__(self):
        if not self.translates:
            raise InvalidInput("a translate family needs at least one member")
        object.__setattr__(
            self, "translates", tuple(reduce_mod1(as_rational(a)) for a in self.translates)
        )
        if self.ap is not None:
            d, r = self.ap
            d = reduce_mod1(as_rational(d))
            object.__setattr__(self, "ap", (d, r))
            if self.translates != _ap_translates(d, r):
                raise InvalidInput("AP descriptor does not match the translate list")

    @classmethod
    def of(cls, translates: Iterable) -> TranslateFamily:
        return cls(tuple(as_rational(a) for a in translates))

    @classmethod
    def arithmetic(cls, d, length: int) -> TranslateFamily:
        if length < 1:
            raise InvalidInput(f"AP length must be >= 1, got {length}")
        d = reduce_mod1(as_rational(d))
        return cls(_ap_translates(d, length), (d, length))

    @property
    def r(self) -> int:
        return len(self.translates)

    def distinct(self) -> list[Fraction]:
        return list(dict.fromkeys(self.translates))

    def to_json(self) -> dict:
        ap = None
        if self.ap is not None:
            ap = {"d": format_rational(self.ap[0]), "length": self.ap[1]}
        return {"translates": [format_rational(a) for a in self.translates], "ap": ap}


def _ap_translates(d: Fraction, length: int) -> tuple[Fraction, ...]:
    return tuple(reduce_mod1(-i * d) for i in range(length))


def threshold(N: int) -> int:
    """Witnesses needed for goodness: N/2 rounded up for odd N."""
    return -(-N // 2)


@dataclass(frozen=True)
class GoodnessResult:
    k: int
    J: Interval
    witness_intervals: tuple[Interval, ...]
    witness_count: int
    threshold: int
    good: bool


def intersection_in_window(p: CantorParams, delta, fam: TranslateFamily,
                           w: Window) -> IntervalSet:
    """Part of ``w`` lying in every ``X_delta + a`` for ``a`` in the family."""
    acc = None
    for a in fam.distinct():
        s = approximant_in_window(p, delta, a, w)
        acc = s if acc is None else intersect(acc, s)
        if not acc:
            break
    return acc


def result_from_set(p: CantorParams, k: int, J: Interval, S: IntervalSet) -> GoodnessResult:
    """Pack ``S`` (already ``J ∩`` all translates) into a k-level result."""
    size = Fraction(1, p.N ** (k + 1))
    witnesses = tuple(pack_intervals(S, size))
    t = threshold(p.N)
    return GoodnessResult(k, J, witnesses, len(witnesses), t, len(witnesses) >= t)


def check_window_length(p: CantorParams, k: int, J: Interval):
    if k < 0:
        raise InvalidInput(f"k must be >= 0, got {k}")
    if J.lo < 0 or J.hi > 1:
        raise InvalidInput(f"J={J!r} is not inside [0, 1]")
    if J.length != Fraction(1, p.N**k):
        raise InvalidInput(f"|J| = {J.length}, expected 1/{p.N}^{k}")


def is_k_good(p: CantorParams, fam: TranslateFamily, k: int, J: Interval) -> GoodnessResult:
    check_window_length(p, k, J)
    S = intersection_in_window(p, Fraction(1, p.N ** (k + 1)), fam, J)
    return result_from_set(p, k, J, S)


def in_translate(p: CantorParams, delta, a, x) -> bool:
    """Point test ``x ∈ X_delta + a (mod 1)`` by pulling x back."""
    y = reduce_mod1(as_rational(x) - as_rational(a))
    L = stage_for_delta(p, delta)
    return bool(components_in_window(p, L, Interval(y, y)))
