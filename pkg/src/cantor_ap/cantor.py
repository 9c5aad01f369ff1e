"""Middle-1/N Cantor set parameters and windowed construction of its approximants.

``C_L`` has ``2**L`` components, so nothing here ever enumerates it globally
unless the caller passes an explicit budget.  The windowed constructors
descend the binary construction tree level by level and keep only the
children that meet the window.  Endpoints are handled as integers over the
common denominator ``(2N)**L`` during the descent and converted to
:class:`~fractions.Fraction` once at the leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

from .errors import BudgetExceeded, InvalidInput
from .exact_core import (
    ONE,
    ZERO,
    Interval,
    IntervalSet,
    as_rational,
    reduce_mod1,
    translate_mod1,
)

# A window is any closed sub-interval of [0, 1].
Window = Interval


@dataclass(frozen=True)
class CantorParams:
    """The middle-1/N Cantor set for an integer ``N >= 3``."""

    N: int

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 3:
            raise InvalidInput(f"N must be an integer >= 3, got {self.N!r}")

    @property
    def ratio(self) -> Fraction:
        """Length ratio ``(N-1)/(2N)`` between a component and its parent."""
        return Fraction(self.N - 1, 2 * self.N)


def _check_window(w: Interval):
    if w.lo < 0 or w.hi > 1:
        raise InvalidInput(f"window {w!r} is not inside [0, 1]")


def gap_size(p: CantorParams, stage: int) -> Fraction:
    """Exact length of every gap removed when passing from C_{stage-1} to C_stage."""
    if stage < 1:
        raise InvalidInput(f"stage must be >= 1, got {stage}")
    return Fraction(1, p.N) * p.ratio ** (stage - 1)


@lru_cache(maxsize=4096)
def _stage_for_delta(N: int, delta: Fraction) -> int:
    p = CantorParams(N)
    L = 0
    g = Fraction(1, N)
    while g >= delta:
        L += 1
        g *= p.ratio
    return L


def stage_for_delta(p: CantorParams, delta) -> int:
    """Stage L with ``X_delta == C_L``: the last stage whose gaps are >= delta."""
    delta = as_rational(delta)
    if delta <= 0:
        raise InvalidInput(f"delta must be positive, got {delta}")
    return _stage_for_delta(p.N, delta)


def _leaves(p: CantorParams, L: int, lo: Fraction, hi: Fraction):
    """Integer left endpoints of the C_L components meeting ``[lo, hi]``.

    Returns ``(starts, length, denom)``: component ``i`` is
    ``[starts[i]/denom, (starts[i]+length)/denom]``.
    """
    N = p.N
    denom = (2 * N) ** L
    # lengths[j] = ratio**j * denom, an integer for every j <= L
    lengths = [(N - 1) ** j * (2 * N) ** (L - j) for j in range(L + 1)]
    # Endpoints are integers, so comparing against the rounded window is exact.
    lo_s = ceil(lo * denom)
    hi_s = floor(hi * denom)
    starts = [0]
    for j in range(L):
        child = lengths[j + 1]
        shift = lengths[j] - child
        nxt = []
        for s in starts:
            if s <= hi_s and s + child >= lo_s:
                nxt.append(s)
            r = s + shift
            if r <= hi_s and r + child >= lo_s:
                nxt.append(r)
        starts = nxt
        if not starts:
            break
    return starts, lengths[L], denom


def components_in_window(p: CantorParams, L: int, w: Window) -> IntervalSet:
    """``C_L ∩ w`` exactly; cost grows with L times the output size."""
    if L < 0:
        raise InvalidInput(f"stage must be >= 0, got {L}")
    _check_window(w)
    starts, length, denom = _leaves(p, L, w.lo, w.hi)
    out = []
    for s in starts:
        a = Fraction(s, denom)
        b = Fraction(s + length, denom)
        out.append(Interval(max(a, w.lo), min(b, w.hi)))
    return IntervalSet(out)


def _pullback(a: Fraction, w: Window) -> list[tuple[Fraction, Fraction]]:
    t0, t1 = w.lo - a, w.hi - a
    if t0 >= 0:
        return [(t0, t1)]
    if t1 < 0:
        return [(t0 + 1, t1 + 1)]
    return [(ZERO, t1), (t0 + 1, ONE)]


def approximant_in_window(p: CantorParams, delta, a, w: Window) -> IntervalSet:
    """``translate_mod1(X_delta, a) ∩ w`` without building X_delta globally.

    The whole components meeting the pulled-back window are translated (not
    their clipped pieces), so the result agrees exactly with the global
    translate, including how points landing on 0 ≡ 1 are represented.
    """
    _check_window(w)
    L = stage_for_delta(p, delta)
    a = reduce_mod1(as_rational(a))
    leaves: dict[int, None] = {}
    denom = length = None
    for lo, hi in _pullback(a, w):
        starts, length, denom = _leaves(p, L, lo, hi)
        leaves.update(dict.fromkeys(starts))
    comps = IntervalSet(
        [Interval(Fraction(s, denom), Fraction(s + length, denom)) for s in sorted(leaves)]
    )
    return translate_mod1(comps, a).clip(w.lo, w.hi)


def global_approximant(p: CantorParams, delta, component_budget: int) -> IntervalSet:
    """All of X_delta; refuses when ``2**L`` exceeds ``component_budget``."""
    L = stage_for_delta(p, delta)
    if 2**L > component_budget:
        raise BudgetExceeded(2**L, component_budget)
    return components_in_window(p, L, Interval(ZERO, ONE))


def global_stage(p: CantorParams, L: int, component_budget: int) -> IntervalSet:
    """All of C_L under the same budget rule as :func:`global_approximant`."""
    if 2**L > component_budget:
        raise BudgetExceeded(2**L, component_budget)
    return components_in_window(p, L, Interval(ZERO, ONE))


def distance_to_X(p: CantorParams, x, max_level: int):
    """Distance from ``x`` to the Cantor set, as ``(lower, upper, exact)``.

    Walks down the construction tree.  A point inside a removed gap is at
    exact distance from the nearer gap endpoint (both endpoints lie in X);
    a point that coincides with a component endpoint is in X.  Otherwise
    the walk stops at ``max_level`` and only the component length is known
    as an upper bound.
    """
    x = as_rational(x)
    if x < 0 or x > 1:
        raise InvalidInput(f"x must lie in [0, 1], got {x}")
    if max_level < 1:
        raise InvalidInput(f"max_level must be >= 1, got {max_level}")
    rho = p.ratio
    lo, hi = ZERO, ONE
    child = ONE
    for _ in range(max_level):
        if x == lo or x == hi:
            return ZERO, ZERO, True
        child *= rho
        g_lo, g_hi = lo + child, hi - child
        if g_lo < x < g_hi:
            d = min(x - g_lo, g_hi - x)
            return d, d, True
        if x <= g_lo:
            hi = g_lo
        else:
            lo = g_hi
    if x == lo or x == hi:
        return ZERO, ZERO, True
    return ZERO, child, False
