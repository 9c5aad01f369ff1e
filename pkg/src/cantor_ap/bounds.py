"""Closed-form counting bounds and the brute-force sweeps that check them.

Gaps are open intervals: a closed window ``[p, p+len]`` meets the gap
``(l, h)`` iff ``p < h`` and ``p + len > l``.  Touching a gap endpoint does
not count as a hit.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from decimal import ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from math import floor, log2
from typing import Iterable, Sequence

from .cantor import CantorParams, gap_size
from .errors import BudgetExceeded, InvalidInput, NoSuchGapLength
from .exact_core import ONE, ZERO, Interval, as_rational, format_rational


@dataclass(frozen=True)
class StageGaps:
    """Gaps removed at one stage, stored closed but meaning open intervals."""

    stage: int
    intervals: tuple[Interval, ...]
    is_open: bool = True

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


def lemma_bound(L: int, k: int) -> int:
    if not 0 <= k < L:
        raise InvalidInput(f"need 0 <= k < L, got L={L}, k={k}")
    return 2 ** (L - k - 1)


def gaps_at_stage(p: CantorParams, L: int, component_budget: int) -> StageGaps:
    """The ``2**(L-1)`` gaps removed from C_{L-1} to obtain C_L, left to right."""
    if L < 1:
        raise InvalidInput(f"stage must be >= 1, got {L}")
    if 2 ** (L - 1) > component_budget:
        raise BudgetExceeded(2 ** (L - 1), component_budget)
    N = p.N
    denom = (2 * N) ** L
    parent = (N - 1) ** (L - 1) * 2 * N
    child = (N - 1) ** L
    starts = [0]
    for j in range(L - 1):
        big = (N - 1) ** j * (2 * N) ** (L - j)
        small = (N - 1) ** (j + 1) * (2 * N) ** (L - j - 1)
        starts = [s + off for s in starts for off in (0, big - small)]
    gaps = tuple(
        Interval(Fraction(s + child, denom), Fraction(s + parent - child, denom))
        for s in starts
    )
    return StageGaps(L, gaps)


def max_hits_sliding(gaps: Iterable[Interval], jlen) -> tuple[int, Fraction]:
    """Exact maximum number of open gaps met by a closed window of length ``jlen``.

    The hit count is piecewise constant in the window's left end ``p``; it
    only changes at ``l - jlen`` and ``h`` for each gap ``(l, h)``.  Every
    critical position inside ``[0, 1 - jlen]``, every midpoint between
    consecutive ones, and both range ends are probed.
    """
    jlen = as_rational(jlen)
    if not 0 < jlen <= 1:
        raise InvalidInput(f"window length must be in (0, 1], got {jlen}")
    gaps = list(gaps)
    if not gaps:
        return 0, ZERO
    los = [g.lo for g in gaps]
    his = [g.hi for g in gaps]
    top = ONE - jlen
    crit = {ZERO, top}
    for g in gaps:
        for c in (g.lo - jlen, g.hi):
            if 0 <= c <= top:
                crit.add(c)
    crit = sorted(crit)
    probes = list(crit)
    probes += [(a + b) / 2 for a, b in zip(crit, crit[1:])]

    def hits(pos):
        return bisect_left(los, pos + jlen) - bisect_right(his, pos)

    best, where = -1, ZERO
    for pos in sorted(probes):
        h = hits(pos)
        if h > best:
            best, where = h, pos
    return best, where


def hits_at(gaps: Sequence[Interval], jlen, pos) -> int:
    """Direct count of open gaps met by ``[pos, pos+jlen]`` (linear scan)."""
    jlen, pos = as_rational(jlen), as_rational(pos)
    return sum(1 for g in gaps if pos < g.hi and pos + jlen > g.lo)


def _ceil_log(base: Fraction, target: int) -> int:
    """Smallest integer m >= 0 with ``base**m >= target`` (exact)."""
    m, acc = 0, ONE
    while acc < target:
        acc *= base
        m += 1
    return m


def corollary_bound(p: CantorParams, delta) -> int:
    """``3 * 2**e`` with e the exponent log base 2N/(N-1) of ceil(1/delta), rounded up."""
    delta = as_rational(delta)
    if not 0 < delta <= 1:
        raise InvalidInput(f"delta must be in (0, 1], got {delta}")
    inv = -((-delta.denominator) // delta.numerator)
    return 3 * 2 ** _ceil_log(1 / p.ratio, inv)


def stage_with_gap(p: CantorParams, length) -> int:
    """The stage whose gaps have exactly ``length``."""
    length = as_rational(length)
    if length <= 0:
        raise InvalidInput(f"gap length must be positive, got {length}")
    L = 1
    g = gap_size(p, 1)
    while g > length:
        L += 1
        g *= p.ratio
    if g != length:
        raise NoSuchGapLength(f"no stage of N={p.N} removes gaps of length {length}")
    return L


def max_hits_scaled(p: CantorParams, k: int, delta, component_budget: int) -> int:
    """Most gaps of length ``delta/N**k`` met by any window of length ``1/N**k``."""
    if k < 0:
        raise InvalidInput(f"k must be >= 0, got {k}")
    delta = as_rational(delta)
    scale = Fraction(1, p.N**k)
    L = stage_with_gap(p, delta * scale)
    count, _ = max_hits_sliding(gaps_at_stage(p, L, component_budget), scale)
    return count


def ceil_log2(N: int) -> int:
    return (N - 1).bit_length()


def deletion_budget(N: int) -> int:
    """``ceil(9 N log2 N)``; log2 is exact for powers of two, else rounded up."""
    if N < 3:
        raise InvalidInput(f"N must be >= 3, got {N}")
    return 9 * N * ceil_log2(N)


def max_translates(N: int) -> int:
    """``floor(N / (100 log2 N))``, the guaranteed configuration length."""
    if N < 3:
        raise InvalidInput(f"N must be >= 3, got {N}")
    if N & (N - 1) == 0:
        return N // (100 * (N.bit_length() - 1))
    x = N / (100 * log2(N))
    r = floor(x)
    if min(x - r, r + 1 - x) > 1e-9:
        return r
    # log2 N is irrational here, so the quotient is never an integer; a
    # high-precision evaluation settles the floor.
    with localcontext() as ctx:
        ctx.prec = 80
        n = Decimal(N)
        return int((n * Decimal(2).ln() / (100 * n.ln())).to_integral_value(ROUND_FLOOR))


def envelope_holds(N: int) -> bool:
    """Whether ``max_translates(N) * deletion_budget(N) <= N**2 / 20``."""
    return 20 * max_translates(N) * deletion_budget(N) <= N * N


def pigeonhole_holds(N: int) -> bool:
    """Whether the total deletions leave some block of the refinement half full.

    With ``ceil(N/2)`` blocks of ``N`` intervals each, fewer than
    ``ceil(N/2) * (N - ceil(N/2) + 1)`` deletions cannot push every block
    below ``ceil(N/2)`` survivors.
    """
    t = -(-N // 2)
    return max_translates(N) * deletion_budget(N) < t * (N - t + 1)


def lemma_sweep(Ns, max_stage: int):
    """Rows comparing the swept maximum with the bound for every ``0 <= k < L <= max_stage``.

    The window length is ``ratio**k``, the size of a level-k component.
    """
    for N in Ns:
        p = CantorParams(N)
        for L in range(1, max_stage + 1):
            gaps = gaps_at_stage(p, L, 2 ** max_stage)
            for k in range(L):
                m, _ = max_hits_sliding(gaps, p.ratio**k)
                b = lemma_bound(L, k)
                yield {"N": N, "L": L, "k": k, "oracle_max": m, "bound": b, "ok": m <= b}


def corollary_sweep(Ns, ks, min_delta: Fraction, budget: int = 2**16):
    """Every stage whose gap length is ``delta/N**k`` with ``min_delta <= delta <= 1``."""
    for N in Ns:
        p = CantorParams(N)
        for k in ks:
            L = 1
            while True:
                delta = gap_size(p, L) * N**k
                if delta < min_delta:
                    break
                if delta <= 1:
                    m = max_hits_scaled(p, k, delta, budget)
                    b = corollary_bound(p, delta)
                    yield {"N": N, "k": k, "L": L, "delta": format_rational(delta),
                           "oracle_max": m, "bound": b, "ok": m <= b}
                L += 1
