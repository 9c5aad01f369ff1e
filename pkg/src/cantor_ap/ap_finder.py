"""Nested refinement of good intervals, certificates, and their verifier.

Starting from ``J_0 = [0, 1]``, each step takes a k-good interval and scans
its witness intervals left to right for one that is (k+1)-good.  The
refined intersection is computed once per step over the whole parent
window; each witness block is then just a bisected slice of it.

After ``depth`` steps the left end of the first witness is a point whose
shifts ``x - a_i`` all lie within ``1/N**depth`` of the Cantor set.  A
point that is common to the exact translates exists only if the chain can
be continued forever; a certificate vouches for the finite depth only.
"""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import max_translates
from .cantor import CantorParams, distance_to_X, stage_for_delta
from .errors import BaseCaseFailed, CantorAPError, InvalidInput, RefinementFailed
from .exact_core import (
    ONE,
    ZERO,
    Interval,
    format_rational,
    pack_count,
    parse_rational,
    reduce_mod1,
)
from .goodness import (
    GoodnessResult,
    TranslateFamily,
    intersection_in_window,
    is_k_good,
    result_from_set,
    threshold,
)

log = logging.getLogger(__name__)

FORMAT = "cantor-ap/1"


@dataclass(frozen=True)
class ChainEntry:
    k: int
    J: Interval
    witness_count: int


@dataclass(frozen=True)
class Certificate:
    params: CantorParams
    family: TranslateFamily
    chain: tuple[ChainEntry, ...]
    depth: int
    point: Fraction

    @property
    def tolerance(self) -> Fraction:
        return Fraction(1, self.params.N**self.depth)

    def to_json(self) -> dict:
        fam = self.family.to_json()
        return {
            "format": FORMAT,
            "N": self.params.N,
            "translates": fam["translates"],
            "ap": fam["ap"],
            "depth": self.depth,
            "chain": [
                {"k": e.k, "interval": e.J.to_json(), "witness_count": e.witness_count}
                for e in self.chain
            ],
            "point": format_rational(self.point),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, doc: dict) -> Certificate:
        try:
            if doc.get("format", FORMAT) != FORMAT:
                raise InvalidInput(f"unsupported certificate format {doc.get('format')!r}")
            params = CantorParams(_int(doc["N"]))
            ap = doc.get("ap")
            if ap is not None:
                ap = (parse_rational(ap["d"]), _int(ap["length"]))
            family = TranslateFamily(tuple(parse_rational(a) for a in doc["translates"]), ap)
            chain = tuple(
                ChainEntry(_int(e["k"]), Interval.from_json(e["interval"]),
                           _int(e["witness_count"]))
                for e in doc["chain"]
            )
            return cls(params, family, chain, _int(doc["depth"]),
                       parse_rational(doc["point"]))
        except (KeyError, TypeError, AttributeError) as exc:
            raise InvalidInput(f"malformed certificate: {exc!r}") from exc

    @classmethod
    def loads(cls, text: str) -> Certificate:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"certificate is not JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise InvalidInput("certificate must be a JSON object")
        return cls.from_json(doc)


def _int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InvalidInput(f"expected an integer, got {v!r}")
    return v


def initial_good(p: CantorParams, fam: TranslateFamily) -> GoodnessResult:
    g = is_k_good(p, fam, 0, Interval(ZERO, ONE))
    if not g.good:
        raise BaseCaseFailed(g)
    return g


def refine(p: CantorParams, fam: TranslateFamily, g: GoodnessResult,
           strategy: str = "first") -> GoodnessResult:
    """A (k+1)-good witness block of the k-good result ``g``.

    ``strategy="first"`` returns the leftmost block reaching the threshold;
    ``"best"`` the block keeping the most sub-intervals (leftmost on ties).
    """
    if not g.good:
        raise InvalidInput("refine needs a good interval")
    if strategy not in ("first", "best"):
        raise InvalidInput(f"unknown block strategy {strategy!r}")
    k = g.k
    size = Fraction(1, p.N ** (k + 2))
    S = intersection_in_window(p, size, fam, g.J)
    t = threshold(p.N)
    counts = []
    best = None
    for w in g.witness_intervals:
        piece = S.clip(w.lo, w.hi)
        c = pack_count(piece, size)
        counts.append(c)
        if c >= t:
            if strategy == "first":
                return result_from_set(p, k + 1, w, piece)
            if best is None or c > best[0]:
                best = (c, w, piece)
    if best is not None:
        return result_from_set(p, k + 1, best[1], best[2])
    raise RefinementFailed(k, counts, t, len(fam.distinct()), max_translates(p.N))


def find_common_point(p: CantorParams, fam: TranslateFamily, depth: int,
                      strategy: str = "first") -> Certificate:
    if depth < 1:
        raise InvalidInput(f"depth must be >= 1, got {depth}")
    g = initial_good(p, fam)
    chain = [g]
    for _ in range(depth):
        try:
            g = refine(p, fam, g, strategy)
        except RefinementFailed as exc:
            exc.chain = list(chain)
            raise
        log.debug("level %d: J=%r, %d witnesses", g.k, g.J, g.witness_count)
        chain.append(g)
    point = g.witness_intervals[0].lo
    entries = tuple(ChainEntry(r.k, r.J, r.witness_count) for r in chain)
    return Certificate(p, fam, entries, depth, point)


def find_ap(p: CantorParams, d, length: int, depth: int,
            strategy: str = "first") -> Certificate:
    """Certificate for an AP ``x, x+d, ..., x+(length-1)d`` near the Cantor set."""
    fam = TranslateFamily.arithmetic(d, length)
    r_max = max_translates(p.N)
    if length > r_max:
        warnings.warn(
            f"length {length} exceeds the guaranteed {r_max} for N={p.N}; "
            "success is not guaranteed",
            stacklevel=2,
        )
    return find_common_point(p, fam, depth, strategy)


@dataclass
class StepReport:
    check: str
    ok: bool
    detail: str = ""


@dataclass
class Verdict:
    accepted: bool
    steps: list[StepReport] = field(default_factory=list)

    @property
    def first_failure(self) -> Optional[StepReport]:
        return next((s for s in self.steps if not s.ok), None)


def verify_certificate(cert: Certificate) -> Verdict:
    """Recheck every claim in ``cert`` from scratch; stop at the first failure."""
    steps: list[StepReport] = []

    def record(check, ok, detail=""):
        steps.append(StepReport(check, ok, detail))
        return ok

    def done():
        return Verdict(all(s.ok for s in steps), steps)

    p, fam, chain, depth = cert.params, cert.family, cert.chain, cert.depth
    N = p.N
    if not record("depth", depth >= 1, f"depth={depth}"):
        return done()
    if not record("chain-length", len(chain) == depth + 1,
                  f"{len(chain)} entries for depth {depth}"):
        return done()
    if not record("chain-levels", [e.k for e in chain] == list(range(depth + 1)),
                  f"levels {[e.k for e in chain]}"):
        return done()
    if not record("base-interval", chain[0].J == Interval(ZERO, ONE),
                  f"J_0={chain[0].J!r}"):
        return done()
    prev = None
    for e in chain:
        inside = 0 <= e.J.lo and e.J.hi <= 1
        size_ok = e.J.length == Fraction(1, N**e.k)
        if not record(f"length[{e.k}]", inside and size_ok,
                      f"J={e.J!r}, |J|={e.J.length}"):
            return done()
        if prev is not None and not record(
                f"nesting[{e.k}]", prev.J.contains_interval(e.J),
                f"{e.J!r} within {prev.J!r}"):
            return done()
        g = is_k_good(p, fam, e.k, e.J)
        if not record(f"good[{e.k}]", g.good,
                      f"{g.witness_count} witnesses, threshold {g.threshold}"):
            return done()
        if not record(f"witness-count[{e.k}]", g.witness_count == e.witness_count,
                      f"claimed {e.witness_count}, recomputed {g.witness_count}"):
            return done()
        prev = e
    delta = Fraction(1, N ** (depth + 1))
    final = intersection_in_window(p, delta, fam, chain[-1].J)
    if not record("point-membership", cert.point in final,
                  f"point {format_rational(cert.point)}"):
        return done()
    level = stage_for_delta(p, delta)
    for i, a in enumerate(fam.translates):
        y = reduce_mod1(cert.point - a)
        lower, upper, exact = distance_to_X(p, y, level)
        record(f"distance[{i}]", upper <= cert.tolerance,
               f"distance in [{float(lower):.3e}, {float(upper):.3e}] "
               f"({'exact' if exact else 'bound'}), tolerance 1/{N}^{depth}")
        if not steps[-1].ok:
            return done()
    return done()


@dataclass
class LengthOutcome:
    length: int
    status: str  # "verified", "rejected", or the failure class name
    detail: str = ""


@dataclass
class EmpiricalReport:
    N: int
    d: Fraction
    depth: int
    length_cap: int
    outcomes: list[LengthOutcome]
    theorem_floor: int
    note: str = (
        "empirical, depth-limited evidence: success shows only that the "
        "depth-D approximant intersection is nonempty; a genuine common point "
        "needs the refinement chain to continue indefinitely, and failure at "
        "depth D does not prove that no longer progression exists"
    )

    @property
    def max_verified(self) -> int:
        ok = [o.length for o in self.outcomes if o.status == "verified"]
        return max(ok, default=0)

    @property
    def monotone(self) -> bool:
        flags = [o.status == "verified" for o in self.outcomes]
        return all(a or not b for a, b in zip(flags, flags[1:]))


def empirical_max_length(p: CantorParams, d, depth: int, length_cap: int,
                         strategy: str = "first") -> EmpiricalReport:
    if length_cap < 1:
        raise InvalidInput(f"length_cap must be >= 1, got {length_cap}")
    d = reduce_mod1(parse_rational(d) if isinstance(d, str) else Fraction(d))
    outcomes = []
    for length in range(1, length_cap + 1):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                cert = find_ap(p, d, length, depth, strategy)
        except CantorAPError as exc:
            outcomes.append(LengthOutcome(length, type(exc).__name__, str(exc)))
            continue
        v = verify_certificate(cert)
        if v.accepted:
            outcomes.append(LengthOutcome(length, "verified", format_rational(cert.point)))
        else:
            outcomes.append(LengthOutcome(length, "rejected", v.first_failure.check))
    return EmpiricalReport(p.N, d, depth, length_cap, outcomes, max_translates(p.N))
