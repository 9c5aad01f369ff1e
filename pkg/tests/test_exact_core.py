from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantor_ap.errors import InvalidInput
from cantor_ap.exact_core import (
    EMPTY,
    Interval,
    IntervalSet,
    canonicalize,
    format_rational,
    intersect,
    measure,
    pack_count,
    pack_intervals,
    parse_rational,
    translate_mod1,
    union,
)

from conftest import iv, naive_member


def S(*pairs):
    return canonicalize([iv(a, b) for a, b in pairs])


# --- canonicalize ------------------------------------------------------------

def test_touching_intervals_merge():
    assert S((0, F(1, 3)), (F(1, 3), F(1, 2))) == IntervalSet([iv(0, F(1, 2))])


def test_empty_canonicalizes_to_empty():
    assert canonicalize([]) == EMPTY
    assert not canonicalize([])


def test_canonicalize_is_order_independent():
    assert S((F(1, 2), F(5, 6)), (F(1, 6), F(1, 2))) == IntervalSet([iv(F(1, 6), F(5, 6))])


def test_canonicalize_rejects_outside_unit():
    with pytest.raises(InvalidInput):
        canonicalize([iv(F(-1, 4), F(1, 2))])
    with pytest.raises(InvalidInput):
        canonicalize([iv(F(1, 2), F(3, 2))])


def test_interval_rejects_reversed_endpoints():
    with pytest.raises(InvalidInput):
        iv(F(1, 2), F(1, 3))


# --- intersect / translate / measure -----------------------------------------

def test_intersect_examples():
    a = S((0, F(1, 3)), (F(2, 3), 1))
    assert intersect(a, a) == a
    assert intersect(a, S((F(1, 4), F(3, 4)))) == S((F(1, 4), F(1, 3)), (F(2, 3), F(3, 4)))
    assert intersect(S((0, F(1, 3))), S((F(2, 3), 1))) == EMPTY


def test_intersect_keeps_touching_points():
    assert intersect(S((0, F(1, 3))), S((F(1, 3), 1))) == IntervalSet([iv(F(1, 3), F(1, 3))])


def test_translate_examples():
    s = S((0, F(1, 3)), (F(2, 3), 1))
    assert translate_mod1(s, 0) == s
    assert translate_mod1(s, F(1, 2)) == S((F(1, 6), F(5, 6)))
    assert translate_mod1(s, F(5, 2)) == S((F(1, 6), F(5, 6)))
    assert translate_mod1(s, F(-1, 2)) == S((F(1, 6), F(5, 6)))


def test_measure_examples():
    assert measure(EMPTY) == 0
    # C_2 for N=3: four intervals of length 1/9
    c2 = S((0, F(1, 9)), (F(2, 9), F(1, 3)), (F(2, 3), F(7, 9)), (F(8, 9), 1))
    assert measure(c2) == F(4, 9)


def test_membership_and_clip():
    s = S((0, F(1, 3)), (F(2, 3), 1))
    assert F(1, 3) in s and F(2, 3) in s and F(1, 2) not in s
    assert s.clip(F(1, 4), F(3, 4)) == S((F(1, 4), F(1, 3)), (F(2, 3), F(3, 4)))
    assert s.clip(F(2, 5), F(3, 5)) == EMPTY


# --- packing -----------------------------------------------------------------

def test_pack_examples():
    assert pack_count(S((0, F(2, 5)), (F(3, 5), 1)), F(1, 5)) == 4
    length = F(3, 17)
    assert pack_count(S((0, length)), length) == 1
    assert pack_count(EMPTY, F(1, 7)) == 0
    assert pack_intervals(EMPTY, F(1, 7)) == []


@pytest.mark.parametrize("bad", [F(0), F(-1, 3)])
def test_pack_rejects_nonpositive_length(bad):
    with pytest.raises(InvalidInput):
        pack_count(S((0, 1)), bad)
    with pytest.raises(InvalidInput):
        pack_intervals(S((0, 1)), bad)


def test_pack_intervals_are_left_aligned():
    s = S((F(1, 10), F(1, 2)))
    assert pack_intervals(s, F(1, 8)) == [
        iv(F(1, 10), F(9, 40)), iv(F(9, 40), F(7, 20)), iv(F(7, 20), F(19, 40))
    ]


# --- serialization -----------------------------------------------------------

@pytest.mark.parametrize("text,value", [
    ("1/3", F(1, 3)), ("2/6", F(1, 3)), ("-4/8", F(-1, 2)), ("5", F(5)), ("0", F(0)),
])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["0.5", "1e-3", "1/0", "abc", "", "1/-3"])
def test_parse_rational_rejects(text):
    with pytest.raises(InvalidInput):
        parse_rational(text)


def test_format_rational():
    assert format_rational(F(0)) == "0/1"
    assert format_rational(F(1)) == "1/1"
    assert format_rational(F(6, 4)) == "3/2"


# --- properties --------------------------------------------------------------

fracs = st.fractions(min_value=0, max_value=1, max_denominator=48)


@st.composite
def raw_sets(draw, max_size=6):
    pairs = draw(st.lists(st.tuples(fracs, fracs), max_size=max_size))
    return [(min(a, b), max(a, b)) for a, b in pairs]


@st.composite
def nondegenerate_sets(draw):
    raw = draw(raw_sets())
    return canonicalize([Interval(a, b) for a, b in raw if a < b])


def build(raw):
    return canonicalize([Interval(a, b) for a, b in raw])


def probes(*sets):
    pts = {F(0), F(1)}
    for raw in sets:
        for a, b in raw:
            pts.update((a, b, (a + b) / 2))
    pts.update(F(i, 97) for i in range(98))
    return pts


@given(raw_sets())
def test_canonical_invariants(raw):
    s = build(raw)
    comps = s.components
    assert all(c.lo <= c.hi for c in comps)
    assert all(x.hi < y.lo for x, y in zip(comps, comps[1:]))
    canon = [(c.lo, c.hi) for c in comps]
    assert build(canon) == s
    assert build(list(reversed(raw))) == s
    for x in probes(raw, canon):
        assert (x in s) == naive_member(raw, x)


@given(raw_sets(), raw_sets())
def test_intersect_matches_oracle(ra, rb):
    a, b = build(ra), build(rb)
    out = intersect(a, b)
    assert out == intersect(b, a)
    assert measure(out) <= min(measure(a), measure(b))
    for x in probes(ra, rb):
        assert (x in out) == (naive_member(ra, x) and naive_member(rb, x))


@given(raw_sets(), raw_sets())
def test_measure_inclusion_exclusion(ra, rb):
    a, b = build(ra), build(rb)
    assert measure(union(a, b)) == measure(a) + measure(b) - measure(intersect(a, b))


@given(nondegenerate_sets(), st.fractions(min_value=-3, max_value=3, max_denominator=60))
def test_translate_preserves_measure_and_membership(s, a):
    out = translate_mod1(s, a)
    assert measure(out) == measure(s)
    raw = [(c.lo, c.hi) for c in s]
    for x in probes(raw):
        if 0 < x < 1:
            y = (x - a) % 1
            # on the circle 0 and 1 are the same point
            assert (x in out) == (naive_member(raw, y) or (y == 0 and naive_member(raw, 1)))


@given(nondegenerate_sets(), st.fractions(min_value=0, max_value=1, max_denominator=60))
def test_translate_inverse(s, a):
    if 0 < a < 1:
        assert translate_mod1(translate_mod1(s, a), 1 - a) == s


@given(raw_sets(), st.fractions(min_value=F(1, 50), max_value=1, max_denominator=50))
def test_pack_properties(raw, length):
    s = build(raw)
    ws = pack_intervals(s, length)
    assert len(ws) == pack_count(s, length)
    assert all(w.length == length for w in ws)
    assert all(x.hi <= y.lo for x, y in zip(ws, ws[1:]))
    for w in ws:
        assert s.clip(w.lo, w.hi) == IntervalSet([w])
