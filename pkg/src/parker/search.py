"""Magic-square-of-squares enumeration over fields and rings Z/nZ.

A carrier is Parker when it admits no 3x3 magic square of nine distinct
squared elements.  msos_field and msos_ring enumerate the full set of magic
tuples up to scaling: fields normalize the center to 0 (with the corner pair
fixed to 1 and -1) or to 1, rings normalize the center to a divisor residue.
brute_force_oracle enumerates with no normalization at all and is used to
check that the normalized searches lose nothing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .algebra import (Carrier, ModularRing, center_pairs,
                      consecutive_square_triples, divisor_representatives,
                      make_carrier, squares)
from .core import dihedral_canonical, dihedral_orbit

# The subset enumeration leaves open which member of an unordered center pair
# lands in the a^2 (resp. c^2) cell.  "canonical" assigns the smaller
# encoding, producing one tuple per qualifying pair combination; "both" emits
# every assignment (each a dihedral image).  "canonical" reproduces the
# reference counts and is the calibrated default.
ASSIGNMENT_POLICIES = ("canonical", "both")
DEFAULT_POLICY = "canonical"

PrefilterReason = str  # "even-order" | "too-few-squares" | "pair-deficit" |
#                        "no-consecutive-squares"


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one enumeration: the magic tuples plus summary counts."""

    carrier: Carrier
    tuples: tuple[tuple[int, ...], ...]
    tuple_count: int
    dihedral_class_count: int
    parker: bool
    policy: str
    prefilter_verdict: str | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.parker != (self.tuple_count == 0):  # pragma: no cover
            raise AssertionError("parker flag disagrees with tuple count")


def _check_policy(policy):
    if policy not in ASSIGNMENT_POLICIES:
        raise ValueError(f"unknown assignment policy {policy!r}")


def _emit(out, add, sub, sq, t3, e2, a2, i2, c2, g2):
    # rows and columns through the middle follow from the two center pairs,
    # so only the four derived cells need membership checks
    ta = sub(t3, a2)
    b = sub(ta, c2)
    if b not in sq:
        return
    d = sub(ta, g2)
    if d not in sq:
        return
    ti = sub(t3, i2)
    f = sub(ti, c2)
    if f not in sq:
        return
    h = sub(ti, g2)
    if h not in sq:
        return
    t = (a2, b, c2, d, e2, f, g2, h, i2)
    if len(set(t)) == 9:
        out.add(t)


def _orientations(pair, policy):
    if policy == "canonical":
        return (pair,)
    u, v = pair
    return ((u, v), (v, u))


def _sequences_case(carrier, e, policy, out):
    # Shared center-pair double loop: for each pair in ascending order the
    # earlier pairs supply the anti-diagonal, so every unordered combination
    # of two distinct pairs is tested exactly once.
    add, sub = carrier.add, carrier.sub
    sq = carrier.square_set()
    e2 = carrier.mul(e, e)
    t3 = add(add(e2, e2), e2)
    pairs = center_pairs(carrier, e).pairs
    for j in range(len(pairs)):
        for a2, i2 in _orientations(pairs[j], policy):
            for i in range(j):
                for c2, g2 in _orientations(pairs[i], policy):
                    _emit(out, add, sub, sq, t3, e2, a2, i2, c2, g2)


def _fixed_corner_case(carrier, policy, out):
    # center 0 with the remaining corner pair normalized to (1, -1)
    add, sub = carrier.add, carrier.sub
    sq = carrier.square_set()
    one = carrier.encode_int(1)
    minus_one = carrier.neg(one)
    for pair in center_pairs(carrier, 0).pairs:
        for a2, i2 in _orientations(pair, policy):
            _emit(out, add, sub, sq, 0, 0, a2, i2, one, minus_one)


def msos_field(q, policy: str = DEFAULT_POLICY) -> SearchResult:
    """All magic squares of squares over F_q, up to scaling.

    Two cases by center entry: center 0 fixes the anti-diagonal corners to
    1 and -1 and scans corner pairs summing to 0; center 1 scans unordered
    combinations of two distinct pairs summing to 2.  Iteration is in
    ascending encoding order, so the output is deterministic.
    """
    _check_policy(policy)
    carrier = q if isinstance(q, Carrier) else make_carrier("field", q)
    if carrier.kind not in ("prime-field", "extension-field"):
        raise ValueError(f"msos_field needs a field carrier, got {carrier}")
    start = time.perf_counter()
    out: set[tuple[int, ...]] = set()
    _fixed_corner_case(carrier, policy, out)
    _sequences_case(carrier, carrier.encode_int(1), policy, out)
    return _result(carrier, out, policy, start)


def msos_ring(n, policy: str = DEFAULT_POLICY) -> SearchResult:
    """All magic squares of squares over Z/nZ, up to unit scaling.

    The center is normalized to a divisor residue of n (one unit orbit per
    divisor); each divisor runs the same pair-combination scan as the
    nonzero-center field case, including the divisors giving center 0.
    """
    _check_policy(policy)
    carrier = n if isinstance(n, Carrier) else make_carrier("ring", n)
    if carrier.kind != "modular-ring":
        raise ValueError(f"msos_ring needs a ring carrier, got {carrier}")
    start = time.perf_counter()
    out: set[tuple[int, ...]] = set()
    for e in divisor_representatives(carrier.order):
        _sequences_case(carrier, e, policy, out)
    return _result(carrier, out, policy, start)


def _result(carrier, out, policy, start, verdict=None):
    tuples = tuple(sorted(out))
    classes = len({dihedral_canonical(t) for t in tuples})
    return SearchResult(
        carrier=carrier, tuples=tuples, tuple_count=len(tuples),
        dihedral_class_count=classes, parker=not tuples, policy=policy,
        prefilter_verdict=verdict, elapsed=time.perf_counter() - start)


def prefilter_field(q) -> str | None:
    """A Parker verdict for F_q from necessary conditions, or None.

    The cascade: even order; fewer than nine squares; fewer than four center
    pairs on both the center-0 route (target 0) and the center-1 route
    (target 2); and, when only the center-0 route stays open, no qualifying
    consecutive-square triple.  A magic square needs four disjoint center
    pairs and a center-0 square scales to a consecutive-square triple, so
    each verdict implies the full search comes back empty.
    """
    carrier = q if isinstance(q, Carrier) else None
    order = carrier.order if carrier is not None else q
    if order % 2 == 0:
        return "even-order"
    if carrier is None:
        carrier = make_carrier("field", order)
    sq = squares(carrier)
    if len(sq) < 9:
        return "too-few-squares"
    e0_pairs = len(center_pairs(carrier, 0, rule="nonzero"))
    e1_pairs = len(center_pairs(carrier, carrier.encode_int(1)))
    if e0_pairs < 4 and e1_pairs < 4:
        return "pair-deficit"
    if e1_pairs < 4 and not consecutive_square_triples(carrier):
        return "no-consecutive-squares"
    return None


def brute_force_oracle(carrier: Carrier, cap: int = 100) -> set[tuple[int, ...]]:
    """Every magic tuple over the carrier, with no normalization.

    Depth-first fill over the square set: the first row fixes the total, the
    remaining cells are forced line by line, duplicates and wrong sums prune.
    Guarded by cap because the cost grows with the fourth power of the square
    count.
    """
    if carrier.order is None or carrier.order > cap:
        raise ValueError(f"oracle refused: order of {carrier} exceeds cap {cap}")
    sq = list(carrier.square_set())
    in_sq = set(sq)
    add, sub = carrier.add, carrier.sub
    found: set[tuple[int, ...]] = set()
    for a in sq:
        for b in sq:
            if b == a:
                continue
            for c in sq:
                if c == a or c == b:
                    continue
                total = add(add(a, b), c)
                rest = sub(total, a)
                for d in sq:
                    g = sub(rest, d)
                    if g not in in_sq:
                        continue
                    e = sub(sub(total, c), g)
                    if e not in in_sq:
                        continue
                    f = sub(sub(total, d), e)
                    if f not in in_sq:
                        continue
                    h = sub(sub(total, b), e)
                    if h not in in_sq:
                        continue
                    i = sub(sub(total, c), f)
                    if i not in in_sq:
                        continue
                    if add(add(g, h), i) != total:
                        continue
                    if add(add(a, e), i) != total:
                        continue
                    t = (a, b, c, d, e, f, g, h, i)
                    if len(set(t)) == 9:
                        found.add(t)
    return found


def _unit_squares(carrier):
    return sorted({carrier.mul(u, u) for u in carrier.units()})


def scaling_closure(carrier: Carrier,
                    tuples) -> set[tuple[int, ...]]:
    """All unit-square scalings of all dihedral images of the given tuples."""
    mul = carrier.mul
    closure: set[tuple[int, ...]] = set()
    for t in tuples:
        for img in dihedral_orbit(tuple(t)):
            for s in _unit_squares(carrier):
                closure.add(tuple(mul(s, x) for x in img))
    return closure


def oracle_agreement(carrier: Carrier, policy: str = DEFAULT_POLICY,
                     cap: int = 100) -> bool:
    """True when the normalized search and the oracle describe the same set.

    Checks that every normalized tuple is itself magic (membership in the
    oracle set) and that the oracle set equals the closure of the normalized
    set under dihedral symmetry and unit-square scaling.
    """
    if isinstance(carrier, ModularRing):
        result = msos_ring(carrier, policy)
    else:
        result = msos_field(carrier, policy)
    oracle = brute_force_oracle(carrier, cap)
    normalized = set(result.tuples)
    if not normalized <= oracle:
        return False
    return scaling_closure(carrier, normalized) == oracle
