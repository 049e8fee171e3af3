"""Exact Gaussian-integer arithmetic and the magic-hourglass machinery.

A Gaussian integer w = m + ni maps to a three-term arithmetic progression of
squares through chi(w) = (Re[w^2] + Im[w^2], w*conj(w), Re[w^2] - Im[w^2]),
which always satisfies r^2 + t^2 = 2*s^2.  Triples (x, y, z) whose fourth
powers satisfy Im[x^4 y^4 z^4] = -4*Im[x^4]*Im[y^4]*Im[z^4], with each fourth
power strictly complex and no two of them real multiples of each other, would
yield a full magic hourglass of squares over Z; both search modes below look
for such triples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .algebra import Integers, factorize
from .core import ValidationReport, validate_hourglass


@dataclass(frozen=True)
class GaussianInt:
    """An element of Z[i] with arbitrary-precision components."""

    re: int
    im: int

    def __add__(self, o):
        return GaussianInt(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, o):
        if isinstance(o, int):
            return GaussianInt(self.re * o, self.im * o)
        return GaussianInt(self.re * o.re - self.im * o.im,
                           self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out, base = GaussianInt(1, 0), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re or self.im)

    def conj(self):
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def first_quadrant(self) -> "GaussianInt":
        """The unique associate with re > 0 and im >= 0 (re >= 0 for 0)."""
        w = self
        for _ in range(4):
            if w.re > 0 and w.im >= 0:
                return w
            w = GaussianInt(-w.im, w.re)
        return self  # zero

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        mag = abs(self.im)
        imp = "i" if mag == 1 else f"{mag}i"
        if self.re == 0:
            return f"{'-' if self.im < 0 else ''}{imp}"
        return f"{self.re}{sign}{imp}"


ONE = GaussianInt(1, 0)


def gaussian_divmod(a: GaussianInt, b: GaussianInt):
    """Euclidean division in Z[i]: a = q*b + r with norm(r) < norm(b)."""
    if not b:
        raise ZeroDivisionError("division by zero in Z[i]")
    n = b.norm()
    t = a * b.conj()
    # round each component of t/n to the nearest integer
    q = GaussianInt((2 * t.re + n) // (2 * n), (2 * t.im + n) // (2 * n))
    return q, a - q * b


def gaussian_gcd(a: GaussianInt, b: GaussianInt) -> GaussianInt:
    while b:
        _, r = gaussian_divmod(a, b)
        a, b = b, r
    return a.first_quadrant()


def exact_div(a: GaussianInt, b: GaussianInt) -> GaussianInt | None:
    """a / b when b divides a exactly, else None."""
    q, r = gaussian_divmod(a, b)
    return q if not r else None


def chi(w: GaussianInt) -> tuple[int, int, int]:
    """Map w to the square progression (r, s, t) with r^2 + t^2 = 2*s^2."""
    w2 = w * w
    return (w2.re + w2.im, w.norm(), w2.re - w2.im)


def pow4_parts(w: GaussianInt) -> tuple[int, int]:
    """(Re[w^4], Im[w^4]); with (r, s, t) = chi(w) these equal (r*t, r^2 - s^2)."""
    w4 = (w * w) ** 2
    return (w4.re, w4.im)


@dataclass(frozen=True)
class CongruumTriple:
    """A three-term arithmetic progression of squares and its parameters."""

    r: int
    s: int
    t: int
    m: int
    n: int
    k: int
    congruum: int


def congruum_triple(m: int, n: int, k: int) -> CongruumTriple:
    """The progression r^2 - s^2 = s^2 - t^2 = 4*m*n*(m+n)*(m-n)*k^2."""
    r = k * (m * m + 2 * m * n - n * n)
    s = k * (m * m + n * n)
    t = k * (m * m - 2 * m * n - n * n)
    return CongruumTriple(r, s, t, m, n, k, r * r - s * s)


def two_square_reps(s: int) -> list[tuple[int, int]]:
    """All unordered pairs {u, v} with u^2 + v^2 = s, 0 <= u <= v, ascending."""
    if s < 0:
        raise ValueError("need a nonnegative integer")
    out = []
    u = 0
    while 2 * u * u <= s:
        v2 = s - u * u
        v = math.isqrt(v2)
        if v * v == v2:
            out.append((u, v))
        u += 1
    return out


# ---------------------------------------------------------------------------
# Factorization.


@dataclass(frozen=True)
class GaussianFactorization:
    """unit * product(prime^exponent) with primes in first-quadrant form."""

    unit: GaussianInt
    factors: tuple[tuple[GaussianInt, int], ...]

    def product(self) -> GaussianInt:
        out = self.unit
        for prime, e in self.factors:
            out = out * prime**e
        return out


def _split_prime(p: int) -> GaussianInt:
    # p == 1 (mod 4): find z with z^2 == -1 (mod p), then gcd(p, z + i);
    # of the two conjugate prime classes, the one with re > im is canonical
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            z = pow(a, (p - 1) // 4, p)
            break
    else:  # pragma: no cover
        raise ArithmeticError(f"no square root of -1 mod {p}")
    pi = gaussian_gcd(GaussianInt(p, 0), GaussianInt(z, 1))
    if pi.norm() != p:  # pragma: no cover
        raise ArithmeticError(f"splitting {p} failed")
    if pi.im > pi.re:
        pi = pi.conj().first_quadrant()
    return pi


def gaussian_factor(w: GaussianInt) -> GaussianFactorization:
    """Factor a nonzero Gaussian integer into first-quadrant primes and a unit.

    The rational norm is factored first (trial division plus Pollard rho) and
    each rational prime is matched against w: 2 ramifies as (1+i)^2, primes
    p == 3 (mod 4) stay prime, and primes p == 1 (mod 4) split into a
    conjugate pair whose multiplicities are separated by exact division.
    """
    if not w:
        raise ValueError("cannot factor 0")
    rest = w
    factors: list[tuple[GaussianInt, int]] = []
    for p, e in factorize(w.norm()).items():
        if p == 2:
            pi = GaussianInt(1, 1)
            for _ in range(e):
                rest = exact_div(rest, pi)
            factors.append((pi, e))
        elif p % 4 == 3:
            if e % 2:  # pragma: no cover
                raise ArithmeticError(f"odd exponent of inert prime {p}")
            pi = GaussianInt(p, 0)
            for _ in range(e // 2):
                rest = exact_div(rest, pi)
            factors.append((pi, e // 2))
        else:
            pi = _split_prime(p)
            count = 0
            while count < e:
                nxt = exact_div(rest, pi)
                if nxt is None:
                    break
                rest = nxt
                count += 1
            if count:
                factors.append((pi, count))
            if count < e:
                pj = pi.conj().first_quadrant()
                for _ in range(e - count):
                    rest = exact_div(rest, pj)
                factors.append((pj, e - count))
    if rest is None or rest.norm() != 1:  # pragma: no cover
        raise ArithmeticError(f"factorization of {w} left non-unit {rest}")
    factors.sort(key=lambda fe: (fe[0].norm(), fe[0].re, fe[0].im))
    result = GaussianFactorization(rest, tuple(factors))
    if result.product() != w:  # pragma: no cover
        raise ArithmeticError(f"factorization of {w} does not multiply back")
    return result


# ---------------------------------------------------------------------------
# The hourglass condition and construction.


@dataclass(frozen=True)
class HourglassConditionReport:
    """Outcome of the product-identity test on a triple (x, y, z)."""

    holds: bool
    identity_holds: bool
    real_fourth_powers: tuple[str, ...]
    proportional_pairs: tuple[tuple[str, str], ...]


def hourglass_condition(x: GaussianInt, y: GaussianInt,
                        z: GaussianInt) -> HourglassConditionReport:
    """Test Im[x^4 y^4 z^4] == -4*Im[x^4]*Im[y^4]*Im[z^4] plus degeneracy.

    The triple qualifies only when the identity holds, every fourth power is
    strictly complex, and no two fourth powers are real multiples of each
    other (tested by cross-multiplication, no division).
    """
    powers = {n: (v * v) ** 2 for n, v in (("x", x), ("y", y), ("z", z))}
    real = tuple(n for n, p4 in powers.items() if p4.im == 0)
    names = ("x", "y", "z")
    prop = tuple(
        (a, b) for i, a in enumerate(names) for b in names[i + 1:]
        if powers[a].re * powers[b].im == powers[a].im * powers[b].re)
    lhs = (powers["x"] * powers["y"] * powers["z"]).im
    rhs = -4 * powers["x"].im * powers["y"].im * powers["z"].im
    identity = lhs == rhs
    return HourglassConditionReport(
        holds=identity and not real and not prop,
        identity_holds=identity,
        real_fourth_powers=real,
        proportional_pairs=prop)


def hourglass_generators(x: GaussianInt, y: GaussianInt, z: GaussianInt):
    """The conjugate-product triple sharing one norm: (x~yz, xy~z, xyz~)."""
    return (x.conj() * y * z, x * y.conj() * z, x * y * z.conj())


# ---------------------------------------------------------------------------
# Guess-and-check hourglass candidates.


@dataclass(frozen=True)
class HourglassCandidate:
    """A candidate hourglass built from three square progressions.

    cells holds the pre-square integers (a, b, c, e, g, h, i); signs are
    erased by squaring during validation.  The three center lines sum to
    3*center^2 by construction.
    """

    center: int
    generators: tuple[GaussianInt, ...]
    cells: tuple[int, ...]
    report: ValidationReport


def square_sum_generators(s: int) -> list[GaussianInt]:
    """Generators w with norm(w) = s, one per unordered two-square rep of s.

    Enumeration order follows the conjugation patterns of the split prime
    factors (ascending by norm, last factor varying fastest), which is the
    order the factorization-based guess method explores.  Each generator is
    normalized so that re >= im >= 0.
    """
    if s < 1:
        return []
    base = ONE
    split: list[tuple[GaussianInt, GaussianInt, int]] = []
    for p, e in factorize(s).items():
        if p == 2:
            base = base * GaussianInt(1, 1) ** e
        elif p % 4 == 3:
            if e % 2:
                return []
            base = base * GaussianInt(p, 0) ** (e // 2)
        else:
            pi = _split_prime(p)
            split.append((pi, pi.conj(), e))
    out, seen = [], set()
    for choice in product(*(range(e + 1) for _, _, e in split)):
        w = base
        for c, (pi, pj, e) in zip(choice, split):
            w = w * pi**c * pj ** (e - c)
        u, v = abs(w.re), abs(w.im)
        rep = (max(u, v), min(u, v))
        if rep not in seen:
            seen.add(rep)
            out.append(GaussianInt(*rep))
    return out


def _assemble_cells(progs, s):
    # One progression per center line: (a,e,i), then (c,e,g), then (b,e,h).
    r1, _, t1 = progs[0]
    r2, _, t2 = progs[1]
    r3, _, t3 = progs[2]
    return (t1, r3, r2, s, t2, t3, r1)


def hourglass_guess(s: int) -> HourglassCandidate | None:
    """Build the guess-and-check hourglass candidate centered at s^2.

    Needs at least three two-square representations of s with both parts
    nonzero and distinct; returns None (a normal outcome) otherwise.  The
    three earliest qualifying generators in square_sum_generators order give
    the three center-line progressions.
    """
    if s < 1:
        raise ValueError("center must be a positive integer")
    gens = [g for g in square_sum_generators(s) if g.im > 0 and g.re != g.im]
    if len(gens) < 3:
        return None
    gens = tuple(gens[:3])
    progs = [chi(g) for g in gens]
    cells = _assemble_cells(progs, s)
    report = validate_hourglass(tuple(c * c for c in cells), Integers())
    return HourglassCandidate(s, gens, cells, report)


# ---------------------------------------------------------------------------
# Hourglass search drivers.

# Im[w^4] is divisible by 24 for every w in Z[i], so the product side of the
# identity is divisible by 4 * 24**3.
_PRODUCT_SIEVE = 4 * 24**3


@dataclass(frozen=True)
class HourglassHit:
    x: GaussianInt
    y: GaussianInt
    z: GaussianInt
    cells: tuple[int, ...]


@dataclass(frozen=True)
class HourglassSearchResult:
    mode: str
    bound: int
    hits: tuple[HourglassHit, ...]
    triples_tested: int
    candidates_enumerated: int


def _verify_hit(x, y, z) -> tuple[int, ...]:
    alpha, beta, gamma = hourglass_generators(x, y, z)
    s = alpha.norm()
    if beta.norm() != s or gamma.norm() != s:  # pragma: no cover
        raise AssertionError("generator norms disagree")
    cells = _assemble_cells([chi(alpha), chi(beta), chi(gamma)], s)
    report = validate_hourglass(tuple(c * c for c in cells), Integers())
    if not report.is_magic:
        raise AssertionError(
            f"triple {x}, {y}, {z} passed the condition but fails validation")
    return cells


def _candidate_points(bound: int) -> list[GaussianInt]:
    pts = []
    re = 1
    while re * re <= bound:
        im = 0
        while re * re + im * im <= bound:
            pts.append(GaussianInt(re, im))
            im += 1
        re += 1
    pts.sort(key=lambda w: (w.norm(), w.re, w.im))
    return pts


def search_hourglass(mode: str, bound: int, report_every: int | None = None,
                     progress=None) -> HourglassSearchResult:
    """Search for triples satisfying the hourglass condition.

    exhaustive mode scans all first-quadrant triples with
    norm(x) <= norm(y) <= norm(z) <= bound.  product-first mode scans
    candidate products w with norm(w) <= bound whose Im[w^4] passes the
    4*24^3 divisibility sieve, factors each, and tests every split of the
    prime multiset into three parts.  Every hit is re-verified by building
    the hourglass and validating all 5 sums; an empty result is the
    expected outcome.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    if mode == "exhaustive":
        return _search_exhaustive(bound, report_every, progress)
    if mode == "product-first":
        return _search_product_first(bound, report_every, progress)
    raise ValueError(f"unknown search mode {mode!r}")


def _search_exhaustive(bound, report_every, progress):
    # points with a real fourth power (im == 0 or re == im) can never appear
    # in a qualifying triple, so they are skipped up front
    pts = [w for w in _candidate_points(bound) if ((w * w) ** 2).im != 0]
    p4 = [(w * w) ** 2 for w in pts]
    im4 = [v.im for v in p4]
    hits = []
    tested = 0
    n = len(pts)
    for i in range(n):
        if progress and report_every and i % report_every == 0:
            progress(f"outer point {i + 1}/{n}, {tested} triples tested")
        xi = p4[i]
        for j in range(i, n):
            xy = xi * p4[j]
            prop_ij = xi.re * p4[j].im == xi.im * p4[j].re
            rhs_ij = -4 * im4[i] * im4[j]
            for k in range(j, n):
                tested += 1
                zk = p4[k]
                if xy.re * zk.im + xy.im * zk.re != rhs_ij * im4[k]:
                    continue
                if prop_ij \
                        or xi.re * zk.im == xi.im * zk.re \
                        or p4[j].re * zk.im == p4[j].im * zk.re:
                    continue
                x, y, z = pts[i], pts[j], pts[k]
                cells = _verify_hit(x, y, z)
                hits.append(HourglassHit(x, y, z, cells))
    return HourglassSearchResult("exhaustive", bound, tuple(hits), tested, n)


def _splits_of(factors):
    """All ways to split a prime multiset into three factors, up to order."""
    parts = [(ONE, ONE, ONE)]
    for prime, e in factors:
        new = []
        for e1 in range(e + 1):
            for e2 in range(e + 1 - e1):
                e3 = e - e1 - e2
                piece = (prime**e1, prime**e2, prime**e3)
                new.extend((a * piece[0], b * piece[1], c * piece[2])
                           for a, b, c in parts)
        parts = new
    seen = set()
    out = []
    for a, b, c in parts:
        trip = tuple(sorted((a.first_quadrant(), b.first_quadrant(),
                             c.first_quadrant()),
                            key=lambda w: (w.norm(), w.re, w.im)))
        key = tuple((w.re, w.im) for w in trip)
        if key not in seen:
            seen.add(key)
            out.append(trip)
    return out


def _search_product_first(bound, report_every, progress):
    hits = []
    tested = 0
    candidates = 0
    pts = _candidate_points(bound)
    seen_hits = set()
    for idx, w in enumerate(pts):
        if progress and report_every and idx % report_every == 0:
            progress(f"product {idx + 1}/{len(pts)}, {tested} triples tested")
        im4 = ((w * w) ** 2).im
        if im4 == 0 or im4 % _PRODUCT_SIEVE:
            continue
        candidates += 1
        for x, y, z in _splits_of(gaussian_factor(w).factors):
            tested += 1
            if hourglass_condition(x, y, z).holds:
                key = tuple((v.re, v.im) for v in (x, y, z))
                if key in seen_hits:
                    continue
                seen_hits.add(key)
                cells = _verify_hit(x, y, z)
                hits.append(HourglassHit(x, y, z, cells))
    return HourglassSearchResult("product-first", bound, tuple(hits),
                                 tested, candidates)
