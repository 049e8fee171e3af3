"""Carriers: prime fields, extension fields F_{p^r}, rings Z/nZ, and the integers.

Every element is handled as a canonical integer encoding.  Prime fields and
modular rings encode a residue in [0, order).  An extension field element with
coefficient vector (c0, ..., c_{r-1}) over F_p encodes as sum(c_i * p**i),
a bijection onto [0, p**r).  Only this module knows about coefficient vectors;
everything above works with encodings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


class NonInvertibleError(ArithmeticError):
    """Inversion was requested for an element that is not a unit."""

    def __init__(self, element, structure):
        self.element = element
        self.structure = structure
        super().__init__(f"{element} is not invertible in {structure}")


# ---------------------------------------------------------------------------
# Integer utilities shared across the package.

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for all n < 3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    # Brent's cycle variant with deterministic restarts; n must be odd composite.
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"factorization failed for {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = m
        f = 17
        while f * f <= d and f < 10_000:
            if d % f == 0:
                stack.append(f)
                stack.append(d // f)
                break
            f += 2
        else:
            d2 = _pollard_rho(d)
            stack.append(d2)
            stack.append(d // d2)
    return dict(sorted(out.items()))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def prime_power_base(n: int):
    """(p, r) with n == p**r, or None when n is not a prime power."""
    f = factorize(n) if n >= 2 else {}
    if len(f) != 1:
        return None
    (p, r), = f.items()
    return p, r


def divisor_representatives(n: int) -> list[int]:
    """Residues of the divisors of n in Z/nZ, ascending by divisor.

    These are orbit representatives for the multiplicative action of the unit
    group: every residue is a unit multiple of exactly one divisor.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return [d % n for d in divisors(n)]


# ---------------------------------------------------------------------------
# Polynomial arithmetic over F_p (little-endian coefficient tuples).


def _poly_trim(a):
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(tuple(out))


def _poly_mod(a, m, p):
    # m is monic
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return _poly_trim(tuple(x % p for x in a[:dm]))


def _poly_divmod(a, b, p):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, -1, p)
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            f = c * inv_lb % p
            q[i - db] = f
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - f * b[j]) % p
    return _poly_trim(tuple(q)), _poly_trim(tuple(x % p for x in a[:db]))


def _poly_inv(a, m, p):
    # extended Euclid in F_p[x]; a must be nonzero mod m
    r0, r1 = m, _poly_trim(tuple(x % p for x in a))
    s0, s1 = (), (1,)
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        qs1 = _poly_mul(q, s1, p)
        ln = max(len(s0), len(qs1))
        s0, s1 = s1, _poly_trim(tuple(
            ((s0[i] if i < len(s0) else 0) - (qs1[i] if i < len(qs1) else 0)) % p
            for i in range(ln)))
    if len(r0) != 1:
        return None
    c = pow(r0[0], -1, p)
    return _poly_trim(tuple(x * c % p for x in s0))


def _is_irreducible(poly, p):
    # trial division against every monic polynomial of degree <= deg/2
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for enc in range(p**d):
            div = _digits_of(enc, p, d) + (1,)
            if not _poly_divmod(poly, div, p)[1]:
                return False
    return True


def find_irreducible(p: int, r: int) -> tuple[int, ...]:
    """The canonical monic irreducible of degree r over F_p.

    Canonical means the lower coefficients (c0, ..., c_{r-1}), read as a
    base-p integer, are smallest.  The scan is exhaustive, so the result is
    deterministic for a given (p, r).
    """
    for enc in range(p**r):
        poly = _digits_of(enc, p, r) + (1,)
        if _is_irreducible(poly, p):
            return poly
    raise ArithmeticError(f"no irreducible of degree {r} over F_{p}")  # pragma: no cover


def _digits_of(n, p, width):
    out = []
    for _ in range(width):
        n, d = divmod(n, p)
        out.append(d)
    return tuple(out)


# ---------------------------------------------------------------------------
# Square sets and center pairs.


@dataclass(frozen=True)
class SquareSet:
    """The set {x^2 : x in carrier}, as sorted canonical encodings."""

    elements: tuple[int, ...]
    _index: frozenset = field(repr=False)

    def __contains__(self, x):
        return x in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class CenterPairIndex:
    """Unordered pairs {u, v} of distinct squares with u + v = target."""

    target: int
    pairs: tuple[tuple[int, int], ...]
    rule: str = "none"

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


# ---------------------------------------------------------------------------
# Carriers.


class Carrier:
    """Common interface over the coefficient structures used by the search."""

    kind: str = "abstract"
    order: int | None = None

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        raise NotImplementedError

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        out = self.encode_int(1)
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def encode_int(self, n: int) -> int:
        """Encoding of the image of the rational integer n."""
        raise NotImplementedError

    def elements(self) -> range:
        if self.order is None:
            raise ValueError(f"{self} has no finite element enumeration")
        return range(self.order)

    def check_element(self, a) -> int:
        if not isinstance(a, int) or isinstance(a, bool):
            raise ValueError(f"{a!r} is not a valid element encoding for {self}")
        if self.order is not None and not 0 <= a < self.order:
            raise ValueError(f"encoding {a} out of range for {self}")
        return a

    def square_set(self) -> SquareSet:
        try:
            return self._square_set
        except AttributeError:
            seen = sorted({self.mul(x, x) for x in self.elements()})
            self._square_set = SquareSet(tuple(seen), frozenset(seen))
            return self._square_set

    def is_square(self, a: int) -> bool:
        return a in self.square_set()

    def element_repr(self, a: int) -> str:
        return str(a)

    def element_to_json(self, a: int):
        return a

    def element_from_json(self, obj) -> int:
        if not isinstance(obj, int):
            raise ValueError(f"expected integer encoding, got {obj!r}")
        return self.check_element(obj)


class _ResidueCarrier(Carrier):
    """Shared arithmetic for Z/nZ and prime fields."""

    def __init__(self, n: int):
        self.order = n

    def add(self, a, b):
        return (a + b) % self.order

    def sub(self, a, b):
        return (a - b) % self.order

    def mul(self, a, b):
        return (a * b) % self.order

    def neg(self, a):
        return -a % self.order

    def inv(self, a):
        try:
            return pow(a, -1, self.order)
        except ValueError:
            raise NonInvertibleError(a % self.order, str(self)) from None

    def encode_int(self, n):
        return n % self.order

    def units(self):
        n = self.order
        return [u for u in range(1, n) if math.gcd(u, n) == 1]

    def __repr__(self):
        return str(self)


class PrimeField(_ResidueCarrier):
    kind = "prime-field"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        super().__init__(p)
        self.characteristic = p
        self.degree = 1

    def __str__(self):
        return f"F_{self.order}"


class ModularRing(_ResidueCarrier):
    kind = "modular-ring"

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("ring modulus must be at least 2")
        super().__init__(n)

    def __str__(self):
        return f"Z/{self.order}Z"


class ExtensionField(Carrier):
    """F_{p^r} as F_p[x] modulo a monic irreducible of degree r."""

    kind = "extension-field"

    def __init__(self, p: int, r: int, modulus_poly: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if r < 2:
            raise ValueError("extension degree must be at least 2")
        self.characteristic = p
        self.degree = r
        self.order = p**r
        if modulus_poly is None:
            modulus_poly = find_irreducible(p, r)
        else:
            modulus_poly = _poly_trim(tuple(c % p for c in modulus_poly))
            if len(modulus_poly) != r + 1 or modulus_poly[-1] != 1:
                raise ValueError("modulus must be monic of the stated degree")
            if not _is_irreducible(modulus_poly, p):
                raise ValueError(f"modulus {modulus_poly} is reducible over F_{p}")
        self.modulus_poly = modulus_poly
        self._weights = tuple(p**i for i in range(r))
        self._digits = [_digits_of(n, p, r) for n in range(self.order)]

    def coeffs(self, a: int) -> tuple[int, ...]:
        return self._digits[a]

    def encode_coeffs(self, coeffs) -> int:
        if len(coeffs) > self.degree:
            coeffs = _poly_mod(tuple(coeffs), self.modulus_poly, self.characteristic)
        return sum(w * (c % self.characteristic)
                   for w, c in zip(self._weights, coeffs))

    def add(self, a, b):
        p = self.characteristic
        if p == 2:
            return a ^ b
        return sum(w * ((x + y) % p) for w, x, y in
                   zip(self._weights, self._digits[a], self._digits[b]))

    def sub(self, a, b):
        p = self.characteristic
        if p == 2:
            return a ^ b
        return sum(w * ((x - y) % p) for w, x, y in
                   zip(self._weights, self._digits[a], self._digits[b]))

    def neg(self, a):
        p = self.characteristic
        if p == 2:
            return a
        return sum(w * (-x % p) for w, x in zip(self._weights, self._digits[a]))

    def mul(self, a, b):
        prod = _poly_mul(self._digits[a], self._digits[b], self.characteristic)
        return self.encode_coeffs(_poly_mod(prod, self.modulus_poly, self.characteristic))

    def inv(self, a):
        res = _poly_inv(self._digits[a], self.modulus_poly, self.characteristic)
        if res is None:
            raise NonInvertibleError(a, str(self))
        return self.encode_coeffs(res)

    def encode_int(self, n):
        return n % self.characteristic

    def units(self):
        return list(range(1, self.order))

    def element_repr(self, a):
        terms = []
        for i, c in enumerate(self._digits[a]):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                x = "x" if i == 1 else f"x^{i}"
                terms.append(x if c == 1 else f"{c}*{x}")
        return " + ".join(terms) if terms else "0"

    def element_to_json(self, a):
        return list(self._digits[a])

    def element_from_json(self, obj):
        if isinstance(obj, int):
            return self.check_element(obj)
        if isinstance(obj, list) and all(isinstance(c, int) for c in obj):
            if len(obj) > self.degree:
                raise ValueError(f"coefficient vector {obj} too long for {self}")
            return self.encode_coeffs(obj)
        raise ValueError(f"cannot decode {obj!r} as an element of {self}")

    def __str__(self):
        return f"F_{self.order}"

    def __repr__(self):
        return str(self)


class Integers(Carrier):
    """The rational integers, used to validate grids over Z."""

    kind = "int"
    order = None

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a in (1, -1):
            return a
        raise NonInvertibleError(a, "Z")

    def encode_int(self, n):
        return n

    def check_element(self, a):
        if not isinstance(a, int) or isinstance(a, bool):
            raise ValueError(f"{a!r} is not an integer")
        return a

    def is_square(self, a):
        return a >= 0 and math.isqrt(a) ** 2 == a

    def __str__(self):
        return "Z"

    def __repr__(self):
        return str(self)


def make_carrier(kind: str, order: int | None = None,
                 modulus_poly=None) -> Carrier:
    """Build a carrier from a kind tag ("field", "ring", or "int") and order.

    Field orders must be prime powers; the extension-field modulus defaults to
    the canonical irreducible from find_irreducible.
    """
    if kind == "int":
        return Integers()
    if order is None or order < 2:
        raise ValueError(f"invalid order {order} for kind {kind!r}")
    if kind == "field":
        pr = prime_power_base(order)
        if pr is None:
            raise ValueError(f"{order} is not a prime power, no field of that order")
        p, r = pr
        if r == 1:
            return PrimeField(p)
        return ExtensionField(p, r, tuple(modulus_poly) if modulus_poly else None)
    if kind == "ring":
        return ModularRing(order)
    raise ValueError(f"unknown carrier kind {kind!r}")


# ---------------------------------------------------------------------------
# Structure queries used by the search and its prefilters.


def squares(carrier: Carrier) -> SquareSet:
    """The carrier's square set; the (q+1)/2 size law holds for odd fields."""
    sq = carrier.square_set()
    if carrier.kind in ("prime-field", "extension-field"):
        q = carrier.order
        expected = q if q % 2 == 0 else (q + 1) // 2
        if len(sq) != expected:  # pragma: no cover
            raise AssertionError(f"square count {len(sq)} != {expected} for {carrier}")
    return sq


def center_pairs(carrier: Carrier, e: int, rule: str = "none") -> CenterPairIndex:
    """All unordered pairs of distinct squares summing to 2*e^2.

    A magic square has four such pairs, one per line through the center, so
    fewer than four pairs rules the center value out.  The default counts
    every distinct pair, which is the count that argument needs; the
    stricter rules ("nonzero" drops pairs containing 0, "not-target" drops
    pairs containing the target value) are kept for experimentation.
    """
    sq = carrier.square_set()
    e2 = carrier.mul(e, e)
    target = carrier.add(e2, e2)
    sub = carrier.sub
    pairs = []
    for u in sq.elements:
        v = sub(target, u)
        if u < v and v in sq:
            pairs.append((u, v))
    if rule == "nonzero":
        pairs = [p for p in pairs if 0 not in p]
    elif rule == "not-target":
        pairs = [p for p in pairs if target not in p]
    elif rule != "none":
        raise ValueError(f"unknown exclusion rule {rule!r}")
    return CenterPairIndex(target, tuple(pairs), rule)


def consecutive_square_triples(carrier: Carrier) -> list[tuple[int, int, int]]:
    """Triples of squares (s-1, s, s+1) with none of the three in {0, 1, -1}.

    Such a triple is what a center-zero magic square of distinct squares
    scales down to.  A triple member equal to 0, 1, or -1 would collide with
    the fixed entries of the scaled square (a member -1, for instance, has
    negation 1), so those triples are excluded; so are triples with repeated
    members, which occur only in characteristic 2.
    """
    if carrier.kind not in ("prime-field", "extension-field"):
        raise ValueError("consecutive_square_triples expects a field carrier")
    sq = carrier.square_set()
    one = carrier.encode_int(1)
    excluded = {0, one, carrier.neg(one)}
    out = []
    for s in sq.elements:
        lo, hi = carrier.sub(s, one), carrier.add(s, one)
        if lo in sq and hi in sq and len({lo, s, hi}) == 3 \
                and not {lo, s, hi} & excluded:
            out.append((lo, s, hi))
    return out
