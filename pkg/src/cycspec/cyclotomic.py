"""Exact integer-polynomial arithmetic for exponential-sum zero tests.

The exponential sum of a residue set A over Z/mZ at an integer point k is
the mask polynomial A(x) = sum of x^a evaluated at e^(2 pi i k / m).  That
value is zero precisely when the cyclotomic polynomial of order
m / gcd(k, m) divides the mask, so zero decisions reduce to exact
divisibility tests over the integers.  Floating point appears only in
eval_float, which exists as a cross-check oracle, never as the decider.

Coefficients are plain Python ints, so nothing overflows; the memoized
cyclotomic table is safe for concurrent readers (idempotent inserts).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Sequence

from .groups import CyclicSet


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial, index = degree, trailing zeros trimmed.

    The zero polynomial is the empty tuple and has degree -1.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("coefficient list not canonical (trailing zero)")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        return cls(_trim(list(coeffs)))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "IntPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPolynomial":
        if coeff == 0:
            return cls(())
        return cls((0,) * power + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(_trim(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return IntPolynomial(_trim(out))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        # Kronecker substitution: evaluate both at 2^K, multiply as big
        # ints, read signed digits back.  Far faster than schoolbook in
        # CPython and exact for any coefficient size.
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b)) + 1
        k = (2 * bound).bit_length() + 1
        base = 1 << k
        half = base >> 1
        mask = base - 1
        pa = sum(c << (k * i) for i, c in enumerate(a))
        pb = sum(c << (k * i) for i, c in enumerate(b))
        prod = pa * pb
        out = []
        for _ in range(len(a) + len(b) - 1):
            d = prod & mask
            if d >= half:
                d -= base
            out.append(d)
            prod = (prod - d) >> k
        assert prod == 0
        return IntPolynomial(_trim(out))

    def __call__(self, x: complex) -> complex:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def reduce_mod(p: IntPolynomial, d: IntPolynomial) -> IntPolynomial:
    """Exact remainder of p divided by the monic polynomial d.

    A monic divisor keeps every intermediate value an integer; a
    non-monic divisor is rejected.
    """
    if d.degree < 1 or not d.is_monic:
        raise ValueError("divisor must be monic of degree >= 1")
    dd = d.degree
    body = d.coeffs[:dd]
    r = list(p.coeffs)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if c:
            r[i] = 0
            base = i - dd
            for j, dj in enumerate(body):
                if dj:
                    r[base + j] -= c * dj
    return IntPolynomial(_trim(r[:dd]))


def _exact_divide(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den monic; asserts the division leaves no remainder
    dd = len(den) - 1
    body = den[:dd]
    r = list(num)
    q = [0] * (len(r) - dd)
    for i in range(len(r) - 1, dd - 1, -1):
        c = r[i]
        if c:
            q[i - dd] = c
            r[i] = 0
            base = i - dd
            for j, dj in enumerate(body):
                if dj:
                    r[base + j] -= c * dj
    if any(r):
        raise ArithmeticError("division was not exact")
    return q


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


@lru_cache(maxsize=None)
def _cyclo_coeffs(s: int) -> tuple[int, ...]:
    if s == 1:
        return (-1, 1)
    p = _smallest_prime_factor(s)
    m = s // p
    inner = _cyclo_coeffs(m)
    # substitute x -> x^p into the order-m polynomial
    subst = [0] * ((len(inner) - 1) * p + 1)
    for i, c in enumerate(inner):
        subst[i * p] = c
    if m % p == 0:
        return tuple(subst)
    return tuple(_exact_divide(subst, inner))


def cyclotomic_polynomial(s: int) -> IntPolynomial:
    """The monic minimal polynomial of a primitive s-th root of unity.

    Computed by exact division via the prime recurrences (substitute
    x -> x^p and divide out the lower order when p is new); the result is
    identical to dividing x^s - 1 by all lower-order factors, but does not
    slow down for highly composite s.  Results are memoized per process.
    """
    if s < 1:
        raise ValueError(f"order must be positive, got {s}")
    return IntPolynomial(_cyclo_coeffs(s))


def mask_polynomial(a: CyclicSet) -> IntPolynomial:
    """The 0/1 polynomial with exponents at the elements of a."""
    out = [0] * (a.elements[-1] + 1)
    for x in a.elements:
        out[x] = 1
    return IntPolynomial(tuple(out))


@lru_cache(maxsize=4096)
def _vanishing_orders(a: CyclicSet) -> frozenset[int]:
    m = a.modulus
    # fold the mask into degree < s first: x^s = 1 on every s-th root of
    # unity, so divisibility by the order-s cyclotomic is unchanged; the
    # remainder loop is inlined on raw lists (this sits on the hot path
    # of bulk verification sweeps)
    orders = set()
    elements = a.elements
    for s in range(2, m + 1):
        if m % s:
            continue
        folded = [0] * s
        for x in elements:
            folded[x % s] += 1
        den = _cyclo_coeffs(s)
        dd = len(den) - 1
        body = den[:dd]
        for i in range(s - 1, dd - 1, -1):
            c = folded[i]
            if c:
                folded[i] = 0
                base = i - dd
                for j, dj in enumerate(body):
                    if dj:
                        folded[base + j] -= c * dj
        if not any(folded[:dd]):
            orders.add(s)
    return frozenset(orders)


def vanishes_at_order(a: CyclicSet, s: int) -> bool:
    """Does the order-s cyclotomic polynomial divide the mask of a?

    Equivalently: does the exponential sum of a vanish at every k whose
    order m / gcd(k, m) equals s?  s must divide the modulus.
    """
    if s < 1 or a.modulus % s:
        raise ValueError(f"order {s} does not divide modulus {a.modulus}")
    if s == 1:
        # the sum at k = 0 is |a|, never zero
        return False
    return s in _vanishing_orders(a)


@dataclass(frozen=True)
class ZeroSet:
    """Integer zeros of a residue set's exponential sum, mod its period.

    zero_residues[k] is True exactly when the sum vanishes at k; the
    vanishing_orders are the cyclotomic orders dividing the mask, and the
    two views agree through k  <->  m / gcd(k, m).
    """

    modulus: int
    zero_residues: tuple[bool, ...]
    vanishing_orders: frozenset[int]

    def __post_init__(self):
        if len(self.zero_residues) != self.modulus:
            raise ValueError("zero table length must equal the modulus")
        if self.zero_residues[0]:
            raise ValueError("residue 0 can never be a zero")
        for s in self.vanishing_orders:
            if s <= 1 or self.modulus % s:
                raise ValueError(f"bad vanishing order {s}")

    def __contains__(self, k: int) -> bool:
        return self.zero_residues[k % self.modulus]

    def contains(self, k: int) -> bool:
        return self.zero_residues[k % self.modulus]

    def residues(self) -> tuple[int, ...]:
        return tuple(k for k, z in enumerate(self.zero_residues) if z)


@lru_cache(maxsize=1024)
def zero_set(a: CyclicSet) -> ZeroSet:
    """All k in [0, m) where the exponential sum of a vanishes.

    Decided exactly: collect the cyclotomic orders dividing the mask,
    then mark k as a zero when m / gcd(k, m) is such an order.
    """
    m = a.modulus
    orders = _vanishing_orders(a)
    table = [False] * m
    for k in range(1, m):
        if m // math.gcd(k, m) in orders:
            table[k] = True
    return ZeroSet(m, tuple(table), orders)


def eval_float(a: CyclicSet, k: int) -> float:
    """|sum of e^(2 pi i k x / m)| in double precision; cross-check only."""
    m = a.modulus
    w = 2.0 * math.pi * (k % m) / m
    return abs(sum(cmath.exp(1j * w * x) for x in a.elements))


@dataclass(frozen=True)
class GridSet:
    """A finite set of points in Z_{N1} x ... x Z_{Nn}, one vector each.

    Represents the set {(c1/N1, ..., cn/Nn)} by its integer numerators;
    points are kept sorted and distinct.
    """

    moduli: tuple[int, ...]
    points: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.moduli or any(n < 1 for n in self.moduli):
            raise ValueError(f"moduli must be positive, got {self.moduli}")
        if not self.points:
            raise ValueError("point set must be nonempty")
        n = len(self.moduli)
        prev = None
        for pt in self.points:
            if len(pt) != n:
                raise ValueError(f"point {pt} has wrong dimension (expected {n})")
            for c, nn in zip(pt, self.moduli):
                if not 0 <= c < nn:
                    raise ValueError(f"coordinate {c} out of range [0, {nn})")
            if prev is not None and pt <= prev:
                raise ValueError("points must be sorted and distinct")
            prev = pt

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return len(self.moduli)

    @classmethod
    def from_points(cls, moduli: Sequence[int], points: Sequence[Sequence[int]]) -> "GridSet":
        return cls(tuple(moduli), tuple(sorted(tuple(p) for p in points)))

    @classmethod
    def from_cyclic(cls, a: CyclicSet) -> "GridSet":
        return cls((a.modulus,), tuple((x,) for x in a.elements))

    def to_cyclic(self) -> CyclicSet:
        if self.dimension != 1:
            raise ValueError("only one-dimensional grids map to Z/mZ")
        return CyclicSet(self.moduli[0], tuple(p[0] for p in self.points))


@lru_cache(maxsize=65536)
def _root_sum_is_zero(order: int, exponents: tuple[int, ...]) -> bool:
    # is sum of zeta^e zero, zeta a primitive root of the given order?
    if order == 1:
        return len(exponents) == 0
    g = order
    for e in exponents:
        g = math.gcd(g, e)
        if g == 1:
            break
    if g > 1:
        # zeta^e = (primitive root of order/g)^(e/g)
        return _root_sum_is_zero(order // g, tuple(sorted(e // g for e in exponents)))
    folded = [0] * order
    for e in exponents:
        folded[e] += 1
    poly = IntPolynomial(_trim(folded))
    return reduce_mod(poly, cyclotomic_polynomial(order)).is_zero


def grid_is_zero(a: GridSet, k: Sequence[int]) -> bool:
    """Does the exponential sum of the grid set vanish at integer vector k?

    With L = lcm of the moduli, every term is a power of a primitive L-th
    root of unity with exponent sum_j k_j c_j (L / N_j); the sum vanishes
    exactly when that exponent polynomial reduces to zero modulo the
    order-L cyclotomic polynomial.
    """
    if len(k) != a.dimension:
        raise ValueError(f"point has dimension {len(k)}, grid has {a.dimension}")
    lcm = reduce(math.lcm, a.moduli)
    scale = [lcm // n for n in a.moduli]
    exps = []
    for pt in a.points:
        e = 0
        for kj, cj, sj in zip(k, pt, scale):
            e += kj * cj * sj
        exps.append(e % lcm)
    return _root_sum_is_zero(lcm, tuple(sorted(exps)))
