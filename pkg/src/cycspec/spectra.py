"""Spectral-pair and universal-spectrum criteria, plus factorization facts.

A candidate spectrum is a lattice (N1 Z x ... x Nn Z) plus a finite set of
integer vectors Gamma.  The pair criterion demands that all nonzero
differences of Gamma land in the zero set of the tile's exponential sum;
the universal-spectrum criterion additionally fixes |Gamma| from the
lattice volume and tests differences against the zero set of the tile A
itself rather than of a particular complement.

Every function here is pure; the long per-residue scans accept an
optional ``cancel`` callable and abort with OperationCancelled when it
turns truthy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod
from typing import Callable, Sequence

from .groups import (
    Check,
    CyclicSet,
    Verdict,
    coprime_witness,
    is_factorization,
    set_gcd,
)
from .cyclotomic import GridSet, grid_is_zero, zero_set


class OperationCancelled(RuntimeError):
    """Raised when a caller-supplied cancel hook fires mid-scan."""


class NotAFactorizationError(ValueError):
    """The supplied pair does not factor the group; carries a witness."""

    def __init__(self, message: str, witness: tuple = ()):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True)
class SpectrumCandidate:
    """A lattice given by per-coordinate moduli plus translates Gamma."""

    moduli: tuple[int, ...]
    gamma: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.moduli or any(n < 1 for n in self.moduli):
            raise ValueError(f"moduli must be positive, got {self.moduli}")
        n = len(self.moduli)
        seen = set()
        for v in self.gamma:
            if len(v) != n:
                raise ValueError(f"gamma entry {v} has wrong dimension")
            if v in seen:
                raise ValueError(f"gamma entries must be distinct; {v} repeats")
            seen.add(v)
        if not self.gamma:
            raise ValueError("gamma must be nonempty")

    @classmethod
    def one_dimensional(cls, m: int, gamma: Sequence[int]) -> "SpectrumCandidate":
        return cls((m,), tuple(sorted((g,) for g in gamma)))

    @classmethod
    def from_vectors(cls, moduli: Sequence[int], gamma: Sequence[Sequence[int]]) -> "SpectrumCandidate":
        return cls(tuple(moduli), tuple(sorted(tuple(v) for v in gamma)))


def _grid_collision(a: GridSet, b: GridSet):
    """First repeated sum of a (+) b as residue vectors, or None."""
    moduli = a.moduli
    if len(moduli) == 1:
        m = moduli[0]
        table: list = [None] * m
        for p in a.points:
            x = p[0]
            for q in b.points:
                s = (x + q[0]) % m
                prev = table[s]
                if prev is not None:
                    return prev + (p, q)
                table[s] = (p, q)
        return None
    seen: dict[tuple[int, ...], tuple] = {}
    for p in a.points:
        for q in b.points:
            s = tuple((x + y) % n for x, y, n in zip(p, q, moduli))
            if s in seen:
                return seen[s] + (p, q)
            seen[s] = (p, q)
    return None


def _grid_factorization_ok(a: GridSet, b: GridSet):
    """(ok, witness): does a (+) b cover the full box exactly once?"""
    volume = prod(a.moduli)
    if len(a) * len(b) != volume:
        return False, ("size", len(a), len(b), volume)
    collision = _grid_collision(a, b)
    if collision is not None:
        return False, ("collision",) + collision
    return True, ()


@dataclass(frozen=True)
class TilingInstance:
    """A tile in the grid plus, optionally, one complement witnessing
    that the tile actually admits a factorization."""

    moduli: tuple[int, ...]
    tile: GridSet
    complement: GridSet | None = None

    def __post_init__(self):
        if self.tile.moduli != self.moduli:
            raise ValueError("tile moduli disagree with instance moduli")
        volume = prod(self.moduli)
        if volume % len(self.tile):
            raise ValueError(
                f"tile size {len(self.tile)} does not divide box volume {volume}"
            )
        if self.complement is not None:
            if self.complement.moduli != self.moduli:
                raise ValueError("complement moduli disagree with instance moduli")
            ok, witness = _grid_factorization_ok(self.tile, self.complement)
            if not ok:
                raise NotAFactorizationError(
                    "claimed complement does not factor the box", witness
                )

    @classmethod
    def one_dimensional(cls, a: CyclicSet, complement: CyclicSet | None = None) -> "TilingInstance":
        other = GridSet.from_cyclic(complement) if complement is not None else None
        return cls((a.modulus,), GridSet.from_cyclic(a), other)


CancelHook = Callable[[], bool] | None


def _maybe_cancel(cancel: CancelHook):
    if cancel is not None and cancel():
        raise OperationCancelled("verification cancelled by caller")


def _zero_predicate(g: GridSet) -> Callable[[tuple[int, ...]], bool]:
    """Zero test over residue vectors, with the 1-D table fast path.

    One dimension reduces to the cyclic zero set (equivalent to the
    per-point grid test, which the suite checks exhaustively); higher
    dimensions memoize per-point grid tests.
    """
    if g.dimension == 1:
        table = zero_set(g.to_cyclic()).zero_residues
        return lambda r: table[r[0]]
    memo: dict[tuple[int, ...], bool] = {}

    def pred(r: tuple[int, ...]) -> bool:
        hit = memo.get(r)
        if hit is None:
            hit = memo[r] = grid_is_zero(g, r)
        return hit

    return pred


def _difference_checks(
    gamma: tuple[tuple[int, ...], ...],
    moduli: tuple[int, ...],
    is_zero: Callable[[tuple[int, ...]], bool],
    want_zero: bool,
    check_name: str,
    cancel: CancelHook,
) -> Check:
    """Scan nonzero differences of gamma; each must (or must not) vanish."""
    tested: set[tuple[int, ...]] = set()
    for i, u in enumerate(gamma):
        for v in gamma[:i]:
            _maybe_cancel(cancel)
            for x, y in ((u, v), (v, u)):
                r = tuple((a - b) % n for a, b, n in zip(x, y, moduli))
                if r in tested:
                    continue
                tested.add(r)
                if is_zero(r) != want_zero:
                    diff = tuple(a - b for a, b in zip(x, y))
                    return Check(check_name, False, (x, y, diff))
    return Check(check_name, True)


def _distinct_mod_check(
    gamma: tuple[tuple[int, ...], ...], moduli: tuple[int, ...]
) -> Check:
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for v in gamma:
        r = tuple(x % n for x, n in zip(v, moduli))
        if r in seen:
            return Check("distinct-mod-lattice", False, (seen[r], v))
        seen[r] = v
    return Check("distinct-mod-lattice", True)


def check_spectrum_pair(b: GridSet, s: SpectrumCandidate, cancel: CancelHook = None) -> Verdict:
    """Spectral-pair criterion for the box [0,1/N1]x...x[0,1/Nn] + b.

    Passes when |Gamma| = |b|, Gamma is distinct mod the lattice, and
    every nonzero difference of Gamma is a zero of b's exponential sum.
    """
    if b.moduli != s.moduli:
        raise ValueError(f"moduli mismatch: {b.moduli} != {s.moduli}")
    size_ok = len(s.gamma) == len(b)
    checks = [Check("size", size_ok, () if size_ok else (len(s.gamma), len(b)))]
    checks.append(_distinct_mod_check(s.gamma, s.moduli))
    checks.append(
        _difference_checks(
            s.gamma, s.moduli, _zero_predicate(b), True, "differences-vanish", cancel
        )
    )
    return Verdict(tuple(checks))


def check_universal_spectrum(
    t: TilingInstance, s: SpectrumCandidate, cancel: CancelHook = None
) -> Verdict:
    """Universal-spectrum criterion for the periodic tiling set of t.

    Passes when |Gamma| equals the box volume over |tile|, Gamma is
    distinct mod the lattice, and no nonzero difference of Gamma lies in
    the zero set of the tile's exponential sum.  The note records whether
    a complement was supplied (tiling existence verified) or assumed.
    """
    if t.moduli != s.moduli:
        raise ValueError(f"moduli mismatch: {t.moduli} != {s.moduli}")
    volume = prod(t.moduli)
    expected = volume // len(t.tile)
    size_ok = len(s.gamma) == expected
    checks = [Check("size", size_ok, () if size_ok else (len(s.gamma), expected))]
    checks.append(_distinct_mod_check(s.gamma, s.moduli))
    checks.append(
        _difference_checks(
            s.gamma, s.moduli, _zero_predicate(t.tile), False,
            "differences-avoid-zero-set", cancel,
        )
    )
    existence = "verified" if t.complement is not None else "assumed"
    return Verdict(tuple(checks), notes=(("tiling-existence", existence),))


def verify_complementary_zeros(a: GridSet, b: GridSet, cancel: CancelHook = None) -> Verdict:
    """At every nonzero residue vector, one of the two sums must vanish.

    Requires a (+) b to factor the full box (a NotAFactorizationError
    otherwise, distinct from a criterion failure); then scans every
    k != 0 in the box and reports any k where both sums are nonzero.
    """
    if a.moduli != b.moduli:
        raise ValueError(f"moduli mismatch: {a.moduli} != {b.moduli}")
    ok, witness = _grid_factorization_ok(a, b)
    if not ok:
        raise NotAFactorizationError("input pair does not factor the box", witness)
    zero_a = _zero_predicate(a)
    zero_b = _zero_predicate(b)
    origin = (0,) * len(a.moduli)
    for k in product(*(range(n) for n in a.moduli)):
        if k == origin:
            continue
        _maybe_cancel(cancel)
        if not (zero_a(k) or zero_b(k)):
            return Verdict((Check("complementary-zeros", False, (k,)),))
    return Verdict((Check("complementary-zeros", True),))


def verify_zero_complement(a: CyclicSet, b: CyclicSet, cancel: CancelHook = None) -> Verdict:
    """Zero sets of a and b must partition the nonzero residues exactly.

    For every k in [1, m), exactly one of the two exponential sums
    vanishes; a violating residue is reported with which side broke
    ("both" vanish or "neither" does).
    """
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")
    za = zero_set(a).zero_residues
    zb = zero_set(b).zero_residues
    for k in range(1, a.modulus):
        _maybe_cancel(cancel)
        if za[k] == zb[k]:
            kind = "both" if za[k] else "neither"
            return Verdict((Check("exclusive-zero-partition", False, (k, kind)),))
    return Verdict((Check("exclusive-zero-partition", True),))


def check_tijdeman_counterexample(a: CyclicSet, b: CyclicSet) -> Verdict:
    """Certify a counterexample to the shared-prime-factor conjecture.

    Passing means: both sets contain 0, the pair factors Z/mZ, and both
    canonical liftings have gcd 1 (small coprime witness subsets are
    attached to the gcd checks as evidence).
    """
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")
    checks = [
        Check("zero-in-a", 0 in a.elements, () if 0 in a.elements else (a.elements[0],)),
        Check("zero-in-b", 0 in b.elements, () if 0 in b.elements else (b.elements[0],)),
    ]
    fact = is_factorization(a, b)
    fact_witness = ()
    if not fact.passed:
        fact_witness = fact.failures()[0].witness or ("unknown",)
    checks.append(Check("factorization", fact.passed, fact_witness))
    for name, s in (("gcd-a-is-one", a), ("gcd-b-is-one", b)):
        g = set_gcd(s)
        witness = coprime_witness(s) if g == 1 else (g,)
        checks.append(Check(name, g == 1, witness))
    return Verdict(tuple(checks))
