"""Residue-set arithmetic over Z/mZ.

A CyclicSet is a canonical (sorted, duplicate-free) subset of Z/mZ.  The
operations here cover direct sums, factorization tests A (+) B = Z/mZ,
gcd conditions on liftings, and difference sets reduced mod m.  Everything
is exact integer arithmetic; all values are immutable after construction,
so they are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Dense per-residue tables (coverage bitmaps, zero tables) are allocated
# eagerly, so refuse moduli beyond this rather than thrash memory.
MAX_MODULUS = 10**6


class DuplicateResidueError(ValueError):
    """Two input values collide after reduction mod m."""

    def __init__(self, first: int, second: int, modulus: int):
        self.first = first
        self.second = second
        self.modulus = modulus
        super().__init__(
            f"values {first} and {second} coincide mod {modulus}; "
            "multisets are not valid residue sets"
        )


class DirectSumCollisionError(ValueError):
    """Two pairs (a, b), (a', b') produce the same sum mod m."""

    def __init__(self, a: int, b: int, a2: int, b2: int, modulus: int):
        self.witness = (a, b, a2, b2)
        self.modulus = modulus
        super().__init__(
            f"{a} + {b} = {a2} + {b2} (mod {modulus}); sum is not direct"
        )


@dataclass(frozen=True)
class Check:
    """One named condition inside a Verdict, with witness values."""

    name: str
    passed: bool
    witness: tuple = ()

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError(f"failed check {self.name!r} must carry a witness")

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": list(self.witness)}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification: a list of checks plus optional notes.

    ``passed`` is derived, never stored: it is true exactly when every
    check passed.  Every failed check carries at least one concrete
    witness value (enforced by Check).
    """

    checks: tuple[Check, ...]
    notes: tuple[tuple[str, str], ...] = field(default=())

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "notes": dict(self.notes),
        }


@dataclass(frozen=True)
class CyclicSet:
    """A nonempty subset of Z/mZ in canonical form.

    elements are strictly increasing integers in [0, m).  The same list
    read as plain integers is the canonical lifting of the set.
    """

    modulus: int
    elements: tuple[int, ...]

    def __post_init__(self):
        m = self.modulus
        if m < 1:
            raise ValueError(f"modulus must be positive, got {m}")
        if m > MAX_MODULUS:
            raise ValueError(f"modulus {m} exceeds supported maximum {MAX_MODULUS}")
        if not self.elements:
            raise ValueError("residue set must be nonempty")
        prev = -1
        for x in self.elements:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"non-integer element {x!r}")
            if x <= prev:
                raise ValueError("elements must be strictly increasing")
            prev = x
        if prev >= m:
            raise ValueError(f"element {prev} out of range [0, {m})")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)

    def translate(self, t: int) -> "CyclicSet":
        """Element-wise translation (A + t) mod m."""
        m = self.modulus
        return CyclicSet(m, tuple(sorted((x + t) % m for x in self.elements)))


def make_cyclic_set(m: int, raw: Iterable[int]) -> CyclicSet:
    """Reduce raw integers mod m into a canonical CyclicSet.

    Rejects an empty input, a non-positive modulus, and any pair of values
    that collide after reduction (the error carries the colliding pair).
    """
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    if m > MAX_MODULUS:
        raise ValueError(f"modulus {m} exceeds supported maximum {MAX_MODULUS}")
    values = list(raw)
    if not values:
        raise ValueError("residue set must be nonempty")
    seen: dict[int, int] = {}
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ValueError(f"non-integer element {v!r}")
        r = v % m
        if r in seen:
            raise DuplicateResidueError(seen[r], v, m)
        seen[r] = v
    return CyclicSet(m, tuple(sorted(seen)))


def direct_sum(a: CyclicSet, b: CyclicSet) -> CyclicSet:
    """The sumset {x + y mod m}; errors if any sum repeats.

    A repeated sum means the sum is not direct; the error carries the
    two pairs (x, y), (x', y') with x + y = x' + y' mod m.
    """
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")
    m = a.modulus
    seen: dict[int, tuple[int, int]] = {}
    for x in a.elements:
        for y in b.elements:
            s = (x + y) % m
            if s in seen:
                x0, y0 = seen[s]
                raise DirectSumCollisionError(x0, y0, x, y, m)
            seen[s] = (x, y)
    return CyclicSet(m, tuple(sorted(seen)))


def is_factorization(a: CyclicSet, b: CyclicSet) -> Verdict:
    """Does a (+) b = Z/mZ hold, every residue hit exactly once?

    Checks the size identity |a|*|b| = m, sum uniqueness, and full
    coverage; a failure carries a collision pair or an uncovered residue.
    """
    if a.modulus != b.modulus:
        raise ValueError(f"modulus mismatch: {a.modulus} != {b.modulus}")
    m = a.modulus
    checks = []
    size_ok = len(a) * len(b) == m
    checks.append(Check("size", size_ok, () if size_ok else (len(a), len(b), m)))

    collision: tuple | None = None
    seen: dict[int, tuple[int, int]] = {}
    for x in a.elements:
        if collision:
            break
        for y in b.elements:
            s = (x + y) % m
            if s in seen:
                x0, y0 = seen[s]
                collision = (x0, y0, x, y)
                break
            seen[s] = (x, y)
    checks.append(Check("unique-sums", collision is None, collision or ()))

    uncovered = next((g for g in range(m) if g not in seen), None)
    checks.append(Check("full-cover", uncovered is None,
                        () if uncovered is None else (uncovered,)))
    return Verdict(tuple(checks))


def set_gcd(a: CyclicSet) -> int:
    """gcd of the canonical lifting; 0 for the set {0}."""
    g = 0
    for x in a.elements:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def coprime_witness(a: CyclicSet) -> tuple[int, ...]:
    """A small subset of elements whose gcd already equals set_gcd(a).

    Greedy scan keeping elements that shrink the running gcd, then a
    reverse pass dropping redundant ones.
    """
    target = set_gcd(a)
    picked: list[int] = []
    g = 0
    for x in a.elements:
        ng = math.gcd(g, x)
        if ng != g:
            picked.append(x)
            g = ng
        if g == target:
            break
    # drop members that are no longer needed
    i = 0
    while i < len(picked):
        rest = picked[:i] + picked[i + 1:]
        if rest and math.gcd(*rest) == target:
            picked = rest
        else:
            i += 1
    return tuple(picked)


def difference_residues(gamma: Sequence[int], m: int) -> CyclicSet:
    """All pairwise differences (g - g') mod m; always contains 0."""
    if not gamma:
        raise ValueError("difference set of an empty list")
    vals = set()
    for g in gamma:
        for h in gamma:
            vals.add((g - h) % m)
    return CyclicSet(m, tuple(sorted(vals)))


def distinct_mod_lattice(gamma: Sequence[int], m: int) -> Verdict:
    """Are the residues of gamma mod m pairwise distinct?

    The witness on failure is a colliding pair of input values.
    """
    seen: dict[int, int] = {}
    collision: tuple | None = None
    for g in gamma:
        r = g % m
        if r in seen:
            collision = (seen[r], g)
            break
        seen[r] = g
    return Verdict((Check("distinct-mod-lattice", collision is None, collision or ()),))
