"""Bundled datasets shipped with the package.

The modulus-900 counterexample ships as a regular problem file inside the
package (data/tijdeman-900.json) together with a recorded SHA-256, so a
corrupted installation fails loudly instead of quietly verifying the
wrong numbers.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources

from .groups import CyclicSet
from .problemfile import ProblemFile, parse_problem
from .search import QuasiperiodicWitness

BUNDLED_NAME = "tijdeman-900.json"

# sha256 of the bundled file; also recorded in data/tijdeman-900.sha256
_BUNDLED_SHA256 = "9132f5ead601a19f4c0b157f73157a698ae08ff44e121fc06e91d61756b9315d"


class DatasetIntegrityError(RuntimeError):
    """Bundled data does not match its recorded checksum."""


@dataclass(frozen=True)
class CounterexampleData:
    """The modulus-900 pair plus its quasiperiodic witness."""

    modulus: int
    tile_a: CyclicSet
    tile_b: CyclicSet
    witness: QuasiperiodicWitness
    problem: ProblemFile


def bundled_bytes(name: str = BUNDLED_NAME) -> bytes:
    return resources.files("cycspec.data").joinpath(name).read_bytes()


def bundled_names() -> tuple[str, ...]:
    return (BUNDLED_NAME,)


def load_counterexample() -> CounterexampleData:
    """Parse and checksum-verify the bundled modulus-900 dataset."""
    raw = bundled_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != _BUNDLED_SHA256:
        raise DatasetIntegrityError(
            f"bundled dataset hash {digest} != recorded {_BUNDLED_SHA256}"
        )
    problem = parse_problem(json.loads(raw), source=f"bundled:{BUNDLED_NAME}")
    a = problem.named_set("A")
    b = problem.named_set("B")
    assert isinstance(a, CyclicSet) and isinstance(b, CyclicSet)
    if problem.witness is None:
        raise DatasetIntegrityError("bundled dataset lost its witness")
    return CounterexampleData(
        modulus=problem.modulus or 0,
        tile_a=a,
        tile_b=b,
        witness=problem.witness,
        problem=problem,
    )


def bundled_zero_predicate(k: int) -> bool:
    """Reference zero-set membership for the bundled tile A.

    Independent of the polynomial machinery: k qualifies when some prime
    in {2, 3, 5} divides k exactly once (p | k but p^2 does not).
    """
    for p in (2, 3, 5):
        if k % p == 0 and k % (p * p) != 0:
            return True
    return False
