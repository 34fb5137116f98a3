"""Structured input files for the CLI: JSON with named residue sets.

A problem file carries a modulus (or a moduli vector for grids), named
sets, an optional gamma list for spectrum candidates, and an optional
quasiperiodic witness.  A set may be written flat ([0, 2, 4]) or as a
list of summand arrays ([[0, 4], [0, 1]]) which is expanded into their
direct sum at parse time; expansion failures (a repeated sum) are
reported against the file position.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .groups import CyclicSet, DirectSumCollisionError, DuplicateResidueError, direct_sum, make_cyclic_set
from .cyclotomic import GridSet
from .search import MalformedWitnessError, QuasiperiodicWitness

_TOP_LEVEL_FIELDS = {"description", "modulus", "moduli", "sets", "gamma", "witness"}
_WITNESS_FIELDS = {"H", "partition"}


class ProblemFileError(ValueError):
    """Parse failure with the JSON path where it happened."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


@dataclass(frozen=True)
class ProblemFile:
    """Parsed, validated input: library types keyed by their file names."""

    source: str
    description: str = ""
    modulus: int | None = None
    moduli: tuple[int, ...] | None = None
    sets: dict[str, CyclicSet | GridSet] = field(default_factory=dict)
    gamma: tuple | None = None  # ints for modulus files, vectors for moduli files
    witness: QuasiperiodicWitness | None = None

    @property
    def is_grid(self) -> bool:
        return self.moduli is not None

    def named_set(self, name: str):
        if name not in self.sets:
            known = ", ".join(sorted(self.sets)) or "none"
            raise ProblemFileError(f"sets.{name}", f"no such set (have: {known})")
        return self.sets[name]


def _want_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemFileError(path, f"expected an integer, got {value!r}")
    return value


def _want_int_list(value, path: str) -> list[int]:
    if not isinstance(value, list) or not value:
        raise ProblemFileError(path, "expected a nonempty array of integers")
    return [_want_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _parse_cyclic(value, m: int, path: str) -> CyclicSet:
    if not isinstance(value, list) or not value:
        raise ProblemFileError(path, "expected a nonempty array")
    nested = isinstance(value[0], list)
    for i, item in enumerate(value):
        if isinstance(item, list) != nested:
            raise ProblemFileError(
                f"{path}[{i}]", "mix of integers and summand arrays in one set"
            )
    try:
        if not nested:
            return make_cyclic_set(m, _want_int_list(value, path))
        acc = make_cyclic_set(m, _want_int_list(value[0], f"{path}[0]"))
        for i, summand in enumerate(value[1:], start=1):
            nxt = make_cyclic_set(m, _want_int_list(summand, f"{path}[{i}]"))
            acc = direct_sum(acc, nxt)
        return acc
    except (DuplicateResidueError, DirectSumCollisionError, ValueError) as exc:
        if isinstance(exc, ProblemFileError):
            raise
        raise ProblemFileError(path, str(exc)) from exc


def _parse_vectors(value, moduli: tuple[int, ...], path: str) -> list[tuple[int, ...]]:
    if not isinstance(value, list) or not value:
        raise ProblemFileError(path, "expected a nonempty array of coordinate vectors")
    out = []
    for i, item in enumerate(value):
        vec = _want_int_list(item, f"{path}[{i}]")
        if len(vec) != len(moduli):
            raise ProblemFileError(
                f"{path}[{i}]", f"vector has {len(vec)} coordinates, moduli have {len(moduli)}"
            )
        out.append(tuple(vec))
    return out


def parse_problem(data: dict, source: str = "<memory>") -> ProblemFile:
    """Validate a decoded JSON object into library types."""
    if not isinstance(data, dict):
        raise ProblemFileError("$", "top level must be an object")
    unknown = set(data) - _TOP_LEVEL_FIELDS
    if unknown:
        raise ProblemFileError(sorted(unknown)[0], "unknown field")

    description = data.get("description") or ""
    if not isinstance(description, str):
        raise ProblemFileError("description", "expected a string")

    modulus = data.get("modulus")
    moduli_raw = data.get("moduli")
    if (modulus is None) == (moduli_raw is None):
        raise ProblemFileError("modulus", "exactly one of modulus / moduli is required")

    sets_raw = data.get("sets") or {}
    if not isinstance(sets_raw, dict):
        raise ProblemFileError("sets", "expected an object of named sets")

    sets: dict[str, CyclicSet | GridSet] = {}
    gamma = None
    witness = None

    if modulus is not None:
        m = _want_int(modulus, "modulus")
        if m < 1:
            raise ProblemFileError("modulus", f"must be positive, got {m}")
        for name, value in sets_raw.items():
            sets[name] = _parse_cyclic(value, m, f"sets.{name}")
        if data.get("gamma") is not None:
            gamma = tuple(_want_int_list(data["gamma"], "gamma"))
        if data.get("witness") is not None:
            witness = _parse_witness(data["witness"], m)
        return ProblemFile(source, description, modulus=m, sets=sets,
                           gamma=gamma, witness=witness)

    moduli = tuple(_want_int_list(moduli_raw, "moduli"))
    if any(n < 1 for n in moduli):
        raise ProblemFileError("moduli", "all entries must be positive")
    for name, value in sets_raw.items():
        pts = _parse_vectors(value, moduli, f"sets.{name}")
        try:
            sets[name] = GridSet.from_points(moduli, pts)
        except ValueError as exc:
            raise ProblemFileError(f"sets.{name}", str(exc)) from exc
    if data.get("gamma") is not None:
        gamma = tuple(_parse_vectors(data["gamma"], moduli, "gamma"))
    if data.get("witness") is not None:
        raise ProblemFileError("witness", "witnesses only apply to modulus files")
    return ProblemFile(source, description, moduli=moduli, sets=sets, gamma=gamma)


def _parse_witness(value, m: int) -> QuasiperiodicWitness:
    if not isinstance(value, dict):
        raise ProblemFileError("witness", "expected an object with H and partition")
    unknown = set(value) - _WITNESS_FIELDS
    if unknown:
        raise ProblemFileError(f"witness.{sorted(unknown)[0]}", "unknown field")
    if "H" not in value or "partition" not in value:
        raise ProblemFileError("witness", "both H and partition are required")
    subgroup = _parse_cyclic(value["H"], m, "witness.H")
    part_raw = value["partition"]
    if not isinstance(part_raw, list) or not part_raw:
        raise ProblemFileError("witness.partition", "expected a nonempty array of blocks")
    blocks = tuple(
        _parse_cyclic(block, m, f"witness.partition[{i}]")
        for i, block in enumerate(part_raw)
    )
    try:
        return QuasiperiodicWitness(subgroup, blocks)
    except MalformedWitnessError as exc:
        raise ProblemFileError("witness", str(exc)) from exc


def load_problem(path: str | Path) -> ProblemFile:
    """Read and parse a problem file from disk."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(str(p), f"cannot read file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(
            str(p), f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_problem(data, source=str(p))
