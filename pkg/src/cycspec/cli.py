"""Command-line verifier over problem files and the bundled dataset.

Every subcommand reads a problem file (or the bundled data), runs one
library operation, and emits a report: human-readable text by default,
one JSON object with --json.  Reports are pure functions of the inputs;
apart from the elapsed_ms field, identical inputs give byte-identical
JSON.

Exit codes: 0 all requested checks passed, 1 a verification failed,
2 input or parse error, 3 a search ended inconclusive (budget).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .groups import CyclicSet, Verdict, set_gcd
from .cyclotomic import GridSet, zero_set
from .datasets import BUNDLED_NAME, bundled_bytes, bundled_names, load_counterexample, bundled_zero_predicate
from .problemfile import ProblemFile, ProblemFileError, load_problem, parse_problem
from .search import enumerate_complements, search_quasiperiodic, verify_quasiperiodic
from .spectra import (
    NotAFactorizationError,
    SpectrumCandidate,
    TilingInstance,
    check_spectrum_pair,
    check_tijdeman_counterexample,
    check_universal_spectrum,
    verify_complementary_zeros,
    verify_zero_complement,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_INCONCLUSIVE = 3

ELIDE_THRESHOLD = 16


class _CommandError(Exception):
    """User-facing input problem outside the file parser."""


def _load(path_arg: str) -> ProblemFile:
    """Resolve a path or the name of a bundled dataset."""
    p = Path(path_arg)
    if p.exists():
        return load_problem(p)
    if path_arg in bundled_names() or path_arg == BUNDLED_NAME:
        return parse_problem(json.loads(bundled_bytes(path_arg)),
                             source=f"bundled:{path_arg}")
    raise ProblemFileError(path_arg, "file not found (and not a bundled dataset name)")


def _cyclic_or_die(problem: ProblemFile, name: str) -> CyclicSet:
    s = problem.named_set(name)
    if not isinstance(s, CyclicSet):
        raise _CommandError(f"set {name!r} is a grid set; this command needs a modulus file")
    return s


def _elide(values, full: bool) -> dict:
    seq = list(values)
    out = {"count": len(seq)}
    if full or len(seq) <= ELIDE_THRESHOLD:
        out["values"] = seq
    else:
        out["first"] = seq[:8]
        out["last"] = seq[-8:]
    return out


def _fmt_elided(summary: dict) -> str:
    if "values" in summary:
        return f"{summary['count']}: {summary['values']}"
    return (f"{summary['count']}: {summary['first']} ... {summary['last']}"
            " (use --full to list all)")


def _report(command: str, source: str, checks: list[dict], exit_status: int,
            started: float, extra: dict | None = None) -> dict:
    doc = {
        "command": command,
        "input": source,
        "checks": checks,
        "passed": exit_status == EXIT_PASS,
        "exit_status": exit_status,
        "elapsed_ms": round((time.perf_counter() - started) * 1000.0, 3),
    }
    if extra:
        doc.update(extra)
    return doc


def _verdict_checks(v: Verdict) -> list[dict]:
    out = [c.to_dict() for c in v.checks]
    for name, value in v.notes:
        out.append({"name": f"note:{name}", "passed": True, "witness": [value]})
    return out


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(doc, sort_keys=True, default=str))
        return
    print(f"command: {doc['command']}")
    print(f"input:   {doc['input']}")
    for c in doc["checks"]:
        tag = "PASS" if c["passed"] else "FAIL"
        witness = f"  witness: {c['witness']}" if c["witness"] and not c["passed"] else ""
        info = f"  [{', '.join(map(str, c['witness']))}]" if c["witness"] and c["passed"] else ""
        print(f"  {tag}  {c['name']}{witness}{info}")
    for key, value in doc.items():
        if key in ("command", "input", "checks", "passed", "exit_status", "elapsed_ms"):
            continue
        if isinstance(value, dict) and "count" in value:
            print(f"{key}: {_fmt_elided(value)}")
        else:
            print(f"{key}: {value}")
    print(f"result: {'PASS' if doc['passed'] else 'FAIL'} "
          f"(exit {doc['exit_status']}, {doc['elapsed_ms']} ms)")


def _status_of(v: Verdict) -> int:
    return EXIT_PASS if v.passed else EXIT_FAIL


# ---------------------------------------------------------------- commands


def cmd_verify_factorization(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    from .groups import is_factorization
    a = _cyclic_or_die(problem, args.a)
    b = _cyclic_or_die(problem, args.b)
    verdict = is_factorization(a, b)
    return _report("verify-factorization", problem.source,
                   _verdict_checks(verdict), _status_of(verdict), started)


def cmd_zero_set(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    a = _cyclic_or_die(problem, args.set)
    zs = zero_set(a)
    extra = {
        "modulus": zs.modulus,
        "vanishing_orders": sorted(zs.vanishing_orders),
        "zero_residues": _elide(list(zs.residues()), args.full),
    }
    checks = [{"name": "zero-set-computed", "passed": True, "witness": []}]
    return _report("zero-set", problem.source, checks, EXIT_PASS, started, extra)


def _gamma_candidate(problem: ProblemFile, gamma_name: str | None) -> SpectrumCandidate:
    if gamma_name is not None:
        s = problem.named_set(gamma_name)
        if isinstance(s, CyclicSet):
            return SpectrumCandidate.one_dimensional(s.modulus, s.elements)
        return SpectrumCandidate.from_vectors(s.moduli, s.points)
    if problem.gamma is None:
        raise _CommandError("no gamma in the file; pass --gamma NAME or add a gamma field")
    if problem.is_grid:
        assert problem.moduli is not None
        return SpectrumCandidate.from_vectors(problem.moduli, problem.gamma)
    assert problem.modulus is not None
    return SpectrumCandidate.one_dimensional(problem.modulus, problem.gamma)


def _grid_of(problem: ProblemFile, name: str) -> GridSet:
    s = problem.named_set(name)
    return GridSet.from_cyclic(s) if isinstance(s, CyclicSet) else s


def cmd_check_universal(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    tile = _grid_of(problem, args.tile)
    complement = _grid_of(problem, args.complement) if args.complement else None
    instance = TilingInstance(tile.moduli, tile, complement)
    candidate = _gamma_candidate(problem, args.gamma)
    verdict = check_universal_spectrum(instance, candidate)
    return _report("check-universal", problem.source,
                   _verdict_checks(verdict), _status_of(verdict), started,
                   {"tile": args.tile, "gamma": args.gamma or "gamma"})


def cmd_check_spectrum(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    base = _grid_of(problem, args.set)
    candidate = _gamma_candidate(problem, args.gamma)
    verdict = check_spectrum_pair(base, candidate)
    return _report("check-spectrum", problem.source,
                   _verdict_checks(verdict), _status_of(verdict), started,
                   {"set": args.set, "gamma": args.gamma or "gamma"})


def cmd_check_tijdeman(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    a = _cyclic_or_die(problem, args.a)
    b = _cyclic_or_die(problem, args.b)
    verdict = check_tijdeman_counterexample(a, b)
    extra = {
        "certified": verdict.passed,
        "gcd_a": set_gcd(a),
        "gcd_b": set_gcd(b),
    }
    return _report("check-tijdeman", problem.source,
                   _verdict_checks(verdict), _status_of(verdict), started, extra)


def cmd_enumerate_complements(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    a = _cyclic_or_die(problem, args.set)
    stream = enumerate_complements(a, limit=args.limit, node_budget=args.budget)
    found = [list(b.elements) for b in stream]
    status = EXIT_INCONCLUSIVE if stream.budget_exhausted else EXIT_PASS
    checks = [{
        "name": "enumeration",
        "passed": not stream.budget_exhausted,
        "witness": [stream.diagnostic] if stream.diagnostic else [],
    }] if stream.budget_exhausted else [
        {"name": "enumeration", "passed": True, "witness": []}
    ]
    extra = {
        "complements": _elide(found, args.full),
        "nodes_used": stream.nodes_used,
        "limit": args.limit,
    }
    if stream.diagnostic:
        extra["diagnostic"] = stream.diagnostic
    return _report("enumerate-complements", problem.source, checks, status,
                   started, extra)


def cmd_check_quasiperiodic(args) -> dict:
    started = time.perf_counter()
    problem = _load(args.file)
    a = _cyclic_or_die(problem, args.a)
    b = _cyclic_or_die(problem, args.b)
    extra: dict = {}
    if problem.witness is not None and not args.search:
        union = set()
        for blk in problem.witness.blocks:
            union.update(blk.elements)
        if union == set(b.elements):
            verdict = verify_quasiperiodic(a, b, problem.witness)
        elif union == set(a.elements):
            verdict = verify_quasiperiodic(b, a, problem.witness)
        else:
            raise _CommandError("witness partition matches neither named set")
        extra["mode"] = "verify"
        return _report("check-quasiperiodic", problem.source,
                       _verdict_checks(verdict), _status_of(verdict), started, extra)
    result = search_quasiperiodic(a, b, budget=args.budget)
    extra.update({"mode": "search", "search": result.to_dict()})
    if result.status == "found":
        status = EXIT_PASS
        checks = [{"name": "witness-found", "passed": True,
                   "witness": [f"side={result.partitioned_side}",
                               f"order={len(result.witness.subgroup)}"]}]
    elif result.status == "inconclusive":
        status = EXIT_INCONCLUSIVE
        checks = [{"name": "witness-found", "passed": False,
                   "witness": ["budget exhausted"]}]
    else:
        status = EXIT_FAIL
        checks = [{"name": "witness-found", "passed": False,
                   "witness": ["no witness exists for any subgroup"]}]
    return _report("check-quasiperiodic", problem.source, checks, status,
                   started, extra)


def cmd_reproduce(args) -> dict:
    """Re-verify the bundled modulus-900 results end to end."""
    started = time.perf_counter()
    if args.file:
        problem = _load(args.file)
        a = _cyclic_or_die(problem, "A")
        b = _cyclic_or_die(problem, "B")
        witness = problem.witness
        source = problem.source
    else:
        data = load_counterexample()
        a, b, witness = data.tile_a, data.tile_b, data.witness
        source = f"bundled:{BUNDLED_NAME}"
    m = a.modulus
    checks: list[dict] = []

    def add(name: str, verdict: Verdict | None, ok: bool | None = None,
            witness_vals: list | None = None):
        if verdict is not None:
            sub = _verdict_checks(verdict)
            checks.append({
                "name": name,
                "passed": verdict.passed,
                "witness": [] if verdict.passed else
                           [w for c in sub if not c["passed"] for w in (c["name"], *c["witness"])],
            })
        else:
            checks.append({"name": name, "passed": bool(ok),
                           "witness": witness_vals or []})

    # 1. the counterexample certificate
    add("counterexample-certified", check_tijdeman_counterexample(a, b))

    # 2. the quasiperiodic witness shipped with the data
    if witness is not None:
        add("quasiperiodic-witness", verify_quasiperiodic(a, b, witness))
    else:
        add("quasiperiodic-witness", None, ok=False, witness_vals=["no witness in file"])

    # 3. zero set of A against the independent divisibility scan
    zs = zero_set(a)
    expected = tuple(k for k in range(1, m) if bundled_zero_predicate(k))
    got = zs.residues()
    add("zero-set-characterization", None, ok=(got == expected),
        witness_vals=[] if got == expected else
        [next(iter(set(expected).symmetric_difference(got)))])

    # 4. one of the two sums vanishes at every nonzero residue
    ga, gb = GridSet.from_cyclic(a), GridSet.from_cyclic(b)
    add("complementary-zeros", verify_complementary_zeros(ga, gb))

    # 5. the zero sets partition the nonzero residues
    add("zero-complement-partition", verify_zero_complement(a, b))

    # 6. universal spectrum criterion with gamma = A
    inst_a = TilingInstance((m,), ga, gb)
    add("universal-spectrum-tile-a",
        check_universal_spectrum(inst_a, SpectrumCandidate.one_dimensional(m, a.elements)))

    # 7. universal spectrum criterion with gamma = B
    inst_b = TilingInstance((m,), gb, ga)
    add("universal-spectrum-tile-b",
        check_universal_spectrum(inst_b, SpectrumCandidate.one_dimensional(m, b.elements)))

    ok = all(c["passed"] for c in checks)
    return _report("reproduce", source, checks,
                   EXIT_PASS if ok else EXIT_FAIL, started)


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cycspec",
        description=(
            "Exact verification of cyclic-group factorizations, exponential-sum "
            "zero sets, and spectrum criteria. "
            f"Bundled dataset: {BUNDLED_NAME}. "
            "Exit codes: 0 pass, 1 verification failed, 2 input error, 3 inconclusive."
        ),
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--json", action="store_true", help="emit one JSON report object")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_command(name, help_text, with_file=True, full=False):
        p = sub.add_parser(name, help=help_text, parents=[shared])
        if with_file:
            p.add_argument("file", help="problem file path, or a bundled dataset name")
        if full:
            p.add_argument("--full", action="store_true",
                           help="list large outputs in full instead of eliding")
        return p

    p = add_command("verify-factorization", "check that two named sets factor Z/mZ")
    p.add_argument("--a", default="A", help="first set name (default A)")
    p.add_argument("--b", default="B", help="second set name (default B)")
    p.set_defaults(func=cmd_verify_factorization)

    p = add_command("zero-set", "vanishing orders and zero residues of a set", full=True)
    p.add_argument("set", help="name of the set")
    p.set_defaults(func=cmd_zero_set)

    p = add_command("check-universal", "universal-spectrum criterion")
    p.add_argument("--tile", default="A", help="tile set name (default A)")
    p.add_argument("--gamma", default=None,
                   help="set name to use as gamma (default: the file's gamma field)")
    p.add_argument("--complement", default=None,
                   help="optional complement set name (marks tiling existence verified)")
    p.set_defaults(func=cmd_check_universal)

    p = add_command("check-spectrum", "spectral-pair criterion")
    p.add_argument("--set", default="B", help="base set name (default B)")
    p.add_argument("--gamma", default=None,
                   help="set name to use as gamma (default: the file's gamma field)")
    p.set_defaults(func=cmd_check_spectrum)

    p = add_command("check-tijdeman",
                    "certify a counterexample to the shared-prime conjecture")
    p.add_argument("--a", default="A", help="first set name (default A)")
    p.add_argument("--b", default="B", help="second set name (default B)")
    p.set_defaults(func=cmd_check_tijdeman)

    p = add_command("enumerate-complements", "stream complements of a set", full=True)
    p.add_argument("--set", default="A", help="tile set name (default A)")
    p.add_argument("--limit", type=int, default=None, help="stop after N complements")
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.set_defaults(func=cmd_enumerate_complements)

    p = add_command("check-quasiperiodic",
                    "verify the file's witness, or search for one")
    p.add_argument("--a", default="A", help="first set name (default A)")
    p.add_argument("--b", default="B", help="second set name (default B)")
    p.add_argument("--budget", type=int, default=10**7, help="search node budget")
    p.add_argument("--search", action="store_true",
                   help="search even when the file carries a witness")
    p.set_defaults(func=cmd_check_quasiperiodic)

    p = add_command("reproduce",
                    "run the full bundled verification suite (seven checks)",
                    with_file=False)
    p.add_argument("--file", default=None,
                   help="run against another problem file instead of the bundled data")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except (ProblemFileError, _CommandError) as exc:
        doc = {
            "command": args.subcommand,
            "input": getattr(args, "file", None) or "bundled",
            "checks": [],
            "passed": False,
            "exit_status": EXIT_INPUT_ERROR,
            "elapsed_ms": 0.0,
            "error": str(exc),
        }
        if args.json:
            print(json.dumps(doc, sort_keys=True, default=str))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (NotAFactorizationError, ValueError) as exc:
        doc = {
            "command": args.subcommand,
            "input": getattr(args, "file", None) or "bundled",
            "checks": [],
            "passed": False,
            "exit_status": EXIT_FAIL,
            "elapsed_ms": 0.0,
            "error": str(exc),
        }
        if args.json:
            print(json.dumps(doc, sort_keys=True, default=str))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(doc, args.json)
    return doc["exit_status"]


if __name__ == "__main__":
    raise SystemExit(main())
