"""Complement enumeration and quasiperiodic-factorization search.

enumerate_complements finds every B containing 0 with A (+) B = Z/mZ by
exact-cover backtracking: residues must each be covered exactly once by
the translated tiles A + b.  The solver keeps, per uncovered residue, a
count of still-available covers; a residue with no cover prunes the
branch and a residue with a unique cover forces it, which is what makes
structured instances (like the bundled modulus-900 tile) tractable.
Branching covers a most-constrained residue first; emission order is
deterministic for fixed inputs, though not sorted-lexicographic.

The quasiperiodicity search assigns the elements of one factor to blocks
B_1..B_t so that the sums A + B_i are translates of A + B_1 along a
subgroup; the translate condition is equivalent to a per-residue coloring
constraint that propagates to a unique answer (up to rotation) on each
connected component, so the search is pure forced-move backtracking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .groups import Check, CyclicSet, Verdict, is_factorization
from .cyclotomic import zero_set


class MalformedWitnessError(ValueError):
    """Witness structure is broken (not a subgroup / not a partition)."""


class ComplementStream:
    """Iterator over the complements B (0 in B) of a tile in Z/mZ.

    Attributes ``nodes_used``, ``budget_exhausted``, ``yielded`` and
    ``diagnostic`` report progress; a stream is single-consumer.
    """

    def __init__(self, tile: CyclicSet, limit: int | None = None,
                 node_budget: int | None = None):
        self.tile = tile
        self.modulus = tile.modulus
        self.limit = limit
        self.node_budget = node_budget
        self.nodes_used = 0
        self.budget_exhausted = False
        self.yielded = 0
        self.diagnostic: str | None = None
        if tile.modulus % len(tile):
            self.diagnostic = (
                f"tile size {len(tile)} does not divide modulus {tile.modulus}; "
                "no complements exist"
            )
            self._gen: Iterator[CyclicSet] = iter(())
        else:
            self._gen = self._solutions()

    def __iter__(self):
        return self

    def __next__(self) -> CyclicSet:
        if self.limit is not None and self.yielded >= self.limit:
            raise StopIteration
        out = next(self._gen)
        self.yielded += 1
        return out

    def take(self, n: int) -> list[CyclicSet]:
        out = []
        for b in self:
            out.append(b)
            if len(out) >= n:
                break
        return out

    def drain(self) -> list[CyclicSet]:
        return list(self)

    def _solutions(self) -> Iterator[CyclicSet]:
        m = self.modulus
        # complements are invariant under translating the tile, and the
        # cover-availability bookkeeping below needs 0 in the tile
        base = self.tile.elements[0]
        tile = [x - base for x in self.tile.elements]
        n_tile = len(tile)
        size = m // n_tile
        covered = bytearray(m)
        avail = [n_tile] * m
        chosen: list[int] = []

        def undo(trail: list[int], placed: int):
            for x in trail:
                for a in tile:
                    avail[(x + a) % m] += 1
            for x in trail:
                covered[x] = 0
            del chosen[len(chosen) - placed:]

        def place_with_prop(b: int):
            """Cover A+b, chase forced covers; None on contradiction.

            Returns (trail, placed) for undo: trail holds newly covered
            residues, placed the number of elements appended to chosen.
            """
            trail: list[int] = []
            placed = 0
            pending = [b]
            while pending:
                cur = pending.pop()
                if covered[cur]:
                    if cur in chosen:
                        continue
                    undo(trail, placed)
                    return None
                shifted = [(a + cur) % m for a in tile]
                if any(covered[x] for x in shifted):
                    undo(trail, placed)
                    return None
                for x in shifted:
                    covered[x] = 1
                    trail.append(x)
                chosen.append(cur)
                placed += 1
                for x in shifted:
                    for a in tile:
                        g = (x + a) % m
                        avail[g] -= 1
                        if not covered[g]:
                            if avail[g] == 0:
                                undo(trail, placed)
                                return None
                            if avail[g] == 1:
                                cands = [(g - aa) % m for aa in tile]
                                forced = [c for c in cands if not covered[c]]
                                if len(forced) == 1 and forced[0] not in pending:
                                    pending.append(forced[0])
            return trail, placed

        def branch_candidates() -> list[int]:
            best_g, best_av = -1, m + 1
            for g in range(m):
                if not covered[g] and avail[g] < best_av:
                    best_g, best_av = g, avail[g]
                    if best_av <= 1:
                        break
            if best_g < 0:
                return []
            return sorted(
                b for b in ((best_g - a) % m for a in tile) if not covered[b]
            )

        root = place_with_prop(0)
        if root is None:
            return
        if len(chosen) == size:
            yield CyclicSet(m, tuple(sorted(chosen)))
            return

        # frames: [candidate list, next index, placement to undo on re-entry]
        stack: list[list] = [[branch_candidates(), 0, None]]
        while stack:
            frame = stack[-1]
            if frame[2] is not None:
                undo(*frame[2])
                frame[2] = None
            cands, idx = frame[0], frame[1]
            if idx >= len(cands):
                stack.pop()
                continue
            frame[1] = idx + 1
            self.nodes_used += 1
            if self.node_budget is not None and self.nodes_used > self.node_budget:
                self.budget_exhausted = True
                self.diagnostic = f"node budget {self.node_budget} exhausted"
                return
            placement = place_with_prop(cands[idx])
            if placement is None:
                continue
            if len(chosen) == size:
                yield CyclicSet(m, tuple(sorted(chosen)))
                undo(*placement)
                continue
            frame[2] = placement
            stack.append([branch_candidates(), 0, None])


def enumerate_complements(tile: CyclicSet, limit: int | None = None,
                          node_budget: int | None = None) -> ComplementStream:
    """Stream the complements of a tile, optionally capped.

    A tile whose size does not divide the modulus yields an empty stream
    whose ``diagnostic`` says why.
    """
    return ComplementStream(tile, limit=limit, node_budget=node_budget)


@dataclass(frozen=True)
class QuasiperiodicWitness:
    """A subgroup H = {h_1=0 < h_2 < ...} and blocks paired positionally.

    The claim it witnesses: the sums (other factor) + block_i all equal
    the first block's sums translated by h_i.
    """

    subgroup: CyclicSet
    blocks: tuple[CyclicSet, ...]

    def __post_init__(self):
        h = self.subgroup
        m = h.modulus
        if 0 not in h.elements:
            raise MalformedWitnessError("subgroup must contain 0")
        members = set(h.elements)
        for x in h.elements:
            for y in h.elements:
                if (x + y) % m not in members:
                    raise MalformedWitnessError(
                        f"not closed under addition: {x} + {y} escapes"
                    )
        if len(self.blocks) != len(h.elements):
            raise MalformedWitnessError(
                f"{len(self.blocks)} blocks for a subgroup of order {len(h.elements)}"
            )
        seen: set[int] = set()
        for blk in self.blocks:
            if blk.modulus != m:
                raise MalformedWitnessError("block modulus differs from subgroup modulus")
            overlap = seen.intersection(blk.elements)
            if overlap:
                raise MalformedWitnessError(f"blocks overlap at {min(overlap)}")
            seen.update(blk.elements)


def verify_quasiperiodic(a: CyclicSet, b: CyclicSet, w: QuasiperiodicWitness) -> Verdict:
    """Check the block-translate conditions of a quasiperiodic witness.

    Requires a (+) b = Z/mZ up front and a witness whose blocks
    partition b exactly; those are structural errors, distinct from the
    translate conditions, which are reported per block in the verdict.
    """
    if not is_factorization(a, b).passed:
        raise ValueError("inputs do not factor the group; nothing to verify")
    m = a.modulus
    if w.subgroup.modulus != m:
        raise MalformedWitnessError("witness modulus differs from the factorization's")
    union: set[int] = set()
    for blk in w.blocks:
        union.update(blk.elements)
    if union != set(b.elements):
        missing = set(b.elements) - union
        extra = union - set(b.elements)
        raise MalformedWitnessError(
            f"blocks do not partition the factor: missing {sorted(missing)[:4]}, "
            f"extra {sorted(extra)[:4]}"
        )
    first = w.blocks[0]
    base_sums = frozenset((x + y) % m for x in a.elements for y in first.elements)
    checks = []
    for i, (h, blk) in enumerate(zip(w.subgroup.elements, w.blocks), start=1):
        sums = frozenset((x + y) % m for x in a.elements for y in blk.elements)
        want = frozenset((s + h) % m for s in base_sums)
        if sums == want:
            checks.append(Check(f"block-{i}-translate", True))
        else:
            bad = min(sums.symmetric_difference(want))
            checks.append(Check(f"block-{i}-translate", False, (bad,)))
    return Verdict(tuple(checks))


@dataclass(frozen=True)
class QuasiperiodicSearch:
    """Result of a witness search: found / none / inconclusive."""

    status: str
    witness: QuasiperiodicWitness | None = None
    partitioned_side: str | None = None
    nodes_used: int = 0

    def to_dict(self) -> dict:
        out = {"status": self.status, "partitioned_side": self.partitioned_side,
               "nodes_used": self.nodes_used}
        if self.witness is not None:
            out["subgroup"] = list(self.witness.subgroup.elements)
            out["partition"] = [list(b.elements) for b in self.witness.blocks]
        return out


def _color_side(m: int, part: CyclicSet, other: CyclicSet, budget: int,
                nodes_start: int) -> tuple[QuasiperiodicWitness | None, int, bool]:
    """Try every subgroup order for one side; propagation does the rest.

    Returns (witness or None, nodes used so far, budget_hit).
    """
    nodes = nodes_start
    s_elems = part.elements
    owner = [0] * m
    for s in s_elems:
        for o in other.elements:
            owner[(o + s) % m] = s
    if len(s_elems) == 1:
        w = QuasiperiodicWitness(CyclicSet(m, (0,)), (part,))
        return w, nodes, False

    for t in range(2, m + 1):
        if m % t or len(s_elems) % t:
            continue
        h = m // t
        color: dict[int, int] = {}
        consistent = True
        for anchor in s_elems:
            if not consistent:
                break
            if anchor in color:
                continue
            color[anchor] = 0
            frontier = [anchor]
            while frontier and consistent:
                s = frontier.pop()
                nodes += 1
                if nodes > budget:
                    return None, nodes, True
                c = color[s]
                for o in other.elements:
                    y = (o + s) % m
                    for nb, dc in ((owner[(y + h) % m], 1), (owner[(y - h) % m], -1)):
                        cc = (c + dc) % t
                        got = color.get(nb)
                        if got is None:
                            color[nb] = cc
                            frontier.append(nb)
                        elif got != cc:
                            consistent = False
                            break
                    if not consistent:
                        break
        if not consistent:
            continue
        shift = color[s_elems[0]]
        groups: list[list[int]] = [[] for _ in range(t)]
        for s in s_elems:
            groups[(color[s] - shift) % t].append(s)
        witness = QuasiperiodicWitness(
            CyclicSet(m, tuple(range(0, m, h))),
            tuple(CyclicSet(m, tuple(sorted(g))) for g in groups),
        )
        return witness, nodes, False
    return None, nodes, False


def search_quasiperiodic(a: CyclicSet, b: CyclicSet, budget: int = 10**7) -> QuasiperiodicSearch:
    """Look for a quasiperiodic witness, partitioning b first, then a.

    Deterministic for fixed inputs and budget (nodes are propagation
    steps).  "none" means every subgroup on both sides was exhausted;
    budget exhaustion is reported as "inconclusive" instead.
    """
    if not is_factorization(a, b).passed:
        raise ValueError("inputs do not factor the group; nothing to search")
    m = a.modulus
    nodes = 0
    for side, part, other in (("B", b, a), ("A", a, b)):
        witness, nodes, hit = _color_side(m, part, other, budget, nodes)
        if hit:
            return QuasiperiodicSearch("inconclusive", nodes_used=nodes)
        if witness is not None:
            return QuasiperiodicSearch("found", witness, side, nodes)
    return QuasiperiodicSearch("none", nodes_used=nodes)


@dataclass(frozen=True)
class NecessityEntry:
    status: str  # "witness-found" | "no-witness" | "inconclusive"
    witness: CyclicSet | None = None


@dataclass(frozen=True)
class NecessityReport:
    """Per-zero-residue evidence that some complement keeps it nonzero."""

    modulus: int
    entries: tuple[tuple[int, NecessityEntry], ...]
    complements_tried: int
    nodes_used: int
    stream_exhausted: bool

    @property
    def all_witnessed(self) -> bool:
        return all(e.status == "witness-found" for _, e in self.entries)

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "complements_tried": self.complements_tried,
            "nodes_used": self.nodes_used,
            "stream_exhausted": self.stream_exhausted,
            "entries": {
                str(k): {
                    "status": e.status,
                    "witness": list(e.witness.elements) if e.witness else None,
                }
                for k, e in self.entries
            },
        }


def necessity_witnesses(tile: CyclicSet, budget: int = 10**6) -> NecessityReport:
    """For each zero of the tile's sum, hunt a complement nonzero there.

    Walks the complement stream under a node budget; every zero residue
    ends as witness-found (with the complement), no-witness (stream
    exhausted), or inconclusive (budget ran out first).
    """
    zs = zero_set(tile)
    unresolved = set(zs.residues())
    found: dict[int, CyclicSet] = {}
    stream = enumerate_complements(tile, node_budget=budget)
    tried = 0
    drained = True
    for comp in stream:
        tried += 1
        zb = zero_set(comp)
        for k in sorted(unresolved):
            if not zb.contains(k):
                found[k] = comp
                unresolved.discard(k)
        if not unresolved:
            drained = False  # stopped early; stream state unknown
            break
    if drained:
        drained = not stream.budget_exhausted
    leftover_status = "inconclusive" if stream.budget_exhausted else "no-witness"
    entries = []
    for k in zs.residues():
        if k in found:
            entries.append((k, NecessityEntry("witness-found", found[k])))
        else:
            entries.append((k, NecessityEntry(leftover_status)))
    return NecessityReport(
        tile.modulus, tuple(entries), tried, stream.nodes_used,
        stream_exhausted=drained,
    )
