"""The pebble game on the lambda-fold incidence multigraph.

A :class:`GameState` holds the accepted, oriented edge set ``D`` together with
the pebble count of every point and line.  Two moves change it: accepting a
new edge (which spends a pebble at its tail) and moving a pebble back along a
directed path (which reverses the path).  :func:`run_recognition` plays the
game to decide sparsity and tightness; :func:`run_extraction` plays the
greedy variant that skips rejected incidences (``lambda == 1`` only).
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    AlreadyAccepted,
    EmptyTargetPebbles,
    InsufficientPebbles,
    InvariantViolation,
    LambdaNotOne,
    MoveError,
    NotAFailureState,
    PathNotInD,
    SourceHasNoPebble,
)
from .geometry import (
    LINE,
    POINT,
    Edge,
    Incidence,
    IncidenceGeometry,
    PebbleMultigraph,
    SparsityParams,
    Support,
    build_multigraph,
    count_inequality,
)

# exhaustive support enumeration for debug checks up to this many points + lines
EXHAUSTIVE_SUPPORT_LIMIT = 6


class Status(enum.Enum):
    TIGHT = "tight"
    SPARSE_NOT_TIGHT = "sparse"
    NOT_SPARSE = "not-sparse"


@dataclass(frozen=True)
class ViolationWitness:
    """A support whose induced incidences break the count, with the size of the excess."""

    support: Support
    deficit: int

    def to_json_dict(self) -> dict:
        return {**self.support.to_json_dict(), "deficit": self.deficit}


@dataclass(frozen=True)
class SupportStats:
    support: Support
    peb_sum: int
    span_count: int
    out_count: int


@dataclass
class Verdict:
    status: Status
    remaining_pebbles: int | None
    params: SparsityParams
    witness: ViolationWitness | None = None
    accepted: tuple[Incidence, ...] | None = None
    skipped: tuple[Incidence, ...] | None = None
    mode: str = "check"
    state: GameState | None = field(default=None, compare=False, repr=False)

    @property
    def is_sparse(self) -> bool:
        return self.status is not Status.NOT_SPARSE

    def to_json_dict(self) -> dict:
        out = {
            "status": self.status.value,
            "remaining_pebbles": self.remaining_pebbles,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "accepted": None,
        }
        if self.mode == "extract":
            out["accepted"] = [list(i) for i in self.accepted]
            out["skipped"] = [list(i) for i in self.skipped]
        return out


@dataclass(frozen=True)
class InvariantReport:
    ok: bool
    violation: str | None = None
    supports_checked: int = 0


class GameState:
    """Mutable pebble game state over a fixed :class:`PebbleMultigraph`.

    ``out[v]`` maps every accepted edge whose tail is ``v`` to its head, in the
    order the edges acquired that orientation; depth-first searches follow
    this order.
    """

    def __init__(
        self,
        multigraph: PebbleMultigraph,
        params: SparsityParams,
        *,
        debug_invariants: bool = False,
        supports: Sequence[Support] | None = None,
    ):
        self.multigraph = multigraph
        self.params = params
        self.pebbles: dict[str, int] = {v: params.k(multigraph.kind[v]) for v in multigraph.vertices}
        self.tail: dict[Edge, str] = {}
        self.out: dict[str, dict[Edge, str]] = {v: {} for v in multigraph.vertices}
        self.processed: set[Edge] = set()
        self._edge_set = frozenset(multigraph.edges)
        self.debug_invariants = debug_invariants
        self.supports: Sequence[Support] = supports if supports is not None else ()
        self.moves = 0

    @property
    def geometry(self) -> IncidenceGeometry:
        return self.multigraph.geometry

    @property
    def accepted_edges(self) -> list[Edge]:
        return list(self.tail)

    def total_pebbles(self) -> int:
        return sum(self.pebbles.values())

    def head(self, e: Edge) -> str:
        p, q, _ = e
        return q if self.tail[e] == p else p

    def accept_edge(self, e: Edge, source: str) -> GameState:
        """Add ``e`` to ``D`` oriented away from ``source``, spending one pebble there."""
        if e not in self._edge_set:
            raise MoveError(f"{e} is not an edge of the multigraph")
        if e in self.tail:
            raise AlreadyAccepted(f"{e} is already accepted")
        p, q, _ = e
        if self.pebbles[p] + self.pebbles[q] <= self.params.l:
            raise InsufficientPebbles(
                f"endpoints of {e} hold {self.pebbles[p] + self.pebbles[q]} pebbles, need more than {self.params.l}"
            )
        if source not in (p, q):
            raise MoveError(f"{source!r} is not an endpoint of {e}")
        if self.pebbles[source] < 1:
            raise SourceHasNoPebble(f"{source!r} holds no pebble")
        target = q if source == p else p
        self.pebbles[source] -= 1
        self.tail[e] = source
        self.out[source][e] = target
        self.processed.add(e)
        self._after_move()
        return self

    def find_pebble_path(self, start: str, excluded: Iterable[str] = ()) -> list[Edge] | None:
        """Depth-first search along ``D`` for a vertex outside ``excluded`` holding a pebble.

        Returns the edges of the oriented path from ``start`` (empty when
        ``start`` itself qualifies), or ``None``.
        """
        excluded = frozenset(excluded)
        pebbles = self.pebbles
        if pebbles[start] > 0 and start not in excluded:
            return []
        visited = {start}
        stack = [iter(self.out[start].items())]
        path: list[Edge] = []
        while stack:
            for e, w in stack[-1]:
                if w in visited:
                    continue
                visited.add(w)
                path.append(e)
                if pebbles[w] > 0 and w not in excluded:
                    return path
                stack.append(iter(self.out[w].items()))
                break
            else:
                stack.pop()
                if stack:
                    path.pop()
        return None

    def move_pebble(self, path: Sequence[Edge]) -> GameState:
        """Bring a pebble from the end of ``path`` to its start, reversing every edge on it."""
        if not path:
            return self
        for e in path:
            if e not in self.tail:
                raise PathNotInD(f"{e} is not an accepted edge")
        start = self.tail[path[0]]
        cur = start
        for e in path:
            if self.tail[e] != cur:
                raise PathNotInD(f"path is not oriented through {cur!r} at edge {e}")
            cur = self.head(e)
        end = cur
        if self.pebbles[end] < 1:
            raise EmptyTargetPebbles(f"path end {end!r} holds no pebble")
        for e in path:
            src = self.tail[e]
            dst = self.out[src].pop(e)
            self.tail[e] = dst
            self.out[dst][e] = src
        self.pebbles[start] += 1
        self.pebbles[end] -= 1
        self._after_move()
        return self

    def reach(self, seeds: Iterable[str]) -> set[str]:
        """Vertices reachable from any seed by an oriented path in ``D`` (seeds included)."""
        seen = set(seeds)
        todo = list(seen)
        while todo:
            v = todo.pop()
            for w in self.out[v].values():
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    def stats(self, support: Support) -> SupportStats:
        vs = set(support.points) | set(support.lines)
        peb = span = out = 0
        for v in vs:
            peb += self.pebbles[v]
            for w in self.out[v].values():
                if w in vs:
                    span += 1
                else:
                    out += 1
        return SupportStats(support, peb, span, out)

    def _after_move(self) -> None:
        self.moves += 1
        if self.debug_invariants:
            report = check_invariants(self, self.supports)
            if not report.ok:
                raise InvariantViolation(f"after move {self.moves}: {report.violation}")


def init_state(
    mg: PebbleMultigraph,
    p: SparsityParams,
    *,
    debug_invariants: bool = False,
    supports: Sequence[Support] | None = None,
) -> GameState:
    return GameState(mg, p, debug_invariants=debug_invariants, supports=supports)


def check_invariants(s: GameState, sampled_supports: Iterable[Support] = ()) -> InvariantReport:
    """Check the four game invariants; the first violation found is reported."""
    p = s.params
    for v in s.multigraph.vertices:
        k = p.k(s.multigraph.kind[v])
        if s.pebbles[v] < 0:
            return InvariantReport(False, f"peb({v}) = {s.pebbles[v]} < 0")
        if s.pebbles[v] + len(s.out[v]) != k:
            return InvariantReport(False, f"peb({v}) + out({v}) = {s.pebbles[v] + len(s.out[v])} != {k}")
    n = 0
    for sup in sampled_supports:
        n += 1
        st = s.stats(sup)
        capacity = p.k1 * len(sup.points) + p.k2 * len(sup.lines)
        if st.peb_sum + st.span_count + st.out_count != capacity:
            return InvariantReport(
                False, f"peb+span+out = {st.peb_sum + st.span_count + st.out_count} != {capacity} on {sup}", n
            )
        if sup.points and sup.lines:
            if st.peb_sum + st.out_count < p.l:
                return InvariantReport(False, f"peb+out = {st.peb_sum + st.out_count} < l on {sup}", n)
            if st.span_count > capacity - p.l:
                return InvariantReport(False, f"span = {st.span_count} > {capacity - p.l} on {sup}", n)
    return InvariantReport(True, None, n)


def default_supports(g: IncidenceGeometry, rng: random.Random | None = None, samples: int = 64) -> list[Support]:
    """Every (A, B) pair for small geometries; otherwise singletons, the full support and a random sample."""
    if len(g.points) + len(g.lines) <= EXHAUSTIVE_SUPPORT_LIMIT:
        out = []
        for a in range(len(g.points) + 1):
            for pts in itertools.combinations(g.points, a):
                for b in range(len(g.lines) + 1):
                    for lns in itertools.combinations(g.lines, b):
                        if pts or lns:
                            out.append(g.support(pts, lns))
        return out
    rng = rng or random.Random(0)
    out = [g.support([v], []) for v in g.points] + [g.support([], [v]) for v in g.lines]
    out.append(g.full_support())
    for _ in range(samples):
        pts = [v for v in g.points if rng.random() < 0.5]
        lns = [v for v in g.lines if rng.random() < 0.5]
        if g.points and not pts:
            pts = [rng.choice(g.points)]
        if g.lines and not lns:
            lns = [rng.choice(g.lines)]
        out.append(g.support(pts, lns))
    return out


def extract_violation_witness(s: GameState, u: str, v: str) -> ViolationWitness:
    """Turn a failed acceptance of incidence ``(u, v)`` into a violating support.

    The support is ``Reach(u) | Reach(v)``; it has no outgoing edges and at
    most ``l`` pebbles, so its accepted edges plus the pending copy exceed the
    count.
    """
    g = s.geometry
    if (u, v) not in g.incidence_set:
        raise NotAFailureState(f"({u!r}, {v!r}) is not an incidence")
    if all(e in s.tail for e in s.multigraph.copies((u, v))):
        raise NotAFailureState(f"every copy of ({u!r}, {v!r}) is already accepted")
    region = s.reach((u, v))
    pebs = sum(s.pebbles[x] for x in region)
    if pebs > s.params.l:
        raise NotAFailureState(f"Reach({u}) | Reach({v}) still holds {pebs} > l pebbles")
    support = g.support([x for x in region if g.kind[x] == POINT], [x for x in region if g.kind[x] == LINE])
    deficit = -count_inequality(support, s.params)
    if deficit < 1:
        raise InvariantViolation(f"reach region {support} does not violate the count (deficit {deficit})")
    return ViolationWitness(support, deficit)


def _gather_and_accept(s: GameState, e: Edge) -> bool:
    """Collect more than ``l`` pebbles on the endpoints of ``e`` and accept it.

    Pebbles are fetched towards the point first, then the line, never taking
    one from the other endpoint.  Returns ``False`` when no pebble can be
    reached.
    """
    p, q, _ = e
    excluded = frozenset((p, q))
    limit = s.params.l
    pebbles = s.pebbles
    while pebbles[p] + pebbles[q] <= limit:
        path = s.find_pebble_path(p, excluded)
        if path is None:
            path = s.find_pebble_path(q, excluded)
        if path is None:
            return False
        s.move_pebble(path)
    s.accept_edge(e, p if pebbles[p] > 0 else q)
    return True


def _final_status(s: GameState) -> Status:
    return Status.TIGHT if s.total_pebbles() == s.params.l else Status.SPARSE_NOT_TIGHT


def run_recognition(
    g: IncidenceGeometry,
    p: SparsityParams,
    *,
    debug_invariants: bool = False,
    supports: Sequence[Support] | None = None,
) -> Verdict:
    """Decide whether ``g`` is sparse and whether it is tight."""
    mg = build_multigraph(g, p)
    s = GameState(mg, p, debug_invariants=debug_invariants, supports=supports)
    accepted = []
    for inc in g.incidences:
        for e in mg.copies(inc):
            if not _gather_and_accept(s, e):
                witness = extract_violation_witness(s, *inc)
                return Verdict(Status.NOT_SPARSE, s.total_pebbles(), p, witness, tuple(accepted), state=s)
        accepted.append(inc)
    return Verdict(_final_status(s), s.total_pebbles(), p, None, tuple(accepted), state=s)


def run_extraction(
    g: IncidenceGeometry,
    p: SparsityParams,
    *,
    debug_invariants: bool = False,
    supports: Sequence[Support] | None = None,
) -> Verdict:
    """Greedily collect a maximum sparse set of incidences (``lambda`` must be 1)."""
    if p.lam != 1:
        raise LambdaNotOne(f"extraction needs lambda = 1, got {p.lam}")
    mg = build_multigraph(g, p)
    s = GameState(mg, p, debug_invariants=debug_invariants, supports=supports)
    accepted, skipped = [], []
    for inc in g.incidences:
        (e,) = mg.copies(inc)
        if _gather_and_accept(s, e):
            accepted.append(inc)
        else:
            s.processed.add(e)
            skipped.append(inc)
    return Verdict(_final_status(s), s.total_pebbles(), p, None, tuple(accepted), tuple(skipped), "extract", state=s)
