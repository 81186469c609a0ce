"""Exponential-time reference checks used to certify the pebble game.

Everything here works straight from the counting definition over point and
line subsets, encoded as bitmasks.  Nothing imports the game engine except for
the shared :class:`Verdict` container.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .engine import Status, Verdict, ViolationWitness
from .errors import InstanceTooLarge, NotSparseInput
from .geometry import Incidence, IncidenceGeometry, SparsityParams, Support, count_inequality

DEFAULT_VERTEX_BOUND = 16
DEFAULT_INCIDENCE_BOUND = 20
DEFAULT_GROUND_BOUND = 12


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class _Counter:
    """Induced incidence counts for point/line bitmask pairs."""

    def __init__(self, g: IncidenceGeometry):
        self.g = g
        self.n, self.m = len(g.points), len(g.lines)
        pi = {p: i for i, p in enumerate(g.points)}
        li = {q: j for j, q in enumerate(g.lines)}
        self.cells = [(pi[p], li[q]) for p, q in g.incidences]
        self.rows = [0] * self.n
        for i, j in self.cells:
            self.rows[i] |= 1 << j

    def induced(self, pmask: int, lmask: int) -> int:
        rows = self.rows
        return sum((rows[i] & lmask).bit_count() for i in _bits(pmask))

    def support(self, pmask: int, lmask: int) -> Support:
        g = self.g
        return g.support([g.points[i] for i in _bits(pmask)], [g.lines[j] for j in _bits(lmask)])

    def supports_by_size(self):
        """Nonempty (points, lines) masks, by total size then lexicographically (points before lines)."""
        n, total = self.n, self.n + self.m
        for size in range(2, total + 1):
            for combo in itertools.combinations(range(total), size):
                if combo[0] >= n or combo[-1] < n:
                    continue
                pmask = lmask = 0
                for v in combo:
                    if v < n:
                        pmask |= 1 << v
                    else:
                        lmask |= 1 << (v - n)
                yield pmask, lmask


def _slack(p: SparsityParams, npts: int, nlns: int, ninc: int) -> int:
    return p.k1 * npts + p.k2 * nlns - p.l - p.lam * ninc


def brute_force_verdict(
    g: IncidenceGeometry, p: SparsityParams, *, bound: int = DEFAULT_VERTEX_BOUND
) -> Verdict:
    """Sparsity and tightness by checking every point/line support."""
    if len(g.points) + len(g.lines) > bound:
        raise InstanceTooLarge(f"{len(g.points) + len(g.lines)} points and lines exceed oracle bound {bound}")
    c = _Counter(g)
    for pmask, lmask in c.supports_by_size():
        slack = _slack(p, pmask.bit_count(), lmask.bit_count(), c.induced(pmask, lmask))
        if slack < 0:
            witness = ViolationWitness(c.support(pmask, lmask), -slack)
            return Verdict(Status.NOT_SPARSE, None, p, witness, mode="oracle")
    remaining = p.k1 * len(g.points) + p.k2 * len(g.lines) - p.lam * len(g.incidences)
    status = Status.TIGHT if remaining == p.l else Status.SPARSE_NOT_TIGHT
    return Verdict(status, remaining, p, mode="oracle")


def is_sparse_set(g: IncidenceGeometry, incidences, p: SparsityParams, **kw) -> bool:
    return brute_force_verdict(g.with_incidences(incidences), p, **kw).is_sparse


def max_sparse_subset(
    g: IncidenceGeometry, p: SparsityParams, *, bound: int = DEFAULT_INCIDENCE_BOUND
) -> tuple[Incidence, ...]:
    """A maximum-cardinality sparse subset of the incidences, by exhaustive branch and bound.

    Sparsity is hereditary, so an include-branch is cut as soon as the partial
    set breaks a count; an exclude-branch is cut when it cannot beat the best
    set found so far.
    """
    if len(g.incidences) > bound:
        raise InstanceTooLarge(f"{len(g.incidences)} incidences exceed oracle bound {bound}")
    c = _Counter(g)
    n, m = c.n, c.m
    caps = []
    touching: list[list[int]] = [[] for _ in c.cells]
    for pmask in range(1, 1 << n):
        for lmask in range(1, 1 << m):
            idx = len(caps)
            caps.append(p.k1 * pmask.bit_count() + p.k2 * lmask.bit_count() - p.l)
            for t, (i, j) in enumerate(c.cells):
                if pmask >> i & 1 and lmask >> j & 1:
                    touching[t].append(idx)
    used = [0] * len(caps)
    total = len(c.cells)
    best: list[int] = []
    chosen: list[int] = []

    def search(t: int) -> None:
        nonlocal best
        if len(chosen) + (total - t) <= len(best):
            return
        if t == total:
            best = list(chosen)
            return
        rel = touching[t]
        if all(p.lam * (used[s] + 1) <= caps[s] for s in rel):
            for s in rel:
                used[s] += 1
            chosen.append(t)
            search(t + 1)
            chosen.pop()
            for s in rel:
                used[s] -= 1
        search(t + 1)

    search(0)
    return tuple(g.incidences[t] for t in best)


@dataclass(frozen=True)
class Block:
    support: Support


def _block_masks(g: IncidenceGeometry, p: SparsityParams, bound: int) -> tuple[_Counter, list[tuple[int, int]]]:
    if len(g.points) + len(g.lines) > bound:
        raise InstanceTooLarge(f"{len(g.points) + len(g.lines)} points and lines exceed oracle bound {bound}")
    c = _Counter(g)
    blocks = []
    for pmask, lmask in c.supports_by_size():
        slack = _slack(p, pmask.bit_count(), lmask.bit_count(), c.induced(pmask, lmask))
        if slack < 0:
            raise NotSparseInput("blocks are only defined for sparse geometries")
        if slack == 0:
            blocks.append((pmask, lmask))
    return c, blocks


def enumerate_blocks(g: IncidenceGeometry, p: SparsityParams, *, bound: int = DEFAULT_VERTEX_BOUND) -> list[Block]:
    """All supports whose induced incidences meet the count with equality."""
    c, masks = _block_masks(g, p, bound)
    return [Block(c.support(pm, lm)) for pm, lm in masks]


@dataclass
class BlockClosureReport:
    blocks: int
    pairs_checked: int
    counterexamples: list[tuple[Support, Support, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_block_closure(
    g: IncidenceGeometry, p: SparsityParams, *, bound: int = DEFAULT_VERTEX_BOUND
) -> BlockClosureReport:
    """Check that overlapping blocks have blocks as their union and intersection."""
    c, masks = _block_masks(g, p, bound)
    report = BlockClosureReport(len(masks), 0)
    for (p1, l1), (p2, l2) in itertools.combinations(masks, 2):
        if not (p1 & p2 and l1 & l2):
            continue
        report.pairs_checked += 1
        for name, pm, lm in (("union", p1 | p2, l1 | l2), ("intersection", p1 & p2, l1 & l2)):
            if _slack(p, pm.bit_count(), lm.bit_count(), c.induced(pm, lm)) != 0:
                report.counterexamples.append((c.support(p1, l1), c.support(p2, l2), name))
    return report


@dataclass
class MatroidReport:
    bases_count: int | None
    exchange_violations: list[dict] = field(default_factory=list)
    bases_empty: bool = False

    @property
    def exchange_holds(self) -> bool:
        return not self.exchange_violations

    @property
    def is_matroid(self) -> bool:
        return not self.bases_empty and self.exchange_holds

    def to_json_dict(self) -> dict:
        return {
            "bases_count": self.bases_count,
            "exchange_violations": self.exchange_violations,
            "bases_empty": self.bases_empty,
            "matroid": self.is_matroid,
        }


def _ground_geometry(n_points: int, n_lines: int) -> IncidenceGeometry:
    return IncidenceGeometry(
        [f"p{i}" for i in range(1, n_points + 1)], [f"l{j}" for j in range(1, n_lines + 1)], []
    )


def verify_matroid_exchange(
    n_points: int,
    n_lines: int,
    p: SparsityParams,
    *,
    pair: tuple[IncidenceGeometry, IncidenceGeometry] | None = None,
    bound: int = DEFAULT_GROUND_BOUND,
) -> MatroidReport:
    """Test the basis-exchange axiom for tight incidence sets on ``P x L``.

    Without ``pair`` every tight subset of the ground set is enumerated.  With
    ``pair`` only the two given tight sets are checked against each other.
    """
    if pair is not None:
        return check_exchange_pair(*pair, p)
    if n_points * n_lines > bound:
        raise InstanceTooLarge(f"ground set of {n_points * n_lines} incidences exceeds bound {bound}")
    base = _ground_geometry(n_points, n_lines)
    target, rem = divmod(p.k1 * n_points + p.k2 * n_lines - p.l, p.lam)
    cells = list(itertools.product(range(n_points), range(n_lines)))
    if rem or target < 0 or target > len(cells):
        return MatroidReport(0, bases_empty=True)

    def sparse(mask: int) -> bool:
        g = base.with_incidences(
            (base.points[cells[t][0]], base.lines[cells[t][1]]) for t in _bits(mask)
        )
        return brute_force_verdict(g, p).is_sparse

    bases = []
    for combo in itertools.combinations(range(len(cells)), target):
        mask = sum(1 << t for t in combo)
        if sparse(mask):
            bases.append(mask)
    report = MatroidReport(len(bases), bases_empty=not bases)
    basis_set = set(bases)
    full = (1 << len(cells)) - 1
    for b1 in bases:
        # exchangeable[b] = mask of c in b1 with b1 - c + b a basis
        exchangeable = {}
        for b in _bits(full & ~b1):
            ok = 0
            for cc in _bits(b1):
                if (b1 & ~(1 << cc)) | (1 << b) in basis_set:
                    ok |= 1 << cc
            exchangeable[b] = ok
        for b2 in bases:
            for b in _bits(b2 & ~b1):
                if not exchangeable[b] & ~b2:
                    report.exchange_violations.append(
                        {
                            "b1": _mask_names(base, cells, b1),
                            "b2": _mask_names(base, cells, b2),
                            "b": list(_cell_name(base, cells, b)),
                        }
                    )
    return report


def _cell_name(g, cells, t):
    i, j = cells[t]
    return g.points[i], g.lines[j]


def _mask_names(g, cells, mask):
    return [list(_cell_name(g, cells, t)) for t in _bits(mask)]


def check_exchange_pair(b1: IncidenceGeometry, b2: IncidenceGeometry, p: SparsityParams) -> MatroidReport:
    """Exchange axiom restricted to two tight sets on the same points and lines."""
    if set(b1.points) != set(b2.points) or set(b1.lines) != set(b2.lines):
        raise ValueError("both bases must live on the same points and lines")
    report = MatroidReport(None)
    for g in (b1, b2):
        if brute_force_verdict(g, p).status is not Status.TIGHT:
            raise NotSparseInput("pairwise exchange check needs two tight incidence sets")
    s1 = b1.incidence_set
    only1 = [i for i in b1.incidences if i not in b2.incidence_set]
    for b in b2.incidences:
        if b in s1:
            continue
        if not any(
            brute_force_verdict(b1.with_incidences([i for i in b1.incidences if i != c] + [b]), p).status
            is Status.TIGHT
            for c in only1
        ):
            report.exchange_violations.append({"b": list(b)})
    return report
