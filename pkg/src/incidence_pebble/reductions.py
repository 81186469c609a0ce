"""Hypergraphs as incidence geometries, and generators of test geometries."""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .engine import Status, run_recognition
from .errors import (
    InfeasibleSize,
    LambdaNotOne,
    NoFeasibleLambda,
    ParameterConditionViolated,
    ParseError,
    PostCheckFailed,
)
from .geometry import IncidenceGeometry, SparsityParams, validate_and_normalize_params


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, ...], ...]

    def __init__(self, vertices, edges):
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in edges))
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ParseError("duplicate vertex name")
        for e in self.edges:
            if not e:
                raise ParseError("hyperedges must be nonempty")
            if len(set(e)) != len(e):
                raise ParseError(f"hyperedge {list(e)} repeats a vertex")
            missing = [v for v in e if v not in vs]
            if missing:
                raise ParseError(f"hyperedge {list(e)} names unknown vertices {missing}")

    @property
    def uniformity(self) -> int | None:
        """Common edge size, or ``None`` for mixed sizes or no edges."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def to_json_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


def load_hypergraph(document: str | bytes) -> Hypergraph:
    try:
        data = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list) or not isinstance(data.get("edges"), list):
        raise ParseError('hypergraph document needs "vertices" and "edges" arrays')
    if not all(isinstance(v, str) and v for v in data["vertices"]):
        raise ParseError("vertex names must be nonempty strings")
    if not all(isinstance(e, list) for e in data["edges"]):
        raise ParseError("every edge must be an array of vertex names")
    return Hypergraph(data["vertices"], data["edges"])


def edge_names(h: Hypergraph) -> list[str]:
    """Line names for the hyperedges; ``e1, e2, ...`` unless those clash with vertex names."""
    prefix = "e"
    taken = set(h.vertices)
    while any(f"{prefix}{i}" in taken for i in range(1, len(h.edges) + 1)):
        prefix += "_"
    return [f"{prefix}{i}" for i in range(1, len(h.edges) + 1)]


def hypergraph_to_geometry(h: Hypergraph) -> IncidenceGeometry:
    """Vertices become points, hyperedges become lines, membership becomes incidence."""
    names = edge_names(h)
    incidences = [(v, name) for name, e in zip(names, h.edges) for v in e]
    return IncidenceGeometry(h.vertices, names, incidences)


def derive_params(k: int, l: int, r: int, lam: int | None = None) -> SparsityParams:
    """Parameters ``(lam, k, lam*r - 1, l)`` under which incidence sparsity matches (k, l) hypergraph sparsity.

    Without ``lam`` the smallest value satisfying ``k1 + k2 - lam >= l`` is used.
    """
    if r < 1 or k < 1:
        raise ValueError(f"need r >= 1 and k >= 1, got r={r}, k={k}")
    if lam is None:
        # k + lam*(r-1) - 1 >= l
        need = l - k + 1
        if need <= 0:
            lam = 1
        elif r == 1:
            raise NoFeasibleLambda(f"r = 1 needs k - 1 >= l, got k={k}, l={l}")
        else:
            lam = max(1, -(-need // (r - 1)))
    return validate_and_normalize_params(lam, k, lam * r - 1, l)


def hypergraph_sparsity(h: Hypergraph, k: int, l: int) -> Status:
    """Direct (k, l) count: every vertex set spanning an edge spans at most ``k|V'| - l`` edges."""
    index = {v: i for i, v in enumerate(h.vertices)}
    edge_masks = [sum(1 << index[v] for v in e) for e in h.edges]
    for vmask in range(1, 1 << len(h.vertices)):
        spanned = sum(1 for em in edge_masks if em & vmask == em)
        if spanned and spanned > k * vmask.bit_count() - l:
            return Status.NOT_SPARSE
    return Status.TIGHT if len(h.edges) == k * len(h.vertices) - l else Status.SPARSE_NOT_TIGHT


def random_geometry(n: int, m: int, density: float, seed: int) -> IncidenceGeometry:
    """``n`` points, ``m`` lines, each incidence present independently with probability ``density``."""
    if not 0.0 <= density <= 1.0:
        raise ValueError(f"density must lie in [0, 1], got {density}")
    rng = random.Random(seed)
    points = [f"p{i}" for i in range(1, n + 1)]
    lines = [f"l{j}" for j in range(1, m + 1)]
    incidences = [(p, q) for p in points for q in lines if rng.random() < density]
    return IncidenceGeometry(points, lines, incidences)


def random_hypergraph(n: int, n_edges: int, r: int, seed: int) -> Hypergraph:
    """``n_edges`` distinct ``r``-subsets of ``n`` vertices, chosen uniformly."""
    rng = random.Random(seed)
    vertices = [f"v{i}" for i in range(1, n + 1)]
    pool = list(itertools.combinations(vertices, r))
    return Hypergraph(vertices, rng.sample(pool, min(n_edges, len(pool))))


def _f(p: SparsityParams, a: int, b: int) -> int:
    return a * b - p.k1 * a - p.k2 * b + p.l


def _seed_size(p: SparsityParams, n: int, m: int) -> tuple[int, int]:
    """Smallest (a0, b0) in the allowed box with f(a0, b0) >= 0 and f <= 0 at every smaller box point."""
    a_min, b_min = max(p.k2, 1), max(p.k1, 1)
    for total in range(a_min + b_min, n + m + 1):
        for a in range(a_min, n + 1):
            b = total - a
            if b < b_min or b > m or _f(p, a, b) < 0:
                continue
            if all(
                _f(p, x, y) <= 0
                for x in range(a_min, a + 1)
                for y in range(b_min, b + 1)
                if (x, y) != (a, b)
            ):
                return a, b
    raise InfeasibleSize(f"no seed size found for {p} within {n} points and {m} lines")


def construct_tight_geometry(
    p: SparsityParams, n: int, m: int, *, check_steps: bool = False
) -> IncidenceGeometry:
    """A (1, k1, k2, l)-tight geometry with ``n`` points and ``m`` lines.

    A complete bipartite seed on ``a0 x b0`` minus its surplus incidences is
    grown one point (joined to the first ``k1`` lines) or one line (joined to
    the first ``k2`` points) at a time.
    """
    if p.lam != 1:
        raise LambdaNotOne(f"tight construction needs lambda = 1, got {p.lam}")
    if p.l > p.k1 + p.k2 - 1:
        raise ParameterConditionViolated(f"need l <= k1 + k2 - 1 for {p}")
    if n < p.k2 or m < p.k1 or n < 1 or m < 1 or _f(p, n, m) < 0:
        raise InfeasibleSize(f"{n} points and {m} lines admit no tight geometry for {p}")
    a0, b0 = _seed_size(p, n, m)
    if p.l > 0 and ((n > a0 and p.k2 == 0) or (m > b0 and p.k1 == 0)):
        raise InfeasibleSize(
            f"growing past {a0} points and {b0} lines cannot stay tight when k1 or k2 is 0 and l > 0 ({p})"
        )
    points = [f"p{i}" for i in range(1, n + 1)]
    lines = [f"l{j}" for j in range(1, m + 1)]
    complete = [(pt, ln) for pt in points[:a0] for ln in lines[:b0]]
    surplus = _f(p, a0, b0)
    incidences = complete[: len(complete) - surplus]
    steps = [IncidenceGeometry(points[:a0], lines[:b0], incidences)]
    for i in range(a0, n):
        incidences += [(points[i], ln) for ln in lines[: p.k1]]
        steps.append(IncidenceGeometry(points[: i + 1], lines[:b0], incidences))
    for j in range(b0, m):
        incidences += [(pt, lines[j]) for pt in points[: p.k2]]
        steps.append(IncidenceGeometry(points, lines[: j + 1], incidences))
    result = IncidenceGeometry(points, lines, incidences)
    for g in steps if check_steps else [result]:
        if run_recognition(g, p).status is not Status.TIGHT:
            raise PostCheckFailed(f"constructed geometry with {len(g.points)} points, {len(g.lines)} lines is not tight")
    return result
