"""Incidence geometries, sparsity parameters and the lambda-fold incidence multigraph."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DanglingReference,
    DuplicateIncidence,
    NonPositiveLambda,
    ParameterConditionViolated,
    ParameterError,
    ParseError,
)

Incidence = tuple[str, str]
Edge = tuple[str, str, int]

POINT = 1
LINE = 2


@dataclass(frozen=True)
class SparsityParams:
    """A validated, gcd-normalized (lambda, k1, k2, l) quadruple."""

    lam: int
    k1: int
    k2: int
    l: int
    raw: tuple[int, int, int, int] | None = field(default=None, compare=False, repr=False)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.lam, self.k1, self.k2, self.l)

    def k(self, kind: int) -> int:
        return self.k1 if kind == POINT else self.k2

    @property
    def was_rescaled(self) -> bool:
        return self.raw is not None and self.raw != self.as_tuple()

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.as_tuple())


def validate_and_normalize_params(lam: int, k1: int, k2: int, l: int) -> SparsityParams:
    """Check ``k1 + k2 - lam >= l`` and divide the tuple by its gcd."""
    raw = (lam, k1, k2, l)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in raw):
        raise ParameterError(f"parameters must be integers, got {raw}")
    if lam < 1:
        raise NonPositiveLambda(f"lambda must be >= 1, got {lam}")
    if min(k1, k2, l) < 0:
        raise ParameterError(f"k1, k2 and l must be nonnegative, got {raw}")
    g = math.gcd(*raw)
    lam, k1, k2, l = (x // g for x in raw)
    if k1 + k2 - lam < l:
        raise ParameterConditionViolated(
            f"k1 + k2 - lambda = {k1 + k2 - lam} < l = {l} for parameters {lam},{k1},{k2},{l}"
        )
    return SparsityParams(lam, k1, k2, l, raw=raw)


def parse_params(text: str) -> SparsityParams:
    """Parse ``"lam,k1,k2,l"``."""
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4:
        raise ParameterError(f"expected four comma-separated integers, got {text!r}")
    try:
        values = [int(s) for s in parts]
    except ValueError:
        raise ParameterError(f"expected four comma-separated integers, got {text!r}") from None
    return validate_and_normalize_params(*values)


@dataclass(frozen=True)
class Support:
    """A pair of point and line subsets together with the incidences they induce."""

    points: tuple[str, ...]
    lines: tuple[str, ...]
    incidences: tuple[Incidence, ...]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.points + self.lines

    def to_json_dict(self) -> dict:
        return {"points": list(self.points), "lines": list(self.lines)}


@dataclass(frozen=True)
class IncidenceGeometry:
    """A rank 2 incidence geometry ``(P, L, I)`` with identifiers kept in file order."""

    points: tuple[str, ...]
    lines: tuple[str, ...]
    incidences: tuple[Incidence, ...]

    def __init__(self, points: Iterable[str], lines: Iterable[str], incidences: Iterable[Sequence[str]]):
        object.__setattr__(self, "points", tuple(points))
        object.__setattr__(self, "lines", tuple(lines))
        object.__setattr__(self, "incidences", tuple((p, q) for p, q in incidences))
        self._validate()

    def _validate(self) -> None:
        for kind, names in (("point", self.points), ("line", self.lines)):
            seen = set()
            for name in names:
                if not isinstance(name, str) or not name:
                    raise ParseError(f"{kind} names must be nonempty strings, got {name!r}")
                if name in seen:
                    raise ParseError(f"duplicate {kind} name {name!r}")
                seen.add(name)
        shared = set(self.points) & set(self.lines)
        if shared:
            raise ParseError(f"names used as both point and line: {sorted(shared)}")
        pset, lset = set(self.points), set(self.lines)
        seen_inc = set()
        for p, q in self.incidences:
            if p not in pset:
                raise DanglingReference(f"incidence ({p!r}, {q!r}) names unknown point {p!r}")
            if q not in lset:
                raise DanglingReference(f"incidence ({p!r}, {q!r}) names unknown line {q!r}")
            if (p, q) in seen_inc:
                raise DuplicateIncidence(f"incidence ({p!r}, {q!r}) listed twice")
            seen_inc.add((p, q))

    @cached_property
    def incidence_set(self) -> frozenset[Incidence]:
        return frozenset(self.incidences)

    @cached_property
    def kind(self) -> dict[str, int]:
        out = {p: POINT for p in self.points}
        out.update({q: LINE for q in self.lines})
        return out

    def support(self, points: Iterable[str], lines: Iterable[str]) -> Support:
        ps, ls = set(points), set(lines)
        pts = tuple(p for p in self.points if p in ps)
        lns = tuple(q for q in self.lines if q in ls)
        inc = tuple(i for i in self.incidences if i[0] in ps and i[1] in ls)
        return Support(pts, lns, inc)

    def full_support(self) -> Support:
        return Support(self.points, self.lines, self.incidences)

    def with_incidences(self, incidences: Iterable[Sequence[str]]) -> IncidenceGeometry:
        """Same points and lines, different incidence list."""
        return IncidenceGeometry(self.points, self.lines, incidences)

    def to_json_dict(self) -> dict:
        return {
            "points": list(self.points),
            "lines": list(self.lines),
            "incidences": [list(i) for i in self.incidences],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())


def load_geometry(document: str | bytes) -> IncidenceGeometry:
    """Parse a geometry JSON document."""
    try:
        data = json.loads(document)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("geometry document must be a JSON object")
    missing = [k for k in ("points", "lines", "incidences") if k not in data]
    if missing:
        raise ParseError(f"geometry document lacks keys {missing}")
    points, lines, incidences = data["points"], data["lines"], data["incidences"]
    for key, value in (("points", points), ("lines", lines), ("incidences", incidences)):
        if not isinstance(value, list):
            raise ParseError(f"{key!r} must be an array")
    for inc in incidences:
        if not (isinstance(inc, list) and len(inc) == 2 and all(isinstance(x, str) for x in inc)):
            raise ParseError(f"incidence must be a [point, line] pair of strings, got {inc!r}")
    return IncidenceGeometry(points, lines, incidences)


def read_geometry(path) -> IncidenceGeometry:
    with open(path, encoding="utf-8") as fh:
        return load_geometry(fh.read())


@dataclass(frozen=True)
class PebbleMultigraph:
    """The incidence graph with every edge copied ``lam`` times.

    Edges are ``(point, line, copy)`` triples with ``copy`` in ``1..lam``.
    """

    geometry: IncidenceGeometry
    lam: int
    vertices: tuple[str, ...]
    kind: dict[str, int]
    edges: tuple[Edge, ...]
    adjacency: dict[str, tuple[Edge, ...]]

    def copies(self, incidence: Incidence) -> tuple[Edge, ...]:
        p, q = incidence
        return tuple((p, q, i) for i in range(1, self.lam + 1))


def build_multigraph(g: IncidenceGeometry, p: SparsityParams) -> PebbleMultigraph:
    edges = tuple((pt, ln, i) for pt, ln in g.incidences for i in range(1, p.lam + 1))
    adj: dict[str, list[Edge]] = {v: [] for v in g.points + g.lines}
    for e in edges:
        adj[e[0]].append(e)
        adj[e[1]].append(e)
    return PebbleMultigraph(
        geometry=g,
        lam=p.lam,
        vertices=g.points + g.lines,
        kind=dict(g.kind),
        edges=edges,
        adjacency={v: tuple(es) for v, es in adj.items()},
    )


def count_inequality(s: Support, p: SparsityParams) -> int:
    """Slack ``k1|A| + k2|B| - l - lam|I(A x B)|``; negative means the support violates the count."""
    return p.k1 * len(s.points) + p.k2 * len(s.lines) - p.l - p.lam * len(s.incidences)
