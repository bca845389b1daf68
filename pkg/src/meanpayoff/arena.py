"""Finite weighted game arenas: data model, validation, JSON round-trip,
reachable restriction, rational-weight scaling, seeded generation.

An arena is a finite directed multigraph with integer edge weights whose
vertices are partitioned between Eve (the minimizer) and Adam (the
maximizer).  Every vertex must have at least one outgoing edge so that an
infinite play exists from everywhere.  Edges are addressed by their position
in the edge list (input order), which is what strategies and certificates
refer to.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, NamedTuple

EVE = "eve"
ADAM = "adam"
OWNERS = (EVE, ADAM)


class ArenaError(ValueError):
    """Base class for arena input problems."""


class ArenaParseError(ArenaError):
    """Malformed JSON or a document that does not match the arena schema."""


class ArenaValidationError(ArenaError):
    """Well-formed input that violates an arena invariant."""


class UnknownVertexError(ArenaError):
    """A vertex id that is not declared in the arena."""


@dataclass(frozen=True)
class Vertex:
    id: str
    owner: str


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str
    weight: int


class _Indexed(NamedTuple):
    """Array view of an arena for the algorithmic modules.

    Vertices are numbered by sorted id; an edge keeps its list position.
    """

    ids: tuple[str, ...]
    index: dict[str, int]
    eve: tuple[bool, ...]
    esrc: tuple[int, ...]
    edst: tuple[int, ...]
    ew: tuple[int, ...]
    out: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Arena:
    """Validated game graph.  Vertices are kept sorted by id; edge order is
    the input order and an edge's position is its stable index."""

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        vs = tuple(sorted(self.vertices, key=lambda v: v.id))
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", tuple(self.edges))
        seen: set[str] = set()
        for v in vs:
            if v.id in seen:
                raise ArenaValidationError(f"duplicate vertex id {v.id!r}")
            seen.add(v.id)
            if v.owner not in OWNERS:
                raise ArenaValidationError(
                    f"vertex {v.id!r}: owner must be 'eve' or 'adam', got {v.owner!r}"
                )
        out_deg = dict.fromkeys(seen, 0)
        for i, e in enumerate(self.edges):
            for endpoint in (e.src, e.dst):
                if endpoint not in seen:
                    raise ArenaValidationError(
                        f"edge {i} ({e.src!r} -> {e.dst!r}): dangling endpoint {endpoint!r}"
                    )
            if not isinstance(e.weight, int) or isinstance(e.weight, bool):
                raise ArenaValidationError(
                    f"edge {i} ({e.src!r} -> {e.dst!r}): weight must be an integer"
                )
            out_deg[e.src] += 1
        for vid, deg in out_deg.items():
            if deg == 0:
                raise ArenaValidationError(f"vertex {vid!r} is a dead end (no outgoing edge)")

    @cached_property
    def _indexed(self) -> _Indexed:
        ids = tuple(v.id for v in self.vertices)
        index = {vid: i for i, vid in enumerate(ids)}
        eve = tuple(v.owner == EVE for v in self.vertices)
        esrc = tuple(index[e.src] for e in self.edges)
        edst = tuple(index[e.dst] for e in self.edges)
        ew = tuple(e.weight for e in self.edges)
        out: list[list[int]] = [[] for _ in ids]
        for pos, s in enumerate(esrc):
            out[s].append(pos)
        return _Indexed(ids, index, eve, esrc, edst, ew, tuple(tuple(o) for o in out))

    def vertex_ids(self) -> tuple[str, ...]:
        return self._indexed.ids

    def owner(self, vid: str) -> str:
        i = self._indexed.index.get(vid)
        if i is None:
            raise UnknownVertexError(f"unknown vertex id {vid!r}")
        return EVE if self._indexed.eve[i] else ADAM

    def out_edges(self, vid: str) -> tuple[tuple[int, Edge], ...]:
        """Outgoing edges of ``vid`` as (position, edge) pairs in input order."""
        i = self._indexed.index.get(vid)
        if i is None:
            raise UnknownVertexError(f"unknown vertex id {vid!r}")
        return tuple((pos, self.edges[pos]) for pos in self._indexed.out[i])

    def max_abs_weight(self) -> int:
        return max((abs(w) for w in self._indexed.ew), default=0)


# The one-player view: same structure, ownership ignored by the consumer.
WeightedGraph = Arena


def parse_arena(text: str) -> Arena:
    """Parse and validate an arena from its JSON document.

    Weights must be plain integers here; rational weights go through
    :func:`parse_rational_arena` / :func:`scale_weights`.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArenaParseError(f"not valid JSON: {exc}") from exc
    return arena_from_obj(obj)


def arena_from_obj(obj: object) -> Arena:
    """Build an arena from already-decoded JSON data."""
    vertices, raw_edges = _skeleton_from_obj(obj)
    edges = []
    for i, (src, dst, w) in enumerate(raw_edges):
        if isinstance(w, bool) or not isinstance(w, int):
            raise ArenaParseError(
                f"edge {i}: weight must be an integer "
                "(rational weights are only accepted by the scaling pipeline)"
            )
        edges.append(Edge(src, dst, w))
    return Arena(tuple(vertices), tuple(edges))


def _skeleton_from_obj(obj: object) -> tuple[list[Vertex], list[tuple[str, str, object]]]:
    if not isinstance(obj, dict):
        raise ArenaParseError("top level must be a JSON object")
    for key in ("vertices", "edges"):
        if key not in obj or not isinstance(obj[key], list):
            raise ArenaParseError(f"missing or non-list field {key!r}")
    vertices = []
    for i, v in enumerate(obj["vertices"]):
        if not isinstance(v, dict) or not isinstance(v.get("id"), str):
            raise ArenaParseError(f"vertex {i}: expected an object with a string 'id'")
        if v.get("owner") not in OWNERS:
            raise ArenaParseError(f"vertex {i} ({v['id']!r}): owner must be 'eve' or 'adam'")
        vertices.append(Vertex(v["id"], v["owner"]))
    edges = []
    for i, e in enumerate(obj["edges"]):
        if (
            not isinstance(e, dict)
            or not isinstance(e.get("src"), str)
            or not isinstance(e.get("dst"), str)
            or "weight" not in e
        ):
            raise ArenaParseError(f"edge {i}: expected an object with 'src', 'dst', 'weight'")
        edges.append((e["src"], e["dst"], e["weight"]))
    return vertices, edges


def arena_to_obj(a: Arena) -> dict:
    """JSON-ready form: vertices sorted by id, edges in index order."""
    return {
        "vertices": [{"id": v.id, "owner": v.owner} for v in a.vertices],
        "edges": [{"src": e.src, "dst": e.dst, "weight": e.weight} for e in a.edges],
    }


def serialize_arena(a: Arena) -> str:
    """Deterministic JSON document; inverse of :func:`parse_arena`."""
    return json.dumps(arena_to_obj(a), sort_keys=True, indent=2)


def reachable_restriction(g: Arena, vid: str) -> Arena:
    """Subgraph induced by the vertices reachable from ``vid`` (inclusive).

    Edge order is preserved, so positions in the result are the input-order
    positions of the surviving edges, renumbered contiguously.
    """
    idx = g._indexed
    root = idx.index.get(vid)
    if root is None:
        raise UnknownVertexError(f"unknown vertex id {vid!r}")
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for pos in idx.out[u]:
            d = idx.edst[pos]
            if d not in seen:
                seen.add(d)
                stack.append(d)
    keep_ids = {idx.ids[i] for i in seen}
    vertices = tuple(v for v in g.vertices if v.id in keep_ids)
    edges = tuple(e for e in g.edges if e.src in keep_ids)
    return Arena(vertices, edges)


def reachable_vertex_set(g: Arena, vid: str) -> frozenset[str]:
    """Ids of the vertices reachable from ``vid`` (including ``vid``)."""
    return frozenset(v.id for v in reachable_restriction(g, vid).vertices)


def scale_weights(
    vertices: Iterable[Vertex], edges: Iterable[tuple[str, str, Fraction | int | str]]
) -> tuple[Arena, int]:
    """Clear rational weights to integers by one global scaling.

    Multiplies every weight by the least common multiple L of the weight
    denominators and returns the integer arena together with L.  Scaling by a
    positive constant does not change the sign of any limit average, so the
    winning regions of the scaled arena are those of the original.
    """
    vs = tuple(vertices)
    raw = list(edges)
    fracs = []
    for i, (src, dst, w) in enumerate(raw):
        try:
            fracs.append(Fraction(w))
        except ZeroDivisionError:
            raise ArenaValidationError(f"edge {i} ({src!r} -> {dst!r}): zero denominator") from None
        except ValueError:
            raise ArenaParseError(f"edge {i} ({src!r} -> {dst!r}): bad rational {w!r}") from None
    factor = lcm(*(f.denominator for f in fracs)) if fracs else 1
    scaled = [
        Edge(src, dst, int(f * factor)) for (src, dst, _), f in zip(raw, fracs)
    ]
    return Arena(vs, tuple(scaled)), factor


def parse_rational_arena(text: str) -> tuple[Arena, int]:
    """Like :func:`parse_arena` but weights may be rationals written "p/q".

    Returns the scaled integer arena and the scale factor (1 when all
    weights were already integers).
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ArenaParseError(f"not valid JSON: {exc}") from exc
    vertices, raw_edges = _skeleton_from_obj(obj)
    cleaned: list[tuple[str, str, Fraction | int | str]] = []
    for i, (src, dst, w) in enumerate(raw_edges):
        if isinstance(w, bool) or not isinstance(w, (int, str)):
            raise ArenaParseError(f"edge {i}: weight must be an integer or a 'p/q' string")
        cleaned.append((src, dst, w))
    return scale_weights(vertices, cleaned)


def generate_arena(n: int, d: int, wmax: int, seed: int) -> Arena:
    """Seeded random arena: ``n`` vertices, 1..``d`` out-edges each, weights
    uniform in [-wmax, wmax], owners drawn uniformly.  Deterministic for a
    fixed parameter tuple."""
    if n < 1 or d < 1 or wmax < 0:
        raise ValueError("need n >= 1, d >= 1, wmax >= 0")
    rng = random.Random(seed)
    ids = [f"v{i}" for i in range(n)]
    vertices = []
    edges = []
    for vid in ids:
        vertices.append(Vertex(vid, rng.choice(OWNERS)))
        for _ in range(rng.randint(1, d)):
            dst = ids[rng.randrange(n)]
            edges.append(Edge(vid, dst, rng.randint(-wmax, wmax)))
    return Arena(tuple(vertices), tuple(edges))


def tarjan_scc(n: int, out: tuple[tuple[int, ...], ...], edst: tuple[int, ...]) -> list[list[int]]:
    """Strongly connected components over an indexed adjacency, iterative.

    Components are emitted with every successor component of a component
    appearing before it (sinks first).
    """
    order = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        work: list[tuple[int, int]] = [(root, 0)]
        while work:
            u, ei = work[-1]
            if ei == 0:
                order[u] = low[u] = counter
                counter += 1
                stack.append(u)
                on_stack[u] = True
            advanced = False
            edges_u = out[u]
            while ei < len(edges_u):
                v = edst[edges_u[ei]]
                ei += 1
                if order[v] == -1:
                    work[-1] = (u, ei)
                    work.append((v, 0))
                    advanced = True
                    break
                if on_stack[v] and order[v] < low[u]:
                    low[u] = order[v]
            if advanced:
                continue
            work.pop()
            if low[u] == order[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == u:
                        break
                sccs.append(comp)
            if work:
                p = work[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
    return sccs
