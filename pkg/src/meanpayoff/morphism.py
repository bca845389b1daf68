"""Negative-drift certificates and label maps into the universal graph.

For a finite graph whose cycles reachable from a root all have sum <= -1,
choosing the slope m as the number of reachable vertices makes every simple
cycle C satisfy m * summ(C) + |C| <= 0.  Each reachable vertex then gets a
finite offset: the least f with f(v) >= f(v') + m*w + 1 along every edge and
f >= 0, equivalently the supremum over finite paths from v of
m * summ(path) + length.  Labeling vertices with (m, f(v)) sends every edge
to an edge of the universal graph.  The checker replays the edge inequality
on its own and shares nothing with the builder except the edge predicate.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arena import Arena, UnknownVertexError, _Indexed
from .universal import UVertex, u_edge


class _Diverged:
    """Marker for vertices whose potential exceeds every bound."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Diverged"


DIVERGED = _Diverged()


class MorphismFormatError(ValueError):
    """Structurally unusable label map (missing label, bad level)."""


@dataclass(frozen=True)
class SlopeCertificate:
    root: str
    m: int
    t: int


@dataclass(frozen=True)
class MorphismFailure:
    """Witness that no certificate exists: a reachable cycle with
    nonnegative weight sum, as edge positions in traversal order."""

    cycle: tuple[int, ...]
    cycle_sum: int


@dataclass(frozen=True)
class Morphism:
    m: int
    labels: dict[str, int]


@dataclass(frozen=True)
class MorphismVerdict:
    ok: bool
    violations: tuple[int, ...]


def _reachable_indices(idx: _Indexed, root: str) -> list[int]:
    start = idx.index.get(root)
    if start is None:
        raise UnknownVertexError(f"unknown vertex id {root!r}")
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for pos in idx.out[u]:
            d = idx.edst[pos]
            if d not in seen:
                seen.add(d)
                stack.append(d)
    return sorted(seen)


def _lfp_potentials(
    idx: _Indexed, active: list[int], m: int, cap: int
) -> tuple[dict[int, int], set[int]]:
    """Least solution of f(v) = max(0, max over kept edges of f(v') + m*w + 1)
    over the vertices in ``active`` (which must be closed under successors).
    Returns finite values plus the set of vertices pushed past ``cap``."""
    pot = {u: 0 for u in active}
    diverged: set[int] = set()
    changed = True
    while changed:
        changed = False
        for u in active:
            if u in diverged:
                continue
            best = 0
            blown = False
            for pos in idx.out[u]:
                d = idx.edst[pos]
                if d in diverged:
                    blown = True
                    break
                c = pot[d] + m * idx.ew[pos] + 1
                if c > best:
                    best = c
            if blown or best > cap:
                diverged.add(u)
                changed = True
            elif best > pot[u]:
                pot[u] = best
                changed = True
    return pot, diverged


def compute_potentials(g: Arena, m: int, cap: int | None = None) -> dict[str, object]:
    """Minimal potentials of every vertex at slope ``m``.

    Returns the least fixpoint value for each vertex where it is at most
    ``cap``, and DIVERGED for vertices whose value would exceed it.  A
    vertex's value is finite exactly when every cycle it can reach has
    m * sum + length <= 0.  The default cap is one past the largest value a
    finite fixpoint can take (a simple path of maximal adjusted weight), so
    with the default, DIVERGED is a proof of a positive adjusted cycle.
    """
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValueError("slope m must be a positive integer")
    n = len(g.vertices)
    if cap is None:
        wmax = max(1, g.max_abs_weight())
        cap = n * (m * wmax + 1) + 1
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 0:
        raise ValueError("cap must be a nonnegative integer")
    idx = g._indexed
    pot, diverged = _lfp_potentials(idx, list(range(n)), m, cap)
    return {
        idx.ids[u]: (DIVERGED if u in diverged else pot[u]) for u in range(n)
    }


def _splice_to_simple(walk: list[int], idx: _Indexed, n: int) -> tuple[int, ...]:
    """Reduce a closed walk with positive adjusted sum (a = n*w + 1) to a
    simple cycle with positive adjusted sum by cutting out sub-cycles and
    keeping a positive part (adjusted sums are additive over the split)."""
    while True:
        verts = [idx.esrc[walk[0]]]
        for pos in walk:
            verts.append(idx.edst[pos])
        seen: dict[int, int] = {}
        cut = None
        for i, v in enumerate(verts[:-1]):
            if v in seen:
                cut = (seen[v], i)
                break
            seen[v] = i
        if cut is None:
            return tuple(walk)
        i, j = cut
        sub = walk[i:j]
        rest = walk[:i] + walk[j:]
        if sum(n * idx.ew[p] + 1 for p in sub) > 0:
            walk = sub
        else:
            walk = rest


def find_nonnegative_cycle(g: Arena, root: str | None = None) -> tuple[int, ...] | None:
    """A simple cycle with weight sum >= 0 among cycles reachable from
    ``root`` (anywhere when root is None), as edge positions in traversal
    order, or None when every reachable cycle has sum <= -1.

    Works on adjusted weights a = n*w + 1: a simple cycle has w-sum >= 0
    exactly when its a-sum is positive, and some vertex carries a positive
    closed a-walk of length <= n exactly when a positive-a cycle exists.
    """
    idx = g._indexed
    if root is None:
        active = list(range(len(idx.ids)))
    else:
        active = _reachable_indices(idx, root)
    n = len(active)
    member = set(active)
    for u in active:
        # best[v] = max adjusted weight of a k-edge walk u -> v, k growing
        best = {u: 0}
        parent: dict[tuple[int, int], int] = {}
        for k in range(1, n + 1):
            cur: dict[int, int] = {}
            for s, val in best.items():
                for pos in idx.out[s]:
                    d = idx.edst[pos]
                    if d not in member:
                        continue
                    nd = val + n * idx.ew[pos] + 1
                    if d not in cur or nd > cur[d]:
                        cur[d] = nd
                        parent[(k, d)] = pos
            if cur.get(u, 0) > 0:
                walk = []
                v, kk = u, k
                while kk > 0:
                    pos = parent[(kk, v)]
                    walk.append(pos)
                    v = idx.esrc[pos]
                    kk -= 1
                walk.reverse()
                cycle = _splice_to_simple(walk, idx, n)
                assert sum(idx.ew[p] for p in cycle) >= 0
                return cycle
            if not cur:
                break
            best = cur
    return None


def _certify(g: Arena, root: str) -> tuple[tuple[int, dict[str, int]] | None, MorphismFailure | None]:
    idx = g._indexed
    active = _reachable_indices(idx, root)
    cyc = find_nonnegative_cycle(g, root)
    if cyc is not None:
        return None, MorphismFailure(cyc, sum(idx.ew[p] for p in cyc))
    m = len(active)
    member = set(active)
    wmax = max(
        (abs(idx.ew[pos]) for u in active for pos in idx.out[u] if idx.edst[pos] in member),
        default=0,
    )
    cap = m * (m * max(1, wmax) + 1) + 1
    pot, diverged = _lfp_potentials(idx, active, m, cap)
    # no nonnegative reachable cycle means every adjusted cycle sum is <= 0
    assert not diverged
    return (m, {idx.ids[u]: pot[u] for u in active}), None


def find_slope_certificate(g: Arena, v: str) -> SlopeCertificate | MorphismFailure:
    """Slope and offset bounding all path sums from ``v``: summ(path) is at
    most (t - length) / m for every finite path.  Exists exactly when all
    reachable cycles have sum <= -1; otherwise the witness cycle comes back.
    """
    built, failure = _certify(g, v)
    if failure is not None:
        return failure
    m, labels = built
    return SlopeCertificate(root=v, m=m, t=labels[v])


def build_morphism(g: Arena, v: str) -> Morphism | MorphismFailure:
    """Label map of the part of ``g`` reachable from ``v`` into the universal
    graph at slope = number of reachable vertices, or the witness cycle.

    The labels are the minimal potentials, so the result always passes
    :func:`check_morphism` on the reachable restriction.
    """
    built, failure = _certify(g, v)
    if failure is not None:
        return failure
    m, labels = built
    return Morphism(m=m, labels=labels)


def check_morphism(g: Arena, phi: Morphism) -> MorphismVerdict:
    """Replay the edge inequality of the universal graph on every edge of
    ``g`` under the labels of ``phi``; lists the positions that fail."""
    if not isinstance(phi.m, int) or isinstance(phi.m, bool) or phi.m < 1:
        raise MorphismFormatError("level m must be a positive integer")
    for v in g.vertices:
        t = phi.labels.get(v.id)
        if t is None:
            raise MorphismFormatError(f"missing label for vertex {v.id!r}")
        if not isinstance(t, int) or isinstance(t, bool) or t < 0:
            raise MorphismFormatError(f"label for vertex {v.id!r} must be a natural number")
    violations = []
    for pos, e in enumerate(g.edges):
        src = UVertex(phi.m, phi.labels[e.src])
        dst = UVertex(phi.m, phi.labels[e.dst])
        if not u_edge(src, e.weight, dst):
            violations.append(pos)
    return MorphismVerdict(ok=not violations, violations=tuple(violations))
