"""Ground truth for small arenas by brute force over positional strategies.

On finite arenas the threshold objective is positionally determined, so the
winning region is the union, over Eve's finitely many positional
strategies, of the vertices from which the strategy-restricted graph has no
reachable cycle with nonnegative sum.  That cycle criterion is decided per
strongly connected component with an integer-only longest-walk recurrence;
nothing here touches the solver's lifting or the morphism potentials.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .arena import Arena, tarjan_scc

STRATEGY_LIMIT = 10**6


class OracleGuardError(RuntimeError):
    """Strategy space too large for exhaustive enumeration."""


def _eve_vertices(a: Arena) -> list[int]:
    idx = a._indexed
    return [u for u in range(len(idx.ids)) if idx.eve[u]]


def strategy_count(a: Arena) -> int:
    idx = a._indexed
    count = 1
    for u in _eve_vertices(a):
        count *= len(idx.out[u])
    return count


def enumerate_strategies(a: Arena) -> Iterator[dict[str, int]]:
    """All of Eve's positional strategies as {vertex id: edge position},
    lexicographic over (sorted vertex id, ascending edge position)."""
    idx = a._indexed
    eve_vs = _eve_vertices(a)
    for combo in itertools.product(*(idx.out[u] for u in eve_vs)):
        yield {idx.ids[u]: pos for u, pos in zip(eve_vs, combo)}


def enumerate_adam_strategies(a: Arena) -> Iterator[dict[str, int]]:
    """Adam's positional strategies, same order convention."""
    idx = a._indexed
    adam_vs = [u for u in range(len(idx.ids)) if not idx.eve[u]]
    for combo in itertools.product(*(idx.out[u] for u in adam_vs)):
        yield {idx.ids[u]: pos for u, pos in zip(adam_vs, combo)}


def _component_has_nonneg_cycle(
    comp: list[int],
    out_sel: list[tuple[int, ...]],
    edst: tuple[int, ...],
    ew: tuple[int, ...],
) -> bool:
    """Does this strongly connected component contain a cycle with
    nonnegative weight sum?

    Longest-walk table from a fixed root: D_k(v) = best weight of a k-edge
    walk inside the component.  The maximum cycle mean is nonnegative
    exactly when some vertex v has D_n(v) defined and no shorter walk to v
    beats it, i.e. D_n(v) >= D_k(v) for every defined D_k(v).
    """
    n = len(comp)
    local = {u: i for i, u in enumerate(comp)}
    rows: list[list[int | None]] = [[None] * n for _ in range(n + 1)]
    rows[0][0] = 0
    for k in range(1, n + 1):
        prev = rows[k - 1]
        cur = rows[k]
        for i, u in enumerate(comp):
            pu = prev[i]
            if pu is None:
                continue
            for pos in out_sel[u]:
                j = local.get(edst[pos])
                if j is None:
                    continue
                nd = pu + ew[pos]
                if cur[j] is None or nd > cur[j]:
                    cur[j] = nd
    last = rows[n]
    for j in range(n):
        dn = last[j]
        if dn is None:
            continue
        if all(rows[k][j] is None or dn >= rows[k][j] for k in range(n)):
            return True
    return False


def doomed_vertices(
    n: int,
    out_sel: list[tuple[int, ...]],
    edst: tuple[int, ...],
    ew: tuple[int, ...],
) -> list[bool]:
    """Per vertex: can it reach a cycle with nonnegative sum in the graph
    where vertex u keeps exactly the edge positions out_sel[u]?

    Components come out of the decomposition successors-first, so a single
    pass marks a component doomed when it contains such a cycle itself or
    touches an already doomed component.
    """
    sccs = tarjan_scc(n, out_sel, edst)
    comp_of = [0] * n
    for ci, comp in enumerate(sccs):
        for u in comp:
            comp_of[u] = ci
    doomed_comp = [False] * len(sccs)
    for ci, comp in enumerate(sccs):
        members = set(comp)
        internal = False
        reaches = False
        for u in comp:
            for pos in out_sel[u]:
                d = edst[pos]
                if d in members:
                    internal = True
                elif doomed_comp[comp_of[d]]:
                    reaches = True
        doomed_comp[ci] = reaches or (
            internal and _component_has_nonneg_cycle(comp, out_sel, edst, ew)
        )
    return [doomed_comp[comp_of[u]] for u in range(n)]


def oracle_winning_set(a: Arena) -> frozenset[str]:
    """Vertices from which some positional Eve strategy keeps every
    reachable cycle's mean strictly negative (Adam unrestricted)."""
    if strategy_count(a) > STRATEGY_LIMIT:
        raise OracleGuardError(
            f"strategy space exceeds {STRATEGY_LIMIT}; arena too large for the oracle"
        )
    idx = a._indexed
    n = len(idx.ids)
    eve_vs = _eve_vertices(a)
    winning: set[int] = set()
    base = list(idx.out)
    for combo in itertools.product(*(idx.out[u] for u in eve_vs)):
        out_sel = base[:]
        for u, pos in zip(eve_vs, combo):
            out_sel[u] = (pos,)
        doomed = doomed_vertices(n, out_sel, idx.edst, idx.ew)
        winning.update(u for u in range(n) if not doomed[u])
        if len(winning) == n:
            break
    return frozenset(idx.ids[u] for u in winning)


def enumerate_simple_cycles(a: Arena) -> Iterator[tuple[int, ...]]:
    """Every simple cycle once, as edge positions in traversal order,
    anchored at the cycle's smallest vertex index.

    Exponential; meant for graphs small enough to cross-check cycle-based
    reasoning exhaustively.
    """
    idx = a._indexed
    n = len(idx.ids)
    for anchor in range(n):
        path: list[int] = []
        on_path = {anchor}

        def walk(u: int) -> Iterator[tuple[int, ...]]:
            for pos in idx.out[u]:
                d = idx.edst[pos]
                if d == anchor:
                    yield tuple(path + [pos])
                elif d > anchor and d not in on_path:
                    path.append(pos)
                    on_path.add(d)
                    yield from walk(d)
                    on_path.discard(d)
                    path.pop()

        yield from walk(anchor)
