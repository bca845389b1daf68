"""Limit-average payoffs of weight sequences and graphs.

Infinite words are given in ultimately periodic form (prefix + repeating
cycle), for which every limit-average variant is computed exactly as the
cycle average.  For graphs, the maximum cycle mean over reachable cycles is
computed per strongly connected component with Karp's recurrence, in exact
rational arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arena import Arena, UnknownVertexError, tarjan_scc

NEG_INF = float("-inf")


class Variant(enum.Enum):
    """Which limit is taken and how the threshold is compared."""

    LIMSUP_STRICT = "limsup-strict"
    LIMSUP_WEAK = "limsup-weak"
    LIMINF_STRICT = "liminf-strict"
    LIMINF_WEAK = "liminf-weak"


@dataclass(frozen=True)
class UltimatelyPeriodicWord:
    """Weight word prefix . cycle^omega; the cycle must be nonempty."""

    prefix: tuple[int, ...]
    cycle: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cycle) == 0:
            raise ValueError("cycle must be nonempty")
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "cycle", tuple(self.cycle))

    def head(self, n: int) -> tuple[int, ...]:
        """First n letters of the infinite word."""
        if n <= len(self.prefix):
            return self.prefix[:n]
        need = n - len(self.prefix)
        reps, rem = divmod(need, len(self.cycle))
        return self.prefix + self.cycle * reps + self.cycle[:rem]


def path_sum(weights: Sequence[int]) -> int:
    return sum(weights)


def path_avg(weights: Sequence[int]) -> Fraction:
    if len(weights) == 0:
        raise ValueError("average of an empty path is undefined")
    return Fraction(path_sum(weights), len(weights))


def partial_averages(weights: Sequence[int]) -> list[Fraction]:
    """Running averages of all nonempty prefixes."""
    out = []
    acc = 0
    for i, w in enumerate(weights, start=1):
        acc += w
        out.append(Fraction(acc, i))
    return out


def mp_value(word: UltimatelyPeriodicWord) -> Fraction:
    """Limit average of the word.

    For an ultimately periodic word the running averages converge: any long
    prefix is the finite prefix plus whole cycle repetitions plus a bounded
    remainder, and the bounded parts vanish in the average.  Limsup and
    liminf therefore agree and equal the cycle average.
    """
    return Fraction(sum(word.cycle), len(word.cycle))


def satisfies(word: UltimatelyPeriodicWord, variant: Variant) -> bool:
    """Does the word meet the zero-threshold objective under the variant?

    On ultimately periodic words limsup and liminf agree, so the variants
    differ only in strict versus weak comparison against 0.
    """
    v = mp_value(word)
    if variant in (Variant.LIMSUP_STRICT, Variant.LIMINF_STRICT):
        return v < 0
    return v <= 0


def _karp_component(
    comp: list[int], g: Arena
) -> Fraction:
    """Maximum cycle mean inside one strongly connected component.

    Karp's recurrence: with D_k(v) the maximum weight of a k-edge walk from a
    fixed root to v (-inf if none), the maximum cycle mean is
    max over v of min over k < n of (D_n(v) - D_k(v)) / (n - k).
    Requires the component to contain at least one edge.
    """
    idx = g._indexed
    n = len(comp)
    local = {u: i for i, u in enumerate(comp)}
    # D[k][i]: best (n-edge-count = k) walk weight from the root within the component
    D = [[NEG_INF] * n for _ in range(n + 1)]
    D[0][0] = 0
    members = set(comp)
    for k in range(1, n + 1):
        prev = D[k - 1]
        cur = D[k]
        for i, u in enumerate(comp):
            pu = prev[i]
            if pu == NEG_INF:
                continue
            for pos in idx.out[u]:
                d = idx.edst[pos]
                if d in members:
                    nd = pu + idx.ew[pos]
                    j = local[d]
                    if nd > cur[j]:
                        cur[j] = nd
    best: Fraction | None = None
    Dn = D[n]
    for j in range(n):
        if Dn[j] == NEG_INF:
            continue
        worst: Fraction | None = None
        for k in range(n):
            if D[k][j] == NEG_INF:
                continue
            ratio = Fraction(int(Dn[j] - D[k][j]), n - k)
            if worst is None or ratio < worst:
                worst = ratio
        if worst is not None and (best is None or worst > best):
            best = worst
    if best is None:
        raise AssertionError("component with an internal cycle must yield a mean")
    return best


def max_cycle_mean(g: Arena, start: str | None = None) -> Fraction | None:
    """Largest average edge weight over cycles reachable from ``start``
    (over all cycles when ``start`` is None).  None when the reachable part
    is acyclic."""
    idx = g._indexed
    if start is not None:
        if start not in idx.index:
            raise UnknownVertexError(f"unknown vertex id {start!r}")
        from .arena import reachable_restriction

        g = reachable_restriction(g, start)
        idx = g._indexed
    n = len(idx.ids)
    best: Fraction | None = None
    for comp in tarjan_scc(n, idx.out, idx.edst):
        members = set(comp)
        has_edge = any(
            idx.edst[pos] in members for u in comp for pos in idx.out[u]
        )
        if not has_edge:
            continue
        mean = _karp_component(comp, g)
        if best is None or mean > best:
            best = mean
    return best
