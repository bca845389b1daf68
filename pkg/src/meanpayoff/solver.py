"""Two-player threshold solver: who forces the limit average below zero.

Fixes the slope m to the vertex count (any achievable value is a cycle mean
with denominator at most |V|, so a strictly negative limit average is at
most -1/m) and computes the least labeling where Eve minimizes and Adam
maximizes the one-step lift max(0, f(next) + m*w + 1).  Finite labels are
bounded by the best simple path of adjusted weights, so labels pushed past
the cap T = |V|*(m*Wmax + 1) are Top and Eve loses there.  A finite label
means every play Eve allows keeps prefix sums below (f(start) - length)/m,
which drives the running average strictly negative in the limit.

The certificate checker replays the per-edge inequality and the region
closure directly from the certificate, sharing only the edge predicate with
the solver.  Game values are recovered by solving affinely shifted arenas.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .arena import Arena, Edge, UnknownVertexError
from .universal import UVertex, u_edge


class _Top:
    """Label marking a vertex with no finite level-m potential."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Top"


TOP = _Top()


class CertificateFormatError(ValueError):
    """Certificate object that cannot be interpreted against the arena."""


@dataclass(frozen=True)
class ProgressMeasure:
    m: int
    values: dict[str, object]  # vertex id -> int or TOP


@dataclass(frozen=True)
class Violation:
    vertex: str
    edge: int
    kind: str  # "escape" (leaves the certified region) or "edge" (inequality fails)


@dataclass(frozen=True)
class CertificateVerdict:
    ok: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class SolveResult:
    winning_eve: frozenset[str]
    winning_adam: frozenset[str]
    measure: ProgressMeasure
    strategy: dict[str, int]  # Eve vertex id in winning_eve -> edge position


@dataclass(frozen=True)
class SimStep:
    step: int
    edge: int
    src: str
    dst: str
    weight: int
    prefix_sum: int


def _lift_params(a: Arena) -> tuple[int, int]:
    n = len(a.vertices)
    wmax = max(1, a.max_abs_weight())
    return n, n * (n * wmax + 1)


def _candidate(fdst: int, m: int, w: int, inf: int) -> int:
    if fdst >= inf:
        return inf
    c = fdst + m * w + 1
    if c < 0:
        c = 0
    return c if c <= inf - 1 else inf


def _solve_values(a: Arena, order: str) -> tuple[list[int], int, int]:
    """Least fixpoint of the owner-respecting lift, Top clamped to T + 1.

    Returns (values, m, T).  Eve vertices take the minimum over out-edges,
    Adam vertices the maximum; candidates past T collapse to T + 1 and stay
    there (the truncated lattice keeps the iteration finite).
    """
    idx = a._indexed
    n = len(idx.ids)
    m, T = _lift_params(a)
    inf = T + 1
    eve, out, edst, ew = idx.eve, idx.out, idx.edst, idx.ew
    f = [0] * n

    def refresh(u: int) -> int:
        first = True
        best = 0
        for pos in out[u]:
            c = _candidate(f[edst[pos]], m, ew[pos], inf)
            if first:
                best = c
                first = False
            elif eve[u]:
                if c < best:
                    best = c
            elif c > best:
                best = c
        return best

    if order == "round-robin":
        changed = True
        while changed:
            changed = False
            for u in range(n):
                if f[u] >= inf:
                    continue
                new = refresh(u)
                if new > f[u]:
                    f[u] = new
                    changed = True
    elif order == "worklist":
        preds: list[list[int]] = [[] for _ in range(n)]
        for pos in range(len(ew)):
            s, d = idx.esrc[pos], edst[pos]
            if s not in preds[d]:
                preds[d].append(s)
        queue = deque(range(n))
        queued = [True] * n
        while queue:
            u = queue.popleft()
            queued[u] = False
            if f[u] >= inf:
                continue
            new = refresh(u)
            if new > f[u]:
                f[u] = new
                for p in preds[u]:
                    if not queued[p]:
                        queued[p] = True
                        queue.append(p)
    else:
        raise ValueError(f"unknown lifting order {order!r}")
    return f, m, T


def solve(a: Arena, order: str = "worklist") -> SolveResult:
    """Partition the arena into the two winning regions, with a progress
    measure and a positional Eve strategy over her winning region.

    ``order`` selects the fixpoint schedule; the result is the same least
    fixpoint either way (asserted by tests, not just claimed).
    """
    f, m, T = _solve_values(a, order)
    idx = a._indexed
    n = len(idx.ids)
    inf = T + 1
    win: list[bool] = [f[u] <= T for u in range(n)]
    strategy: dict[str, int] = {}
    for u in range(n):
        if win[u] and idx.eve[u]:
            for pos in idx.out[u]:
                if _candidate(f[idx.edst[pos]], m, idx.ew[pos], inf) == f[u]:
                    strategy[idx.ids[u]] = pos
                    break
    values: dict[str, object] = {
        idx.ids[u]: (f[u] if win[u] else TOP) for u in range(n)
    }
    return SolveResult(
        winning_eve=frozenset(idx.ids[u] for u in range(n) if win[u]),
        winning_adam=frozenset(idx.ids[u] for u in range(n) if not win[u]),
        measure=ProgressMeasure(m=m, values=values),
        strategy=strategy,
    )


def _validate_certificate(a: Arena, r: SolveResult) -> None:
    idx = a._indexed
    all_ids = set(idx.ids)
    m = r.measure.m
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise CertificateFormatError("level m must be a positive integer")
    we, wa = set(r.winning_eve), set(r.winning_adam)
    if we | wa != all_ids or we & wa:
        raise CertificateFormatError("winning sets must partition the vertex set")
    if set(r.measure.values) != all_ids:
        raise CertificateFormatError("measure must label every vertex exactly once")
    for vid, val in r.measure.values.items():
        if vid in we:
            if not isinstance(val, int) or isinstance(val, bool) or val < 0:
                raise CertificateFormatError(
                    f"vertex {vid!r} is claimed winning but has no natural label"
                )
        elif val is not TOP:
            raise CertificateFormatError(
                f"vertex {vid!r} is claimed losing but carries a finite label"
            )
    eve_winning = {vid for vid in we if idx.eve[idx.index[vid]]}
    if set(r.strategy) != eve_winning:
        raise CertificateFormatError(
            "strategy must cover exactly Eve's vertices inside the claimed winning region"
        )
    for vid, pos in r.strategy.items():
        if not isinstance(pos, int) or isinstance(pos, bool) or not (0 <= pos < len(a.edges)):
            raise CertificateFormatError(f"strategy for {vid!r}: edge index out of range")
        if a.edges[pos].src != vid:
            raise CertificateFormatError(
                f"strategy for {vid!r} uses edge {pos}, which does not leave {vid!r}"
            )


def check_certificate(a: Arena, r: SolveResult) -> CertificateVerdict:
    """Accept exactly the certificates whose claimed region is closed and
    whose labels satisfy the edge inequality at level m.

    Eve vertices are checked on their strategy edge, Adam vertices on every
    out-edge.  Built from the certificate alone plus the edge predicate; no
    solver internals are consulted.
    """
    _validate_certificate(a, r)
    idx = a._indexed
    m = r.measure.m
    vals = r.measure.values
    violations: list[Violation] = []
    for u in range(len(idx.ids)):
        vid = idx.ids[u]
        if vid not in r.winning_eve:
            continue
        poss = (r.strategy[vid],) if idx.eve[u] else idx.out[u]
        for pos in poss:
            dst = idx.ids[idx.edst[pos]]
            if dst not in r.winning_eve:
                violations.append(Violation(vid, pos, "escape"))
            elif not u_edge(UVertex(m, vals[vid]), idx.ew[pos], UVertex(m, vals[dst])):
                violations.append(Violation(vid, pos, "edge"))
    return CertificateVerdict(ok=not violations, violations=tuple(violations))


def value(a: Arena, v: str) -> Fraction:
    """Exact game value at ``v``: the unique rational with denominator at
    most |V| such that Eve wins the strict threshold objective exactly for
    thresholds above it.

    Tests each candidate p/q by solving the arena with weights q*w - p; the
    sign of the limit average is invariant under that affine shift relative
    to p/q, and winning is monotone in the threshold, so a binary search
    over sorted candidates lands on the value.
    """
    idx = a._indexed
    if v not in idx.index:
        raise UnknownVertexError(f"unknown vertex id {v!r}")
    n = len(idx.ids)
    wmax = max(1, a.max_abs_weight())
    candidates = sorted(
        {Fraction(p, q) for q in range(1, n + 1) for p in range(-q * wmax, q * wmax + 1)}
    )

    def eve_wins(theta: Fraction) -> bool:
        p, q = theta.numerator, theta.denominator
        shifted = Arena(
            a.vertices,
            tuple(Edge(e.src, e.dst, q * e.weight - p) for e in a.edges),
        )
        return v in solve(shifted).winning_eve

    lo, hi = 0, len(candidates) - 1
    # value is the largest candidate whose threshold Eve does NOT win
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if eve_wins(candidates[mid]):
            hi = mid - 1
        else:
            lo = mid
    return candidates[lo]


def simulate(a: Arena, r: SolveResult, start: str, steps: int, seed: int) -> list[SimStep]:
    """Play ``steps`` moves from ``start``: Eve follows the certificate's
    strategy, Adam picks uniformly among his out-edges (seeded).

    The returned prefix sums let callers verify the certified bound
    m * prefix_sum <= f(start) - length for every prefix.
    """
    idx = a._indexed
    if start not in idx.index:
        raise UnknownVertexError(f"unknown vertex id {start!r}")
    if start not in r.winning_eve:
        raise ValueError(f"start vertex {start!r} is not in the certified winning region")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = random.Random(seed)
    out: list[SimStep] = []
    cur = idx.index[start]
    total = 0
    for step in range(1, steps + 1):
        vid = idx.ids[cur]
        if idx.eve[cur]:
            pos = r.strategy.get(vid)
            if pos is None:
                raise CertificateFormatError(f"no strategy entry for Eve vertex {vid!r}")
        else:
            pos = rng.choice(idx.out[cur])
        nxt = idx.edst[pos]
        total += idx.ew[pos]
        out.append(
            SimStep(
                step=step,
                edge=pos,
                src=vid,
                dst=idx.ids[nxt],
                weight=idx.ew[pos],
                prefix_sum=total,
            )
        )
        cur = nxt
    return out


def prefix_bound_holds(r: SolveResult, start: str, trace: list[SimStep]) -> bool:
    """Exact check of m * sum <= f(start) - length over every prefix."""
    f0 = r.measure.values[start]
    if f0 is TOP:
        return False
    m = r.measure.m
    return all(m * s.prefix_sum <= f0 - s.step for s in trace)


def result_to_obj(r: SolveResult) -> dict:
    """Certificate as JSON data: sorted id lists, labels with "top" markers."""
    return {
        "winning_eve": sorted(r.winning_eve),
        "winning_adam": sorted(r.winning_adam),
        "m": r.measure.m,
        "measure": {
            vid: ("top" if val is TOP else val) for vid, val in r.measure.values.items()
        },
        "strategy": dict(r.strategy),
    }


def result_from_obj(obj: object) -> SolveResult:
    """Parse certificate JSON data; shape problems raise
    CertificateFormatError (consistency against an arena is
    check_certificate's job)."""
    if not isinstance(obj, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    for key in ("winning_eve", "winning_adam", "m", "measure", "strategy"):
        if key not in obj:
            raise CertificateFormatError(f"certificate is missing field {key!r}")
    if not isinstance(obj["winning_eve"], list) or not isinstance(obj["winning_adam"], list):
        raise CertificateFormatError("winning sets must be lists of vertex ids")
    for vid in list(obj["winning_eve"]) + list(obj["winning_adam"]):
        if not isinstance(vid, str):
            raise CertificateFormatError("winning sets must contain vertex ids")
    m = obj["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise CertificateFormatError("level m must be a positive integer")
    if not isinstance(obj["measure"], dict):
        raise CertificateFormatError("measure must map vertex ids to labels")
    values: dict[str, object] = {}
    for vid, val in obj["measure"].items():
        if not isinstance(vid, str):
            raise CertificateFormatError("measure keys must be vertex ids")
        if val == "top":
            values[vid] = TOP
        elif isinstance(val, int) and not isinstance(val, bool) and val >= 0:
            values[vid] = val
        else:
            raise CertificateFormatError(
                f"measure value for {vid!r} must be a natural number or \"top\""
            )
    if not isinstance(obj["strategy"], dict):
        raise CertificateFormatError("strategy must map Eve vertex ids to edge indices")
    strategy: dict[str, int] = {}
    for vid, pos in obj["strategy"].items():
        if not isinstance(vid, str) or not isinstance(pos, int) or isinstance(pos, bool):
            raise CertificateFormatError("strategy entries must map vertex id to edge index")
        strategy[vid] = pos
    return SolveResult(
        winning_eve=frozenset(obj["winning_eve"]),
        winning_adam=frozenset(obj["winning_adam"]),
        measure=ProgressMeasure(m=m, values=values),
        strategy=strategy,
    )
