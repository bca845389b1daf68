"""Seeded invariant suites runnable from the CLI and the service.

Each suite replays one of the package's core guarantees on a deterministic
pseudo-random corpus: the edge predicate's monotone composition, telescoped
path sums, solver-versus-oracle agreement, certificate round-trips,
morphism construction, cycle-mean references, lifting-order independence,
and two-sided value checks on one-player arenas.  Counts are scaled down in
quick mode so the command stays interactive.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .arena import Arena, Edge, Vertex, generate_arena, reachable_restriction
from .morphism import Morphism, MorphismFailure, build_morphism, check_morphism
from .oracle import enumerate_simple_cycles, oracle_winning_set
from .payoff import max_cycle_mean
from .solver import check_certificate, result_from_obj, result_to_obj, simulate, solve
from .solver import prefix_bound_holds, value
from .universal import UVertex, lex_compare, u_edge


@dataclass(frozen=True)
class SuiteResult:
    name: str
    ok: bool
    detail: str


def _random_uvertex(rng: random.Random) -> UVertex:
    return UVertex(rng.randint(1, 5), rng.randint(0, 50))


def _lex_ge(rng: random.Random, base: UVertex) -> UVertex:
    # a vertex >= base in lexicographic order
    if rng.random() < 0.5:
        return UVertex(base.slope, base.offset + rng.randint(0, 10))
    return UVertex(base.slope + rng.randint(1, 3), rng.randint(0, 50))


def _suite_monotone(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    checked = 0
    for _ in range(rounds):
        u = _random_uvertex(rng)
        v = _random_uvertex(rng)
        w = rng.randint(-5, 5)
        if not u_edge(u, w, v):
            continue
        up = _lex_ge(rng, u)
        vp = UVertex(v.slope, max(0, v.offset - rng.randint(0, 10)))
        if rng.random() < 0.3 and v.slope > 1:
            vp = UVertex(rng.randint(1, v.slope - 1), rng.randint(0, 50))
        assert lex_compare(up, u) >= 0 and lex_compare(v, vp) >= 0
        if not u_edge(up, w, vp):
            return SuiteResult("edge-monotonicity", False, f"failed at {u} {w} {v}")
        checked += 1
    return SuiteResult("edge-monotonicity", True, f"{checked} composable triples")


def _suite_telescope(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    for case in range(rounds):
        m = rng.randint(1, 5)
        t = rng.randint(0, 60)
        t0 = t
        total = 0
        length = 0
        for _ in range(rng.randint(1, 50)):
            w = rng.randint(-3, 3)
            hi = t - m * w - 1
            if hi < 0:
                break
            t_next = rng.randint(0, hi)
            assert u_edge(UVertex(m, t), w, UVertex(m, t_next))
            total += w
            length += 1
            t = t_next
        if length == 0:
            continue
        if m * total > t0 - t - length:
            return SuiteResult("path-telescope", False, f"case {case}: bound violated")
    return SuiteResult("path-telescope", True, f"{rounds} sampled paths")


def _suite_solver_oracle(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    for case in range(rounds):
        a = generate_arena(rng.randint(1, 4), rng.randint(1, 3), 2, rng.randint(0, 10**9))
        if solve(a).winning_eve != oracle_winning_set(a):
            return SuiteResult("solver-vs-oracle", False, f"mismatch on case {case}")
    return SuiteResult("solver-vs-oracle", True, f"{rounds} random arenas")


def _suite_certificates(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    for case in range(rounds):
        a = generate_arena(rng.randint(1, 5), rng.randint(1, 3), 2, rng.randint(0, 10**9))
        r = solve(a)
        back = result_from_obj(json.loads(json.dumps(result_to_obj(r))))
        if back != r:
            return SuiteResult("certificate-roundtrip", False, f"round-trip changed case {case}")
        if not check_certificate(a, back).ok:
            return SuiteResult("certificate-roundtrip", False, f"check failed on case {case}")
        if r.winning_eve:
            start = sorted(r.winning_eve)[0]
            trace = simulate(a, r, start, 60, seed=case)
            if not prefix_bound_holds(r, start, trace):
                return SuiteResult("certificate-roundtrip", False, f"bound broken, case {case}")
    return SuiteResult("certificate-roundtrip", True, f"{rounds} solve outputs")


def _suite_morphism(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    built = 0
    for case in range(rounds):
        a = generate_arena(rng.randint(1, 5), rng.randint(1, 3), 2, rng.randint(0, 10**9))
        root = a.vertices[0].id
        res = build_morphism(a, root)
        if isinstance(res, MorphismFailure):
            if sum(a.edges[p].weight for p in res.cycle) < 0:
                return SuiteResult("morphism-build", False, f"bogus witness, case {case}")
            continue
        sub = reachable_restriction(a, root)
        relabeled = Morphism(res.m, {v.id: res.labels[v.id] for v in sub.vertices})
        if not check_morphism(sub, relabeled).ok:
            return SuiteResult("morphism-build", False, f"built morphism rejected, case {case}")
        built += 1
    return SuiteResult("morphism-build", True, f"{rounds} graphs, {built} embeddable")


def _suite_cycle_means(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    for case in range(rounds):
        a = generate_arena(rng.randint(1, 6), rng.randint(1, 3), 3, rng.randint(0, 10**9))
        by_karp = max_cycle_mean(a)
        by_enum = max(
            (
                Fraction(sum(a.edges[p].weight for p in cyc), len(cyc))
                for cyc in enumerate_simple_cycles(a)
            ),
            default=None,
        )
        if by_karp != by_enum:
            return SuiteResult("cycle-mean-reference", False, f"disagreement on case {case}")
    return SuiteResult("cycle-mean-reference", True, f"{rounds} graphs")


def _suite_lifting_orders(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    for case in range(rounds):
        a = generate_arena(rng.randint(1, 5), rng.randint(1, 3), 2, rng.randint(0, 10**9))
        if solve(a, order="worklist") != solve(a, order="round-robin"):
            return SuiteResult("lifting-order", False, f"schedules disagree on case {case}")
    return SuiteResult("lifting-order", True, f"{rounds} arenas")


def _one_player(a: Arena, owner: str) -> Arena:
    return Arena(tuple(Vertex(v.id, owner) for v in a.vertices), a.edges)


def _suite_value(rounds: int, seed: int) -> SuiteResult:
    rng = random.Random(seed)
    for case in range(rounds):
        base = generate_arena(rng.randint(1, 4), rng.randint(1, 2), 2, rng.randint(0, 10**9))
        v0 = base.vertices[0].id
        sub = reachable_restriction(base, v0)
        eve = _one_player(base, "eve")
        neg = Arena(sub.vertices, tuple(Edge(e.src, e.dst, -e.weight) for e in sub.edges))
        if value(eve, v0) != -max_cycle_mean(neg):
            return SuiteResult("value-one-player", False, f"all-eve mismatch, case {case}")
        adam = _one_player(base, "adam")
        if value(adam, v0) != max_cycle_mean(sub):
            return SuiteResult("value-one-player", False, f"all-adam mismatch, case {case}")
    return SuiteResult("value-one-player", True, f"{rounds} arenas, both players")


def run_selfcheck(quick: bool = False) -> tuple[bool, list[SuiteResult]]:
    """Run every suite; quick mode shrinks the corpora."""
    k = 1 if quick else 10
    results = [
        _suite_monotone(300 * k, seed=101),
        _suite_telescope(200 * k, seed=202),
        _suite_solver_oracle(30 * k, seed=303),
        _suite_certificates(30 * k, seed=404),
        _suite_morphism(30 * k, seed=505),
        _suite_cycle_means(20 * k, seed=606),
        _suite_lifting_orders(20 * k, seed=707),
        _suite_value(4 * k, seed=808),
    ]
    return all(r.ok for r in results), results
