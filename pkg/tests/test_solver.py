import dataclasses
import json
import random
from fractions import Fraction

import pytest

from meanpayoff import (
    TOP,
    Arena,
    CertificateFormatError,
    Edge,
    ProgressMeasure,
    SolveResult,
    check_certificate,
    generate_arena,
    max_cycle_mean,
    oracle_winning_set,
    prefix_bound_holds,
    result_from_obj,
    result_to_obj,
    simulate,
    solve,
    value,
)

from builders import (
    adam_two_loops,
    all_adam,
    all_eve,
    drift_two_cycle,
    eve_feeds_adam,
    eve_plus_loop,
    eve_two_loops,
    mean_minus_one_cycle,
    mk,
)


class TestSolveExamples:
    def test_eve_picks_the_negative_loop(self):
        r = solve(eve_two_loops())
        assert r.winning_eve == frozenset({"e"})
        assert r.winning_adam == frozenset()
        assert r.strategy == {"e": 1}
        assert r.measure.values["e"] == 0

    def test_adam_takes_the_positive_loop(self):
        r = solve(adam_two_loops())
        assert r.winning_adam == frozenset({"a"})
        assert r.measure.values["a"] is TOP
        assert r.strategy == {}

    def test_forced_positive_loop_loses(self):
        r = solve(eve_plus_loop())
        assert r.winning_adam == frozenset({"v"})

    def test_two_cycle_game_measure(self):
        r = solve(drift_two_cycle())
        assert r.winning_eve == frozenset({"a", "b"})
        assert r.measure.m == 2
        assert r.measure.values == {"a": 1, "b": 0}

    def test_eve_cannot_avoid_adams_positive_loop(self):
        r = solve(eve_feeds_adam())
        assert r.winning_eve == frozenset()


class TestCertificates:
    def test_solve_output_passes_checker(self):
        for a in (eve_two_loops(), adam_two_loops(), eve_plus_loop(), drift_two_cycle()):
            r = solve(a)
            assert check_certificate(a, r).ok

    def test_lowered_label_is_caught(self):
        a = drift_two_cycle()
        r = solve(a)
        assert r.measure.values == {"a": 1, "b": 0}
        tampered = dataclasses.replace(
            r, measure=ProgressMeasure(2, {"a": 0, "b": 0})
        )
        verdict = check_certificate(a, tampered)
        assert not verdict.ok
        assert any(v.vertex == "a" and v.edge == 0 and v.kind == "edge"
                   for v in verdict.violations)

    def test_strategy_escaping_winning_region_is_caught(self):
        # e can win by looping at -1; claim a certificate whose strategy
        # walks into Adam's +1 trap instead
        a = mk(
            [("e", "eve"), ("t", "adam")],
            [("e", "e", -1), ("e", "t", 0), ("t", "t", 1)],
        )
        good = solve(a)
        assert good.winning_eve == frozenset({"e"})
        assert good.strategy == {"e": 0}
        bad = dataclasses.replace(good, strategy={"e": 1})
        verdict = check_certificate(a, bad)
        assert not verdict.ok
        assert any(v.kind == "escape" for v in verdict.violations)

    def test_adam_edge_leaving_region_is_caught(self):
        # declare Adam's vertex winning although one of his edges leaves
        a = mk(
            [("a", "adam"), ("g", "eve")],
            [("a", "g", -1), ("a", "a", 1), ("g", "g", -1)],
        )
        r = solve(a)
        assert r.winning_adam == frozenset({"a"})
        forged = SolveResult(
            winning_eve=frozenset({"a", "g"}),
            winning_adam=frozenset(),
            measure=ProgressMeasure(2, {"a": 5, "g": 0}),
            strategy={"g": 2},
        )
        verdict = check_certificate(a, forged)
        assert not verdict.ok
        assert any(v.vertex == "a" and v.edge == 1 for v in verdict.violations)

    def test_checker_is_not_tied_to_solve_output(self):
        # inflate every finite label by a constant: still a valid witness
        a = drift_two_cycle()
        r = solve(a)
        inflated = dataclasses.replace(
            r,
            measure=ProgressMeasure(
                r.measure.m,
                {v: t + 7 for v, t in r.measure.values.items()},
            ),
        )
        assert check_certificate(a, inflated).ok

    def test_structural_validation(self):
        a = eve_two_loops()
        r = solve(a)
        with pytest.raises(CertificateFormatError):
            check_certificate(a, dataclasses.replace(r, strategy={}))
        with pytest.raises(CertificateFormatError):
            check_certificate(a, dataclasses.replace(r, strategy={"e": 9}))
        with pytest.raises(CertificateFormatError):
            check_certificate(
                a, dataclasses.replace(r, measure=ProgressMeasure(1, {}))
            )
        with pytest.raises(CertificateFormatError):
            # finite label on a vertex declared losing
            check_certificate(
                a,
                SolveResult(
                    winning_eve=frozenset(),
                    winning_adam=frozenset({"e"}),
                    measure=ProgressMeasure(1, {"e": 0}),
                    strategy={},
                ),
            )
        with pytest.raises(CertificateFormatError):
            # winning sets must partition the vertices
            check_certificate(
                a,
                SolveResult(
                    winning_eve=frozenset({"e"}),
                    winning_adam=frozenset({"e"}),
                    measure=ProgressMeasure(1, {"e": 0}),
                    strategy={"e": 1},
                ),
            )


class TestResultSerialization:
    def test_round_trip(self):
        for a in (eve_two_loops(), adam_two_loops(), drift_two_cycle()):
            r = solve(a)
            obj = result_to_obj(r)
            assert result_from_obj(obj) == r
            # and through actual JSON text
            assert result_from_obj(json.loads(json.dumps(obj))) == r

    def test_top_marker(self):
        obj = result_to_obj(solve(adam_two_loops()))
        assert obj["measure"]["a"] == "top"
        assert obj["winning_adam"] == ["a"]

    def test_malformed_objects_rejected(self):
        good = result_to_obj(solve(eve_two_loops()))
        for breaker in (
            lambda o: o.pop("m"),
            lambda o: o.__setitem__("m", 0),
            lambda o: o.__setitem__("winning_eve", "e"),
            lambda o: o["measure"].__setitem__("e", "TOP"),
            lambda o: o["measure"].__setitem__("e", -1),
            lambda o: o["strategy"].__setitem__("e", "1"),
        ):
            obj = json.loads(json.dumps(good))
            breaker(obj)
            with pytest.raises(CertificateFormatError):
                result_from_obj(obj)


class TestSimulate:
    def test_negative_loop_ten_steps(self):
        a = mk([("v", "eve")], [("v", "v", -1)])
        r = solve(a)
        steps = simulate(a, r, "v", 10, seed=0)
        assert [s.weight for s in steps] == [-1] * 10
        assert prefix_bound_holds(r, "v", steps)

    def test_two_vertex_certified_run(self):
        a = drift_two_cycle("adam")
        r = solve(a)
        steps = simulate(a, r, "a", 100, seed=3)
        assert len(steps) == 100
        f0 = r.measure.values["a"]
        for s in steps:
            assert r.measure.m * s.prefix_sum <= f0 - s.step
        assert prefix_bound_holds(r, "a", steps)

    def test_start_must_be_winning(self):
        a = eve_plus_loop()
        r = solve(a)
        with pytest.raises(ValueError):
            simulate(a, r, "v", 5, seed=0)

    def test_deterministic_for_fixed_seed(self):
        a = generate_arena(5, 3, 2, 11)
        r = solve(a)
        if r.winning_eve:
            v0 = sorted(r.winning_eve)[0]
            one = simulate(a, r, v0, 50, seed=5)
            two = simulate(a, r, v0, 50, seed=5)
            assert one == two


class TestValue:
    def test_examples(self):
        assert value(eve_two_loops(), "e") == Fraction(-1)
        assert value(adam_two_loops(), "a") == Fraction(1)
        assert value(mean_minus_one_cycle(), "a") == Fraction(-1)

    def test_all_eve_arenas_reach_the_best_cycle(self):
        for seed in range(25):
            a = all_eve(generate_arena(1 + seed % 4, 2, 2, 800 + seed))
            for vid in sorted(a.vertex_ids()):
                negated = Arena(
                    a.vertices,
                    tuple(Edge(e.src, e.dst, -e.weight) for e in a.edges),
                )
                best = -max_cycle_mean(negated, start=vid)
                assert value(a, vid) == best

    def test_all_adam_arenas_reach_the_worst_cycle(self):
        for seed in range(25):
            a = all_adam(generate_arena(1 + seed % 4, 2, 2, 900 + seed))
            for vid in sorted(a.vertex_ids()):
                assert value(a, vid) == max_cycle_mean(a, start=vid)

    def test_threshold_consistency_on_a_small_arena(self):
        a = generate_arena(3, 2, 2, 17)
        n = len(a.vertices)
        wmax = a.max_abs_weight()
        for vid in sorted(a.vertex_ids()):
            val = value(a, vid)
            assert 1 <= val.denominator <= n
            assert abs(val) <= wmax
            for q in range(1, n + 1):
                for p in range(-q * wmax, q * wmax + 1):
                    theta = Fraction(p, q)
                    shifted = Arena(
                        a.vertices,
                        tuple(
                            Edge(e.src, e.dst, q * e.weight - p) for e in a.edges
                        ),
                    )
                    eve_wins = vid in oracle_winning_set(shifted)
                    assert eve_wins == (theta > val)


class TestLiftingSchedules:
    def test_orders_agree(self):
        for seed in range(60):
            a = generate_arena(1 + seed % 6, 3, 2, 1000 + seed)
            assert solve(a, order="worklist") == solve(a, order="round-robin")

    def test_unknown_order_rejected(self):
        with pytest.raises(ValueError):
            solve(eve_two_loops(), order="chaos")


def test_scaling_leaves_winning_sets_alone():
    for seed in range(40):
        a = generate_arena(1 + seed % 5, 2, 2, 1100 + seed)
        r = solve(a)
        for L in (2, 3, 7):
            scaled = Arena(
                a.vertices,
                tuple(Edge(e.src, e.dst, L * e.weight) for e in a.edges),
            )
            rs = solve(scaled)
            assert rs.winning_eve == r.winning_eve
            assert check_certificate(scaled, rs).ok
