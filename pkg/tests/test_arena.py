import json
from fractions import Fraction

import pytest

from meanpayoff import (
    ArenaError,
    ArenaParseError,
    ArenaValidationError,
    UnknownVertexError,
    generate_arena,
    parse_arena,
    parse_rational_arena,
    reachable_restriction,
    scale_weights,
    serialize_arena,
)
from meanpayoff.arena import Vertex

from builders import mk


def _doc(vertices, edges):
    return json.dumps(
        {
            "vertices": [{"id": i, "owner": o} for i, o in vertices],
            "edges": [{"src": s, "dst": d, "weight": w} for s, d, w in edges],
        }
    )


def test_parse_smallest_arena():
    a = parse_arena(_doc([("v", "eve")], [("v", "v", -1)]))
    assert len(a.vertices) == 1
    assert len(a.edges) == 1
    assert a.edges[0].weight == -1


def test_parse_rejects_dead_end():
    doc = _doc([("v", "eve"), ("u", "adam")], [("v", "v", 0)])
    with pytest.raises(ArenaValidationError, match="dead end"):
        parse_arena(doc)
    with pytest.raises(ArenaValidationError, match="u"):
        parse_arena(doc)


def test_parse_rejects_dangling_endpoint():
    doc = _doc([("v", "eve")], [("v", "x", 0)])
    with pytest.raises(ArenaValidationError, match="dangling"):
        parse_arena(doc)
    with pytest.raises(ArenaValidationError, match="x"):
        parse_arena(doc)


def test_parse_rejects_duplicate_id():
    doc = _doc([("v", "eve"), ("v", "adam")], [("v", "v", 0)])
    with pytest.raises(ArenaValidationError, match="duplicate"):
        parse_arena(doc)


def test_parse_rejects_bad_owner_and_bad_weight():
    with pytest.raises(ArenaParseError):
        parse_arena(_doc([("v", "EVE")], [("v", "v", 0)]))
    with pytest.raises(ArenaParseError):
        parse_arena(_doc([("v", "eve")], [("v", "v", 0.5)]))
    # rational strings belong to the scaling pipeline, not plain parsing
    with pytest.raises(ArenaParseError):
        parse_arena(_doc([("v", "eve")], [("v", "v", "1/2")]))
    with pytest.raises(ArenaParseError):
        parse_arena("{not json")
    with pytest.raises(ArenaParseError):
        parse_arena(json.dumps({"vertices": []}))


def test_round_trip_identity():
    a = parse_arena(_doc([("v", "eve")], [("v", "v", -1)]))
    assert parse_arena(serialize_arena(a)) == a


def test_serialization_sorts_vertices_by_id():
    a = parse_arena(_doc([("b", "eve"), ("a", "adam")], [("a", "b", 1), ("b", "a", 0)]))
    obj = json.loads(serialize_arena(a))
    assert [v["id"] for v in obj["vertices"]] == ["a", "b"]


def test_parallel_edges_preserved_in_input_order():
    a = parse_arena(_doc([("v", "eve")], [("v", "v", 1), ("v", "v", -1)]))
    assert [e.weight for e in a.edges] == [1, -1]
    again = parse_arena(serialize_arena(a))
    assert [e.weight for e in again.edges] == [1, -1]


def test_reachable_restriction_examples():
    g = mk(
        [("a", "eve"), ("b", "eve"), ("c", "eve")],
        [("a", "b", 0), ("b", "b", 0), ("c", "c", 0)],
    )
    r = reachable_restriction(g, "a")
    assert sorted(v.id for v in r.vertices) == ["a", "b"]

    loop = mk([("v", "eve")], [("v", "v", 1)])
    assert reachable_restriction(loop, "v") == loop

    strongly = mk(
        [("a", "eve"), ("b", "adam")], [("a", "b", 2), ("b", "a", -2)]
    )
    assert reachable_restriction(strongly, "b") == strongly


def test_reachable_restriction_is_idempotent():
    for seed in range(40):
        g = generate_arena(2 + seed % 5, 2, 2, seed)
        root = sorted(v.id for v in g.vertices)[0]
        once = reachable_restriction(g, root)
        assert reachable_restriction(once, root) == once


def test_reachable_restriction_unknown_vertex():
    with pytest.raises(UnknownVertexError):
        reachable_restriction(mk([("v", "eve")], [("v", "v", 0)]), "nope")


def test_scale_weights_examples():
    vs = [Vertex("a", "eve"), Vertex("b", "eve")]
    a, L = scale_weights(vs, [("a", "b", Fraction(1, 2)), ("b", "a", Fraction(-1, 3))])
    assert L == 6
    assert [e.weight for e in a.edges] == [3, -2]

    a, L = scale_weights(vs, [("a", "b", 1), ("b", "a", -4)])
    assert L == 1
    assert [e.weight for e in a.edges] == [1, -4]

    a, L = scale_weights(vs, [("a", "b", "-1/4"), ("b", "a", "-1/6")])
    assert L == 12
    assert [e.weight for e in a.edges] == [-3, -2]


def test_scale_weights_rejects_zero_denominator():
    with pytest.raises(ArenaError):
        scale_weights([Vertex("v", "eve")], [("v", "v", "1/0")])


def test_parse_rational_arena():
    text = json.dumps(
        {
            "vertices": [{"id": "v", "owner": "eve"}],
            "edges": [{"src": "v", "dst": "v", "weight": "-2/3"}],
        }
    )
    a, L = parse_rational_arena(text)
    assert L == 3
    assert a.edges[0].weight == -2


def test_generate_arena_deterministic():
    assert generate_arena(3, 2, 2, 7) == generate_arena(3, 2, 2, 7)


def test_generate_arena_forced_shape():
    a = generate_arena(1, 1, 0, 0)
    assert len(a.vertices) == 1
    (e,) = a.edges
    assert e.src == e.dst
    assert e.weight == 0


def test_generate_arena_output_is_valid():
    a = generate_arena(5, 3, 2, 1)
    assert len(a.vertices) == 5
    outdeg = {v.id: 0 for v in a.vertices}
    for e in a.edges:
        outdeg[e.src] += 1
        assert -2 <= e.weight <= 2
    assert all(1 <= k <= 3 for k in outdeg.values())
    # parses back through the strict pipeline
    assert parse_arena(serialize_arena(a)) == a


def test_generate_arena_rejects_bad_parameters():
    for bad in ((0, 1, 0, 0), (1, 0, 0, 0), (1, 1, -1, 0)):
        with pytest.raises(ValueError):
            generate_arena(*bad)
