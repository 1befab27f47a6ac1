from dataclasses import replace
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pathagg.core.errors import InstanceFormatError, WalkError
from pathagg.core.generators import GenSpec, generate
from pathagg.core.instance import (
    Instance,
    instance_digest,
    parse_instance,
    serialize_instance,
    simplify_walk,
    validate_instance,
)


def test_fixtures_validate(crossing_pair, three_vertex, star, single_path, spine_tree, lb_tree_d2):
    for inst in (crossing_pair, three_vertex, star, single_path, spine_tree, lb_tree_d2):
        assert validate_instance(inst).ok


def test_from_arcs_interns_colors_by_first_appearance(three_vertex):
    assert three_vertex.colors == ("red", "blue")
    assert [arc.color for arc in three_vertex.arcs] == [0, 1, 1]
    assert three_vertex.color_name(2) == "blue"


def test_path_vertices_and_out_arcs(crossing_pair):
    assert crossing_pair.path_vertices(1) == (1, 3, 2, 0)
    assert crossing_pair.path_vertices(2) == (2, 4, 3, 0)
    assert crossing_pair.out_arcs(3) == (1, 5)
    assert crossing_pair.out_arcs(0) == ()


def test_non_monochromatic_path_is_reported():
    inst = Instance.from_arcs(3, 0, [(2, 1, "a"), (1, 0, "b")], {2: [0, 1]}, terminals=[2])
    assert validate_instance(inst).rules() == ["non-monochromatic-path"]


def test_validation_enumerates_every_violation():
    inst = Instance.from_arcs(
        4,
        0,
        [(1, 1, "a"), (2, 0, "a"), (3, 2, "a"), (1, 0, "a")],
        {0: [1], 2: [1], 3: [0, 9]},
        terminals=[0, 2, 2, 3, 1],
    )
    rules = set(validate_instance(inst).rules())
    assert {
        "self-loop",
        "root-terminal",
        "duplicate-terminal",
        "missing-path",
        "dangling-arc",
    } <= rules


def test_discontiguous_and_non_simple_paths():
    arcs = [(3, 1, "a"), (2, 0, "a"), (1, 2, "a"), (2, 1, "a"), (1, 0, "a")]
    gap = Instance.from_arcs(4, 0, arcs, {3: [0, 1]}, terminals=[3])
    assert "discontiguous-path" in validate_instance(gap).rules()

    loop = Instance.from_arcs(4, 0, arcs, {3: [0, 2, 3, 4]}, terminals=[3])
    report = validate_instance(loop)
    assert "non-simple-path" in report.rules()
    assert report.violations[-1].ids == (3, 1)


def test_orphan_path_and_wrong_endpoints():
    inst = Instance.from_arcs(3, 0, [(2, 1, "a"), (1, 0, "a")], {2: [0], 1: [1]}, terminals=[2])
    rules = validate_instance(inst).rules()
    assert "orphan-path" in rules
    assert "path-endpoints" in rules


def test_parse_serialize_preserves_instance(crossing_pair):
    data = serialize_instance(crossing_pair)
    assert parse_instance(data) == crossing_pair
    assert serialize_instance(parse_instance(data)) == data


def test_serialization_has_one_arc_per_line(single_path):
    text = serialize_instance(single_path).decode("utf-8")
    assert '    {"id": 1, "tail": 2, "head": 1, "color": "x"},' in text
    assert text.endswith("}\n")


def test_parse_rejects_unknown_field():
    doc = '{"vertices": 2, "root": 0, "arcs": [], "terminals": [], "paths": {}, "extra": 1}'
    with pytest.raises(InstanceFormatError):
        parse_instance(doc)


def test_parse_rejects_dangling_ids():
    doc = (
        '{"vertices": 2, "root": 0, "arcs": [{"id": 0, "tail": 1, "head": 5, "color": "a"}],'
        ' "terminals": [1], "paths": {"1": [0, 3]}}'
    )
    with pytest.raises(InstanceFormatError, match="Ids pendentes"):
        parse_instance(doc)


def test_parse_rejects_self_loop_and_misnumbered_arcs():
    loop = '{"vertices": 2, "root": 0, "arcs": [{"id": 0, "tail": 1, "head": 1, "color": "a"}], "terminals": [], "paths": {}}'
    with pytest.raises(InstanceFormatError):
        parse_instance(loop)

    shifted = '{"vertices": 2, "root": 0, "arcs": [{"id": 4, "tail": 1, "head": 0, "color": "a"}], "terminals": [], "paths": {}}'
    with pytest.raises(InstanceFormatError):
        parse_instance(shifted)


def test_parse_rejects_malformed_json():
    with pytest.raises(InstanceFormatError):
        parse_instance(b"{not json")
    with pytest.raises(InstanceFormatError, match="UTF-8"):
        parse_instance(b"\xff\xfe\x00")


def test_digest_tracks_content(three_vertex):
    same = Instance.from_arcs(3, 0, [(1, 0, "red"), (2, 1, "blue"), (1, 0, "blue")], {1: [0], 2: [1, 2]}, terminals=[1, 2])
    recolored = Instance.from_arcs(3, 0, [(1, 0, "green"), (2, 1, "blue"), (1, 0, "blue")], {1: [0], 2: [1, 2]}, terminals=[1, 2])
    assert instance_digest(three_vertex) == instance_digest(same)
    assert instance_digest(three_vertex) != instance_digest(recolored)
    assert len(instance_digest(three_vertex)) == 64


@pytest.fixture
def looped() -> Instance:
    arcs = [(1, 2, "x"), (2, 3, "x"), (3, 2, "x"), (2, 0, "x"), (3, 0, "y")]
    return Instance.from_arcs(4, 0, arcs, {1: [0, 3]}, terminals=[1])


def test_simplify_walk_cuts_loops(looped):
    assert simplify_walk([0, 1, 2, 3], looped) == [0, 3]
    assert simplify_walk([0, 3], looped) == [0, 3]
    assert simplify_walk([], looped) == []


def test_simplify_walk_rejects_bad_walks(looped):
    with pytest.raises(WalkError):
        simplify_walk([0, 3, 1], looped)
    with pytest.raises(WalkError):
        simplify_walk([0, 1, 4], looped)
    with pytest.raises(WalkError):
        simplify_walk([0, 1], looped)
    with pytest.raises(ValueError):
        simplify_walk([7], looped)


def _walks(max_length: int = 6):
    """Sequências de vértices em {1, 2, 3} sem repetição consecutiva, terminando na raiz 0."""
    for length in range(1, max_length + 1):
        for body in product((1, 2, 3), repeat=length):
            if all(a != b for a, b in zip(body, body[1:])):
                yield list(body) + [0]


def _as_instance(vertices) -> Instance:
    """Um arco novo por passo, todos da mesma cor."""
    arcs = [(tail, head, "x") for tail, head in zip(vertices, vertices[1:])]
    return Instance.from_arcs(4, 0, arcs, {}, terminals=[])


def _last_exit_erasure(vertices):
    """Apaga laços pela última saída: de cada vértice mantido, segue o arco da sua última visita."""
    kept = []
    step = 0
    while True:
        step = max(i for i, v in enumerate(vertices) if v == vertices[step])
        if step == len(vertices) - 1:
            return kept
        kept.append(step)
        step += 1


def test_simplify_walk_nested_loops():
    # 1->2->3->4->3->2->0: o laço em 3 está dentro do laço em 2
    vertices = [1, 2, 3, 4, 3, 2, 0]
    arcs = [(tail, head, "x") for tail, head in zip(vertices, vertices[1:])]
    inst = Instance.from_arcs(5, 0, arcs, {}, terminals=[])
    assert simplify_walk(list(range(6)), inst) == [0, 5]


def test_simplify_walk_matches_last_exit_erasure():
    checked = 0
    for vertices in _walks():
        inst = _as_instance(vertices)
        walk = list(range(len(vertices) - 1))
        assert simplify_walk(walk, inst) == _last_exit_erasure(vertices), vertices
        checked += 1
    assert checked == sum(3 * 2 ** (length - 1) for length in range(1, 7))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(1, 5), min_size=1, max_size=12), st.sampled_from(["a", "b"]))
def test_simplified_walk_is_a_simple_monochromatic_path(body, color):
    vertices = [v for i, v in enumerate(body) if i == 0 or v != body[i - 1]] + [0]
    arcs = [(tail, head, color) for tail, head in zip(vertices, vertices[1:])]
    arcs.append((1, 0, "b" if color == "a" else "a"))
    inst = Instance.from_arcs(6, 0, arcs, {}, terminals=[])

    result = simplify_walk(list(range(len(vertices) - 1)), inst)
    path = [inst.arcs[a] for a in result]
    assert path[0].tail == vertices[0]
    assert path[-1].head == 0
    assert all(a.head == b.tail for a, b in zip(path, path[1:]))
    assert len({arc.color for arc in path}) == 1
    visited = [arc.tail for arc in path] + [0]
    assert len(set(visited)) == len(visited)


GENERATED = [
    GenSpec("lb-tree", depth=2),
    GenSpec("rand-tree", n=30, max_parallel=3),
    GenSpec("planted-dag", n=40, k=12, extra_arcs=20, layers=4),
    GenSpec("tangled", n=30, k=10, layers=5),
    GenSpec("crossing"),
]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(GENERATED), st.integers(0, 2 ** 32))
def test_generated_instances_survive_round_trip(spec, seed):
    inst = generate(replace(spec, seed=seed))
    assert validate_instance(inst).ok

    data = serialize_instance(inst)
    parsed = parse_instance(data)
    assert parsed == inst
    assert serialize_instance(parsed) == data


def test_lower_bound_fixture_shape(lb_tree_d2):
    parsed = parse_instance(serialize_instance(lb_tree_d2))
    assert parsed.vertex_count == 7
    assert len(parsed.terminals) == 6
    assert len(parsed.arcs) == 1 * 2 + 2 * 4
