import pytest
from hypothesis import given, settings

from pathagg.core.aggregation import (
    AlgorithmState,
    Prefix,
    PrefixSet,
    build_dependency_graph,
    extend_maximal_prefixes,
    extend_selected,
    merge_update,
    select_inactivation_set,
    solve,
)
from pathagg.core.errors import InvalidInstanceError, SolverInvariantError
from pathagg.core.instance import Instance
from pathagg.core.trace_io import dump_trace
from pathagg.core.verification import check_arborescence, check_trace
from pathagg.utils.bounds import safe_iteration_bound

from .strategies import tiny_instances


def test_crossing_pair_first_iteration(crossing_pair):
    state = AlgorithmState.initial(crossing_pair)
    prefixes = extend_maximal_prefixes(state, crossing_pair)
    assert prefixes.lengths() == {1: 1, 2: 1}
    assert prefixes.root_reacher is None

    h = build_dependency_graph(prefixes, crossing_pair)
    assert h.vertices == (1, 2)
    assert h.edges == ((1, 2), (2, 1))
    assert h.coloring == {1: 0, 2: 1}

    s_h = select_inactivation_set(h)
    assert s_h == frozenset({1})

    extended = extend_selected(prefixes, s_h, crossing_pair)
    assert extended.lengths() == {1: 2, 2: 1}
    assert extended.selected == frozenset({1})

    after = merge_update(state, extended, crossing_pair)
    assert dict(after.branching.out_arc) == {1: 0, 3: 1, 2: 3}
    assert after.active == (2,)
    assert after.active_prefix_len == {2: 1}
    assert after.iteration == 1


def test_crossing_pair_solution(crossing_pair):
    solution, trace = solve(crossing_pair)

    assert solution.iterations == 2
    assert solution.arcs == (0, 3, 4, 5)
    assert solution.switching_costs == {1: 1, 2: 0}
    assert solution.max_switching == 1

    first, second = trace.records
    assert first.selected == (1,)
    assert first.arcs_added == (0, 1, 3)
    assert first.arcs_removed == ()
    assert second.reaches_root == 2
    assert second.dependency_edges == ()
    assert second.arcs_added == (4, 5)
    assert second.arcs_removed == (1,)
    assert second.active_after == (2,)


def test_three_vertex_example(three_vertex):
    solution, trace = solve(three_vertex)
    assert solution.iterations == 1
    assert solution.arcs == (0, 1)
    assert solution.switching_costs == {1: 0, 2: 1}
    (record,) = trace.records
    assert record.reaches_root == 1
    assert record.selected == (2,)
    assert record.dependency_edges == ()


def test_star_selects_both_blocked_terminals(star):
    solution, trace = solve(star)
    (record,) = trace.records
    assert record.coloring == {2: 0, 3: 0}
    assert record.selected == (2, 3)
    assert record.active_after == (1,)
    assert solution.arcs == (0, 1, 3)
    assert solution.switching_costs == {1: 0, 2: 1, 3: 1}


def test_single_path_is_taken_whole(single_path):
    solution, trace = solve(single_path)
    assert solution.iterations == 1
    assert solution.arcs == (0, 1, 2)
    assert solution.max_switching == 0


def test_lower_bound_tree_depth_two(lb_tree_d2):
    solution, trace = solve(lb_tree_d2)

    assert [r.selected for r in trace.records] == [(2, 3, 4), (5,), (6,)]
    assert [r.arcs_removed for r in trace.records] == [(), (1,), (7,)]
    assert solution.out_arc_map(lb_tree_d2) == {1: 0, 2: 9, 3: 2, 4: 4, 5: 6, 6: 8}
    assert solution.iterations == 3
    assert solution.max_switching == 1


def test_no_terminals_returns_empty_solution():
    inst = Instance.from_arcs(2, 0, [(1, 0, "a")], {}, terminals=[])
    solution, trace = solve(inst)
    assert solution.arcs == ()
    assert solution.iterations == 0
    assert solution.max_switching == 0
    assert trace.records == ()


def test_invalid_instance_is_rejected():
    inst = Instance.from_arcs(3, 0, [(2, 1, "a"), (1, 0, "b")], {2: [0, 1]}, terminals=[2])
    with pytest.raises(InvalidInstanceError) as excinfo:
        solve(inst)
    assert excinfo.value.report.rules() == ["non-monochromatic-path"]


def test_trace_is_byte_identical_across_runs(lb_tree_d2):
    _, first = solve(lb_tree_d2)
    _, second = solve(lb_tree_d2)
    assert dump_trace(first) == dump_trace(second)


def test_extension_into_another_selected_prefix_is_a_bug(crossing_pair):
    state = AlgorithmState.initial(crossing_pair)
    prefixes = extend_maximal_prefixes(state, crossing_pair)
    with pytest.raises(SolverInvariantError):
        extend_selected(prefixes, {1, 2}, crossing_pair)


def test_merge_rejects_second_out_arc(three_vertex):
    state = AlgorithmState.initial(three_vertex)
    overlapping = PrefixSet({1: Prefix(1, reaches_root=True), 2: Prefix(2, reaches_root=True)}, {})
    with pytest.raises(SolverInvariantError):
        merge_update(state, overlapping, three_vertex)


@settings(max_examples=200, deadline=None)
@given(tiny_instances())
def test_solution_is_valid_on_tiny_instances(inst):
    solution, trace = solve(inst)
    assert check_arborescence(solution, inst).ok
    assert solution.iterations <= safe_iteration_bound(inst.k)
    assert solution.max_switching <= 2 * solution.iterations
    assert check_trace(trace, inst).ok
