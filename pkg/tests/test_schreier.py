import random

import pytest

import oracles
from zcgroups import (
    EndSpec,
    KneadingData,
    KneadingError,
    VertexCapExceeded,
    ZAutomaton,
    ball,
    ball_to_dot,
    ball_to_json_obj,
    build_kneading,
    is_tree,
    leaving_edges,
    neighbors,
    project_leaving,
    spine,
    state_moves_end,
    verify_inductive_structure,
)
from zcgroups.automaton import a_state, b_state
from zcgroups.schreier import label_name


def named_neighbors(aut, v):
    return sorted((label_name(lab), w) for lab, w in neighbors(aut, v))


# -- spine -----------------------------------------------------------------------


def test_spine_examples(k01):
    sp = spine(k01, 1)
    assert (sp.word, sp.state) == ((0,), b_state(1))
    sp = spine(k01, 2)
    assert (sp.word, sp.state) == ((1, 0), b_state(1))
    k = 4
    sp = spine(build_kneading([0], [k]), 3)
    assert (sp.word, sp.state) == ((k, k, 0), b_state(1))


def test_spine_is_reversed_prefix(family):
    for aut in family:
        for m in range(1, 13):
            sp = spine(aut, m)
            prefix = oracles.kneading_sequence_prefix(aut.data.x, aut.data.y, m)
            assert sp.word == tuple(reversed(prefix))
            assert aut.section(sp.state, sp.word) == a_state(1)


def test_spine_uniqueness(family):
    # no other (state, word) pair of the level restricts to the translator
    for aut in family:
        for m in range(1, 6):
            sp = spine(aut, m)
            hits = [
                (q, v)
                for q, v in aut.activity_pairs(m)
                if aut.section(q, v) == a_state(1)
            ]
            assert hits == [(sp.state, sp.word)]


def test_spine_needs_unique_incoming():
    broken = ZAutomaton(
        KneadingData((0,), (1,)),
        {b_state(1): {0: a_state(1), 5: a_state(1)}},
    )
    with pytest.raises(KneadingError):
        spine(broken, 1)


# -- neighbors ----------------------------------------------------------------------


def test_neighbors_level_one_line(k01):
    assert named_neighbors(k01, (3,)) == [("a1", (4,)), ("a1^-1", (2,))]


def test_neighbors_level_two(k01):
    # spine vertices (first letter 0) carry the b-edges; off-spine
    # vertices only see the translator
    assert named_neighbors(k01, (0, 0)) == [
        ("a1", (1, 0)),
        ("a1^-1", (-1, 0)),
        ("b1", (0, 1)),
        ("b1^-1", (0, -1)),
    ]
    assert named_neighbors(k01, (1, 0)) == [("a1", (2, 0)), ("a1^-1", (0, 0))]
    assert named_neighbors(k01, (2, 5)) == [("a1", (3, 5)), ("a1^-1", (1, 5))]


def test_edges_change_one_position(family):
    rng = random.Random(7)
    for aut in family:
        for _ in range(25):
            level = rng.randint(1, 4)
            v = tuple(rng.randint(-6, 6) for _ in range(level))
            for _, w in neighbors(aut, v):
                assert sum(1 for i in range(level) if v[i] != w[i]) == 1


# -- balls ------------------------------------------------------------------------------


def test_ball_level_one_is_line(k01):
    window = ball(k01, (0,), 2)
    assert window.vertices == ((0,), (-1,), (1,), (-2,), (2,))
    undirected = window.undirected_edges()
    assert len(undirected) == 4
    assert all(lab == (a_state(1), 1) for _, lab, _ in undirected)


def test_ball_star_around_spine_vertex(k01):
    window = ball(k01, (0, 0), 1)
    assert set(window.vertices) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_ball_off_spine_is_line(k01):
    window = ball(k01, (5, 5), 3)
    assert set(window.vertices) == {(i, 5) for i in range(2, 9)}
    assert all(lab[0] == a_state(1) for _, lab, _ in window.edges)


def test_ball_vertex_cap(k01):
    with pytest.raises(VertexCapExceeded):
        ball(k01, (0,), 50, vertex_cap=10)


def test_is_tree_examples(k01):
    ok, cycle = is_tree(ball(k01, (0,), 5))
    assert ok and cycle is None
    ok, cycle = is_tree(ball(k01, (0, 0), 0))  # single vertex, no edges
    assert ok
    ok, cycle = is_tree(ball(build_kneading([0], [2]), (0, 0, 0), 4))
    assert ok


def test_is_tree_detects_parallel_edges():
    # two states restricting to the translator at the same letter give
    # parallel edges at the next level
    broken = ZAutomaton(
        KneadingData((0,), (1, 2)),
        {b_state(1): {0: a_state(1)}, b_state(2): {0: a_state(1)}},
    )
    ok, cycle = is_tree(ball(broken, (0, 0), 2))
    assert not ok
    assert cycle is not None and len(cycle) >= 2


def test_random_balls_are_trees(family):
    rng = random.Random(20260808)
    for _ in range(40):
        aut = family[rng.randrange(len(family))]
        level = rng.randint(1, 5)
        center = tuple(rng.randint(-20, 20) for _ in range(level))
        ok, cycle = is_tree(ball(aut, center, rng.randint(0, 8)))
        assert ok, (aut, center, cycle)


# -- inductive structure --------------------------------------------------------------------


def test_inductive_structure_level_one(k01):
    report = verify_inductive_structure(k01, 1, range(-3, 4))
    assert report.passed
    assert report.spine_edges_checked > 0
    assert report.copy_edges_checked > 0


def test_inductive_structure_level_two(k01):
    report = verify_inductive_structure(k01, 2, range(-2, 3))
    assert report.passed


def test_inductive_structure_family(family):
    for aut in family:
        report = verify_inductive_structure(aut, 1, range(-2, 3))
        assert report.passed, report.violations


def test_inductive_structure_vacuous_window(k01):
    report = verify_inductive_structure(k01, 1, ())
    assert report.passed
    assert report.copy_edges_checked == 0
    assert report.spine_edges_checked == 0


# -- leaving edges ------------------------------------------------------------------------------


def test_state_moves_end(k01):
    a, b = a_state(1), b_state(1)
    ones = EndSpec((), (1,))
    zeros = EndSpec((), (0,))
    assert state_moves_end(k01, a, ones)
    assert state_moves_end(k01, a, zeros)
    assert not state_moves_end(k01, b, ones)  # loops on 1 forever
    assert state_moves_end(k01, b, zeros)  # falls into the translator


def test_leaving_edges_kneading_end(k01):
    end = k01.data.end()  # 0 : 1
    for m in range(1, 6):
        le = leaving_edges(k01, end, m)
        spine_vertex = (1,) * (m - 1) + (0,)
        assert le.edges == {
            (spine_vertex, (b_state(1), 1)),
            (spine_vertex, (b_state(1), -1)),
        }


def test_leaving_edges_bounded(family):
    ends = [EndSpec((), (0,)), EndSpec((0,), (1,)), EndSpec((2, -1), (3,))]
    for aut in family:
        bound = 2 * (aut.k + aut.p)
        for end in ends:
            for m in range(1, 9):
                assert len(leaving_edges(aut, end, m).edges) <= bound


def test_leaving_edges_empty_when_nothing_moves():
    # a lone loop that never reaches the translator moves no end
    quiet = ZAutomaton(KneadingData((0,), (1,)), {b_state(1): {1: b_state(1)}})
    le = leaving_edges(quiet, EndSpec((), (5,)), 2)
    assert le.edges == frozenset()


def test_project_leaving_kneading_end(k01):
    end = k01.data.end()
    mapping = project_leaving(k01, end, 2)
    b = b_state(1)
    assert mapping == {
        ((1, 0), (b, 1)): ((0,), (b, -1)),
        ((1, 0), (b, -1)): ((0,), (b, -1)),
    }


def test_project_leaving_self_map(k01):
    # an edge leaving two window levels at once projects to itself
    mapping = project_leaving(k01, EndSpec((), (0,)), 2)
    b = b_state(1)
    assert mapping[((1, 0), (b, 1))] == ((1,), (b, 1))
    assert mapping[((1, 0), (b, -1))] == ((1,), (b, -1))
    assert mapping[((1, 1), (b, 1))] == ((0,), (b, 1))


def test_project_leaving_lands_in_previous_level(family):
    ends = [EndSpec((), (0,)), EndSpec((0,), (1,))]
    for aut in family[:4]:
        for end in ends:
            for m in range(2, 6):
                em = leaving_edges(aut, end, m)
                mapping = project_leaving(aut, end, m)
                assert set(mapping) == set(em.edges)
                prev = leaving_edges(aut, end, m - 1).edges
                assert set(mapping.values()) <= prev


# -- exports -------------------------------------------------------------------------------------


def test_dot_export(k01):
    text = ball_to_dot(ball(k01, (0,), 1))
    assert text == (
        "graph schreier {\n"
        '  "0";\n'
        '  "-1";\n'
        '  "1";\n'
        '  "0" -- "1" [label="a1"];\n'
        '  "-1" -- "0" [label="a1"];\n'
        "}\n"
    )


def test_json_export(k01):
    obj = ball_to_json_obj(ball(k01, (0, 0), 1))
    assert obj["center"] == [0, 0]
    assert obj["radius"] == 1
    assert [0, 0] in obj["vertices"]
    labels = {e["label"] for e in obj["edges"]}
    assert labels == {"a1", "b1"}
    froms = [tuple(e["from"]) for e in obj["edges"]]
    assert froms == sorted(froms, key=lambda v: tuple((abs(z), z >= 0) for z in v))


def test_exports_deterministic(k01):
    first = ball_to_dot(ball(k01, (0, 0), 3))
    second = ball_to_dot(ball(k01, (0, 0), 3))
    assert first == second
