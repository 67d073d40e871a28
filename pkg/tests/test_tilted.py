import pytest

from qbgraph.qbg import QbgPath, build_qbg
from qbgraph.root_system import build_root_system
from qbgraph.tilted import (
    TiltedOrder,
    compare_path_weights,
    expected_weight_shift,
    left_multiplication_step,
    left_step_edge,
    left_step_subgraph_strongly_connected,
    quantum_length,
    transform_path,
    weights_congruent,
)
from qbgraph.weyl import Trichotomy, WeylGroup


@pytest.fixture(scope="module")
def a2():
    rs = build_root_system("A", 2)
    return rs, WeylGroup(rs)


@pytest.fixture(scope="module")
def graph(a2):
    rs, W = a2
    return build_qbg(W, rs.parabolic(()))


def test_tilted_reflexive(graph):
    T = TiltedOrder(graph)
    for v in graph.vertices:
        for u in graph.vertices:
            assert T.leq(u, v, v)


def test_identity_base_is_bruhat_order(a2, graph):
    rs, W = a2
    T = TiltedOrder(graph)
    e = W.identity.index
    for v in W.elements():
        for w in W.elements():
            assert T.leq(e, v.index, w.index) == W.bruhat_leq(v, w)


def test_tilted_from_top(a2, graph):
    rs, W = a2
    T = TiltedOrder(graph)
    w0 = W.longest_element().index
    e = W.identity.index
    r1 = W.simple_reflection(1).index
    assert T.leq(w0, w0, e)
    assert graph.distance(w0, e) == 1
    assert graph.distance(w0, r1) == 2
    # a shortest route to r1 may pass the identity, but not conversely
    assert T.leq(w0, e, r1)
    assert not T.leq(w0, r1, e)


def test_coset_min_examples(a2, graph):
    rs, W = a2
    T = TiltedOrder(graph)
    J = rs.parabolic((1,))
    w0 = W.longest_element()
    m = T.coset_min(w0.index, W.identity, J)
    assert m == W.identity
    assert graph.distance(w0.index, m.index) == 1
    # from the identity the minimum is the coset floor
    for z in W.elements():
        assert T.coset_min(W.identity.index, z, J) == W.min_coset_rep(z, J)
    # the empty parabolic gives back the element itself
    J0 = rs.parabolic(())
    for u in graph.vertices:
        for z in W.elements():
            assert T.coset_min(u, z, J0) == z


def test_quantum_length_values(a2, graph):
    rs, W = a2
    assert quantum_length(graph, W.identity.index) == 0
    assert quantum_length(graph, W.longest_element().index) == 1
    # simple reflections need the long way around: up, across the top, down
    assert quantum_length(graph, W.simple_reflection(1).index) == 3
    assert quantum_length(graph, W.simple_reflection(2).index) == 3


def test_quantum_length_rank_one():
    rs = build_root_system("A", 1)
    W = WeylGroup(rs)
    g = build_qbg(W, rs.parabolic(()))
    assert quantum_length(g, W.simple_reflection(1).index) == 1


def test_left_multiplication_step_cases(a2):
    rs, W = a2
    J = rs.parabolic((1,))
    g = build_qbg(W, J)
    up = left_multiplication_step(g, W.identity, 2)
    assert up.classification is Trichotomy.UP
    assert up.edge.kind == "bruhat"
    assert up.edge.source == W.identity.index
    assert up.edge.target == W.simple_reflection(2).index

    fixed = left_multiplication_step(g, W.identity, 1)
    assert fixed.classification is Trichotomy.FIXED
    assert fixed.edge is None and fixed.twist is None

    # the theta step out of the top of the cycle is the quantum edge
    w = W.from_word([1, 2])
    out = left_multiplication_step(g, w, 0)
    assert out.classification is Trichotomy.UP
    assert out.edge.kind == "quantum"
    assert out.edge.label == (0, 1)
    assert out.edge.target == W.identity.index

    # the theta step at the identity comes in with a twist
    down = left_multiplication_step(g, W.identity, 0)
    assert down.classification is Trichotomy.DOWN
    assert down.edge.target == W.identity.index
    assert down.twist == W.simple_reflection(1)
    assert down.edge.label == (0, 1)


def test_left_steps_are_edges(a2, graph):
    rs, W = a2
    assert left_step_subgraph_strongly_connected(graph)
    for v in graph.vertices:
        for i in range(0, rs.rank + 1):
            edge = left_step_edge(graph, i, W.element(v))
            if edge is not None:
                assert graph.edge(edge.source, edge.label) == edge


def test_transform_case1_worked_example(a2):
    rs, W = a2
    J = rs.parabolic((1,))
    g = build_qbg(W, J)
    e1 = g.edge(W.identity.index, (0, 1))
    e2 = g.edge(e1.target, (1, 1))
    p = QbgPath(W.identity.index, (e1, e2))
    p2 = transform_path(g, p, 1, 1)
    assert len(p2) == 1
    assert p2.start == W.identity.index
    assert p2.end == W.simple_reflection(2).index
    assert p2.weight(2) == (0, 0)  # no correction away from the theta step


def test_transform_case4_empty_path(a2):
    rs, W = a2
    J = rs.parabolic((1,))
    g = build_qbg(W, J)
    p = g.empty_path(W.identity.index)
    p2 = transform_path(g, p, 2, 4)  # pairing of alpha_2 against lambda is 1 > 0
    assert len(p2) == 0
    assert p2.start == W.simple_reflection(2).index


def test_transform_rejects_bad_cases(a2):
    rs, W = a2
    J = rs.parabolic((1,))
    g = build_qbg(W, J)
    p = g.empty_path(W.identity.index)
    with pytest.raises(ValueError):
        transform_path(g, p, 2, 1)
    with pytest.raises(ValueError):
        transform_path(g, p, 2, 7)


def test_theta_corrections_only_for_theta_steps(a2, graph):
    rs, W = a2
    g2 = build_qbg(W, rs.parabolic((1,)))
    for j in (1, 2):
        for case in (1, 2, 3, 4):
            for u in g2.vertices:
                for v in g2.vertices:
                    d = g2.distance(u, v)
                    for p in g2.iter_paths(u, v, d):
                        if len(p) != d:
                            continue
                        assert expected_weight_shift(g2, p, j, case) == (0, 0)


def test_transform_preserves_shortest(a2, graph):
    rs, W = a2
    g = graph
    rank = rs.rank
    for u in g.vertices:
        for v in g.vertices:
            d = g.distance(u, v)
            for p in g.iter_paths(u, v, d):
                if len(p) != d:
                    continue
                for j in range(0, rank + 1):
                    for case in (1, 2, 3, 4):
                        try:
                            p2 = transform_path(g, p, j, case)
                        except ValueError:
                            continue
                        assert len(p2) == g.distance(p2.start, p2.end)
                        shift = expected_weight_shift(g, p, j, case)
                        want = tuple(
                            a + b for a, b in zip(p.weight(rank), shift)
                        )
                        assert weights_congruent(g, p2.weight(rank), want)


def test_compare_path_weights(a2):
    rs, W = a2
    J = rs.parabolic((1,))
    g = build_qbg(W, J)
    e = W.identity.index
    empty = g.empty_path(e)
    assert compare_path_weights(g, empty, empty) == (0, 0)
    # the full cycle back to the identity carries the quantum coroot
    e1 = g.edge(e, (0, 1))
    e2 = g.edge(e1.target, (1, 1))
    e3 = g.edge(e2.target, (0, 1))
    cycle = QbgPath(e, (e1, e2, e3))
    assert compare_path_weights(g, empty, cycle) == (0, 1)
    with pytest.raises(ValueError):
        compare_path_weights(g, cycle, empty)


def test_two_shortest_paths_same_weight():
    rs = build_root_system("A", 3)
    W = WeylGroup(rs)
    g = build_qbg(W, rs.parabolic(()))
    u = W.identity.index
    v = W.from_word([1, 2]).index  # one-line 2314
    assert W.describe(W.element(v)) == "2314"
    d = g.distance(u, v)
    paths = [p for p in g.iter_paths(u, v, d) if len(p) == d]
    assert len(paths) == 2
    assert {p.weight(3) for p in paths} == {(0, 0, 0)}
    base = g.shortest_path(u, v)
    for p in paths:
        assert compare_path_weights(g, base, p) == (0, 0, 0)
