import random

import pytest

from unfold import (
    EMPTY_SET,
    FiniteSet,
    GraphModel,
    PreconditionError,
    add_edge,
    add_vertex,
    apply_lambda,
    check_path,
    complement,
    copy,
    copy_vertices,
    empty_graph,
    fold_succ,
    fold_vertex,
    graph_of,
    intersect,
    mirror,
    union,
    union_inner,
    union_outer,
)

from helpers import (
    as_dict_graph,
    graphs_equal,
    oracle_check_path,
    oracle_complement,
    oracle_copy_vertices,
    oracle_intersect,
    oracle_mirror,
    oracle_union,
    random_graph,
)


class TestBuilders:
    def test_add_vertex_to_empty(self):
        g = add_vertex(empty_graph(), 1)
        assert g.dom == FiniteSet([1])
        assert g.suc(1) == EMPTY_SET

    def test_add_vertex_is_idempotent(self):
        g = graph_of([1])
        assert add_vertex(g, 1) == g

    def test_add_vertex_grows_dom(self):
        g = add_vertex(graph_of([1]), 2)
        assert g.dom == FiniteSet([1, 2])

    def test_add_edge(self):
        g = add_edge(graph_of([1, 2]), 1, 2)
        assert g.suc(1) == FiniteSet([2])
        assert g.dom == FiniteSet([1, 2])

    def test_add_edge_is_idempotent(self):
        g = graph_of([1, 2], [(1, 2)])
        assert add_edge(g, 1, 2) == g

    def test_add_edge_outside_dom_is_rejected(self):
        g = graph_of([1])
        with pytest.raises(PreconditionError):
            add_edge(g, 1, 2)
        with pytest.raises(PreconditionError):
            add_edge(g, 2, 1)

    def test_copy_is_structurally_equal(self):
        g = graph_of([1, 2, 3], [(1, 2), (2, 3)])
        assert copy(g) == g
        assert copy(empty_graph()) == empty_graph()

    def test_copy_then_add_leaves_original_unchanged(self):
        g = graph_of([1])
        g2 = add_vertex(copy(g), 2)
        assert g.dom == FiniteSet([1])
        assert g2.dom == FiniteSet([1, 2])

    def test_model_invariant_checked_at_construction(self):
        with pytest.raises(ValueError, match="invariant"):
            GraphModel([1], {1: [2]})
        with pytest.raises(ValueError, match="invariant"):
            GraphModel([1], {2: [1]})

    def test_suc_defaults_to_empty_outside_dom(self):
        assert graph_of([1]).suc(99) == EMPTY_SET


class TestFolds:
    def test_fold_vertex_counts_vertices(self):
        g = graph_of([4, 5, 6])
        assert fold_vertex(lambda a, _: a + 1, g, 0) == 3

    def test_fold_vertex_on_empty_graph(self):
        assert fold_vertex(lambda a, _: a + 1, empty_graph(), 0) == 0

    def test_fold_vertex_collects_dom(self):
        g = graph_of([2, 7])
        collected = fold_vertex(lambda a, v: a.add(v), g, FiniteSet())
        assert collected == g.dom

    def test_fold_succ_counts_out_degree(self):
        g = graph_of([1, 2, 3], [(1, 2), (1, 3)])
        assert fold_succ(lambda a, _: a + 1, 0, g, 1) == 2

    def test_fold_succ_without_successors(self):
        g = graph_of([1])
        assert fold_succ(lambda a, _: a + 1, 0, g, 1) == 0

    def test_fold_succ_collects_successors(self):
        g = graph_of([1, 2, 3], [(1, 2), (1, 3)])
        out = fold_succ(lambda a, v: a.add(v), FiniteSet(), g, 1)
        assert out == g.suc(1)

    def test_fold_succ_requires_vertex(self):
        with pytest.raises(PreconditionError):
            fold_succ(lambda a, _: a, 0, graph_of([1]), 9)

    def test_complete_readings_agree_under_permitted(self):
        # a distinct subsequence of dom covers dom iff it has dom's size
        rng = random.Random(31)
        for _ in range(50):
            g = random_graph(rng)
            elems = list(g.dom.elems)
            rng.shuffle(elems)
            cut = rng.randint(0, len(elems))
            visited = tuple(elems[:cut])
            assert (FiniteSet(visited) == g.dom) == (len(visited) == len(g.dom))


class TestUnion:
    def test_union_with_empty_is_identity(self):
        g = graph_of([1, 2], [(1, 2)])
        assert union(g, empty_graph()) == g
        assert union(empty_graph(), g) == g

    def test_disjoint_chains(self):
        g1 = graph_of([1, 2], [(1, 2)])
        g2 = graph_of([2, 3], [(2, 3)])
        u = union(g1, g2)
        assert u.dom == FiniteSet([1, 2, 3])
        assert u.suc(1) == FiniteSet([2])
        assert u.suc(2) == FiniteSet([3])

    def test_self_union_is_identity(self):
        rng = random.Random(41)
        for _ in range(20):
            g = random_graph(rng)
            assert union(g, g) == g

    def test_matches_oracle(self):
        rng = random.Random(42)
        for _ in range(60):
            g1, g2 = random_graph(rng), random_graph(rng)
            expected = oracle_union(as_dict_graph(g1), as_dict_graph(g2))
            assert graphs_equal(union(g1, g2), expected)

    def test_commutative_and_associative(self):
        rng = random.Random(43)
        for _ in range(20):
            a, b, c = (random_graph(rng, 6) for _ in range(3))
            assert union(a, b) == union(b, a)
            assert union(union(a, b), c) == union(a, union(b, c))


class TestUnionInvariants:
    def test_partial_application_leaves_the_level_arguments(self):
        from unfold.graphs import UNION_INNER
        from unfold.terms import Closure

        g1 = graph_of([1, 2], [(1, 2)])
        g2 = graph_of([2])
        partial = apply_lambda(UNION_INNER, [g1, g2, 1])
        assert isinstance(partial, Closure)
        assert partial.remaining == 4  # (visited', acc', visited, acc)

    def test_outer_invariant_base_case(self):
        g1 = graph_of([1, 2], [(1, 2)])
        g2 = graph_of([2, 3], [(2, 3)])
        # after the vertex-completion pass, the outer edge invariant holds
        # with nothing visited
        base = fold_vertex(add_vertex, g1, copy(g2))
        assert apply_lambda(union_outer(g1, g2), [(), base]) is True

    def test_inner_invariant_at_exhaustion_gives_suc_union(self):
        g1 = graph_of([1, 2], [(1, 2)])
        g2 = graph_of([1, 3], [(1, 3)])
        u = union(g1, g2)
        inner = union_inner(g1, g2, 1)
        visited_inner = tuple(g1.suc(1).elems)
        assert apply_lambda(
            inner, [visited_inner, u, tuple(g1.dom.elems), u]) is True
        assert u.suc(1) == g1.suc(1).union(g2.suc(1))

    def test_outer_invariant_at_exhaustion_implies_postcondition(self):
        g1 = graph_of([1, 2], [(1, 2)])
        g2 = graph_of([2, 3], [(2, 3)])
        u = union(g1, g2)
        assert apply_lambda(union_outer(g1, g2),
                            [tuple(g1.dom.elems), u]) is True
        assert u.dom == g1.dom.union(g2.dom)

    def test_stepwise_checks_run_on_random_instances(self):
        # union raises on any intermediate state violating its invariants;
        # running it over random pairs exercises every step check
        rng = random.Random(44)
        for _ in range(30):
            union(random_graph(rng), random_graph(rng))


class TestIntersect:
    def test_self_intersection_is_identity(self):
        rng = random.Random(51)
        for _ in range(20):
            g = random_graph(rng)
            assert intersect(g, g) == g

    def test_disjoint_doms_give_empty_graph(self):
        g1 = graph_of([1, 2], [(1, 2)])
        g2 = graph_of([3, 4], [(3, 4)])
        assert intersect(g1, g2) == empty_graph()

    def test_small_example(self):
        g1 = graph_of([1, 2, 3], [(1, 2), (1, 3)])
        g2 = graph_of([1, 2], [(1, 2)])
        r = intersect(g1, g2)
        assert r.dom == FiniteSet([1, 2])
        assert r.suc(1) == FiniteSet([2])

    def test_matches_oracle(self):
        rng = random.Random(52)
        for _ in range(60):
            g1, g2 = random_graph(rng), random_graph(rng)
            expected = oracle_intersect(as_dict_graph(g1), as_dict_graph(g2))
            assert graphs_equal(intersect(g1, g2), expected)


class TestComplement:
    def test_complete_graph_complements_to_edgeless(self):
        verts = [1, 2, 3]
        g = graph_of(verts, [(u, w) for u in verts for w in verts])
        c = complement(g)
        assert c.dom == g.dom
        assert all(c.suc(v) == EMPTY_SET for v in verts)

    def test_edgeless_complements_to_complete(self):
        g = graph_of([1, 2])
        c = complement(g)
        assert all(c.suc(v) == g.dom for v in (1, 2))

    def test_small_example(self):
        g = graph_of([1, 2], [(1, 2)])
        c = complement(g)
        assert c.suc(1) == FiniteSet([1])
        assert c.suc(2) == FiniteSet([1, 2])

    def test_involution(self):
        rng = random.Random(61)
        for _ in range(20):
            g = random_graph(rng, 6)
            assert complement(complement(g)) == g

    def test_matches_oracle(self):
        rng = random.Random(62)
        for _ in range(60):
            g = random_graph(rng)
            assert graphs_equal(complement(g), oracle_complement(as_dict_graph(g)))


class TestMirror:
    def test_single_edge_reverses(self):
        g = graph_of([1, 2], [(1, 2)])
        m = mirror(g)
        assert m.suc(2) == FiniteSet([1])
        assert m.suc(1) == EMPTY_SET

    def test_involution(self):
        rng = random.Random(71)
        for _ in range(20):
            g = random_graph(rng)
            assert mirror(mirror(g)) == g

    def test_symmetric_graph_is_fixed(self):
        g = graph_of([1, 2], [(1, 2), (2, 1)])
        assert mirror(g) == g

    def test_matches_oracle(self):
        rng = random.Random(72)
        for _ in range(60):
            g = random_graph(rng)
            assert graphs_equal(mirror(g), oracle_mirror(as_dict_graph(g)))


class TestCopyVertices:
    def test_empty(self):
        assert copy_vertices(empty_graph()) == empty_graph()

    def test_strips_edges(self):
        g = graph_of([1, 2], [(1, 2)])
        cv = copy_vertices(g)
        assert cv.dom == g.dom
        assert cv.edges() == ()

    def test_matches_oracle(self):
        rng = random.Random(81)
        for _ in range(60):
            g = random_graph(rng)
            assert graphs_equal(copy_vertices(g),
                                oracle_copy_vertices(as_dict_graph(g)))


class TestCheckPath:
    def test_empty_path_is_valid(self):
        assert check_path(graph_of([1]), ()) is True
        assert check_path(empty_graph(), ()) is True

    def test_chain(self):
        g = graph_of([1, 2, 3], [(1, 2), (2, 3)])
        assert check_path(g, (1, 2, 3)) is True

    def test_missing_edge(self):
        g = graph_of([1, 2, 3], [(1, 2)])
        assert check_path(g, (1, 3)) is False

    def test_vertex_outside_dom(self):
        g = graph_of([1, 2], [(1, 2)])
        assert check_path(g, (1, 2, 9)) is False
        assert check_path(g, (9,)) is False

    def test_singleton_in_dom(self):
        assert check_path(graph_of([4]), (4,)) is True

    def test_matches_walk_oracle(self):
        rng = random.Random(91)
        for _ in range(100):
            g = random_graph(rng)
            d = as_dict_graph(g)
            n = rng.randint(0, 6)
            universe = list(g.dom.elems) + [99, 100]
            path = tuple(rng.choice(universe) for _ in range(n)) if universe else ()
            assert check_path(g, path) == oracle_check_path(d, path)

    def test_random_walks_are_valid_paths(self):
        rng = random.Random(92)
        for _ in range(50):
            g = random_graph(rng)
            starts = [v for v in g.dom.elems if len(g.suc(v)) > 0]
            if not starts:
                continue
            v = rng.choice(starts)
            path = [v]
            for _ in range(rng.randint(0, 5)):
                succs = list(g.suc(path[-1]).elems)
                if not succs:
                    break
                path.append(rng.choice(succs))
            assert check_path(g, tuple(path)) is True
