from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relpoly.errors import DomainError, FormatError
from relpoly.netgraph import (
    Edge,
    Multigraph,
    Parallel,
    Series,
    biconnected_components,
    canonical_form,
    complete_graph,
    contract_spindle,
    delete_spindle,
    glue,
    identify_vertices,
    is_cactus,
    parse_graph,
    random_sp,
    random_sp_prime,
    sp_build,
    sp_recognize,
    thick_cycle,
    thick_path,
    tree_size,
    underlying_simple,
)

TRIANGLE = thick_cycle([1, 1, 1])


def edges(g: Multigraph) -> set:
    return set(g.spindles)


class TestMultigraph:
    def test_counts(self):
        g = thick_cycle([2, 2, 2])
        assert (g.n, g.m, g.d) == (3, 6, 4)

    def test_validation(self):
        with pytest.raises(DomainError):
            Multigraph(2, ((0, 0, 1),))
        with pytest.raises(DomainError):
            Multigraph(2, ((0, 1, 0),))
        with pytest.raises(DomainError):
            Multigraph(2, ((0, 1, 1), (0, 1, 2)))

    def test_from_edges_merges(self):
        g = Multigraph.from_edges(2, [(0, 1), (1, 0), (0, 0)])
        assert g.spindles == ((0, 1, 2),)


class TestOperations:
    def test_delete(self):
        assert edges(delete_spindle(TRIANGLE, (0, 1))) == {(1, 2, 1), (0, 2, 1)}
        g = delete_spindle(Multigraph(2, ((0, 1, 2),)), (0, 1))
        assert not g.is_connected() and g.m == 0
        assert delete_spindle(thick_cycle([2, 2, 2]), (0, 2)) == thick_path([2, 2])

    def test_delete_missing(self):
        with pytest.raises(DomainError):
            delete_spindle(thick_path([1, 1]), (0, 2))
        with pytest.raises(DomainError):
            contract_spindle(thick_path([1, 1]), (0, 2))

    def test_contract(self):
        assert contract_spindle(TRIANGLE, (0, 1)) == Multigraph(2, ((0, 1, 2),))
        assert contract_spindle(Multigraph(2, ((0, 1, 2),)), (0, 1)) == Multigraph(1, ())
        assert contract_spindle(thick_cycle([1, 1, 1, 1]), (0, 1)) == TRIANGLE

    def test_identify(self):
        assert identify_vertices(thick_path([1, 1]), 0, 2) == Multigraph(2, ((0, 1, 2),))
        assert identify_vertices(TRIANGLE, 0, 1) == Multigraph(2, ((0, 1, 2),))
        # opposite corners of C4: both remaining vertices join the merged one twice
        c4 = thick_cycle([1, 1, 1, 1])
        assert identify_vertices(c4, 0, 2) == Multigraph(3, ((0, 1, 2), (0, 2, 2)))
        with pytest.raises(DomainError):
            identify_vertices(c4, 1, 1)

    def test_no_loops(self):
        g = thick_cycle([3, 1, 2])
        for u, v, _ in g.spindles:
            h = contract_spindle(g, (u, v))
            assert all(a != b for a, b, _ in h.spindles)

    def test_underlying_simple(self):
        assert underlying_simple(thick_cycle([2, 2, 2])) == TRIANGLE
        assert underlying_simple(thick_path([3, 2])) == thick_path([1, 1])
        assert underlying_simple(TRIANGLE) == TRIANGLE

    def test_blocks(self):
        bowtie = glue(TRIANGLE, TRIANGLE, [(0, 0)])
        assert sorted(b.spindles for b in biconnected_components(bowtie)) == [TRIANGLE.spindles] * 2
        tree = thick_path([1, 2, 1])
        assert [b.m for b in biconnected_components(tree)] == [1, 2, 1]
        c4 = thick_cycle([1, 1, 1, 1])
        assert biconnected_components(c4) == [c4]
        with pytest.raises(DomainError):
            biconnected_components(Multigraph(3, ((0, 1, 1),)))

    def test_cactus(self):
        pendant = Multigraph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
        assert is_cactus(pendant)
        assert not is_cactus(complete_graph(4))
        for k in (1, 2, 3):
            assert is_cactus(thick_cycle([k] * 5))

    def test_cactus_blocks(self):
        g = glue(thick_cycle([1, 2, 1, 1]), thick_path([2, 1]), [(2, 0)])
        for b in biconnected_components(underlying_simple(g)):
            assert b.n == 2 or len(b.spindles) == b.n


class TestSeriesParallel:
    def test_build(self):
        net = sp_build(Parallel(Edge(), Series(Edge(), Edge())))
        assert edges(net.graph) == {(0, 1, 1), (0, 2, 1), (1, 2, 1)}
        assert net.terminals == (0, 1)
        assert sp_build(Parallel(Edge(), Edge())).graph == Multigraph(2, ((0, 1, 2),))
        path = sp_build(Series(Edge(), Edge()))
        assert edges(path.graph) == {(0, 2, 1), (1, 2, 1)} and path.terminals == (0, 1)

    def test_build_malformed(self):
        with pytest.raises(DomainError):
            sp_build(Series(Edge(), "x"))
        with pytest.raises(DomainError):
            sp_build(Edge(0))

    def test_recognize(self):
        trees = sp_recognize(thick_cycle([1, 1, 1, 1]))
        assert trees is not None and len(trees) == 1 and tree_size(trees[0]) == 4
        assert sp_recognize(complete_graph(4)) is None
        for k in (1, 2, 3):
            assert sp_recognize(thick_cycle([k] * 5)) is not None
            assert sp_recognize(thick_path([k] * 4)) is not None

    def test_recognized_tree_rebuilds_block(self):
        g = thick_cycle([1, 2, 1, 3])
        (t,) = sp_recognize(g)
        rebuilt = sp_build(t).graph
        assert canonical_form(rebuilt) == canonical_form(g)

    def test_random_sp(self):
        assert random_sp(1, 0).build == Edge(1)
        assert random_sp(9, 42) == random_sp(9, 42)

    def test_round_trip_campaign(self):
        for seed in range(1000):
            net = random_sp(1 + seed % 15, seed)
            assert tree_size(net.build) == net.graph.m
            assert sp_recognize(net.graph) is not None

    def test_sp_prime(self):
        for seed in range(50):
            g = random_sp_prime(seed)
            assert g.is_connected() and sp_recognize(g) is not None


class TestCanonical:
    @given(st.permutations(range(5)))
    def test_relabel_invariant(self, perm):
        g = Multigraph.from_edges(5, [(0, 1, 2), (1, 2, 1), (2, 3, 3), (3, 4, 1), (4, 0, 1), (1, 3, 1)])
        assert canonical_form(g.relabel(list(perm))) == canonical_form(g)


class TestFormat:
    def test_parse(self):
        g = parse_graph("# triangle\nv 3\ne 0 1 1\ne 1 2 1\n\ne 0 2 1\n")
        assert g == TRIANGLE
        assert parse_graph(g.to_text()) == g

    @pytest.mark.parametrize("text,where", [
        ("e 0 1 1\n", "1:1"),
        ("v 3\ne 0 1\n", "2:1"),
        ("v 3\n  e 0 7 1\n", "2:3"),
        ("v 3\ne 0 1 0\n", "2:1"),
        ("v 3\ne 0 1 1\ne 1 0 2\n", "3:1"),
        ("v 3\nx\n", "2:1"),
        ("", "1:1"),
    ])
    def test_errors(self, text, where):
        with pytest.raises(FormatError) as err:
            parse_graph(text)
        assert str(err.value).startswith(where)

    def test_loop_dropped(self, caplog):
        g = parse_graph("v 2\ne 0 1 1\ne 1 1 2\n")
        assert g.m == 1 and "loop" in caplog.text
