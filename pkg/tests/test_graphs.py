import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from acyclic_spectra.graphs import (
    Graph,
    connected_components,
    cycle_graph,
    delete_paths,
    detect_whirl,
    diameter,
    figure14_graph,
    figure2_tree,
    figure6_tree,
    find_special_path,
    format_graph,
    is_tree,
    max_coverage_by_k_paths,
    parse_graph,
    path_cover_number,
    path_cover_number_bruteforce,
    path_graph,
    random_tree,
    star_graph,
    unique_shortest_path,
    validate_family,
    whirl,
)

trees = st.builds(random_tree, st.integers(1, 12), st.integers(0, 10**6))


def floyd_diameter(g):
    vs = g.sorted_vertices()
    inf = 10**6
    d = {(u, v): 0 if u == v else (1 if g.has_edge(u, v) else inf) for u in vs for v in vs}
    for w in vs:
        for u in vs:
            for v in vs:
                d[u, v] = min(d[u, v], d[u, w] + d[w, v])
    return max(d.values())


def test_graph_construction_rules():
    g = Graph.from_edges(3, [(2, 1), (2, 3)])
    assert g.edges == {(1, 2), (2, 3)}
    assert g.adj[2] == (1, 3)
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 3)])


def test_subgraphs_keep_host_labels():
    t = figure2_tree()
    rest = delete_paths(t, [(4, 1, 5), (7, 2, 8), (10, 3, 9)])
    assert rest.vertices == {6} and not rest.edges
    assert connected_components(t.remove([6])) == [
        frozenset({1, 4, 5}),
        frozenset({2, 7, 8}),
        frozenset({3, 9, 10}),
    ]


def test_figure_trees():
    f2, f6 = figure2_tree(), figure6_tree()
    assert is_tree(f2) and is_tree(f6)
    assert diameter(f2) == 4
    assert path_cover_number(f2)[0] == path_cover_number_bruteforce(f2) == 4
    # the Figure 6 tree has the diametral path 3-1-6-7-2-9
    assert diameter(f6) == 5 == floyd_diameter(f6)
    assert find_special_path(f6) == (3, 1, 4)
    p, fam = path_cover_number(f6)
    assert p == 3 and (9, 2, 10) in fam and (3, 1, 4) in fam


@given(trees)
def test_special_path_shape(t):
    p = find_special_path(t)
    assert t.is_path(p)
    if t.n > 1:
        assert t.degree(p[0]) == 1 and t.degree(p[-1]) == 1
    assert sum(1 for v in p if t.degree(v) >= 3) <= 1


@given(trees)
def test_greedy_path_cover_matches_brute_force(t):
    p, fam = path_cover_number(t)
    validate_family(t, fam)
    assert sorted(v for path in fam for v in path) == t.sorted_vertices()
    assert p == len(fam) == path_cover_number_bruteforce(t)


@given(trees)
def test_diameter_matches_floyd(t):
    assert diameter(t) == floyd_diameter(t)


@given(trees, st.integers(1, 5))
def test_coverage_dp_matches_exhaustive(t, k):
    cov_e, fam_e = max_coverage_by_k_paths(t, k, strategy="exhaustive")
    cov_d, fam_d = max_coverage_by_k_paths(t, k, strategy="dp")
    assert cov_e == cov_d
    for fam in (fam_e, fam_d):
        validate_family(t, fam)
        assert len(fam) <= k and sum(map(len, fam)) == cov_d


@given(trees)
def test_coverage_reaches_n_at_p(t):
    p, _ = path_cover_number(t)
    covs = [max_coverage_by_k_paths(t, k, strategy="dp")[0] for k in range(1, p + 1)]
    assert covs == sorted(covs)
    assert covs[-1] == t.n
    if p > 1:
        assert covs[-2] < t.n
    assert covs[0] == diameter(t) + 1


def test_coverage_on_figure2():
    t = figure2_tree()
    assert [max_coverage_by_k_paths(t, k)[0] for k in (1, 2, 3, 4)] == [5, 8, 9, 10]


def test_brute_force_cap(monkeypatch):
    big = path_graph(20)
    with pytest.raises(ValueError):
        path_cover_number_bruteforce(big)
    monkeypatch.setenv("ACYCLIC_SPECTRA_MAX_N", "20")
    assert path_cover_number_bruteforce(big) == 1


def test_non_forest_rejected():
    with pytest.raises(ValueError):
        path_cover_number(cycle_graph(5))
    with pytest.raises(ValueError):
        diameter(Graph.from_edges(3, [(1, 2)]))


@pytest.mark.parametrize("k, ell", [(2, 1), (3, 1), (3, 2), (4, 3), (5, 4)])
def test_whirl_structure(k, ell):
    w = whirl(k, ell)
    assert w.n == 2 * k * ell + k + 1
    assert w.graph.degree(w.axis) == k
    assert len(w.legs) == 2 * k and all(len(leg) == ell for leg in w.legs.values())
    for (i, _), leg in w.legs.items():
        assert w.graph.has_edge(w.spokes[i - 1], leg[0])
        assert w.graph.degree(leg[-1]) == 1
    found = detect_whirl(w.graph)
    assert (found.k, found.ell, found.axis) == (k, ell, w.axis)


def test_whirl_3_1_is_figure2():
    w = detect_whirl(figure2_tree())
    assert (w.k, w.ell, w.axis) == (3, 1, 6)
    assert sorted(w.spokes) == [1, 2, 3]
    assert detect_whirl(figure6_tree()) is None
    assert detect_whirl(star_graph(4)) is None


def test_random_tree_is_deterministic():
    assert random_tree(9, 3) == random_tree(9, 3)
    assert random_tree(9, random.Random(3)) == random_tree(9, 3)
    assert all(is_tree(random_tree(n, n)) for n in range(1, 15))


def test_figure14_six_cycle():
    f = figure14_graph(cycle_graph(6), (1, 3, 5), 4)
    assert f.m == 6 and f.graph.n == 30
    assert len(f.legs) == 6 and all(len(leg) == 4 for leg in f.legs)
    assert all(f.graph.degree(v) == 1 for v in f.i_ends + f.j_ends)
    assert all(f.graph.degree(a) == 4 for a in f.anchors)


def test_figure14_rejects_ties():
    # 4-cycle 1-2-3-4 with a pendant 5 on vertex 1: two shortest 1-3 routes
    h = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 1), (1, 5)])
    assert not unique_shortest_path(h, 1, 3, 5)
    assert unique_shortest_path(h, 1, 3, 2)
    with pytest.raises(ValueError):
        figure14_graph(h, (1, 3, 5), 2)
    with pytest.raises(ValueError):
        figure14_graph(cycle_graph(6), (1, 1, 4), 2)


def test_graph_file_round_trip():
    g = whirl(3, 2).graph
    text = format_graph(g, "a whirl")
    assert text.startswith("# a whirl\n16\n")
    assert parse_graph(text) == g
    with pytest.raises(ValueError):
        parse_graph("3\n1 4\n")
    with pytest.raises(ValueError):
        parse_graph("")
