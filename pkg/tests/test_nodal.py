import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_connected_graph, random_representation, random_sign_vector
from nodaldecomp.builders import Representation, complete, complete_multipartite, from_representation, path
from nodaldecomp.errors import BudgetExceeded
from nodaldecomp.graph import new_graph
from nodaldecomp.groups import power_graph, semidirect_pq
from nodaldecomp.nodal import (
    NotAnEigenvector,
    check_courant_floor,
    check_partition_structure,
    check_single_negative_lemma,
    decomposition_number,
    nodal_decomposition_number,
    nodal_edges,
    sign_completions,
    sign_pattern,
    strong_nodal_domains,
    weak_nodal_domain_sets,
    weak_nodal_domains,
)
from nodaldecomp.spectra import closed_form_basis, eigen_decompose


def nx_strong_count(g, f):
    h = nx.Graph()
    h.add_nodes_from(v for v in range(g.n) if f[v] != 0)
    h.add_edges_from((u, v) for u, v in g.edges if f[u] * f[v] > 0)
    return nx.number_connected_components(h)


def brute_d(g, f):
    zeros = [v for v in range(g.n) if f[v] == 0]
    best = None
    for choice in itertools.product((1, -1), repeat=len(zeros)):
        h = list(f)
        for v, s in zip(zeros, choice):
            h[v] = s
        c = nx_strong_count(g, h)
        best = c if best is None else min(best, c)
    return best


def test_sign_pattern_exact_and_snapped():
    assert sign_pattern([2, 0, Fraction(-1, 3)]) == ((1, 0, -1), 0.0)
    signs, threshold = sign_pattern([1.0, 1e-12, -0.5])
    assert signs == (1, 0, -1) and threshold == pytest.approx(1e-9)


def test_strong_domain_examples():
    assert strong_nodal_domains(complete(5), [1, 0, 0, 0, -1])[0] == 2
    assert strong_nodal_domains(path(3), [1, 0, -1]) == (2, [[0], [2]])
    ps3 = power_graph(semidirect_pq(2, 3))
    count, blocks = strong_nodal_domains(ps3, [5, -1, -1, -1, -1, -1])
    assert count == 5
    assert sorted(map(len, blocks)) == [1, 1, 1, 1, 2]


def test_weak_domain_examples():
    assert weak_nodal_domain_sets(path(3), [1, 0, -1]) == [frozenset({0, 1}), frozenset({1, 2})]
    assert weak_nodal_domains(complete(5), [1, 0, 0, 0, -1]) == 2


def test_weak_domains_reject_vanishing_component():
    g = new_graph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        weak_nodal_domains(g, [1, -1, 0, 0])


def test_weak_domains_drop_nested_zero_blocks():
    # the zero vertex 1 alone is a component of f <= 0 but sits inside {0, 1} of f >= 0
    g = path(3)
    assert weak_nodal_domain_sets(g, [1, 0, 2]) == [frozenset({0, 1, 2})]


def test_nodal_edge_examples():
    assert nodal_edges(path(3), [1, 0, -1], "strong") == []
    assert nodal_edges(path(3), [1, 0, -1], "weak") == [(0, 1), (1, 2)]
    assert nodal_edges(complete(2), [1, -1], "strong") == nodal_edges(complete(2), [1, -1], "weak") == [(0, 1)]
    with pytest.raises(ValueError):
        nodal_edges(path(3), [1, 0, -1], "both")


def test_sign_completion_examples():
    assert list(sign_completions([1, -2])) == [(1, -2)]
    assert list(sign_completions([0, 3])) == [(1, 3), (-1, 3)]
    completions = list(sign_completions([0, 1, 0, -1, -1, 1, 0]))
    assert len(completions) == 8 and len(set(completions)) == 8
    assert completions[0] == (1, 1, 1, -1, -1, 1, 1)


def test_sign_completions_respect_cap():
    with pytest.raises(BudgetExceeded) as info:
        list(sign_completions([0, 0, 0, 1], cap=2))
    assert info.value.required == 3 and info.value.allowed == 2


def test_decomposition_examples():
    for n in range(3, 9):
        f = [1] + [0] * (n - 2) + [-1]
        assert decomposition_number(complete(n), f)[0] == 2
        assert brute_d(complete(n), f) == 2
    report = nodal_decomposition_number(path(3), [1, 0, -1])
    assert report.decomposition_number == 2 and report.witness_completion == (1, 1, -1)
    ps3 = power_graph(semidirect_pq(2, 3))
    report = nodal_decomposition_number(ps3, [5, -1, -1, -1, -1, -1])
    assert (report.strong_count, report.weak_count, report.decomposition_number) == (5, 5, 5)
    assert report.search_size == 1


def test_decomposition_rejects_zero_vector_and_budget():
    with pytest.raises(ValueError):
        decomposition_number(path(3), [0, 0, 0])
    with pytest.raises(BudgetExceeded):
        decomposition_number(path(5), [1, 0, 0, 0, -1], cap=2)
    with pytest.raises(ValueError):
        decomposition_number(path(3), [1, -1])


def test_early_exit_on_floor():
    r = Representation.of([[2, 3], [4], [11]])
    g = from_representation(r)
    for pair in closed_form_basis(r).pairs:
        if pair.value in (15, 17, 18):
            d, k, examined = decomposition_number(g, pair.vector)
            assert d == 2 and examined == 1 and k == 0


def test_decomposition_matches_brute_force():
    rng = random.Random(11)
    for _ in range(300):
        g = random_connected_graph(rng, rng.randint(2, 8), rng.choice((0.3, 0.6)))
        f = random_sign_vector(rng, g.n, zero_rate=0.4)
        report = nodal_decomposition_number(g, f)
        assert report.decomposition_number == brute_d(g, f)
        assert report.strong_count == nx_strong_count(g, f)
        assert check_partition_structure(g, report.witness_completion, report.witness_partition)
        assert len(report.witness_partition) == report.decomposition_number
        all_plus = [x or 1 for x in f]
        all_minus = [x or -1 for x in f]
        assert report.decomposition_number <= min(nx_strong_count(g, all_plus), nx_strong_count(g, all_minus))
        # safe bound; the sharper W <= S is not asserted
        assert report.weak_count <= report.strong_count + f.count(0)


def test_witness_is_first_minimizer():
    g = path(4)
    f = [1, 0, 0, 1]
    report = nodal_decomposition_number(g, f)
    assert report.decomposition_number == 1 and report.witness_completion == (1, 1, 1, 1)


def test_partition_structure_rejects_bad_partitions():
    g = path(3)
    assert check_partition_structure(g, [1, 1, -1], [[0, 1], [2]])
    assert not check_partition_structure(g, [1, 1, -1], [[0], [1], [2]])  # not maximal
    assert not check_partition_structure(g, [1, -1, 1], [[0, 2], [1]])  # not connected
    assert not check_partition_structure(g, [1, 1, -1], [[0, 1, 2]])  # mixed sign
    assert not check_partition_structure(g, [1, 1, -1], [[0, 1]])  # not a cover


def test_numeric_vectors_are_snapped():
    g = path(3)
    basis = eigen_decompose(g)
    middle = sorted(basis.pairs, key=lambda p: p.value)[1]
    report = nodal_decomposition_number(g, list(middle.floats()))
    assert report.snap_threshold > 0
    assert report.strong_count == 2 and report.decomposition_number == 2
    assert report.search_size == 2


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return new_graph(n, tree + extra)


@st.composite
def graph_and_vector(draw, values=(-3, -2, -1, 0, 0, 1, 2, 3)):
    g = draw(connected_graphs(min_n=2))
    f = draw(st.lists(st.sampled_from(values), min_size=g.n, max_size=g.n).filter(any))
    return g, f


@settings(max_examples=200, deadline=None)
@given(graph_and_vector(), st.fractions(min_value=Fraction(1, 50), max_value=50))
def test_sign_flip_and_scaling_invariance(gf, c):
    g, f = gf
    base = nodal_decomposition_number(g, f)
    for h in ([-x for x in f], [c * x for x in f]):
        other = nodal_decomposition_number(g, h)
        assert (other.strong_count, other.weak_count, other.decomposition_number) == (
            base.strong_count,
            base.weak_count,
            base.decomposition_number,
        )


@settings(max_examples=200, deadline=None)
@given(graph_and_vector(values=(-2, -1, 1, 2)))
def test_no_zeros_means_s_w_d_agree(gf):
    g, f = gf
    r = nodal_decomposition_number(g, f)
    assert r.strong_count == r.weak_count == r.decomposition_number


def test_courant_floor_examples():
    assert check_courant_floor(complete(3), [1, -1, 0], 3)
    with pytest.raises(ValueError):
        check_courant_floor(complete(3), [1, 1, 1], 0)
    with pytest.raises(NotAnEigenvector):
        check_courant_floor(complete(3), [1, -1, 0], 2)
    with pytest.raises(ValueError):
        check_courant_floor(new_graph(2), [1, -1], 0)


def test_courant_floor_on_closed_form_bases():
    rng = random.Random(12)
    for _ in range(40):
        r = random_representation(rng, s_choices=(2, 3, 4), max_n=30)
        g = from_representation(r)
        for pair in closed_form_basis(r).pairs:
            if pair.value != 0:
                # X vectors have N - 2 zeros; the floor exit keeps this cheap
                assert check_courant_floor(g, pair.vector, pair.value, cap=r.N)


def test_courant_floor_on_numeric_vectors():
    rng = random.Random(13)
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(2, 8), 0.5)
        for pair in eigen_decompose(g).pairs[1:]:
            assert check_courant_floor(g, list(pair.floats()), pair.value)


def test_single_negative_entry_examples():
    r = Representation.of([[2, 3], [4], [11]])
    g = from_representation(r)
    x_vec = next(p.vector for p in closed_form_basis(r).pairs if p.family == "X")
    report = check_single_negative_lemma(g, x_vec)
    assert report.applicable and report.decomposition_number == 2 and report.holds
    star = complete_multipartite([1, 3])
    res = check_single_negative_lemma(star, [-3, 1, 1, 1])
    assert not res.applicable and "cut vertex" in res.reason and res.holds is None
    res = check_single_negative_lemma(complete(4), [3, -1, -1, -1])
    assert not res.applicable and res.holds is None
    assert not check_single_negative_lemma(new_graph(3, [(0, 1)]), [1, -1, 0]).applicable


def test_single_negative_entry_fuzz():
    rng = random.Random(14)
    for _ in range(200):
        g = random_connected_graph(rng, rng.randint(2, 8), 0.5)
        f = [rng.choice((0, 1, 2)) for _ in range(g.n)]
        f[rng.randrange(g.n)] = -1
        if not any(x > 0 for x in f):
            # an eigenvector with one negative entry always has a positive one
            continue
        res = check_single_negative_lemma(g, f)
        if res.applicable:
            assert res.decomposition_number == brute_d(g, f) == 2


def test_report_json_keys():
    data = nodal_decomposition_number(path(3), [1, Fraction(0), Fraction(-1, 2)]).to_dict()
    assert data["S"] == data["W"] == data["D"] == 2
    assert data["witness"] == [1, 1, "-1/2"]
    assert {"strong_domains", "witness_partition", "search_size", "snap_threshold", "completions_examined"} <= set(data)
