"""Acceptance criteria, one test per criterion at the stated tolerance.

Run ``pytest tests/test_acceptance.py -v``; the terminal summary prints one
PASS/FAIL line per criterion. Running this file directly does the same.
"""

import random
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from gen import random_connected_graph, random_graph, random_representation, random_sign_vector
from nodaldecomp.builders import Representation, complete_multipartite, from_representation
from nodaldecomp.graph import (
    are_isomorphic,
    articulation_points,
    complement,
    component_count_without,
    connected_components,
    dominating_vertices,
    laplacian,
)
from nodaldecomp.groups import cyclic_group, euler_totient, power_graph, semidirect_pq
from nodaldecomp.nodal import (
    check_courant_floor,
    check_single_negative_lemma,
    decomposition_number,
    nodal_decomposition_number,
    nodal_edges,
    strong_nodal_domains,
    weak_nodal_domains,
)
from nodaldecomp.spectra import (
    closed_form_basis,
    eigen_decompose,
    jacobi_eigh,
    join_spectrum_identity_check,
    mohar_bound_check,
    verify_eigenpair_exact,
)
from nodaldecomp.verify import FLAG, PASS, verify_abelian_p_group, verify_highest_eigenvalue, verify_power_graph_pq

COROLLARY_PARTS = [[2, 3], [4], [11]]
# frozen from an independent dense eigensolver run on the explicit 20x20 Laplacian
COROLLARY_SPECTRUM = {0: 1, 15: 1, 17: 1, 18: 2, 20: 15}


def _expand(spectrum: dict) -> list[float]:
    return [float(v) for v, m in sorted(spectrum.items()) for _ in range(m)]


def _assertion(report, fragment):
    hits = [a for a in report.assertions if fragment in a.statement]
    assert hits, f"no assertion mentioning {fragment!r}"
    return hits[0]


@pytest.mark.criterion(1, "closed-form spectrum of the 20-vertex multipartite join")
def test_criterion_01_closed_form_spectrum():
    start = time.perf_counter()
    r = Representation.of(COROLLARY_PARTS)
    g = from_representation(r)
    basis = closed_form_basis(r)
    exact = {c.value: c.multiplicity for c in basis.clusters}
    assert exact == COROLLARY_SPECTRUM
    assert sum(exact.values()) == 20 == r.N
    numeric = sorted(eigen_decompose(g).values)
    assert np.max(np.abs(np.array(numeric) - _expand(COROLLARY_SPECTRUM))) < 1e-8
    # the hand-rolled Jacobi solver and LAPACK, both run directly on L
    lap = np.array(laplacian(g), dtype=float)
    w, _ = jacobi_eigh(lap)
    assert np.max(np.abs(np.sort(w) - _expand(COROLLARY_SPECTRUM))) < 1e-8
    assert np.max(np.abs(np.linalg.eigvalsh(lap) - _expand(COROLLARY_SPECTRUM))) < 1e-8
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(2, "every middle closed-form vector of the 20-vertex graph has D = 2")
def test_criterion_02_middle_vectors_have_d_two():
    start = time.perf_counter()
    r = Representation.of(COROLLARY_PARTS)
    g = from_representation(r)
    middle = [p for p in closed_form_basis(r).pairs if p.value in (15, 17, 18)]
    assert len(middle) == 4
    for pair in middle:
        zeros = sum(1 for x in pair.vector if x == 0)
        assert zeros <= 18
        d, _, _ = decomposition_number(g, pair.vector)
        assert d == 2, (pair.family, pair.index)
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(3, "D >= 2 for every nonconstant closed-form eigenvector (100 random representations)")
def test_criterion_03_courant_floor_fuzz():
    rng = random.Random(3)
    violations = []
    for _ in range(100):
        r = random_representation(rng, s_choices=(2, 3), max_n=24)
        g = from_representation(r)
        for pair in closed_form_basis(r).pairs:
            if pair.value == 0:
                continue
            if not check_courant_floor(g, pair.vector, pair.value):
                violations.append((r.parts, pair.family, pair.index))
    assert violations == []


@pytest.mark.criterion(4, "single negative entry at a non-cut vertex gives D = 2 (X-family, 50 representations)")
def test_criterion_04_single_negative_entry():
    rng = random.Random(4)
    checked = 0
    reps = 0
    while reps < 50:
        r = random_representation(rng, max_n=24)
        if not any(p > 1 for p in r.clique_sizes):
            continue
        reps += 1
        g = from_representation(r)
        cuts = articulation_points(g)
        for pair in closed_form_basis(r).pairs:
            if pair.family != "X":
                continue
            neg = [v for v, x in enumerate(pair.vector) if x < 0]
            assert len(neg) == 1
            if neg[0] in cuts:
                continue
            report = check_single_negative_lemma(g, pair.vector)
            assert report.applicable
            assert report.decomposition_number == 2
            checked += 1
    assert checked > 50


def _star(k):
    return complete_multipartite([1, k])


@pytest.mark.criterion(5, "dominating cut vertex: P(S3) and K_{1,4}")
@pytest.mark.parametrize(
    "name,build,expected_c",
    [("P(S3)", lambda: power_graph(semidirect_pq(2, 3)), 4), ("K_{1,4}", lambda: _star(4), 4)],
)
def test_criterion_05_highest_eigenvalue(name, build, expected_c):
    start = time.perf_counter()
    g = build()
    n = g.n
    (v,) = dominating_vertices(g)
    assert v in articulation_points(g)
    top = eigen_decompose(g).clusters[-1]
    assert abs(top.value - n) < 1e-8
    assert top.multiplicity == 1
    f = [-1] * n
    f[v] = n - 1
    assert verify_eigenpair_exact(g, f, n)
    d = nodal_decomposition_number(g, f).decomposition_number
    assert component_count_without(g, v) == expected_c
    assert d >= 3
    assert d == 1 + expected_c == 5
    report = verify_highest_eigenvalue(g, name)
    assert report.status in (PASS, FLAG) and not report.failures
    assert time.perf_counter() - start < 1.0


@pytest.mark.criterion(6, "lambda_max <= n with equality iff the complement is disconnected (200 random graphs)")
def test_criterion_06_max_eigenvalue_bound():
    rng = random.Random(6)
    violations = []
    for _ in range(200):
        n = rng.randint(2, 7)
        g = random_connected_graph(rng, n, rng.choice((0.3, 0.5, 0.8)))
        lam = float(np.linalg.eigvalsh(np.array(laplacian(g), dtype=float))[-1])
        res = mohar_bound_check(g)
        equal = abs(lam - n) < 1e-6
        complement_disconnected = len(connected_components(complement(g))) > 1
        if not (lam <= n + 1e-8 and equal == complement_disconnected and res.bound_holds and res.equality_consistent):
            violations.append(g)
    assert violations == []


@pytest.mark.criterion(7, "exact join polynomial identity (100 random pairs)")
def test_criterion_07_join_identity():
    rng = random.Random(7)
    for _ in range(100):
        a = random_graph(rng, rng.randint(1, 6), rng.random())
        b = random_graph(rng, rng.randint(1, 6), rng.random())
        res = join_spectrum_identity_check(a, b)
        assert res.holds and res.lhs == res.rhs


@pytest.mark.criterion(8, "cyclic power graphs P(Z_pq) for pq in {6, 10, 15}")
@pytest.mark.parametrize("p,q", [(2, 3), (2, 5), (3, 5)])
def test_criterion_08_cyclic_pq(p, q):
    pg = power_graph(cyclic_group(p * q))
    r = Representation.of([[p - 1, q - 1], [euler_totient(p * q) + 1]])
    assert are_isomorphic(pg, from_representation(r))
    if p * q == 6:
        values = sorted(eigen_decompose(pg).values)
        assert np.max(np.abs(np.array(values) - [0, 3, 5, 6, 6, 6])) < 1e-8
    cyclic, _ = verify_power_graph_pq(p, q)
    assert cyclic.status == PASS
    middle = [a for a in cyclic.assertions if "D = 2" in a.statement]
    assert middle and all(a.verdict == PASS for a in middle)


@pytest.mark.criterion(9, "non-abelian group of order 6: D = 5, the p+2 value is flagged")
def test_criterion_09_nonabelian_pq():
    _, report = verify_power_graph_pq(2, 3)
    assert report.status == FLAG and not report.failures
    top = _assertion(report, "largest eigenvalue equals n")
    assert top.verdict == PASS and top.expected == 6
    assert _assertion(report, "largest eigenvalue is simple").computed == 1
    one_plus = _assertion(report, "D = 1 + components")
    assert (one_plus.expected, one_plus.computed, one_plus.verdict) == (5, 5, PASS)
    p_plus_2 = _assertion(report, "D = p + 2")
    assert (p_plus_2.expected, p_plus_2.computed, p_plus_2.verdict) == (4, 5, FLAG)
    assert _assertion(report, "D >= 3").verdict == PASS
    g = power_graph(semidirect_pq(2, 3))
    assert 1 + component_count_without(g, 0) == 5


@pytest.mark.criterion(10, "abelian p-groups: cyclic gives D = 2, non-cyclic has a cut identity and D > 2")
def test_criterion_10_abelian_p_groups():
    start = time.perf_counter()
    cyc = verify_abelian_p_group(2, [8])
    assert cyc.status == PASS
    assert _assertion(cyc, "power graph is complete").computed == 28
    assert _assertion(cyc, "D = 2 for every basis vector").computed == [2] * 7
    for factors in ([2, 2], [2, 4]):
        rep = verify_abelian_p_group(2, factors)
        assert not rep.failures
        assert _assertion(rep, "identity is a cut vertex").verdict == PASS
        d_top = _assertion(rep, "D > 2")
        assert d_top.verdict == PASS and d_top.computed > 2
    assert time.perf_counter() - start < 5.0


def _fuzz_vectors(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 8)
        g = random_connected_graph(rng, n, rng.choice((0.3, 0.5, 0.8)))
        yield rng, g, random_sign_vector(rng, n)


def _nodal_triple(g, f):
    return strong_nodal_domains(g, f)[0], weak_nodal_domains(g, f), decomposition_number(g, f)[0]


@pytest.mark.criterion(11, "property suites, 1000 fuzz cases each, under 60 s")
def test_criterion_11_property_suites():
    start = time.perf_counter()
    cases = 1000
    failures = Counter()
    for rng, g, f in _fuzz_vectors(111, cases):
        if _nodal_triple(g, f) != _nodal_triple(g, [-x for x in f]):
            failures["sign flip"] += 1
    for rng, g, f in _fuzz_vectors(112, cases):
        c = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        if _nodal_triple(g, f) != _nodal_triple(g, [c * x for x in f]):
            failures["positive scaling"] += 1
    for rng, g, f in _fuzz_vectors(113, cases):
        f = [x or rng.choice((-1, 1)) for x in f]
        s, w, d = _nodal_triple(g, f)
        if not s == w == d:
            failures["S = W = D without zeros"] += 1
    for rng, g, f in _fuzz_vectors(114, cases):
        if not set(nodal_edges(g, f, "strong")) <= set(nodal_edges(g, f, "weak")):
            failures["strong edges within weak edges"] += 1
    rng = random.Random(115)
    for _ in range(cases):
        g = random_graph(rng, rng.randint(0, 10), rng.random())
        if any(sum(row) != 0 for row in laplacian(g)):
            failures["row sums"] += 1
        if complement(complement(g)) != g:
            failures["complement involution"] += 1
    rng = random.Random(116)
    for _ in range(cases):
        g = random_graph(rng, rng.randint(1, 8), rng.random() * 0.6)
        zero_mult = sum(1 for x in eigen_decompose(g).values if abs(x) < 1e-6)
        if zero_mult != len(connected_components(g)):
            failures["zero multiplicity"] += 1
    assert not failures, dict(failures)
    assert time.perf_counter() - start < 60.0


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
