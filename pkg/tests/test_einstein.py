import json
from fractions import Fraction
from itertools import combinations, permutations

import pytest

from eulergraph import graph as gr
from eulergraph.einstein import (
    Wheel,
    einstein_tensor,
    enumerate_wheels,
    is_einstein,
    ricci,
    scalar,
    simple_cycles,
    wheel_curvature,
)
from eulergraph.errors import InputError
from eulergraph.morse import exact_index_expectation


def tractable(g):
    # rim enumeration grows factorially with sphere size
    return all(g.degree(v) <= 9 for v in g.vertices)


def brute_cycles(g):
    """Simple cycles as vertex sets plus cyclic order, deduplicated by rotation and reflection."""
    edges = {frozenset(e) for e in g.edges}
    found = set()
    for k in range(3, g.n + 1):
        for subset in combinations(range(g.n), k):
            first, rest = subset[0], subset[1:]
            for perm in permutations(rest):
                if perm[0] > perm[-1]:
                    continue
                cyc = (first,) + perm
                if all(frozenset((cyc[i], cyc[(i + 1) % k])) in edges for i in range(k)):
                    found.add(cyc)
    return found


def cycle_counts_by_length(g):
    """Number of simple cycles of each length, by a path-counting subset DP."""
    edges = {frozenset(e) for e in g.edges}
    counts = {}
    for start in range(g.n):
        # paths from start through higher vertices only, keyed by (visited mask, end)
        paths = {(1 << start, start): 1}
        for _ in range(g.n - 1):
            grown = {}
            for (mask, end), c in paths.items():
                for w in range(start + 1, g.n):
                    if not mask >> w & 1 and frozenset((end, w)) in edges:
                        key = (mask | 1 << w, w)
                        grown[key] = grown.get(key, 0) + c
            for (mask, end), c in grown.items():
                k = bin(mask).count("1")
                if k >= 3 and frozenset((end, start)) in edges:
                    counts[k] = counts.get(k, 0) + c
            paths = grown
    return {k: c // 2 for k, c in counts.items()}


def brute_ricci(g, u, v):
    ks = []
    for c, r in ((u, v), (v, u)):
        sphere = gr.unit_sphere(g, c)
        for cyc in brute_cycles(sphere):
            if r in {sphere.origin[i] for i in cyc}:
                ks.append(1 - Fraction(len(cyc), 6))
    return sum(ks, Fraction(0)) / len(ks) if ks else Fraction(0)


class TestCycles:
    def test_against_brute_force(self, named, corpus):
        graphs = list(named.values()) + corpus[:60]
        checked = 0
        for g in graphs:
            for x in g.vertices:
                sphere = gr.unit_sphere(g, x)
                if sphere.n <= 8:
                    assert set(simple_cycles(sphere)) == brute_cycles(sphere)
                    checked += 1
        assert checked > 300

    def test_counts_up_to_ten_vertex_spheres(self, named, corpus):
        checked = 0
        for g in list(named.values()) + list(filter(tractable, corpus)):
            for x in g.vertices:
                sphere = gr.unit_sphere(g, x)
                if 8 < sphere.n <= 10:
                    by_length = {}
                    for c in simple_cycles(sphere):
                        by_length[len(c)] = by_length.get(len(c), 0) + 1
                    assert by_length == cycle_counts_by_length(sphere)
                    checked += 1
        for s in range(20):
            h = gr.erdos_renyi(9 + s % 2, "0.45", s)
            by_length = {}
            for c in simple_cycles(h):
                by_length[len(c)] = by_length.get(len(c), 0) + 1
            assert by_length == cycle_counts_by_length(h)
            checked += 1
        assert checked > 20

    def test_canonical_and_sorted(self):
        cycles = simple_cycles(gr.complete(5))
        assert cycles == sorted(cycles, key=lambda c: (len(c), c))
        for c in cycles:
            assert c[0] == min(c) and c[1] < c[-1]

    def test_max_length(self):
        assert all(len(c) <= 4 for c in simple_cycles(gr.complete(6), max_length=4))


class TestWheels:
    def test_icosahedron(self):
        g = gr.icosahedron()
        for x in g.vertices:
            wheels = enumerate_wheels(g, x)
            assert len(wheels) == 1 and wheels[0].size == 5

    def test_octahedron(self):
        g = gr.cross_polytope(2)
        for x in g.vertices:
            wheels = enumerate_wheels(g, x)
            assert len(wheels) == 1 and wheels[0].size == 4

    def test_k33(self):
        g = gr.complete_multipartite(3, 3)
        assert all(enumerate_wheels(g, x) == [] for x in g.vertices)

    def test_rim_in_sphere(self):
        g = gr.erdos_renyi(12, "1/2", 2)
        for x in g.vertices:
            for w in enumerate_wheels(g, x):
                assert all(g.has_edge(x, r) for r in w.rim)
                assert all(g.has_edge(w.rim[i], w.rim[i - 1]) for i in range(w.size))
                assert len(set(w.rim)) == w.size

    def test_invalid_center(self):
        with pytest.raises(InputError):
            enumerate_wheels(gr.complete(3), 5)

    def test_curvature(self):
        assert wheel_curvature(5) == Fraction(1, 6)
        assert wheel_curvature(4) == Fraction(1, 3)
        assert wheel_curvature(6) == 0
        assert Wheel(0, (1, 2, 3)).curvature == Fraction(1, 2)


class TestCurvatures:
    def test_icosahedron(self):
        g = gr.icosahedron()
        assert {ricci(g, e) for e in g.edges} == {Fraction(1, 6)}
        assert {scalar(g, v) for v in g.vertices} == {Fraction(1, 6)}
        assert {einstein_tensor(g, e[0], e) for e in g.edges} == {0}

    def test_octahedron(self):
        g = gr.cross_polytope(2)
        assert {ricci(g, e) for e in g.edges} == {Fraction(1, 3)}
        assert {scalar(g, v) for v in g.vertices} == {Fraction(1, 3)}

    def test_triangle_free(self):
        assert {ricci(gr.cycle(5), e) for e in gr.cycle(5).edges} == {0}
        assert scalar(gr.star(3), 0) == 0

    def test_isolated_vertex(self):
        assert scalar(gr.Graph(2), 0) == 0

    def test_errors(self):
        with pytest.raises(InputError):
            ricci(gr.cycle(5), (0, 2))
        with pytest.raises(InputError):
            einstein_tensor(gr.cycle(5), 3, (0, 1))
        with pytest.raises(InputError):
            scalar(gr.cycle(5), 0, mode="other")

    def test_ricci_against_brute_force(self, named):
        for name in ("kite", "wheel(5)", "complete(5)", "erdos_renyi(12,1/3,1)", "cross_polytope(3)"):
            g = named[name]
            for u, v in g.edges:
                assert ricci(g, (u, v)) == brute_ricci(g, u, v), name

    def test_two_dimensional_ricci(self):
        # on a surface each vertex has one wheel, whose curvature is the vertex curvature
        for g in (gr.icosahedron(), gr.torus_triangulation(4, 5), gr.cross_polytope(2)):
            for a, b in g.edges:
                assert ricci(g, (a, b)) == (exact_index_expectation(g, a) + exact_index_expectation(g, b)) / 2

    def test_kite(self):
        # the kite has no wheels: every unit sphere is a path
        g = gr.kite()
        assert all(enumerate_wheels(g, x) == [] for x in g.vertices)
        assert ricci(g, (1, 2)) - scalar(g, 1) == brute_ricci(g, 1, 2) - 0 == 0
        assert einstein_tensor(g, 1, (1, 2)) == 0

    def test_scalar_wheel_mode(self):
        g = gr.icosahedron()
        assert scalar(g, 0, mode="wheels") == Fraction(1, 6)


class TestEinstein:
    @pytest.mark.parametrize(
        "g",
        [
            gr.icosahedron(),
            gr.complete(3),
            gr.complete(4),
            gr.complete(6),
            gr.cycle(4),
            gr.cycle(7),
            gr.star(4),
            gr.complete_multipartite(3, 3),
            gr.cross_polytope(2),
            gr.two_star(3),
        ],
        ids=["icosahedron", "K3", "K4", "K6", "C4", "C7", "star4", "K33", "octahedron", "two_star3"],
    )
    def test_named(self, g):
        report = is_einstein(g)
        assert report.is_einstein and report.max_abs_tensor == 0

    def test_not_einstein(self):
        report = is_einstein(gr.wheel(5))
        assert not report.is_einstein and report.max_abs_tensor > 0

    def test_constant_ricci_means_einstein(self, corpus):
        for g in filter(tractable, corpus):
            report = is_einstein(g)
            if len(set(report.ricci.values())) <= 1:
                assert report.is_einstein

    def test_constant_wheel_curvature_means_einstein(self, named, corpus):
        hits = 0
        for g in list(named.values()) + list(filter(tractable, corpus)):
            if g.n == 0 or not g.is_connected():
                continue
            wheels = [enumerate_wheels(g, x) for x in g.vertices]
            if not all(wheels):
                continue
            if len({w.size for ws in wheels for w in ws}) == 1:
                assert is_einstein(g).is_einstein
                hits += 1
        assert hits >= 5

    def test_conservation(self, named, corpus):
        for g in list(named.values()) + list(filter(tractable, corpus)):
            report = is_einstein(g)
            for v in g.vertices:
                entries = [q for (w, _), q in report.tensor.items() if w == v]
                assert sum(entries, Fraction(0)) == 0

    def test_report_matches_pointwise(self):
        g = gr.erdos_renyi(10, "1/2", 6)
        report = is_einstein(g)
        for e in g.edges:
            assert report.ricci[e] == ricci(g, e)
        for v in g.vertices:
            assert report.scalar[v] == scalar(g, v)

    def test_json(self):
        doc = json.loads(is_einstein(gr.cross_polytope(2)).to_json())
        assert doc["einstein"] and doc["max_abs_tensor"] == "0/1"
        assert {r[2] for r in doc["ricci"]} == {"1/3"}

    def test_approximate_flag(self):
        assert is_einstein(gr.complete(5), max_length=3).approximate
        assert not is_einstein(gr.complete(5)).approximate
