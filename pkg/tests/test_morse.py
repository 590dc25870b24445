from fractions import Fraction
from itertools import permutations

import pytest

from conftest import brute_chi
from eulergraph import graph as gr
from eulergraph.errors import InputError
from eulergraph.morse import (
    VertexFunction,
    curvature_expectation,
    curvature_report,
    exact_index_expectation,
    index,
    poincare_hopf_sum,
    sample_function,
    sample_functions,
    symmetric_index,
)
from eulergraph.topology import euler_characteristic


def permutation_expectation(g, x):
    """Average index over every ordering of the closed neighbourhood of ``x``."""
    ball = [x] + list(g.neighbors(x))
    total = Fraction(0)
    count = 0
    for order in permutations(range(len(ball))):
        rank = dict(zip(ball, order))
        lower = [y for y in ball[1:] if rank[y] < rank[x]]
        total += 1 - brute_chi(gr.induced_subgraph(g, lower))
        count += 1
    return total / count


class TestVertexFunction:
    def test_injective(self):
        with pytest.raises(InputError):
            VertexFunction((1, 1))

    def test_json_round_trip(self):
        f = sample_function(gr.complete(4), 3)
        assert VertexFunction.from_json(f.to_json()) == f

    def test_bad_json(self):
        with pytest.raises(InputError):
            VertexFunction.from_json('{"a": 1}')

    def test_length_checked(self):
        with pytest.raises(InputError):
            index(gr.complete(3), (1, 2), 0)


class TestSampling:
    def test_range(self):
        f = sample_function(gr.complete(3), 1)
        assert len(set(f.values)) == 3 and all(-1 <= t <= 1 for t in f.values)

    def test_deterministic(self):
        g = gr.icosahedron()
        assert sample_function(g, 7) == sample_function(g, 7)
        assert list(sample_functions(g, 5, 2)) == list(sample_functions(g, 5, 2))
        assert sample_function(g, 7) != sample_function(g, 8)

    def test_empty(self):
        assert sample_function(gr.Graph(0), 4).values == ()


class TestIndex:
    def test_maximum_on_sphere(self):
        g = gr.cross_polytope(3)
        f = list(range(g.n))
        assert index(g, f, g.n - 1) == -1

    def test_minimum(self):
        g = gr.icosahedron()
        assert index(g, list(range(12)), 0) == 1

    def test_symmetric_examples(self):
        c4 = gr.cycle(4)
        for x in range(4):
            assert symmetric_index(c4, (1, 2, 3, 4), x) == 0
        octa = gr.cross_polytope(2)
        assert symmetric_index(octa, list(range(6)), 0) == 1
        k2 = gr.complete(2)
        assert symmetric_index(k2, (0.3, -0.1), 0) == symmetric_index(k2, (0.3, -0.1), 1) == Fraction(1, 2)

    def test_non_injective(self):
        with pytest.raises(InputError):
            index(gr.complete(2), (1, 1), 0)


class TestPoincareHopf:
    def test_examples(self):
        assert poincare_hopf_sum(gr.complete_multipartite(3, 3), sample_function(gr.complete_multipartite(3, 3), 0)) == -3
        assert poincare_hopf_sum(gr.icosahedron(), sample_function(gr.icosahedron(), 0)) == 2
        assert poincare_hopf_sum(gr.Graph(5), (5, 4, 3, 2, 1)) == 5

    def test_random_pairs(self, corpus):
        for i, g in enumerate(corpus):
            f = sample_function(g, 99, i)
            chi = euler_characteristic(g)
            assert sum(index(g, f, x) for x in g.vertices) == chi
            assert sum(symmetric_index(g, f, x) for x in g.vertices) == chi

    def test_monotone_reparametrisation(self):
        g = gr.erdos_renyi(15, "1/2", 4)
        f = sample_function(g, 4)
        h = f.compose(lambda t: t**3 + t)
        assert [index(g, f, x) for x in g.vertices] == [index(g, h, x) for x in g.vertices]
        scaled = f.compose(lambda t: 3 * t + 1)
        assert [index(g, f, x) for x in g.vertices] == [index(g, scaled, x) for x in g.vertices]


class TestCurvature:
    def test_named_values(self):
        assert exact_index_expectation(gr.cross_polytope(2), 0) == Fraction(1, 3)
        assert exact_index_expectation(gr.icosahedron(), 0) == Fraction(1, 6)
        assert exact_index_expectation(gr.star(3), 0) == Fraction(-1, 2)

    def test_reports(self):
        ico = curvature_report(gr.icosahedron())
        assert set(ico.per_vertex) == {Fraction(1, 6)} and ico.total == 2
        octa3 = curvature_report(gr.cross_polytope(3))
        assert set(octa3.per_vertex) == {0} and octa3.total == 0
        ts = curvature_report(gr.two_star(3))
        assert ts.per_vertex[:2] == (Fraction(-1, 2),) * 2
        assert set(ts.per_vertex[2:]) == {0} and ts.total == -1

    def test_odd_dimension_flat(self):
        for n in range(4, 10):
            assert set(curvature_report(gr.cycle(n)).per_vertex) == {0}
        assert set(curvature_report(gr.cross_polytope(3)).per_vertex) == {0}

    def test_gauss_bonnet(self, named, corpus):
        for g in list(named.values()) + corpus:
            assert curvature_report(g).total == euler_characteristic(g)

    def test_permutation_oracle(self, named):
        graphs = [named[k] for k in ("kite", "wheel(5)", "two_star(3)", "complete(5)", "cross_polytope(2)", "erdos_renyi(12,1/3,0)")]
        graphs.append(gr.erdos_renyi(10, "1/2", 3))
        for g in graphs:
            for x in g.vertices:
                if g.degree(x) <= 6:
                    assert exact_index_expectation(g, x) == permutation_expectation(g, x)

    def test_expectation_of_symmetric_index(self):
        # E[i] = E[j] since f and -f are equally likely; check by exhaustive orderings
        g = gr.kite()
        for x in g.vertices:
            orders = list(permutations(range(g.n)))
            mean_j = sum((symmetric_index(g, o, x) for o in orders), Fraction(0)) / len(orders)
            mean_i = sum((Fraction(index(g, o, x)) for o in orders), Fraction(0)) / len(orders)
            assert mean_i == mean_j == exact_index_expectation(g, x)


class TestMonteCarlo:
    def test_octahedron(self):
        mean, se = curvature_expectation(gr.cross_polytope(2), 0, 20000, seed=1)
        assert abs(mean - 1 / 3) <= 4 * se

    def test_k2(self):
        mean, se = curvature_expectation(gr.complete(2), 0, 20000, seed=2)
        assert abs(mean - 1 / 2) <= 4 * se

    def test_edgeless(self):
        assert curvature_expectation(gr.Graph(3), 1, 100) == (1.0, 0.0)

    def test_bad_samples(self):
        with pytest.raises(InputError):
            curvature_expectation(gr.complete(2), 0, 0)
