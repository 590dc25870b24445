"""Shared corpora and brute-force oracles.

The oracles deliberately avoid the package's bitmask machinery: they work
from edge sets and itertools only.
"""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations

import pytest

from eulergraph import graph as gr

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def criterion(label: str):
    """Record a pass/fail line for the acceptance summary.

    The yielded list collects notes (measured ratios, sample counts) that
    are appended to the line.
    """
    notes: list[str] = []

    def line(status):
        suffix = f"  [{'; '.join(notes)}]" if notes else ""
        text = f"{status}  {label}{suffix}"
        ACCEPTANCE_LINES.append(text)
        print(text)

    try:
        yield notes
    except BaseException:
        line("FAIL")
        raise
    line("PASS")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def edge_set(g):
    return {frozenset(e) for e in g.edges}


def brute_f_vector(g) -> tuple[int, ...]:
    es = edge_set(g)
    counts = []
    for k in range(1, g.n + 1):
        c = sum(1 for sub in combinations(range(g.n), k) if all(frozenset(p) in es for p in combinations(sub, 2)))
        if c == 0:
            break
        counts.append(c)
    return tuple(counts)


def brute_chi(g) -> int:
    return sum((-1) ** k * c for k, c in enumerate(brute_f_vector(g)))


def brute_spanning_trees(g) -> int:
    if g.n == 1:
        return 1
    count = 0
    for subset in combinations(g.edges, g.n - 1):
        parent = list(range(g.n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        count += ok
    return count


def named_graphs():
    """The generator corpus used by 'all generators' checks."""
    out = {}
    for n in range(3, 9):
        out[f"cycle({n})"] = gr.cycle(n)
    for n in range(1, 7):
        out[f"path({n})"] = gr.path(n)
    for n in range(0, 8):
        out[f"complete({n})"] = gr.complete(n)
    for sizes in [(1, 1), (2, 3), (3, 3), (1, 2, 3), (2, 2, 2), (3, 3, 3), (1, 1, 1, 1, 1), (2, 2, 2, 2, 2)]:
        out[f"complete_multipartite{sizes}"] = gr.complete_multipartite(*sizes)
    for k in range(0, 6):
        out[f"star({k})"] = gr.star(k)
    for n in range(3, 8):
        out[f"wheel({n})"] = gr.wheel(n)
    for d in range(1, 5):
        out[f"cross_polytope({d})"] = gr.cross_polytope(d)
    out["icosahedron"] = gr.icosahedron()
    out["kite"] = gr.kite()
    for k in range(1, 6):
        out[f"two_star({k})"] = gr.two_star(k)
    for a, b in [(4, 4), (4, 5), (5, 6)]:
        out[f"torus_triangulation({a},{b})"] = gr.torus_triangulation(a, b)
    for s in range(4):
        out[f"erdos_renyi(12,1/3,{s})"] = gr.erdos_renyi(12, Fraction(1, 3), s)
    return out


PROBS = [Fraction(k, 10) for k in range(1, 7)]


def random_corpus(count=200, max_n=25, seed_offset=0):
    """Seeded Erdos-Renyi graphs with orders 1..max_n and p in 0.1..0.6."""
    return [
        gr.erdos_renyi(1 + (s % max_n), PROBS[(s // max_n + s) % len(PROBS)], s + seed_offset) for s in range(count)
    ]


@pytest.fixture(scope="session")
def named():
    return named_graphs()


@pytest.fixture(scope="session")
def corpus():
    return random_corpus()
