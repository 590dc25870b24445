"""Level-surface graphs of vertex functions and the genus identities built on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError, DomainError, InputError
from .graph import Graph, enumerate_cliques, unit_sphere
from .morse import as_function, mean_and_stderr, sample_functions, symmetric_index
from .topology import euler_characteristic, is_geometric


@dataclass(frozen=True)
class LevelSurface:
    """Discrete level set ``{f = c}`` of a function on ``host``.

    Surface vertices are host edges whose endpoints lie on opposite sides of
    the threshold; surface edges come from host triangles meeting both
    sides, joining the two cut edges of that triangle.
    """

    host: Graph
    threshold: float
    below: frozenset
    surface_vertices: tuple[tuple[int, int], ...]
    surface_edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    graph: Graph

    def oriented(self, i: int) -> tuple[int, int]:
        """Surface vertex ``i`` as ``(a, b)`` with ``f(a) < c < f(b)``."""
        a, b = self.surface_vertices[i]
        return (a, b) if a in self.below else (b, a)


@dataclass(frozen=True)
class CompletedSurface:
    """Level surface through a vertex, with the cells that complete it.

    ``added_cells`` lists, per 2-2 split tetrahedron of the unit sphere, the
    tetrahedron in host ids. In stellation mode each cell is one extra
    vertex (ids ``len(raw.surface_vertices)`` onward, in cell order); in
    chord mode it is one diagonal edge.
    """

    center: int
    raw: LevelSurface
    added_cells: tuple[tuple[int, int, int, int], ...]
    graph: Graph
    completed: bool
    mode: str

    def to_json(self) -> str:
        origin = self.raw.host.origin
        doc = {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges],
            "surface_vertices": [[origin[a], origin[b]] for a, b in self.raw.surface_vertices],
            "cells": [list(cell) for cell in self.added_cells],
            "mode": self.mode,
            "completed": self.completed,
        }
        return json.dumps(doc)


def hypersurface(g: Graph, f, c) -> LevelSurface:
    cliques, _ = enumerate_cliques(g, max_dim=2)
    return _hypersurface(g, f, c, cliques[2] if len(cliques) > 2 else ())


def _hypersurface(g, f, c, triangles) -> LevelSurface:
    f = as_function(g, f)
    if c in set(f.values):
        raise InputError(f"threshold {c} equals a vertex value")
    below = frozenset(v for v in g.vertices if f[v] < c)
    cut = [e for e in g.edges if (e[0] in below) != (e[1] in below)]
    ids = {e: i for i, e in enumerate(cut)}
    surface_edges = []
    for a, b, d in triangles:
        sides = [(a, b), (a, d), (b, d)]
        crossing = [e for e in sides if e in ids]
        if not crossing:
            continue
        if len(crossing) != 2:
            raise ConsistencyError(f"triangle {(a, b, d)} has {len(crossing)} cut edges")
        surface_edges.append(tuple(crossing))
    surface_edges.sort()
    graph = Graph(len(cut), [(ids[p], ids[q]) for p, q in surface_edges])
    return LevelSurface(g, c, below, tuple(cut), tuple(surface_edges), graph)


@dataclass(frozen=True)
class _SphereData:
    sphere: Graph
    triangles: tuple[tuple[int, ...], ...]
    tetrahedra: tuple[tuple[int, ...], ...]
    three_dimensional: bool


@lru_cache(maxsize=4096)
def _sphere_data(g: Graph, x: int) -> _SphereData:
    sphere = unit_sphere(g, x)
    cliques, _ = enumerate_cliques(sphere, max_dim=3)
    tris = cliques[2] if len(cliques) > 2 else ()
    tets = cliques[3] if len(cliques) > 3 else ()
    return _SphereData(sphere, tris, tets, is_geometric(sphere, 3).is_geometric)


def center_surface(g: Graph, f, x: int, mode: str = "stellation", diagonal: int = 0) -> CompletedSurface:
    """The level surface of ``f`` at height ``f(x)`` inside the unit sphere of ``x``.

    If the sphere is a 3-dimensional geometric graph, each tetrahedron split
    two-against-two by the threshold cuts out a chordless square; it is
    filled either by a new vertex joined to its four corners
    (``mode="stellation"``) or by one diagonal (``mode="chord"``).
    Tetrahedra split one-against-three already give triangles. Other
    spheres come back uncompleted.
    """
    if mode not in ("stellation", "chord"):
        raise InputError(f"unknown completion mode {mode!r}")
    f = as_function(g, f)
    g._check_vertex(x)
    data = _sphere_data(g, x)
    sphere = data.sphere
    raw = _hypersurface(sphere, [f[v] for v in sphere.origin], f[x], data.triangles)
    if not data.three_dimensional:
        return CompletedSurface(x, raw, (), raw.graph, False, mode)

    ids = {e: i for i, e in enumerate(raw.surface_vertices)}
    n = raw.graph.n
    edges = list(raw.graph.edges)
    cells = []
    for tet in data.tetrahedra:
        low = [v for v in tet if v in raw.below]
        if len(low) != 2:
            continue
        high = [v for v in tet if v not in raw.below]
        (a, b), (c, d) = low, high

        def sv(p, q):
            return ids[(min(p, q), max(p, q))]

        # square ac - bc - bd - ad
        square = [sv(a, c), sv(b, c), sv(b, d), sv(a, d)]
        if mode == "stellation":
            edges.extend((corner, n) for corner in square)
            n += 1
        else:
            edges.append((square[0], square[2]) if diagonal == 0 else (square[1], square[3]))
        cells.append(tuple(sorted(sphere.origin[v] for v in tet)))
    graph = Graph(n, edges)

    if mode == "stellation":
        for k in range(raw.graph.n, n):
            if graph.degree(k) != 4:
                raise ConsistencyError("stellation vertex without four neighbours")
    if euler_characteristic(graph) != euler_characteristic(raw.graph) + len(cells):
        raise ConsistencyError("completion changed chi by other than one per square")
    return CompletedSurface(x, raw, tuple(cells), graph, True, mode)


@dataclass(frozen=True)
class GenusLemmaReport:
    vertex: int
    dimension: int
    symmetric_index: Fraction
    sphere_chi: int
    surface_chi: int
    index_formula_holds: bool
    genus_holds: bool | None

    @property
    def holds(self) -> bool:
        return self.index_formula_holds and self.genus_holds is not False


def genus_lemma_check(g: Graph, f, x: int, dimension: int) -> GenusLemmaReport:
    """Compare the symmetric index at ``x`` with the characteristic of its level surface.

    Always checks ``j = 1 - chi(S(x))/2 - chi(B)/2``; in dimension 4 also
    checks ``chi(B) = 2 - 2 j``. Mismatches are reported, never raised.
    """
    f = as_function(g, f)
    j = symmetric_index(g, f, x)
    sphere_chi = euler_characteristic(_sphere_data(g, x).sphere)
    surface_chi = euler_characteristic(center_surface(g, f, x).graph)
    formula = j == 1 - Fraction(sphere_chi, 2) - Fraction(surface_chi, 2)
    genus_ok = (surface_chi == 2 - 2 * j) if dimension == 4 else None
    return GenusLemmaReport(x, dimension, j, sphere_chi, surface_chi, formula, genus_ok)


def sectional_total_curvature(g: Graph, f, x: int) -> int:
    """Total curvature of the local random surface at ``x``, i.e. ``chi(B_f(x))``."""
    return euler_characteristic(center_surface(g, f, x).graph)


def glued_surface_characteristic(g: Graph, f) -> int:
    """Euler characteristic of the surface glued from all level surfaces of ``f``.

    Genus is additive under the gluing, so the glued genus is the sum of the
    local genera ``1 - chi(B_f(x))/2``; by Poincare-Hopf that sum is
    ``chi(G)``. Both are computed and must agree.
    """
    if not is_geometric(g, 4).is_geometric:
        raise DomainError("glued surface characteristic needs a 4-dimensional geometric graph")
    f = as_function(g, f)
    genus_sum = sum(1 - Fraction(sectional_total_curvature(g, f, x), 2) for x in g.vertices)
    if genus_sum != euler_characteristic(g):
        raise ConsistencyError(f"glued genus {genus_sum} differs from chi {euler_characteristic(g)}")
    return int(2 - 2 * genus_sum)


def sectional_expectation(g: Graph, samples: int, seed: int = 0) -> list[tuple[float, float]]:
    """Per vertex, Monte Carlo mean and standard error of ``1 - chi(B_f(x))/2``."""
    if samples < 1:
        raise InputError("samples must be >= 1")
    draws = [[] for _ in g.vertices]
    for f in sample_functions(g, samples, seed):
        for x in g.vertices:
            draws[x].append(1 - sectional_total_curvature(g, f, x) / 2)
    return [mean_and_stderr(d) for d in draws]
