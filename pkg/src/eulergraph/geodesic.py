"""Curvature-deformed path metrics and the genus action of a path.

Each metric adds a per-vertex term to the hop count. Endpoints count with
weight 1/2 and interior vertices with weight 1, so a path's length is the
sum of edge weights ``1 + (term(u) + term(v)) / 2`` and path lengths add
under concatenation. ``path_length(..., endpoints="full")`` instead counts
every vertex fully, which shifts a path's length by a constant depending
only on its endpoints.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InputError
from .graph import Graph
from .morse import curvature, mean_and_stderr, sample_functions, symmetric_index
from .topology import is_geometric

MODES = ("hop", "curvature2d", "genus4d")


@dataclass(frozen=True)
class PathMetricConfig:
    mode: str = "hop"
    parameter: Fraction = Fraction(0)

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown metric mode {self.mode!r}")
        object.__setattr__(self, "parameter", Fraction(self.parameter))
        if self.parameter < 0:
            raise InputError("metric parameter must be nonnegative")

    @classmethod
    def hop(cls) -> "PathMetricConfig":
        return cls("hop")

    @classmethod
    def curvature2d(cls, c) -> "PathMetricConfig":
        return cls("curvature2d", Fraction(c))

    @classmethod
    def genus4d(cls, epsilon) -> "PathMetricConfig":
        return cls("genus4d", Fraction(epsilon))

    def vertex_term(self, g: Graph, v: int) -> Fraction:
        if self.mode == "hop" or self.parameter == 0:
            return Fraction(0)
        k = _curvature(g, v)
        if self.mode == "curvature2d":
            return -self.parameter * k
        # |path| - eps * (2 - 2 * sum K), without the path-independent constant
        return 2 * self.parameter * k

    def validate(self, g: Graph) -> None:
        """Reject parameters for which some vertex weight ``1 + term(v)`` is not positive."""
        for v in g.vertices:
            if 1 + self.vertex_term(g, v) <= 0:
                raise InputError(f"{self.mode}({self.parameter}) makes the weight at vertex {v} nonpositive")


@lru_cache(maxsize=65536)
def _curvature(g: Graph, v: int) -> Fraction:
    return curvature(g, v)


@lru_cache(maxsize=256)
def _geometric(g: Graph, d: int) -> bool:
    return is_geometric(g, d).is_geometric


def _check_path(g: Graph, path) -> list[int]:
    path = list(path)
    if not path:
        raise InputError("path must contain at least one vertex")
    for v in path:
        g._check_vertex(v)
    for u, v in zip(path, path[1:]):
        if not g.has_edge(u, v):
            raise InputError(f"consecutive vertices {u}, {v} are not adjacent")
    return path


def genus_action(
    g: Graph, path, dimension: int = 4, exact: bool = True, samples: int = 10_000, seed: int = 0
):
    """Expected Euler characteristic of the surface glued along ``path``.

    For a random function the glued surface has characteristic
    ``2 - 2 * sum j_f(x_k)`` in even dimension (genus additivity) and
    ``-2 * sum j_f(x_k)`` in odd dimension, where every local level
    surface is a union of loops. Exact mode replaces ``E[j_f]`` by the
    curvature and returns a Fraction; sampled mode returns
    ``(mean, stderr)``.
    """
    path = _check_path(g, path)
    if not _geometric(g, dimension):
        raise DomainError(f"genus action needs a {dimension}-dimensional geometric graph")
    base = 2 if dimension % 2 == 0 else 0
    if exact:
        return base - 2 * sum((_curvature(g, v) for v in path), Fraction(0))
    if samples < 1:
        raise InputError("samples must be >= 1")
    values = [float(base - 2 * sum(symmetric_index(g, f, v) for v in path)) for f in sample_functions(g, samples, seed)]
    return mean_and_stderr(values)


def path_length(g: Graph, path, config: PathMetricConfig, endpoints: str = "half") -> Fraction:
    """Length of ``path`` under ``config``.

    ``endpoints="half"`` gives the additive metric length;
    ``endpoints="full"`` gives ``|path| - c * sum K`` (curvature2d) or
    ``|path| - eps * genus_action`` (genus4d) with every vertex counted once.
    """
    path = _check_path(g, path)
    config.validate(g)
    hops = len(path) - 1
    if endpoints == "half":
        if hops == 0:
            return Fraction(0)
        terms = [config.vertex_term(g, v) for v in path]
        return hops + sum(terms[1:-1], Fraction(0)) + (terms[0] + terms[-1]) / 2
    if endpoints == "full":
        if config.mode == "genus4d" and config.parameter:
            return hops - config.parameter * genus_action(g, path, 4)
        return hops + sum((config.vertex_term(g, v) for v in path), Fraction(0))
    raise InputError(f"unknown endpoint convention {endpoints!r}")


def _edge_weight(g, config, u, v):
    return 1 + (config.vertex_term(g, u) + config.vertex_term(g, v)) / 2


def _shortest(g: Graph, a: int, config: PathMetricConfig):
    """Dijkstra from ``a``: distances, minimal predecessors, path counts and minimal hop counts."""
    g._check_vertex(a)
    config.validate(g)
    dist = {a: Fraction(0)}
    preds: dict[int, list[int]] = {a: []}
    done = set()
    order = []
    heap = [(Fraction(0), a)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        order.append(u)
        for w in g.neighbors(u):
            nd = d + _edge_weight(g, config, u, w)
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                preds[w] = [u]
                heapq.heappush(heap, (nd, w))
            elif nd == dist[w] and w not in done:
                preds[w].append(u)
    count = {a: 1}
    hops = {a: 0}
    for u in order[1:]:
        count[u] = sum(count[p] for p in preds[u])
        hops[u] = 1 + min(hops[p] for p in preds[u])
    return dist, preds, count, hops


def distance(g: Graph, a: int, b: int, config: PathMetricConfig | None = None) -> Fraction:
    config = config or PathMetricConfig.hop()
    g._check_vertex(b)
    dist, *_ = _shortest(g, a, config)
    if b not in dist:
        raise DomainError(f"vertices {a} and {b} lie in different components")
    return dist[b]


def minimal_geodesics(
    g: Graph, a: int, b: int, config: PathMetricConfig | None = None, limit: int | None = None
) -> list[tuple[int, ...]]:
    """Every path from ``a`` to ``b`` of minimal length, sorted."""
    config = config or PathMetricConfig.hop()
    g._check_vertex(b)
    dist, preds, _, _ = _shortest(g, a, config)
    if b not in dist:
        raise DomainError(f"vertices {a} and {b} lie in different components")
    out = []

    def unfold(v, suffix):
        if limit is not None and len(out) >= limit:
            return
        if v == a:
            out.append(tuple(reversed(suffix)))
            return
        for p in sorted(preds[v]):
            suffix.append(p)
            unfold(p, suffix)
            suffix.pop()

    unfold(b, [b])
    return sorted(out)


def injectivity_radius(g: Graph, v: int, config: PathMetricConfig | None = None) -> int:
    """Largest hop radius within which every vertex has a unique minimal geodesic from ``v``.

    A vertex reached by several minimal geodesics at hop length ``h`` caps
    the radius at ``h - 1``; without ties the radius is the largest hop
    length of any minimal geodesic from ``v``.
    """
    config = config or PathMetricConfig.hop()
    _, _, count, hops = _shortest(g, v, config)
    ties = [hops[u] for u in count if count[u] > 1]
    if ties:
        return min(ties) - 1
    return max(hops.values())
