"""Vertex functions, Poincare-Hopf indices and curvature as index expectation."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import _rng
from .errors import ConsistencyError, InputError
from .graph import Graph, f_vector, unit_sphere
from .topology import chi_of_mask, euler_characteristic


@dataclass(frozen=True)
class VertexFunction:
    """Injective real-valued function on the vertices, stored in vertex-id order."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(set(self.values)) != len(self.values):
            raise InputError("vertex function is not injective")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, v):
        return self.values[v]

    def __neg__(self) -> "VertexFunction":
        return VertexFunction(tuple(-t for t in self.values))

    def compose(self, g) -> "VertexFunction":
        """``g o f``; strictly increasing ``g`` keeps all indices unchanged."""
        return VertexFunction(tuple(g(t) for t in self.values))

    def to_json(self) -> str:
        return json.dumps([float(t) for t in self.values])

    @classmethod
    def from_json(cls, text: str) -> "VertexFunction":
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(t, (int, float)) for t in data):
            raise InputError("vertex function json must be an array of numbers")
        return cls(tuple(data))


def as_function(g: Graph, f) -> VertexFunction:
    if not isinstance(f, VertexFunction):
        f = VertexFunction(tuple(f))
    if len(f) != g.n:
        raise InputError(f"function has {len(f)} values for {g.n} vertices")
    return f


def sample_function(g: Graph, seed, *counter: int) -> VertexFunction:
    """I.i.d. uniform values on [-1, 1], one per vertex, keyed by ``(seed, *counter)``.

    Colliding vertices are redrawn until all values are distinct.
    """
    rng = _rng.generator(seed, *counter)
    values = rng.uniform(-1.0, 1.0, g.n).tolist()
    while len(set(values)) != len(values):
        seen = set()
        for v, t in enumerate(values):
            if t in seen:
                values[v] = float(rng.uniform(-1.0, 1.0))
            seen.add(values[v])
    return VertexFunction(tuple(values))


def sample_functions(g: Graph, samples: int, seed: int) -> Iterator[VertexFunction]:
    """The functions used by Monte Carlo estimates; sample ``i`` is keyed by ``(seed, i)``."""
    for i in range(samples):
        yield sample_function(g, seed, i)


def _lower_mask(g: Graph, f: VertexFunction, x: int) -> int:
    fx = f[x]
    m = 0
    nbrs = g.masks[x]
    while nbrs:
        low = nbrs & -nbrs
        y = low.bit_length() - 1
        if f[y] < fx:
            m |= low
        nbrs ^= low
    return m


def index(g: Graph, f, x: int) -> int:
    """``1 - chi`` of the part of the unit sphere where ``f`` is below ``f(x)``."""
    f = as_function(g, f)
    g._check_vertex(x)
    return 1 - chi_of_mask(g.masks, _lower_mask(g, f, x))


def symmetric_index(g: Graph, f, x: int) -> Fraction:
    f = as_function(g, f)
    return Fraction(index(g, f, x) + index(g, -f, x), 2)


def poincare_hopf_sum(g: Graph, f) -> int:
    """Sum of indices over all vertices; checked against chi and the symmetric sum."""
    f = as_function(g, f)
    total = sum(index(g, f, x) for x in g.vertices)
    sym = sum(symmetric_index(g, f, x) for x in g.vertices)
    chi = euler_characteristic(g)
    if not total == sym == chi:
        raise ConsistencyError(f"index sum {total}, symmetric sum {sym}, chi {chi} disagree")
    return total


def exact_index_expectation(g: Graph, x: int) -> Fraction:
    """Expected index at ``x`` over exchangeable atomless random functions.

    A k-simplex of the unit sphere lies entirely below ``x`` exactly when
    ``x`` is the largest of ``k + 2`` exchangeable values, which happens
    with probability ``1/(k+2)``. Summing the sphere's alternating clique
    counts with these weights gives the expectation of ``chi`` of the
    lower sphere.
    """
    sphere = f_vector(unit_sphere(g, x))
    return 1 - sum(Fraction((-1) ** k * count, k + 2) for k, count in enumerate(sphere))


curvature = exact_index_expectation


@dataclass(frozen=True)
class CurvatureReport:
    per_vertex: tuple[Fraction, ...]
    total: Fraction


def curvature_report(g: Graph) -> CurvatureReport:
    per_vertex = tuple(exact_index_expectation(g, x) for x in g.vertices)
    total = sum(per_vertex, Fraction(0))
    chi = euler_characteristic(g)
    if total != chi:
        raise ConsistencyError(f"Gauss-Bonnet failed: total curvature {total} != chi {chi}")
    return CurvatureReport(per_vertex, total)


def mean_and_stderr(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = math.fsum(values) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var / n)


def curvature_expectation(g: Graph, x: int, samples: int, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo mean of ``index(g, f, x)`` and its standard error."""
    if samples < 1:
        raise InputError("samples must be >= 1")
    g._check_vertex(x)
    values = [float(index(g, f, x)) for f in sample_functions(g, samples, seed)]
    return mean_and_stderr(values)
