"""Wheel curvature, Ricci and scalar curvature, and the Einstein tensor.

A wheel is a vertex together with a simple cycle in its unit sphere. The
curvature of a wheel with rim length ``n`` is ``1 - n/6``. Averages over an
empty set of wheels are taken to be 0, so triangle-free graphs are
(vacuously) Einstein.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError, InputError
from .graph import Graph, iter_bits, unit_sphere


@dataclass(frozen=True, order=True)
class Wheel:
    center: int
    rim: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.rim)

    @property
    def curvature(self) -> Fraction:
        return wheel_curvature(self)


def simple_cycles(g: Graph, max_length: int | None = None) -> list[tuple[int, ...]]:
    """All simple cycles of length >= 3, each once, in canonical form.

    Canonical form starts at the smallest vertex and walks towards the
    smaller of its two cycle neighbours.
    """
    masks = g.masks
    out = []

    def extend(start, path, visited):
        last = path[-1]
        if len(path) >= 3 and masks[last] >> start & 1 and path[1] < last:
            out.append(tuple(path))
        if max_length is not None and len(path) >= max_length:
            return
        for w in iter_bits(masks[last] & ~visited & ~((2 << start) - 1)):
            path.append(w)
            extend(start, path, visited | (1 << w))
            path.pop()

    for s in range(g.n):
        extend(s, [s], 1 << s)
    out.sort(key=lambda c: (len(c), c))
    return out


def wheel_curvature(w: Wheel | int) -> Fraction:
    n = w.size if isinstance(w, Wheel) else w
    return 1 - Fraction(n, 6)


@lru_cache(maxsize=8192)
def _wheels_at(g: Graph, center: int, max_length: int | None) -> tuple[Wheel, ...]:
    sphere = unit_sphere(g, center)
    origin = sphere.origin
    # origin is increasing, so canonical form survives relabelling
    return tuple(Wheel(center, tuple(origin[v] for v in cyc)) for cyc in simple_cycles(sphere, max_length))


def enumerate_wheels(
    g: Graph, center: int, through: int | None = None, max_length: int | None = None
) -> list[Wheel]:
    """Wheels centred at ``center``, optionally only those whose rim visits ``through``."""
    g._check_vertex(center)
    wheels = _wheels_at(g, center, max_length)
    if through is not None:
        g._check_vertex(through)
        wheels = [w for w in wheels if through in w.rim]
    return list(wheels)


def _mean(values) -> Fraction:
    values = list(values)
    if not values:
        return Fraction(0)
    return sum(values, Fraction(0)) / len(values)


def _edge(g: Graph, e) -> tuple[int, int]:
    u, v = e
    if not (isinstance(u, int) and isinstance(v, int) and 0 <= u < g.n and 0 <= v < g.n and g.has_edge(u, v)):
        raise InputError(f"{e!r} is not an edge")
    return (u, v) if u < v else (v, u)


def ricci(g: Graph, e, max_length: int | None = None) -> Fraction:
    """Mean curvature of the wheels having ``e`` as a spoke."""
    u, v = _edge(g, e)
    wheels = enumerate_wheels(g, u, v, max_length) + enumerate_wheels(g, v, u, max_length)
    return _mean(wheel_curvature(w) for w in wheels)


def scalar(g: Graph, v: int, mode: str = "incident", max_length: int | None = None) -> Fraction:
    """Scalar curvature at ``v``.

    ``mode="incident"`` averages the Ricci curvature of incident edges.
    ``mode="wheels"`` averages the curvature of every wheel containing
    ``v`` as centre or rim vertex; it is offered for comparison only.
    """
    g._check_vertex(v)
    if mode == "incident":
        return _mean(ricci(g, (v, w), max_length) for w in g.neighbors(v))
    if mode == "wheels":
        wheels = [w for c in g.vertices for w in _wheels_at(g, c, max_length) if c == v or v in w.rim]
        return _mean(wheel_curvature(w) for w in wheels)
    raise InputError(f"unknown scalar mode {mode!r}")


def einstein_tensor(g: Graph, v: int, e, max_length: int | None = None) -> Fraction:
    a, b = _edge(g, e)
    if v not in (a, b):
        raise InputError(f"edge {e!r} is not incident to {v}")
    return ricci(g, (a, b), max_length) - scalar(g, v, max_length=max_length)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class EinsteinReport:
    ricci: dict
    scalar: dict
    tensor: dict
    is_einstein: bool
    max_abs_tensor: Fraction
    approximate: bool = False

    def to_json(self) -> str:
        doc = {
            "ricci": [[u, v, _frac(q)] for (u, v), q in sorted(self.ricci.items())],
            "scalar": [[v, _frac(q)] for v, q in sorted(self.scalar.items())],
            "tensor": [[v, a, b, _frac(q)] for (v, (a, b)), q in sorted(self.tensor.items())],
            "einstein": self.is_einstein,
            "max_abs_tensor": _frac(self.max_abs_tensor),
            "approximate": self.approximate,
        }
        return json.dumps(doc)


def is_einstein(g: Graph, max_length: int | None = None) -> EinsteinReport:
    """Full Ricci/scalar/tensor report; Einstein means every tensor entry is exactly 0.

    With ``max_length`` set, longer rims are skipped and the report is
    flagged approximate.
    """
    spokes: dict[tuple[int, int], list[Fraction]] = {e: [] for e in g.edges}
    for c in g.vertices:
        for w in _wheels_at(g, c, max_length):
            k = wheel_curvature(w)
            for r in w.rim:
                spokes[(min(c, r), max(c, r))].append(k)
    ric = {e: _mean(ks) for e, ks in spokes.items()}
    sca = {}
    tensor = {}
    for v in g.vertices:
        incident = [(min(v, w), max(v, w)) for w in g.neighbors(v)]
        sca[v] = _mean(ric[e] for e in incident)
        for e in incident:
            tensor[(v, e)] = ric[e] - sca[v]
        if incident and sum((tensor[(v, e)] for e in incident), Fraction(0)) != 0:
            raise ConsistencyError(f"conservation law fails at vertex {v}")
    max_abs = max((abs(t) for t in tensor.values()), default=Fraction(0))
    return EinsteinReport(ric, sca, tensor, max_abs == 0, max_abs, max_length is not None)
