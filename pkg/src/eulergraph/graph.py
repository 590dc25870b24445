"""Finite simple graphs: representation, generators, cliques and tree counts.

Adjacency is stored as one Python ``int`` bitmask per vertex. All higher
level routines in the package walk these masks directly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, NamedTuple, Sequence

from ._rng import PairCoins
from .errors import CapacityError, InputError, ParseError


def iter_bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable finite simple graph on vertices ``0 .. n-1``.

    ``origin`` optionally maps each vertex to a vertex id of the graph this
    one was cut out of (see :func:`induced_subgraph`).
    """

    __slots__ = ("n", "_masks", "labels", "origin", "_edges")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[str] | None = None,
        origin: Sequence[int] | None = None,
    ):
        if not isinstance(n, int) or n < 0:
            raise InputError(f"vertex count must be a nonnegative integer, got {n!r}")
        masks = [0] * n
        for pair in edges:
            try:
                u, v = pair
                u, v = int(u), int(v)
            except (TypeError, ValueError):
                raise InputError(f"edge must be a pair of vertex ids, got {pair!r}") from None
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._init(n, tuple(masks), labels, origin)

    def _init(self, n, masks, labels, origin):
        if labels is not None and len(labels) != n:
            raise InputError("labels must name every vertex")
        if origin is not None and len(origin) != n:
            raise InputError("origin map must cover every vertex")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_masks", masks)
        object.__setattr__(self, "labels", None if labels is None else tuple(labels))
        object.__setattr__(self, "origin", None if origin is None else tuple(origin))
        object.__setattr__(self, "_edges", None)

    @classmethod
    def from_masks(cls, masks: Sequence[int], labels=None, origin=None) -> "Graph":
        """Build from adjacency bitmasks without validation (internal fast path)."""
        g = cls.__new__(cls)
        g._init(len(masks), tuple(masks), labels, origin)
        return g

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph.from_masks, (self._masks, self.labels, self.origin))

    @property
    def masks(self) -> tuple[int, ...]:
        return self._masks

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges ``(u, v)`` with ``u < v``, sorted lexicographically."""
        if self._edges is None:
            out = []
            for u, m in enumerate(self._masks):
                out.extend((u, v) for v in iter_bits(m >> (u + 1) << (u + 1)))
            object.__setattr__(self, "_edges", tuple(out))
        return self._edges

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self._masks) // 2

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return tuple(iter_bits(self._masks[v]))

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._masks[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self._masks[u] >> v & 1)

    def _check_vertex(self, v):
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise InputError(f"vertex {v!r} not in 0..{self.n - 1}")

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        return component_mask(self._masks, 1, (1 << self.n) - 1) == (1 << self.n) - 1

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._masks == other._masks

    def __hash__(self):
        return hash((self.n, self._masks))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)!r})"


def component_mask(masks: Sequence[int], seed: int, within: int) -> int:
    """Vertices of ``within`` reachable from the vertices in ``seed``."""
    seen = seed & within
    frontier = seen
    while frontier:
        grow = 0
        for v in iter_bits(frontier):
            grow |= masks[v]
        frontier = grow & within & ~seen
        seen |= frontier
    return seen


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph(n, edges)


def induced_subgraph(g: Graph, subset: Iterable[int]) -> Graph:
    """Subgraph induced on ``subset``; new vertex ``i`` is ``origin[i]`` in ``g``."""
    verts = sorted(set(subset))
    for v in verts:
        g._check_vertex(v)
    return _induced_by_mask(g, sum(1 << v for v in verts))


def _induced_by_mask(g: Graph, mask: int) -> Graph:
    verts = list(iter_bits(mask))
    index = {v: i for i, v in enumerate(verts)}
    masks = []
    for v in verts:
        m = 0
        for w in iter_bits(g.masks[v] & mask):
            m |= 1 << index[w]
        masks.append(m)
    labels = None if g.labels is None else [g.labels[v] for v in verts]
    return Graph.from_masks(masks, labels=labels, origin=verts)


def unit_sphere(g: Graph, v: int) -> Graph:
    """Induced subgraph on the neighbours of ``v``."""
    g._check_vertex(v)
    return _induced_by_mask(g, g.masks[v])


# --- cliques ---------------------------------------------------------------


@dataclass(frozen=True)
class FVector:
    """Clique counts ``counts[k]`` = number of ``(k+1)``-cliques."""

    counts: tuple[int, ...]

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, k):
        return self.counts[k]

    @property
    def dimension(self) -> int:
        return len(self.counts) - 1

    def euler_characteristic(self) -> int:
        return sum(c if k % 2 == 0 else -c for k, c in enumerate(self.counts))


@dataclass(frozen=True)
class CliqueSet:
    """Cliques grouped by dimension; ``by_dim[k]`` holds the sorted ``(k+1)``-cliques."""

    by_dim: tuple[tuple[tuple[int, ...], ...], ...]

    def __getitem__(self, k):
        return self.by_dim[k]

    def __len__(self):
        return len(self.by_dim)

    def all(self):
        for level in self.by_dim:
            yield from level


def _trim(counts: list[int]) -> tuple[int, ...]:
    while counts and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


def enumerate_cliques(
    g: Graph, max_dim: int | None = None, limit: int | None = None
) -> tuple[CliqueSet, FVector]:
    """All cliques of ``g`` up to dimension ``max_dim``.

    Cliques are grown by appending larger neighbours only, so each clique is
    produced once and every level comes out in lexicographic order.
    ``limit`` caps the total number of cliques materialised; exceeding it
    raises :class:`CapacityError` with the per-dimension counts reached.
    """
    masks = g.masks
    max_size = None if max_dim is None else max_dim + 1
    levels: list[list[tuple[int, ...]]] = []
    total = 0

    def grow(clique, cand):
        nonlocal total
        k = len(clique) - 1
        if k == len(levels):
            levels.append([])
        levels[k].append(tuple(clique))
        total += 1
        if limit is not None and total > limit:
            raise CapacityError(
                f"clique enumeration exceeded limit {limit}",
                progress={"counts": [len(level) for level in levels]},
            )
        if max_size is not None and len(clique) >= max_size:
            return
        for u in iter_bits(cand):
            clique.append(u)
            grow(clique, cand & masks[u] & ~((2 << u) - 1))
            clique.pop()

    if max_size is None or max_size > 0:
        for v in range(g.n):
            grow([v], masks[v] & ~((2 << v) - 1))
    # the walk is depth-first in lexicographic order, so each level is sorted already
    cliques = CliqueSet(tuple(tuple(level) for level in levels))
    return cliques, FVector(tuple(len(level) for level in levels))


def f_vector(g: Graph, max_dim: int | None = None) -> FVector:
    """Clique counts without materialising the cliques."""
    masks = g.masks
    counts = [0] * (g.n + 1)
    cap = g.n if max_dim is None else min(max_dim, g.n)

    def walk(size, cand):
        # every candidate extends the current clique by one vertex
        counts[size] += cand.bit_count()
        if size >= cap:
            return
        for u in iter_bits(cand):
            rest = cand & masks[u] & ~((2 << u) - 1)
            if rest:
                walk(size + 1, rest)

    if cap >= 0 and g.n:
        walk(0, (1 << g.n) - 1)
    return FVector(_trim(counts[: cap + 1]))


# --- spanning trees --------------------------------------------------------


class TreeCount(NamedTuple):
    count: int
    connected: bool


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(row) for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[-1][-1]


def laplacian(g: Graph) -> list[list[int]]:
    rows = []
    for v in range(g.n):
        row = [0] * g.n
        row[v] = g.masks[v].bit_count()
        for w in iter_bits(g.masks[v]):
            row[w] = -1
        rows.append(row)
    return rows


def spanning_tree_count(g: Graph) -> TreeCount:
    """Kirchhoff count: determinant of the Laplacian with one row and column removed.

    A disconnected graph yields ``TreeCount(0, connected=False)``.
    """
    if g.n == 0:
        raise InputError("spanning tree count needs at least one vertex")
    if not g.is_connected():
        return TreeCount(0, False)
    reduced = [row[:-1] for row in laplacian(g)[:-1]]
    return TreeCount(bareiss_determinant(reduced), True)


# --- generators ------------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InputError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 0:
        raise InputError("complete graph needs n >= 0")
    return Graph(n, combinations(range(n), 2))


def complete_multipartite(*sizes: int) -> Graph:
    if any(s < 0 for s in sizes):
        raise InputError("part sizes must be nonnegative")
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]])


def star(k: int) -> Graph:
    """Center 0 joined to rays ``1..k``."""
    if k < 0:
        raise InputError("star needs k >= 0")
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


def wheel(n: int) -> Graph:
    """Center 0 joined to the rim cycle ``1..n``."""
    if n < 3:
        raise InputError("wheel needs a rim of length >= 3")
    rim = [(1 + i, 1 + (i + 1) % n) for i in range(n)]
    return Graph(n + 1, rim + [(0, i) for i in range(1, n + 1)])


def cross_polytope(d: int) -> Graph:
    """Boundary of the (d+1)-dimensional cross-polytope: d+1 parts of size 2."""
    if d < 1:
        raise InputError("cross_polytope needs d >= 1")
    return complete_multipartite(*([2] * (d + 1)))


def icosahedron() -> Graph:
    top, bottom = 0, 11
    upper = [1, 2, 3, 4, 5]
    lower = [6, 7, 8, 9, 10]
    edges = []
    for k in range(5):
        edges.append((top, upper[k]))
        edges.append((bottom, lower[k]))
        edges.append((upper[k], upper[(k + 1) % 5]))
        edges.append((lower[k], lower[(k + 1) % 5]))
        edges.append((upper[k], lower[k]))
        edges.append((upper[k], lower[(k + 1) % 5]))
    return Graph(12, edges)


def kite() -> Graph:
    """Two triangles sharing the edge 1-2; vertices 0 and 3 are the tips."""
    return Graph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def two_star(k: int) -> Graph:
    """Two centers (0 and 1) sharing ``k`` rays, i.e. K_{2,k}."""
    return complete_multipartite(2, k)


def torus_triangulation(a: int, b: int) -> Graph:
    """``a x b`` grid with one diagonal per square, wrapped in both directions."""
    if a < 4 or b < 4:
        raise InputError("torus_triangulation needs a, b >= 4")

    def vid(i, j):
        return (i % a) * b + (j % b)

    edges = []
    for i in range(a):
        for j in range(b):
            edges += [(vid(i, j), vid(i + 1, j)), (vid(i, j), vid(i, j + 1)), (vid(i, j), vid(i + 1, j + 1))]
    return Graph(a * b, edges)


def as_probability(p) -> Fraction:
    """Parse a probability given as a rational (``"9/10"``, ``"0.5"``, ``Fraction``)."""
    if isinstance(p, float):
        p = repr(p)
    try:
        q = Fraction(p)
    except (ValueError, ZeroDivisionError, TypeError):
        raise InputError(f"not a rational probability: {p!r}") from None
    if not 0 <= q <= 1:
        raise InputError(f"probability {q} outside [0, 1]")
    return q


def erdos_renyi(n: int, p, seed: int = 0) -> Graph:
    """Each pair ``u < v`` (row-major) is an edge with probability ``p``, coin keyed by ``(seed, u, v)``."""
    if n < 0:
        raise InputError("erdos_renyi needs n >= 0")
    coin = PairCoins(seed, as_probability(p))
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if coin(u, v)])


FAMILIES: dict[str, Callable[..., Graph]] = {
    "cycle": cycle,
    "path": path,
    "complete": complete,
    "complete_multipartite": complete_multipartite,
    "star": star,
    "wheel": wheel,
    "cross_polytope": cross_polytope,
    "icosahedron": icosahedron,
    "octahedron": lambda: cross_polytope(2),
    "kite": kite,
    "two_star": two_star,
    "torus_triangulation": torus_triangulation,
    "erdos_renyi": erdos_renyi,
}


def generate(family: str, *params) -> Graph:
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise InputError(f"unknown graph family {family!r}") from None
    if family != "erdos_renyi":
        for p in params:
            if not isinstance(p, int) or isinstance(p, bool):
                raise InputError(f"{family} expects integer parameters, got {p!r}")
    try:
        return fn(*params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {family}: {exc}") from None


_SPEC = re.compile(r"^\s*([a-z_]+)\s*(?:\((.*)\))?\s*$")


def parse_spec(spec: str) -> tuple[str, tuple]:
    """Split ``"name(a,b,...)"`` into a family name and parameters."""
    m = _SPEC.match(spec)
    if not m:
        raise InputError(f"malformed generator spec {spec!r}")
    name, body = m.group(1), m.group(2)
    params = []
    if body and body.strip():
        for token in body.split(","):
            token = token.strip()
            if re.fullmatch(r"-?\d+", token):
                params.append(int(token))
            elif re.fullmatch(r"-?\d+/\d+|-?\d*\.\d+", token):
                params.append(Fraction(token))
            else:
                raise InputError(f"bad parameter {token!r} in spec {spec!r}")
    return name, tuple(params)


def generate_from_spec(spec: str) -> Graph:
    name, params = parse_spec(spec)
    return generate(name, *params)


# --- serialization ---------------------------------------------------------


def parse_graph(source: str, format: str = "edge_list") -> Graph:
    if format == "edge_list":
        return _parse_edge_list(source)
    if format == "json":
        return _parse_json(source)
    raise InputError(f"unknown graph format {format!r}")


def _parse_edge_list(source: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("header must read 'n <count>'", lineno, raw.find("n") + 1)
            n = int(tokens[1])
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two vertex ids, found {len(tokens)} fields", lineno)
        pair = []
        col = 0
        for tok in tokens:
            col = raw.index(tok, col)
            if not tok.isdigit():
                raise ParseError(f"vertex id {tok!r} is not a nonnegative integer", lineno, col + 1)
            pair.append(int(tok))
            col += len(tok)
        if pair[0] == pair[1]:
            raise ParseError(f"self-loop at vertex {pair[0]}", lineno)
        edges.append((lineno, pair[0], pair[1]))
    top = max((max(u, v) for _, u, v in edges), default=-1)
    if n is None:
        n = top + 1
    for lineno, u, v in edges:
        if max(u, v) >= n:
            raise ParseError(f"vertex id {max(u, v)} exceeds declared n={n}", lineno)
    return Graph(n, [(u, v) for _, u, v in edges])


def _parse_json(source: str) -> Graph:
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid json: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError("json graph must be an object with 'n' and 'edges'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise ParseError("'n' must be a nonnegative integer")
    if not isinstance(doc["edges"], list):
        raise ParseError("'edges' must be a list")
    edges = []
    for i, e in enumerate(doc["edges"]):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ParseError(f"edge #{i} must be a pair of integers", position=i)
        edges.append(tuple(e))
    labels = doc.get("labels")
    try:
        return Graph(n, edges, labels=labels)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def serialize_graph(g: Graph, format: str = "edge_list") -> str:
    if format == "edge_list":
        lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges]
        return "\n".join(lines) + "\n"
    if format == "json":
        doc = {"n": g.n, "edges": [list(e) for e in g.edges]}
        if g.labels is not None:
            doc["labels"] = list(g.labels)
        return json.dumps(doc)
    raise InputError(f"unknown graph format {format!r}")
