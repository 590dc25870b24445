"""Search for graphs of extremal Euler characteristic.

Orders up to 7 are scanned exhaustively (at most 2**21 labeled graphs,
vectorised with numpy over edge bitmasks). Larger orders use simulated
annealing with single edge flips.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from .einstein import is_einstein
from .errors import CapacityError, ConsistencyError, InputError
from .graph import Graph, component_mask, serialize_graph
from .topology import chi_of_mask, euler_characteristic

EXHAUSTIVE_MAX_N = 7


@dataclass(frozen=True)
class SearchResult:
    n: int
    mode: str
    connected_only: bool
    best_value: int
    witnesses: tuple[tuple[tuple[int, int], ...], ...]
    method: str
    seed: int | None
    evaluations: int

    def graphs(self) -> list[Graph]:
        return [Graph(self.n, w) for w in self.witnesses]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "connected_only": self.connected_only,
            "best_value": self.best_value,
            "method": self.method,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "witnesses": [serialize_graph(g) for g in self.graphs()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def canonical_edges(n: int, edges) -> tuple[tuple[int, int], ...]:
    """Canonical sorted edge list: equal for two graphs iff they are isomorphic.

    Vertices are first grouped by an isomorphism-invariant signature; the
    canonical labeling is the lexicographically least edge list over all
    labelings that respect the grouping.
    """
    adj = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    def signature(v):
        tri = sum(1 for a, b in combinations(sorted(adj[v]), 2) if b in adj[a])
        return (len(adj[v]), tri, tuple(sorted(len(adj[w]) for w in adj[v])))

    sig = [signature(v) for v in range(n)]
    classes = [[v for v in range(n) if sig[v] == s] for s in sorted(set(sig))]
    best = None
    for perms in product(*(permutations(c) for c in classes)):
        label = {}
        for block in perms:
            for v in block:
                label[v] = len(label)
        cand = tuple(sorted((min(label[u], label[v]), max(label[u], label[v])) for u, v in edges))
        if best is None or cand < best:
            best = cand
    return best if best is not None else ()


def _pairs(n):
    return list(combinations(range(n), 2))


def _scan_values(n: int) -> tuple[np.ndarray, np.ndarray]:
    """chi and connectivity of every labeled graph, indexed by edge bitmask."""
    pairs = _pairs(n)
    m = len(pairs)
    pos = {e: i for i, e in enumerate(pairs)}
    masks = np.arange(1 << m, dtype=np.int64)
    chi = np.full(masks.shape, n, dtype=np.int64) - np.bitwise_count(masks).astype(np.int64)
    for k in range(3, n + 1):
        sign = 1 if k % 2 == 1 else -1
        for sub in combinations(range(n), k):
            need = 0
            for e in combinations(sub, 2):
                need |= 1 << pos[e]
            chi += sign * ((masks & need) == need)
    if n == 0:
        return chi, np.zeros(masks.shape, dtype=bool)
    nbr = [np.zeros(masks.shape, dtype=np.int64) for _ in range(n)]
    for i, (u, v) in enumerate(pairs):
        bit = (masks >> i) & 1
        nbr[u] |= bit << v
        nbr[v] |= bit << u
    reach = np.ones(masks.shape, dtype=np.int64)
    for _ in range(n - 1):
        grown = reach.copy()
        for v in range(n):
            grown |= np.where((reach >> v) & 1 == 1, nbr[v], 0)
        reach = grown
    return chi, reach == (1 << n) - 1


def _edges_of(mask: int, pairs) -> list[tuple[int, int]]:
    return [pairs[i] for i in range(len(pairs)) if mask >> i & 1]


def _collect_witnesses(n, masks, pairs, limit):
    seen = []
    for mask in masks:
        canon = canonical_edges(n, _edges_of(int(mask), pairs))
        if canon not in seen:
            seen.append(canon)
            if len(seen) >= limit:
                break
    return tuple(sorted(seen))


def exhaustive_extremal(
    n: int, connected_only: bool = True, max_witnesses: int = 10
) -> tuple[SearchResult, SearchResult]:
    """Exact minimum and maximum of chi over all labeled graphs of order ``n``."""
    if n > EXHAUSTIVE_MAX_N:
        raise CapacityError(f"exhaustive search is capped at n <= {EXHAUSTIVE_MAX_N}; use anneal_extremal")
    if n < 1:
        raise InputError("n must be >= 1")
    pairs = _pairs(n)
    chi, connected = _scan_values(n)
    ok = connected if connected_only else np.ones(chi.shape, dtype=bool)
    idx = np.flatnonzero(ok)
    values = chi[idx]
    results = []
    for mode, best in (("min", int(values.min())), ("max", int(values.max()))):
        hits = idx[values == best]
        witnesses = _collect_witnesses(n, hits, pairs, max_witnesses)
        results.append(SearchResult(n, mode, connected_only, best, witnesses, "exhaustive", None, int(idx.size)))
    return results[0], results[1]


class _Evaluator:
    """chi and connectivity of edge-bitmask states, with a bounded memo."""

    def __init__(self, n, cap=1 << 20):
        self.n = n
        self.pairs = _pairs(n)
        self.full = (1 << n) - 1
        self.memo = {}
        self.cap = cap
        self.calls = 0

    def __call__(self, state):
        self.calls += 1
        hit = self.memo.get(state)
        if hit is not None:
            return hit
        adj = [0] * self.n
        s = state
        while s:
            low = s & -s
            u, v = self.pairs[low.bit_length() - 1]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            s ^= low
        value = (chi_of_mask(adj, self.full), component_mask(adj, 1, self.full) == self.full)
        if len(self.memo) < self.cap:
            self.memo[state] = value
        return value


def anneal_extremal(
    n: int,
    mode: str = "min",
    steps: int = 100_000,
    t0: float = 2.0,
    t1: float = 0.05,
    connected_only: bool = True,
    seed: int = 0,
) -> SearchResult:
    """Simulated annealing over graphs of order ``n`` with single edge flips.

    ``steps`` counts visited states including the initial one (a random
    spanning tree), so ``steps=1`` just evaluates the start. Temperatures
    fall geometrically from ``t0`` to ``t1``. Flips that disconnect the
    graph are rejected when ``connected_only`` is set. Returns the best
    state ever visited, relabeled canonically when ``n <= 7``.
    """
    if mode not in ("min", "max"):
        raise InputError("mode must be 'min' or 'max'")
    if n < 2:
        raise InputError("annealing needs n >= 2")
    if steps < 1:
        raise InputError("steps must be >= 1")
    if not (t0 > 0 and t1 > 0):
        raise InputError("temperatures must be positive")
    rng = random.Random(seed)
    ev = _Evaluator(n)
    pos = {e: i for i, e in enumerate(ev.pairs)}
    order = list(range(n))
    rng.shuffle(order)
    state = 0
    for k in range(1, n):
        u, v = sorted((order[k], order[rng.randrange(k)]))
        state |= 1 << pos[(u, v)]

    sign = 1 if mode == "min" else -1
    chi, _ = ev(state)
    energy = sign * chi
    best_energy, best_state = energy, state
    m = len(ev.pairs)
    proposals = steps - 1
    ratio = t1 / t0
    for k in range(proposals):
        temp = t0 * ratio ** (k / (proposals - 1)) if proposals > 1 else t1
        cand = state ^ (1 << rng.randrange(m))
        c_chi, c_conn = ev(cand)
        if connected_only and not c_conn:
            continue
        delta = sign * c_chi - energy
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            state, energy = cand, sign * c_chi
            if energy < best_energy:
                best_energy, best_state = energy, state
    edges = _edges_of(best_state, ev.pairs)
    # brute-force canonical labeling is only affordable at exhaustive-search orders
    edges = canonical_edges(n, edges) if n <= EXHAUSTIVE_MAX_N else tuple(edges)
    return SearchResult(n, mode, connected_only, sign * best_energy, (edges,), "anneal", seed, ev.calls)


def monotonicity_report(n_max: int, connected_only: bool = True) -> list[tuple[int, int, int]]:
    """Rows ``(n, min chi, max chi)`` for ``n = 1..n_max``; checks min falls and max rises."""
    if not 1 <= n_max <= EXHAUSTIVE_MAX_N:
        raise CapacityError(f"monotonicity report needs 1 <= n_max <= {EXHAUSTIVE_MAX_N}")
    rows = []
    for n in range(1, n_max + 1):
        lo, hi = exhaustive_extremal(n, connected_only, max_witnesses=1)
        rows.append((n, lo.best_value, hi.best_value))
    for (_, lo0, hi0), (n, lo1, hi1) in zip(rows, rows[1:]):
        if lo1 > lo0 or hi1 < hi0:
            raise ConsistencyError(f"extrema not monotone at n={n}")
    return rows


@dataclass(frozen=True)
class AnnotatedResult:
    result: SearchResult
    einstein: tuple[bool, ...]


def einstein_filter(result: SearchResult) -> AnnotatedResult:
    """Flag each witness with whether it is an Einstein graph."""
    flags = []
    for g in result.graphs():
        if euler_characteristic(g) != result.best_value:
            raise ConsistencyError("witness does not attain the reported value")
        flags.append(is_einstein(g).is_einstein)
    return AnnotatedResult(result, tuple(flags))
