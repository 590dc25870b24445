"""Euler characteristic, geometric-graph recognition, genus and the tree functional."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, InputError
from .graph import Graph, f_vector, iter_bits, spanning_tree_count


def euler_characteristic(g: Graph) -> int:
    """Alternating clique count ``v0 - v1 + v2 - ...``."""
    return f_vector(g).euler_characteristic()


def chi_of_mask(masks, mask: int, memo: dict | None = None) -> int:
    """Euler characteristic of the subgraph induced on ``mask``.

    Poincare-Hopf with the vertex-id order as the Morse function: each
    vertex contributes one minus the characteristic of its lower neighbours,
    and that lower sphere is handled by the same recursion.
    """
    if memo is not None and mask in memo:
        return memo[mask]
    total = 0
    for x in iter_bits(mask):
        lower = masks[x] & mask & ((1 << x) - 1)
        if not lower:
            total += 1
        elif lower & (lower - 1):
            total += 1 - chi_of_mask(masks, lower, memo)
        # a single lower neighbour contributes 1 - 1 = 0
    if memo is not None:
        memo[mask] = total
    return total


def euler_characteristic_ph(g: Graph, seed: int | None = None, memoize: bool = False) -> int:
    """Euler characteristic by the Poincare-Hopf recursion.

    With ``seed=None`` the vertex ids serve as the injective function;
    otherwise a seeded random vertex order is used.
    """
    masks = g.masks
    if seed is not None:
        order = list(range(g.n))
        random.Random(seed).shuffle(order)
        rank = {v: r for r, v in enumerate(order)}
        relabeled = [0] * g.n
        for v in range(g.n):
            m = 0
            for w in iter_bits(masks[v]):
                m |= 1 << rank[w]
            relabeled[rank[v]] = m
        masks = relabeled
    return chi_of_mask(masks, (1 << g.n) - 1, {} if memoize else None)


@dataclass(frozen=True)
class GeometricReport:
    claimed_dimension: int
    is_geometric: bool
    witnesses: tuple[tuple[int | None, str], ...] = field(default=())


def sphere_characteristic(d: int) -> int:
    """Euler characteristic ``1 - (-1)**d`` required of unit spheres in dimension ``d``."""
    return 1 - (-1) ** d


def _geometric(masks, mask, d, memo) -> bool:
    key = (mask, d)
    if key in memo:
        return memo[key]
    if not mask:
        ok = False
    elif d == 0:
        ok = all(not (masks[x] & mask) for x in iter_bits(mask))
    else:
        want = sphere_characteristic(d)
        ok = True
        for x in iter_bits(mask):
            s = masks[x] & mask
            if not _geometric(masks, s, d - 1, memo) or chi_of_mask(masks, s) != want:
                ok = False
                break
    memo[key] = ok
    return ok


def is_geometric(g: Graph, d: int) -> GeometricReport:
    """Check that ``g`` is a geometric graph of dimension ``d``.

    Dimension 0 means nonempty and edgeless; dimension ``d >= 1`` means every
    unit sphere is geometric of dimension ``d - 1`` with characteristic
    ``1 - (-1)**d``. The report names the first offending vertex for each
    kind of defect.
    """
    if d < 0:
        raise InputError("dimension must be nonnegative")
    masks = g.masks
    full = (1 << g.n) - 1
    if g.n == 0:
        return GeometricReport(d, False, ((None, "empty graph"),))
    found: dict[str, tuple[int, str]] = {}
    if d == 0:
        for x in range(g.n):
            if masks[x]:
                found["edge"] = (x, f"vertex {x} has neighbours")
                break
    else:
        memo: dict = {}
        want = sphere_characteristic(d)
        for x in range(g.n):
            s = masks[x] & full
            if "sphere" not in found and not _geometric(masks, s, d - 1, memo):
                found["sphere"] = (x, f"unit sphere is not geometric of dimension {d - 1}")
            if "chi" not in found:
                chi = chi_of_mask(masks, s)
                if chi != want:
                    found["chi"] = (x, f"unit sphere has Euler characteristic {chi}, expected {want}")
            if len(found) == 2:
                break
    witnesses = tuple(found.values())
    return GeometricReport(d, not witnesses, witnesses)


def genus(g: Graph) -> Fraction:
    """``1 - chi/2``; half-integers occur for non-surfaces."""
    return 1 - Fraction(euler_characteristic(g), 2)


def tree_functional(g: Graph) -> int:
    """Euler characteristic times the number of spanning trees."""
    if g.n == 0:
        raise DomainError("tree functional needs a nonempty graph")
    count, connected = spanning_tree_count(g)
    if not connected:
        raise DomainError("tree functional needs a connected graph")
    return euler_characteristic(g) * count
