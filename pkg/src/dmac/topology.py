"""Undirected communication graphs, incidence algebra and model admissibility.

Nodes are 0-based inside the library.  Edge lists coming from configuration
files are 1-based pairs ``(tail, head)``; :func:`build_topology` converts them.
The orientation of an edge only fixes the sign convention of the incidence
matrix (tail -1, head +1); adjacency is undirected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import AdmissibilityError, CapacityError, TopologyError

# Edges of the seven-node buffer network, 1-based (tail, head).
BUFFER_NETWORK_EDGES = ((1, 2), (2, 3), (2, 4), (3, 5), (4, 6), (4, 7))


@dataclass(frozen=True)
class Topology:
    node_count: int
    edges: tuple[tuple[int, int], ...]  # 0-based (tail, head)
    neighbor_sets: tuple[frozenset[int], ...] = field(compare=False, repr=False)
    degrees: np.ndarray = field(compare=False, repr=False)
    incidence: np.ndarray = field(compare=False, repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> tuple[int, ...]:
        """Neighbors of node ``i`` in ascending order."""
        return tuple(sorted(self.neighbor_sets[i]))

    def edges_one_based(self) -> list[list[int]]:
        return [[t + 1, h + 1] for t, h in self.edges]

    def laplacian(self) -> np.ndarray:
        return self.incidence @ self.incidence.T


def build_topology(edges: Iterable[Sequence[int]], node_count: int) -> Topology:
    """Build a :class:`Topology` from 1-based ``(tail, head)`` pairs.

    Column ``e`` of the incidence matrix corresponds to ``edges[e]``.
    """
    if int(node_count) != node_count or node_count < 1:
        raise TopologyError(f"node_count must be a positive integer, got {node_count!r}")
    node_count = int(node_count)

    seen: dict[frozenset[int], tuple[int, int]] = {}
    zero_based = []
    for edge in edges:
        if len(edge) != 2:
            raise TopologyError(f"edge {tuple(edge)!r} is not a pair")
        tail, head = (int(v) for v in edge)
        if not (1 <= tail <= node_count and 1 <= head <= node_count):
            raise TopologyError(
                f"edge ({tail}, {head}) has an index outside [1, {node_count}]"
            )
        if tail == head:
            raise TopologyError(f"edge ({tail}, {head}) is a self-loop")
        key = frozenset((tail, head))
        if key in seen:
            raise TopologyError(
                f"edge ({tail}, {head}) duplicates edge {seen[key]}"
            )
        seen[key] = (tail, head)
        zero_based.append((tail - 1, head - 1))

    incidence = np.zeros((node_count, len(zero_based)))
    adjacency: list[set[int]] = [set() for _ in range(node_count)]
    for e, (tail, head) in enumerate(zero_based):
        incidence[tail, e] = -1.0
        incidence[head, e] = 1.0
        adjacency[tail].add(head)
        adjacency[head].add(tail)

    degrees = np.array([len(s) for s in adjacency], dtype=int)
    incidence.setflags(write=False)
    degrees.setflags(write=False)
    return Topology(
        node_count=node_count,
        edges=tuple(zero_based),
        neighbor_sets=tuple(frozenset(s) for s in adjacency),
        degrees=degrees,
        incidence=incidence,
    )


def buffer_network() -> Topology:
    return build_topology(BUFFER_NETWORK_EDGES, 7)


def admissible_interval(b: float, d: int) -> tuple[float, float]:
    """Open interval of decay rates ``a`` with ``a**2 + 2*b**2*d < a``.

    The endpoints are the roots of ``a**2 - a + 2*b**2*d``.  Raises
    :class:`AdmissibilityError` when no ``a`` in (0, 1) qualifies.
    """
    if b <= 0:
        raise AdmissibilityError(f"coupling gain b must be positive, got {b!r}")
    if d < 0:
        raise AdmissibilityError(f"degree must be nonnegative, got {d!r}")
    disc = 1.0 - 8.0 * b * b * d
    if disc <= 0.0:
        raise AdmissibilityError(
            f"no admissible a for b={b!r}, degree={d}: 1 - 8 b^2 d = {disc!r} <= 0"
        )
    root = math.sqrt(disc)
    lo = max(0.0, (1.0 - root) / 2.0)
    hi = min(1.0, (1.0 + root) / 2.0)
    return lo, hi


def validate_model(a: float, b: float, d: int) -> bool:
    """True iff ``a`` lies in (0, 1) and satisfies the communication constraint."""
    return bool(0.0 < a < 1.0 and a * a + 2.0 * b * b * d < a)


def interval_midpoint(b: float, d: int) -> float:
    lo, hi = admissible_interval(b, d)
    return 0.5 * (lo + hi)


def sample_model_set(
    seed: int,
    b: float,
    d: int,
    M: int,
    min_separation: float = 0.02,
    margin: float = 0.01,
) -> list[float]:
    """Draw ``M`` admissible candidate decay rates, sorted ascending.

    Points are uniform on the admissible interval shrunk by ``margin`` (a
    fraction of its width at each end), conditioned on every pairwise gap being
    at least ``min_separation``.  The conditioned law is sampled exactly with
    the spacing transform: uniform order statistics on the interval shortened
    by ``(M - 1) * min_separation``, then shifted by ``k * min_separation``.
    ``M == 1`` returns the interval midpoint.
    """
    if M < 1:
        raise CapacityError(f"M must be at least 1, got {M!r}")
    if min_separation < 0 or not (0 <= margin < 0.5):
        raise CapacityError(
            f"need min_separation >= 0 and 0 <= margin < 0.5, got {min_separation!r}, {margin!r}"
        )
    lo, hi = admissible_interval(b, d)
    if M == 1:
        return [0.5 * (lo + hi)]

    width = hi - lo
    inner_lo = lo + margin * width
    inner_hi = hi - margin * width
    slack = (inner_hi - inner_lo) - (M - 1) * min_separation
    if slack < 0:
        raise CapacityError(
            f"cannot place {M} models {min_separation} apart inside "
            f"({inner_lo:.10g}, {inner_hi:.10g})"
        )

    rng = np.random.default_rng(seed)
    for _ in range(100):
        base = np.sort(rng.uniform(0.0, slack, size=M))
        values = inner_lo + base + min_separation * np.arange(M)
        values = [float(v) for v in values]
        # Rounding can in principle push a value onto an endpoint when margin is 0.
        if all(validate_model(v, b, d) for v in values) and len(set(values)) == M:
            return values
    raise CapacityError(f"could not draw {M} admissible distinct models for degree {d}")
