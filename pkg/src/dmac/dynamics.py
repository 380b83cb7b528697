"""Scalar node dynamics coupled through control differences along edges."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AdmissibilityError, BlowUpError
from .topology import Topology, admissible_interval, validate_model


@dataclass(frozen=True)
class NetworkState:
    t: int
    x: tuple[float, ...]

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.x):
            raise BlowUpError(f"non-finite state at t={self.t}", step=self.t)

    def as_array(self) -> np.ndarray:
        return np.array(self.x, dtype=float)


@dataclass(frozen=True)
class ModelSet:
    """Finite candidate decay rates for every node plus the hidden true index.

    ``true_index`` is 0-based here; configuration files store it 1-based.
    Controllers other than the oracle never read it.
    """

    b: float
    candidates: tuple[tuple[float, ...], ...]
    true_index: tuple[int, ...]

    @property
    def node_count(self) -> int:
        return len(self.candidates)

    @property
    def true_a(self) -> np.ndarray:
        return np.array([c[k] for c, k in zip(self.candidates, self.true_index)])

    def check(self, topology: Topology) -> None:
        """Raise :class:`AdmissibilityError` unless every candidate is admissible."""
        if self.node_count != topology.node_count:
            raise AdmissibilityError(
                f"{self.node_count} candidate lists for {topology.node_count} nodes"
            )
        for i, (cands, k) in enumerate(zip(self.candidates, self.true_index)):
            d = int(topology.degrees[i])
            if not cands:
                raise AdmissibilityError(f"node {i + 1} has no candidate models")
            if not 0 <= k < len(cands):
                raise AdmissibilityError(
                    f"node {i + 1}: true index {k + 1} outside [1, {len(cands)}]"
                )
            if list(cands) != sorted(cands):
                raise AdmissibilityError(f"node {i + 1}: candidates must be ascending")
            for a in cands:
                if not validate_model(a, self.b, d):
                    lo, hi = admissible_interval(self.b, d)
                    raise AdmissibilityError(
                        f"node {i + 1}: model a={a!r} violates the communication "
                        f"constraint for b={self.b!r}, degree {d}; admissible "
                        f"interval is ({lo:.10g}, {hi:.10g})"
                    )


def coupling_sum(i: int, u: Sequence[float], topology: Topology) -> float:
    """Net control flow into node ``i``: sum over neighbors of ``u[i] - u[j]``."""
    ui = u[i]
    s = 0.0
    for j in topology.neighbors(i):
        s += ui - u[j]
    return s


def node_step(a: float, x: float, b: float, s: float, w: float) -> float:
    return a * x + b * s + w


def network_step(
    state: NetworkState,
    models: ModelSet,
    u: Sequence[float],
    w: Sequence[float],
    topology: Topology,
) -> NetworkState:
    n = topology.node_count
    if len(state.x) != n or len(u) != n or len(w) != n:
        raise ValueError("state, control and disturbance vectors must have length N")
    for name, vec in (("control", u), ("disturbance", w)):
        if not all(math.isfinite(v) for v in vec):
            raise BlowUpError(f"non-finite {name} at t={state.t}", step=state.t)
    a = models.true_a
    nxt = tuple(
        node_step(float(a[i]), state.x[i], models.b, coupling_sum(i, u, topology), w[i])
        for i in range(n)
    )
    return NetworkState(t=state.t + 1, x=nxt)


def edge_flows(u: Sequence[float], topology: Topology) -> np.ndarray:
    """Per-edge control difference ``u[head] - u[tail]`` in incidence column order."""
    return topology.incidence.T @ np.asarray(u, dtype=float)
