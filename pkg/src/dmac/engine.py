"""Synchronous closed-loop simulation.

Every round has three phases separated by barriers:

1. each node computes its control from its own state (and, for the minimax
   law, its own statistics);
2. each node collects its neighbors' controls into its coupling sum;
3. states advance, and adaptive nodes record the completed transition.

Within a phase the per-node work is independent, so node order never matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .controllers import FixedGainNode, MinimaxNode, check_nominal, hinf_control, nominal_control
from .disturbance import DisturbanceSpec, realize
from .dynamics import ModelSet, coupling_sum, node_step
from .errors import BlowUpError, ConfigError
from .topology import Topology, interval_midpoint

CONTROLLERS = ("minimax", "oracle", "nominal")
BLOWUP_THRESHOLD = 1e12


@dataclass
class TrajectoryRecord:
    """Per-step, per-node log of one closed-loop run; arrays have shape (T+1, N)."""

    controller: str
    x: np.ndarray
    u: np.ndarray
    s: np.ndarray
    w: np.ndarray
    a_selected: np.ndarray | None = None
    tied: np.ndarray | None = None  # selection settled by tie-break (minimax only)

    @property
    def horizon(self) -> int:
        return self.x.shape[0] - 1

    @property
    def node_count(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class ScenarioConfig:
    topology: Topology
    models: ModelSet
    horizon: int
    initial_state: tuple[float, ...]
    disturbance: DisturbanceSpec
    controllers: tuple[str, ...] = CONTROLLERS
    nominal: tuple[float, ...] = ()
    seed: int = 0
    sampling: dict | None = field(default=None, compare=False)

    @property
    def b(self) -> float:
        return self.models.b

    def validate(self) -> None:
        n = self.topology.node_count
        self.models.check(self.topology)
        if self.horizon < 0 or int(self.horizon) != self.horizon:
            raise ConfigError(f"horizon must be a nonnegative integer, got {self.horizon!r}")
        if len(self.initial_state) != n:
            raise ConfigError(f"initial_state has {len(self.initial_state)} entries, need {n}")
        unknown = set(self.controllers) - set(CONTROLLERS)
        if unknown or not self.controllers:
            raise ConfigError(f"controllers must be drawn from {CONTROLLERS}, got {self.controllers}")
        if "nominal" in self.controllers:
            if len(self.nominal) != n:
                raise ConfigError(f"nominal needs {n} values, got {len(self.nominal)}")
            for i, a in enumerate(self.nominal):
                check_nominal(a, self.b, int(self.topology.degrees[i]), node=i)


def midpoint_nominal(topology: Topology, b: float) -> tuple[float, ...]:
    return tuple(interval_midpoint(b, int(d)) for d in topology.degrees)


def _make_nodes(controller, topology, models, nominal):
    b = models.b
    if controller == "minimax":
        return [MinimaxNode(c, b) for c in models.candidates]
    if controller == "oracle":
        return [FixedGainNode(a, b, hinf_control) for a in models.true_a]
    if controller == "nominal":
        return [FixedGainNode(a, b, nominal_control) for a in nominal]
    raise ConfigError(f"unknown controller {controller!r}")


def simulate(
    topology: Topology,
    models: ModelSet,
    w: np.ndarray,
    initial_state: Sequence[float],
    controller: str,
    nominal: Sequence[float] = (),
) -> TrajectoryRecord:
    """Run one controller over the disturbance table ``w`` of shape (T+1, N).

    Controls are logged for every step including ``T``, since the cost sums
    ``x(T)**2 + u(T)**2``.
    """
    w = np.asarray(w, dtype=float)
    horizon = w.shape[0] - 1
    n = topology.node_count
    true_a = models.true_a
    b = models.b
    nodes = _make_nodes(controller, topology, models, nominal)
    adaptive = controller == "minimax"

    x = np.zeros((horizon + 1, n))
    u = np.zeros((horizon + 1, n))
    s = np.zeros((horizon + 1, n))
    a_sel = np.full((horizon + 1, n), np.nan) if adaptive else None
    tied = np.zeros((horizon + 1, n), dtype=bool) if adaptive else None
    x[0] = initial_state

    def partial(t):
        return TrajectoryRecord(
            controller, x[: t + 1], u[: t + 1], s[: t + 1], w[: t + 1],
            None if a_sel is None else a_sel[: t + 1],
            None if tied is None else tied[: t + 1],
        )

    for t in range(horizon + 1):
        # phase 1: local control
        for i in range(n):
            u[t, i] = nodes[i].control(float(x[t, i]))
            if adaptive:
                a_sel[t, i] = nodes[i].selected.value
                tied[t, i] = nodes[i].selected.tied
        # phase 2: exchange with neighbors
        ut = u[t]
        for i in range(n):
            s[t, i] = coupling_sum(i, ut, topology)
        if t == horizon:
            break
        # phase 3: advance and record the transition
        for i in range(n):
            x[t + 1, i] = node_step(float(true_a[i]), x[t, i], b, s[t, i], w[t, i])
        for i in range(n):
            xi = x[t + 1, i]
            if not math.isfinite(xi) or abs(xi) > BLOWUP_THRESHOLD:
                raise BlowUpError(
                    f"{controller}: state of node {i + 1} reached {xi!r} at t={t + 1}",
                    step=t + 1, node=i, partial=partial(t + 1),
                )
            nodes[i].observe(float(x[t, i]), float(s[t, i]), float(xi))
    return TrajectoryRecord(controller, x, u, s, w, a_sel, tied)


def run(config: ScenarioConfig, w: np.ndarray | None = None):
    """Simulate every selected controller under one shared disturbance realization.

    Returns ``(records, metrics)`` where ``records`` maps controller name to
    :class:`TrajectoryRecord`.
    """
    from .metrics import compute_metrics

    config.validate()
    if w is None:
        w = realize(config.disturbance, config.horizon, config.topology.node_count)
    records = {
        name: simulate(config.topology, config.models, w, config.initial_state, name, config.nominal)
        for name in config.controllers
    }
    return records, compute_metrics(records, config.models)


def identification_time(record: TrajectoryRecord, true_a: Sequence[float]) -> list[int | None]:
    """Per node, the first step from which the selection stays on the true model.

    A step whose selection was settled by a tie-break among several minimizers
    (always the case at ``t = 0`` when ``M > 1``) is not counted as identified.
    ``None`` means the selection has not settled on the truth by ``T``.
    """
    if record.a_selected is None:
        raise ValueError(f"{record.controller} record has no model selections")
    ok = record.a_selected == np.asarray(true_a, dtype=float)[None, :]
    if record.tied is not None:
        ok &= ~record.tied
    out: list[int | None] = []
    horizon = record.horizon
    for i in range(record.node_count):
        t_star = None
        for t in range(horizon, -1, -1):
            if not ok[t, i]:
                break
            t_star = t
        out.append(t_star)
    return out


def replay_node_controls(
    i: int,
    x: np.ndarray,
    u: np.ndarray,
    topology: Topology,
    candidates: Sequence[float],
    b: float,
) -> np.ndarray:
    """Recompute node ``i``'s minimax controls from global state/control histories.

    Only column ``i`` of ``x`` and the neighbor columns of ``u`` are read, which
    is the information a node actually has.
    """
    node = MinimaxNode(candidates, b)
    nbrs = topology.neighbors(i)
    xi = x[:, i]
    out = np.empty(len(xi))
    for t in range(len(xi)):
        ui = node.control(float(xi[t]))
        out[t] = ui
        if t + 1 < len(xi):
            st = 0.0
            for j in nbrs:
                st += ui - u[t, j]
            node.observe(float(xi[t]), st, float(xi[t + 1]))
    return out
