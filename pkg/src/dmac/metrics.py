"""Cost, disturbance energy, empirical gain ratio and trajectory gaps.

Sums run sequentially over ``tau`` and then node index, so a from-scratch sum
to horizon ``T'`` and the running series agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


def _step_terms_cost(record, tau):
    return [float(x) * float(x) + float(u) * float(u) for x, u in zip(record.x[tau], record.u[tau])]


def _step_terms_energy(record, tau):
    return [float(w) * float(w) for w in record.w[tau]]


def cumulative_cost(record, horizon: int) -> float:
    """Sum over ``tau <= horizon`` and all nodes of ``x**2 + u**2``."""
    if not 0 <= horizon <= record.horizon:
        raise ValueError(f"horizon {horizon} outside [0, {record.horizon}]")
    total = 0.0
    for tau in range(horizon + 1):
        for term in _step_terms_cost(record, tau):
            total += term
    return total


def disturbance_energy(record, horizon: int) -> float:
    if not 0 <= horizon <= record.horizon:
        raise ValueError(f"horizon {horizon} outside [0, {record.horizon}]")
    total = 0.0
    for tau in range(horizon + 1):
        for term in _step_terms_energy(record, tau):
            total += term
    return total


def _running(record, terms) -> np.ndarray:
    out = np.empty(record.horizon + 1)
    total = 0.0
    for tau in range(record.horizon + 1):
        for term in terms(record, tau):
            total += term
        out[tau] = total
    return out


def cost_series(record) -> np.ndarray:
    return _running(record, _step_terms_cost)


def energy_series(record) -> np.ndarray:
    return _running(record, _step_terms_energy)


def gain_ratio_from_series(cost: np.ndarray, energy: np.ndarray) -> float | None:
    best = None
    for c, e in zip(cost, energy):
        if e > 0.0:
            ratio = math.sqrt(c / e)
            if best is None or ratio > best:
                best = ratio
    return best


def gain_ratio(record) -> float | None:
    """Largest ``sqrt(C(T') / W(T'))`` over horizons with ``W(T') > 0``.

    ``None`` when the disturbance energy is zero at every horizon.
    """
    return gain_ratio_from_series(cost_series(record), energy_series(record))


def trajectory_gap(a, b) -> np.ndarray:
    """Elementwise ``|x_a - x_b|``, shape (T+1, N)."""
    if a.x.shape != b.x.shape:
        raise ValueError(f"trajectory shapes differ: {a.x.shape} vs {b.x.shape}")
    return np.abs(a.x - b.x)


@dataclass
class ControllerMetrics:
    cost: np.ndarray
    energy: np.ndarray
    gain_ratio: float | None
    identification_times: list | None = None
    max_abs_state: float = 0.0


@dataclass
class Metrics:
    controllers: dict[str, ControllerMetrics] = field(default_factory=dict)
    gaps: dict[str, np.ndarray] = field(default_factory=dict)  # e.g. "minimax-oracle"


GAP_PAIRS = (("minimax", "oracle"), ("nominal", "oracle"))


def compute_metrics(records: dict, models) -> Metrics:
    from .engine import identification_time

    out = Metrics()
    for name, rec in records.items():
        cost = cost_series(rec)
        energy = energy_series(rec)
        ident = identification_time(rec, models.true_a) if rec.a_selected is not None else None
        out.controllers[name] = ControllerMetrics(
            cost=cost,
            energy=energy,
            gain_ratio=gain_ratio_from_series(cost, energy),
            identification_times=ident,
            max_abs_state=float(np.max(np.abs(rec.x))),
        )
    for first, ref in GAP_PAIRS:
        if first in records and ref in records:
            out.gaps[f"{first}-{ref}"] = trajectory_gap(records[first], records[ref])
    return out
