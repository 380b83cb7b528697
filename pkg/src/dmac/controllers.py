"""Distributed feedback laws and least-squares model selection.

All three laws share the state feedback ``u = b*x / (a - 1)``; they differ only
in where ``a`` comes from.  The minimax law picks ``a`` per node as the
candidate with the smallest accumulated one-step prediction error, kept as a
quadratic in ``a`` so each step costs O(M).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import AdmissibilityError
from .topology import admissible_interval, validate_model


@dataclass(frozen=True)
class SufficientStatistics:
    """Coefficients of ``residual(a) = a**2 * P + 2*a*q + r``."""

    P: float = 0.0
    q: float = 0.0
    r: float = 0.0
    sample_count: int = 0

    def update(self, x_prev: float, s_prev: float, x_curr: float, b: float) -> "SufficientStatistics":
        return update_statistics(self, x_prev, s_prev, x_curr, b)


def update_statistics(
    stats: SufficientStatistics, x_prev: float, s_prev: float, x_curr: float, b: float
) -> SufficientStatistics:
    e = b * s_prev - x_curr
    return SufficientStatistics(
        P=stats.P + x_prev * x_prev,
        q=stats.q + x_prev * e,
        r=stats.r + e * e,
        sample_count=stats.sample_count + 1,
    )


def residual(stats: SufficientStatistics, a: float) -> float:
    """Summed squared prediction error of ``a`` over the recorded transitions."""
    value = a * a * stats.P + 2.0 * a * stats.q + stats.r
    if value < 0.0:
        if -value <= 1e-12 * max(stats.P, stats.r):
            return 0.0
        raise ValueError(
            f"negative residual {value!r}: statistics are inconsistent (P={stats.P!r}, "
            f"q={stats.q!r}, r={stats.r!r})"
        )
    return value


@dataclass(frozen=True)
class SelectedModel:
    value: float
    index: int  # 0-based position in the candidate list
    residual: float
    tied: bool = False  # more than one candidate attained the minimum


def select_model(stats: SufficientStatistics, candidates: Sequence[float]) -> SelectedModel:
    """Least-residual candidate; ties go to the lowest index."""
    if len(candidates) == 0:
        raise ValueError("candidate list is empty")
    best_k = 0
    best = residual(stats, candidates[0])
    ties = 1
    for k in range(1, len(candidates)):
        rk = residual(stats, candidates[k])
        if rk < best:
            best_k, best, ties = k, rk, 1
        elif rk == best:
            ties += 1
    return SelectedModel(float(candidates[best_k]), best_k, best, ties > 1)


def _feedback(x: float, a: float, b: float) -> float:
    if a == 1.0:
        raise ZeroDivisionError("model a = 1 has no feedback gain; model set is corrupted")
    return b * x / (a - 1.0)


def minimax_control(x: float, a_selected: float, b: float) -> float:
    return _feedback(x, a_selected, b)


def hinf_control(x: float, a_true: float, b: float) -> float:
    return _feedback(x, a_true, b)


def nominal_control(x: float, a_nominal: float, b: float) -> float:
    return _feedback(x, a_nominal, b)


def check_nominal(a_nominal: float, b: float, d: int, node: int | None = None) -> None:
    """Reject a nominal decay rate that violates the communication constraint."""
    if not validate_model(a_nominal, b, d):
        lo, hi = admissible_interval(b, d)
        where = "" if node is None else f"node {node + 1}: "
        raise AdmissibilityError(
            f"{where}nominal a={a_nominal!r} is inadmissible for b={b!r}, degree {d}; "
            f"admissible interval is ({lo:.10g}, {hi:.10g})"
        )


class MinimaxNode:
    """Per-node adaptive controller.

    It only ever sees its own state and the coupling sum formed from its
    neighbors' controls; nothing else is passed in.
    """

    def __init__(self, candidates: Sequence[float], b: float):
        self.candidates = tuple(float(c) for c in candidates)
        self.b = b
        self.stats = SufficientStatistics()
        self.selected: SelectedModel | None = None

    def control(self, x: float) -> float:
        self.selected = select_model(self.stats, self.candidates)
        return minimax_control(x, self.selected.value, self.b)

    def observe(self, x_prev: float, s_prev: float, x_curr: float) -> None:
        self.stats = update_statistics(self.stats, x_prev, s_prev, x_curr, self.b)


class FixedGainNode:
    """Oracle or nominal node: feedback with a constant ``a``."""

    def __init__(self, a: float, b: float, law=hinf_control):
        self.a = float(a)
        self.b = b
        self.law = law
        self.selected = None

    def control(self, x: float) -> float:
        return self.law(x, self.a, self.b)

    def observe(self, x_prev: float, s_prev: float, x_curr: float) -> None:
        pass


def batch_residuals(
    x: np.ndarray, s: np.ndarray, candidates: Sequence[float], b: float
) -> np.ndarray:
    """Direct evaluation of the summed squared prediction error.

    ``x`` holds one node's states ``x(0..t)`` and ``s`` its coupling sums
    ``s(0..t-1)``.  Used as a cross-check of the incremental statistics.
    """
    x = np.asarray(x, dtype=float)
    s = np.asarray(s, dtype=float)[: len(x) - 1]
    out = np.empty(len(candidates))
    for k, a in enumerate(candidates):
        err = a * x[:-1] + b * s - x[1:]
        out[k] = float(np.sum(err * err))
    return out
