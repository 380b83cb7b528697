"""Disturbance signals: per-node sinusoids, zero, counter-based Gaussian, CSV file."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, DisturbanceRangeError

KINDS = ("sinusoid", "zero", "gaussian", "file")


def default_frequencies(node_count: int) -> tuple[float, ...]:
    """Distinct per-node angular frequencies ``2*pi*(0.05 + 0.01*i)``, ``i`` 1-based."""
    return tuple(2.0 * math.pi * (0.05 + 0.01 * i) for i in range(1, node_count + 1))


@dataclass(frozen=True)
class DisturbanceSpec:
    kind: str = "zero"
    amplitude: tuple[float, ...] = ()
    angular_frequency: tuple[float, ...] = ()
    phase: tuple[float, ...] = ()
    std: float = 0.0
    seed: int = 0
    path: str | None = None
    values: np.ndarray | None = None  # loaded file contents, shape (rows, N)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown disturbance kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "gaussian" and not self.std >= 0:
            raise ConfigError(f"gaussian std must be >= 0, got {self.std!r}")
        if self.kind == "sinusoid":
            n = len(self.amplitude)
            if len(self.angular_frequency) != n or len(self.phase) != n:
                raise ConfigError("sinusoid amplitude, angular_frequency and phase lengths differ")

    def __eq__(self, other):
        if not isinstance(other, DisturbanceSpec):
            return NotImplemented
        same = (
            self.kind == other.kind
            and self.amplitude == other.amplitude
            and self.angular_frequency == other.angular_frequency
            and self.phase == other.phase
            and self.std == other.std
            and self.seed == other.seed
            and self.path == other.path
        )
        if not same:
            return False
        if self.values is None or other.values is None:
            return self.values is other.values
        return np.array_equal(self.values, other.values)

    __hash__ = None


def sinusoid(node_count: int, amplitude: float = 1.0, frequencies=None, phase: float = 0.0) -> DisturbanceSpec:
    freqs = default_frequencies(node_count) if frequencies is None else tuple(frequencies)
    return DisturbanceSpec(
        kind="sinusoid",
        amplitude=(float(amplitude),) * node_count,
        angular_frequency=tuple(float(f) for f in freqs),
        phase=(float(phase),) * node_count,
    )


def load_file(path: str | Path) -> DisturbanceSpec:
    path = Path(path)
    try:
        values = np.loadtxt(path, delimiter=",", ndmin=2, dtype=float)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read disturbance file {str(path)!r}: {exc}") from exc
    values.setflags(write=False)
    return DisturbanceSpec(kind="file", path=str(path), values=values)


def _gaussian(seed: int, t: int, i: int, std: float) -> float:
    # Counter-based: the draw depends only on (seed, t, i), never on call order.
    rng = np.random.default_rng(np.random.SeedSequence([seed, t, i]))
    return std * float(rng.standard_normal())


def generate(spec: DisturbanceSpec, t: int, i: int) -> float:
    """Disturbance at step ``t`` for 0-based node ``i``."""
    if t < 0:
        raise ValueError(f"step must be nonnegative, got {t}")
    if spec.kind == "zero":
        return 0.0
    if spec.kind == "sinusoid":
        return spec.amplitude[i] * math.sin(spec.angular_frequency[i] * t + spec.phase[i])
    if spec.kind == "gaussian":
        return _gaussian(spec.seed, t, i, spec.std)
    values = spec.values
    if values is None:
        raise DisturbanceRangeError("file disturbance has no loaded values")
    if t >= values.shape[0] or i >= values.shape[1]:
        raise DisturbanceRangeError(
            f"disturbance file {spec.path!r} has shape {values.shape}, "
            f"no entry for t={t}, node={i + 1}"
        )
    return float(values[t, i])


def realize(spec: DisturbanceSpec, horizon: int, node_count: int) -> np.ndarray:
    """Disturbance table of shape ``(horizon + 1, node_count)``."""
    if spec.kind == "sinusoid" and len(spec.amplitude) != node_count:
        raise ConfigError(
            f"sinusoid parameters given for {len(spec.amplitude)} nodes, network has {node_count}"
        )
    if spec.kind == "file" and spec.values is not None:
        rows, cols = spec.values.shape
        if rows < horizon + 1 or cols != node_count:
            raise DisturbanceRangeError(
                f"disturbance file {spec.path!r} has shape ({rows}, {cols}); "
                f"need ({horizon + 1}, {node_count})"
            )
    w = np.empty((horizon + 1, node_count))
    for t in range(horizon + 1):
        for i in range(node_count):
            w[t, i] = generate(spec, t, i)
    return w
