"""JSON scenario documents: parsing, sampling resolution and serialization.

Document layout::

    {
      "graph": {"node_count": 7, "edges": [[1, 2], [2, 3], ...]},
      "system": {"b": 0.1, "horizon": 30, "initial_state": [1, 1, ...]},
      "models": {"candidates": [[...], ...], "true_index": [3, 1, ...]}
             or {"sample": {"M": 5, "min_separation": 0.02, "margin": 0.01},
                 "true_index": [...]},            # true_index optional here
      "disturbance": {"kind": "sinusoid", "amplitude": 1.0,
                      "angular_frequency": [...], "phase": 0.0},
      "controllers": ["minimax", "oracle", "nominal"],   # or "all"
      "nominal": "midpoint",                              # or {"a": [...]}
      "seed": 0
    }

Node and candidate indices are 1-based in documents.  Sampling is expanded
with the master seed, and :func:`serialize_config` always writes the expanded
(explicit) form, so ``parse_config(serialize_config(c)) == c``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import disturbance as dist
from .dynamics import ModelSet
from .engine import CONTROLLERS, ScenarioConfig, midpoint_nominal
from .errors import ConfigError, TopologyError
from .topology import BUFFER_NETWORK_EDGES, build_topology, sample_model_set

PAPER_B = 0.1
PAPER_M = 5
PAPER_HORIZON = 30


def _require(doc, key, where):
    if not isinstance(doc, dict) or key not in doc:
        raise ConfigError(f"missing required field {where}.{key}")
    return doc[key]


def _real(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigError(f"{where} must be a finite number, got {value!r}")
    return float(value)


def _per_node(value, n, where):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return (_real(value, where),) * n
    if not isinstance(value, list) or len(value) != n:
        raise ConfigError(f"{where} must be a number or a list of {n} numbers")
    return tuple(_real(v, f"{where}[{k}]") for k, v in enumerate(value))


def _node_seeds(seed: int, n: int) -> tuple[list[int], np.random.Generator]:
    children = np.random.SeedSequence(seed).spawn(n + 1)
    seeds = [int(c.generate_state(1)[0]) for c in children[:n]]
    return seeds, np.random.default_rng(children[n])


def sample_models(seed, topology, b, M, min_separation=0.02, margin=0.01, true_index=None) -> ModelSet:
    """Sample ``M`` candidates per node and, unless given, a true index per node."""
    n = topology.node_count
    seeds, rng = _node_seeds(seed, n)
    candidates = tuple(
        tuple(sample_model_set(seeds[i], b, int(topology.degrees[i]), M, min_separation, margin))
        for i in range(n)
    )
    if true_index is None:
        true_index = tuple(int(k) for k in rng.integers(0, M, size=n))
    return ModelSet(b=b, candidates=candidates, true_index=tuple(true_index))


def _parse_models(doc, topology, b, seed):
    n = topology.node_count
    raw_true = doc.get("true_index")
    true_index = None
    if raw_true is not None:
        if not isinstance(raw_true, list) or len(raw_true) != n:
            raise ConfigError(f"models.true_index must be a list of {n} integers")
        if not all(isinstance(k, int) and not isinstance(k, bool) for k in raw_true):
            raise ConfigError("models.true_index entries must be integers")
        true_index = tuple(k - 1 for k in raw_true)

    if "candidates" in doc:
        cands = doc["candidates"]
        if not isinstance(cands, list) or len(cands) != n:
            raise ConfigError(f"models.candidates must hold {n} lists")
        if true_index is None:
            raise ConfigError("models.true_index is required with explicit candidates")
        candidates = []
        for i, row in enumerate(cands):
            if not isinstance(row, list) or not row:
                raise ConfigError(f"models.candidates[{i}] must be a nonempty list")
            candidates.append(tuple(_real(v, f"models.candidates[{i}]") for v in row))
        return ModelSet(b=b, candidates=tuple(candidates), true_index=true_index), doc.get("sampled_with")

    spec = _require(doc, "sample", "models")
    M = _require(spec, "M", "models.sample")
    if not isinstance(M, int) or isinstance(M, bool) or M < 1:
        raise ConfigError(f"models.sample.M must be a positive integer, got {M!r}")
    min_sep = _real(spec.get("min_separation", 0.02), "models.sample.min_separation")
    margin = _real(spec.get("margin", 0.01), "models.sample.margin")
    models = sample_models(seed, topology, b, M, min_sep, margin, true_index)
    return models, {"M": M, "min_separation": min_sep, "margin": margin}


def _parse_disturbance(doc, n, seed, base_dir):
    kind = doc.get("kind", "zero") if isinstance(doc, dict) else None
    if kind not in dist.KINDS:
        raise ConfigError(f"disturbance.kind must be one of {dist.KINDS}, got {kind!r}")
    if kind == "zero":
        return dist.DisturbanceSpec(kind="zero")
    if kind == "sinusoid":
        freqs = doc.get("angular_frequency")
        return dist.DisturbanceSpec(
            kind="sinusoid",
            amplitude=_per_node(doc.get("amplitude", 1.0), n, "disturbance.amplitude"),
            angular_frequency=(
                dist.default_frequencies(n) if freqs is None
                else _per_node(freqs, n, "disturbance.angular_frequency")
            ),
            phase=_per_node(doc.get("phase", 0.0), n, "disturbance.phase"),
        )
    if kind == "gaussian":
        g_seed = doc.get("seed", seed)
        if not isinstance(g_seed, int) or isinstance(g_seed, bool):
            raise ConfigError("disturbance.seed must be an integer")
        return dist.DisturbanceSpec(kind="gaussian", std=_real(doc.get("std", 1.0), "disturbance.std"), seed=g_seed)
    path = _require(doc, "path", "disturbance")
    resolved = Path(path)
    if base_dir is not None and not resolved.is_absolute():
        resolved = Path(base_dir) / resolved
    spec = dist.load_file(resolved)
    return dist.DisturbanceSpec(kind="file", path=str(path), values=spec.values)


def parse_config(text: str, base_dir=None, seed: int | None = None,
                 controllers=None) -> ScenarioConfig:
    """Parse and fully resolve a scenario document.

    ``seed`` and ``controllers`` override the document's values.  Relative
    disturbance file paths resolve against ``base_dir``.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("configuration must be a JSON object")

    if seed is None:
        seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise ConfigError(f"seed must be a nonnegative integer, got {seed!r}")

    graph = _require(doc, "graph", "")
    n = _require(graph, "node_count", "graph")
    edges = _require(graph, "edges", "graph")
    if not isinstance(edges, list):
        raise ConfigError("graph.edges must be a list of [tail, head] pairs")
    try:
        topology = build_topology(edges, n)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, TopologyError):
            raise
        raise ConfigError(f"graph is malformed: {exc}") from exc

    system = _require(doc, "system", "")
    b = _real(_require(system, "b", "system"), "system.b")
    if b <= 0:
        raise ConfigError(f"system.b must be positive, got {b!r}")
    horizon = _require(system, "horizon", "system")
    if not isinstance(horizon, int) or isinstance(horizon, bool) or horizon < 0:
        raise ConfigError(f"system.horizon must be a nonnegative integer, got {horizon!r}")
    x0 = system.get("initial_state")
    initial_state = (1.0,) * n if x0 is None else _per_node(x0, n, "system.initial_state")

    models, sampling = _parse_models(_require(doc, "models", ""), topology, b, seed)
    models.check(topology)

    disturbance = _parse_disturbance(doc.get("disturbance", {"kind": "zero"}), n, seed, base_dir)

    if controllers is None:
        controllers = doc.get("controllers", "all")
    if controllers == "all":
        controllers = list(CONTROLLERS)
    if isinstance(controllers, str):
        controllers = [c.strip() for c in controllers.split(",") if c.strip()]
    if not isinstance(controllers, list) or not controllers:
        raise ConfigError(f"controllers must be \"all\" or a nonempty list, got {controllers!r}")
    if "all" in controllers:
        controllers = list(CONTROLLERS)
    unknown = [c for c in controllers if c not in CONTROLLERS]
    if unknown:
        raise ConfigError(f"unknown controllers {unknown}; expected some of {CONTROLLERS}")
    controllers = tuple(c for c in CONTROLLERS if c in controllers)

    nominal_doc = doc.get("nominal", "midpoint")
    if nominal_doc == "midpoint":
        nominal = midpoint_nominal(topology, b)
    elif isinstance(nominal_doc, dict) and "a" in nominal_doc:
        nominal = _per_node(nominal_doc["a"], n, "nominal.a")
    else:
        raise ConfigError('nominal must be "midpoint" or {"a": [...]}')

    config = ScenarioConfig(
        topology=topology,
        models=models,
        horizon=horizon,
        initial_state=initial_state,
        disturbance=disturbance,
        controllers=controllers,
        nominal=nominal,
        seed=seed,
        sampling=sampling,
    )
    config.validate()
    return config


def config_to_dict(config: ScenarioConfig) -> dict:
    """Explicit, fully resolved document for ``config``."""
    d = config.disturbance
    if d.kind == "sinusoid":
        disturbance = {
            "kind": "sinusoid",
            "amplitude": list(d.amplitude),
            "angular_frequency": list(d.angular_frequency),
            "phase": list(d.phase),
        }
    elif d.kind == "gaussian":
        disturbance = {"kind": "gaussian", "std": d.std, "seed": d.seed}
    elif d.kind == "file":
        disturbance = {"kind": "file", "path": d.path}
    else:
        disturbance = {"kind": "zero"}
    models = {
        "candidates": [list(c) for c in config.models.candidates],
        "true_index": [k + 1 for k in config.models.true_index],
    }
    if config.sampling is not None:
        models["sampled_with"] = dict(config.sampling)
    return {
        "graph": {"node_count": config.topology.node_count, "edges": config.topology.edges_one_based()},
        "system": {"b": config.b, "horizon": config.horizon, "initial_state": list(config.initial_state)},
        "models": models,
        "disturbance": disturbance,
        "controllers": list(config.controllers),
        "nominal": {"a": list(config.nominal)},
        "seed": config.seed,
    }


def serialize_config(config: ScenarioConfig) -> str:
    # json writes floats with repr(), the shortest string that round-trips exactly.
    return json.dumps(config_to_dict(config), indent=2)


def paper_preset(seed: int = 0) -> ScenarioConfig:
    """The seven-node buffer network experiment with b = 0.1, M = 5, T = 30."""
    topology = build_topology(BUFFER_NETWORK_EDGES, 7)
    models = sample_models(seed, topology, PAPER_B, PAPER_M)
    config = ScenarioConfig(
        topology=topology,
        models=models,
        horizon=PAPER_HORIZON,
        initial_state=(1.0,) * 7,
        disturbance=dist.sinusoid(7),
        controllers=CONTROLLERS,
        nominal=midpoint_nominal(topology, PAPER_B),
        seed=seed,
        sampling={"M": PAPER_M, "min_separation": 0.02, "margin": 0.01},
    )
    config.validate()
    return config
