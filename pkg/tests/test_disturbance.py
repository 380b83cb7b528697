import math

import numpy as np
import pytest

from dmac import disturbance as dist
from dmac.errors import ConfigError, DisturbanceRangeError


def test_sinusoid_examples():
    spec = dist.DisturbanceSpec("sinusoid", (1.0,), (0.37,), (0.0,))
    assert dist.generate(spec, 0, 0) == 0.0
    spec = dist.DisturbanceSpec("sinusoid", (1.0,), (math.pi / 2,), (0.0,))
    assert dist.generate(spec, 1, 0) == pytest.approx(1.0)


def test_zero():
    spec = dist.DisturbanceSpec("zero")
    assert all(dist.generate(spec, t, i) == 0.0 for t in range(5) for i in range(3))


def test_default_frequencies():
    f = dist.default_frequencies(7)
    assert f[0] == pytest.approx(2 * math.pi * 0.06)
    assert f[6] == pytest.approx(2 * math.pi * 0.12)
    assert len(set(f)) == 7


def test_gaussian_is_counter_based():
    spec = dist.DisturbanceSpec("gaussian", std=0.5, seed=3)
    forward = [[dist.generate(spec, t, i) for i in range(4)] for t in range(10)]
    backward = [[dist.generate(spec, t, i) for i in reversed(range(4))][::-1] for t in reversed(range(10))][::-1]
    assert forward == backward
    assert dist.generate(spec, 2, 1) == dist.generate(spec, 2, 1)
    other = dist.DisturbanceSpec("gaussian", std=0.5, seed=4)
    assert dist.generate(other, 2, 1) != dist.generate(spec, 2, 1)
    np.testing.assert_array_equal(dist.realize(spec, 9, 4), np.array(forward))


def test_gaussian_zero_std():
    assert dist.generate(dist.DisturbanceSpec("gaussian", std=0.0), 5, 2) == 0.0
    with pytest.raises(ConfigError):
        dist.DisturbanceSpec("gaussian", std=-1.0)


def test_sinusoid_energy_unbounded():
    spec = dist.sinusoid(3)
    w = dist.realize(spec, 2000, 3)
    energy = np.cumsum((w ** 2).sum(axis=1))
    # grows roughly linearly, about half the squared amplitude per node per step
    assert energy[1000] > 1000 and energy[2000] > 1.9 * energy[1000]


def test_file_kind(tmp_path):
    data = np.arange(12.0).reshape(4, 3) / 10
    path = tmp_path / "w.csv"
    np.savetxt(path, data, delimiter=",")
    spec = dist.load_file(path)
    assert dist.generate(spec, 2, 1) == pytest.approx(0.7)
    np.testing.assert_allclose(dist.realize(spec, 3, 3), data)
    with pytest.raises(DisturbanceRangeError):
        dist.realize(spec, 4, 3)
    with pytest.raises(DisturbanceRangeError):
        dist.generate(spec, 4, 0)


def test_unknown_kind():
    with pytest.raises(ConfigError):
        dist.DisturbanceSpec("square")
