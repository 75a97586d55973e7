import numpy as np
import pytest

from fluxlattice.network import sample_disorder
from fluxlattice.rng import Xoshiro256PlusPlus


def test_same_seed_same_stream():
    a = Xoshiro256PlusPlus(42)
    b = Xoshiro256PlusPlus(42)
    assert [a.next_uint64() for _ in range(16)] == [b.next_uint64() for _ in range(16)]


def test_different_seeds_differ():
    a = Xoshiro256PlusPlus(1)
    b = Xoshiro256PlusPlus(2)
    assert [a.next_uint64() for _ in range(4)] != [b.next_uint64() for _ in range(4)]


def test_uniform01_range_and_spread():
    rng = Xoshiro256PlusPlus(7)
    draws = np.array([rng.uniform01() for _ in range(10_000)])
    assert np.all((draws >= 0.0) & (draws < 1.0))
    # crude uniformity check, loose enough to never flake
    assert abs(draws.mean() - 0.5) < 0.02
    assert abs(draws.std() - np.sqrt(1 / 12)) < 0.02


def test_disorder_is_deterministic():
    a = sample_disorder(123, 0.1, 5)
    b = sample_disorder(123, 0.1, 5)
    np.testing.assert_array_equal(a.lam, b.lam)
    np.testing.assert_array_equal(a.mu, b.mu)


def test_disorder_zero_amplitude():
    d = sample_disorder(5, 0.0, 4)
    np.testing.assert_array_equal(d.lam, np.zeros(4))
    np.testing.assert_array_equal(d.mu, np.zeros(4))


def test_disorder_bounds_over_many_draws():
    biggest = 0.0
    for seed in range(1000):
        d = sample_disorder(seed, 0.1, 5)
        biggest = max(biggest, np.max(np.abs(d.lam)), np.max(np.abs(d.mu)))
    assert biggest <= 0.1
    assert biggest > 0.09  # the bound is actually approached


def test_stream_order_lambda_then_mu():
    rng = Xoshiro256PlusPlus(99)
    raw = [rng.uniform(-0.1, 0.1) for _ in range(10)]
    d = sample_disorder(99, 0.1, 5)
    np.testing.assert_array_equal(d.lam, raw[:5])
    np.testing.assert_array_equal(d.mu, raw[5:])


def test_amplitude_bounds_rejected():
    with pytest.raises(ValueError):
        sample_disorder(1, 1.0, 5)
    with pytest.raises(ValueError):
        sample_disorder(1, -0.1, 5)
