import numpy as np
import pytest

from liamlab.errors import DimensionError
from liamlab.rl.gae import gae_advantages

from _oracles import gae_double_loop


def test_lambda_zero_reduces_to_one_step_td():
    rng = np.random.default_rng(0)
    T = 20
    rewards = rng.normal(size=T)
    values = rng.normal(size=T)
    dones = np.zeros(T, dtype=bool)
    bootstrap = 0.3
    adv, _ = gae_advantages(rewards, values, dones, bootstrap, gamma=0.99, lam=0.0)
    v_next = np.append(values[1:], bootstrap)
    deltas = rewards + 0.99 * v_next - values
    np.testing.assert_allclose(adv, deltas, atol=1e-12)


def test_single_terminal_step():
    adv, ret = gae_advantages(
        np.array([2.0]), np.array([0.5]), np.array([True]), 99.0, gamma=0.99, lam=0.95
    )
    assert adv[0] == pytest.approx(2.0 - 0.5)
    assert ret[0] == pytest.approx(2.0)


def test_lambda_one_equals_discounted_monte_carlo_minus_baseline():
    rng = np.random.default_rng(1)
    T = 30
    rewards = rng.normal(size=T)
    values = rng.normal(size=T)
    dones = np.zeros(T, dtype=bool)
    dones[-1] = True  # terminal episode
    adv, _ = gae_advantages(rewards, values, dones, 123.0, gamma=0.9, lam=1.0)
    discounts = 0.9 ** np.arange(T)
    for t in range(T):
        mc = (rewards[t:] * discounts[: T - t]).sum()
        assert adv[t] == pytest.approx(mc - values[t], abs=1e-10)


def test_matches_brute_force_double_loop_on_random_episodes():
    rng = np.random.default_rng(2)
    for trial in range(200):
        T = int(rng.integers(1, 51))
        rewards = rng.normal(size=T)
        values = rng.normal(size=T)
        dones = rng.random(T) < 0.15
        bootstrap = float(rng.normal())
        gamma = float(rng.uniform(0.5, 0.999))
        lam = float(rng.choice([0.0, 0.5, 0.95, 1.0]))
        adv, ret = gae_advantages(rewards, values, dones, bootstrap, gamma, lam)
        adv_ref, ret_ref = gae_double_loop(rewards, values, dones, bootstrap, gamma, lam)
        np.testing.assert_allclose(adv, adv_ref, atol=1e-10)
        np.testing.assert_allclose(ret, ret_ref, atol=1e-10)


def test_batched_form_matches_per_env_runs():
    rng = np.random.default_rng(3)
    T, E = 12, 4
    rewards = rng.normal(size=(T, E))
    values = rng.normal(size=(T, E))
    dones = rng.random((T, E)) < 0.2
    bootstrap = rng.normal(size=E)
    adv, ret = gae_advantages(rewards, values, dones, bootstrap, 0.99, 0.95)
    for e in range(E):
        a, r = gae_advantages(rewards[:, e], values[:, e], dones[:, e], bootstrap[e], 0.99, 0.95)
        np.testing.assert_allclose(adv[:, e], a, atol=1e-12)
        np.testing.assert_allclose(ret[:, e], r, atol=1e-12)


def test_mismatched_lengths_raise():
    with pytest.raises(DimensionError):
        gae_advantages(np.zeros(3), np.zeros(4), np.zeros(3, dtype=bool), 0.0, 0.99, 0.95)
