import numpy as np
import pytest

from liamlab.envs import PursuitEnv, capture_reward
from liamlab.envs.pursuit import CAPTURE_RADIUS, OBSTACLE_RADIUS, PREY_RADIUS


def test_capture_reward_sign_table():
    assert capture_reward(0) == (0.0, 0.0)
    assert capture_reward(1) == (-1.0, 1.0)
    assert capture_reward(2) == (1.0, -1.0)
    assert capture_reward(3) == (1.0, -1.0)


def test_no_contact_gives_zero_rewards():
    env = PursuitEnv(seed=0)
    env.reset()
    env.positions = np.array([[-0.9, -0.9], [0.9, 0.9], [0.9, -0.9], [-0.9, 0.9]])
    env.obstacles = np.array([[0.0, 0.0], [0.5, 0.5]])
    res = env.step([0, 0, 0, 0])
    np.testing.assert_array_equal(res.rewards, np.zeros(4))
    assert res.info["capture_set_size"] == 0


def test_single_toucher_rewards_prey():
    env = PursuitEnv(seed=0)
    env.reset()
    env.obstacles = np.array([[0.9, 0.9], [-0.9, -0.9]])
    env.positions = np.array([[0.0, 0.0], [0.05, 0.0], [0.5, 0.5], [-0.5, 0.5]])
    env.velocities = np.zeros((4, 2))
    res = env.step([0, 0, 0, 0])
    assert res.info["capture_set_size"] == 1
    np.testing.assert_array_equal(res.rewards, np.array([1.0, -1.0, -1.0, -1.0]))


def test_two_touchers_reward_predators():
    env = PursuitEnv(seed=0)
    env.reset()
    env.obstacles = np.array([[0.9, 0.9], [-0.9, -0.9]])
    env.positions = np.array([[0.0, 0.0], [0.05, 0.0], [-0.05, 0.0], [0.5, 0.5]])
    env.velocities = np.zeros((4, 2))
    res = env.step([0, 0, 0, 0])
    assert res.info["capture_set_size"] == 2
    np.testing.assert_array_equal(res.rewards, np.array([-1.0, 1.0, 1.0, 1.0]))


def test_prey_reward_mirrors_predator_reward_on_random_rollouts():
    env = PursuitEnv(seed=4)
    rng = np.random.default_rng(0)
    env.reset()
    for _ in range(50):
        res = env.step([int(rng.integers(5)) for _ in range(4)])
        assert res.rewards[0] == -res.rewards[1]
        assert res.rewards[1] == res.rewards[2] == res.rewards[3]


def test_prey_sees_only_within_receptive_field():
    env = PursuitEnv(seed=0, receptive_radius=1.0)
    env.reset()
    env.positions = np.array([[-0.9, -0.9], [0.9, 0.9], [-0.8, -0.9], [0.9, -0.9]])
    env.velocities = np.zeros((4, 2))
    env.obstacles = np.array([[0.9, 0.0], [-0.8, -0.8]])
    obs = env._observe(0)
    layout = env.observation_layout(0)
    # predator 1 is ~2.5 away: hidden; predator 2 is 0.1 away: visible
    np.testing.assert_array_equal(obs[layout.slice_of("predator_1")], np.zeros(5))
    pred2 = obs[layout.slice_of("predator_2")]
    assert pred2[0] == 1.0
    np.testing.assert_allclose(pred2[1:3], [0.1, 0.0], atol=1e-12)
    # far obstacle hidden, near obstacle visible
    np.testing.assert_array_equal(obs[layout.slice_of("obstacle_0")], np.zeros(3))
    assert obs[layout.slice_of("obstacle_1")][0] == 1.0


def test_predators_observe_everything():
    env = PursuitEnv(seed=0)
    env.reset()
    env.positions = np.array([[-0.9, -0.9], [0.9, 0.9], [-0.8, -0.9], [0.9, -0.9]])
    env.velocities = np.zeros((4, 2))
    obs = env._observe(1)
    layout = env.observation_layout(1)
    np.testing.assert_allclose(
        obs[layout.slice_of("prey_rel")], env.positions[0] - env.positions[1], atol=1e-12
    )
    assert layout.total == 16 and obs.shape == (16,)


def test_observation_lengths_are_constant():
    env = PursuitEnv(seed=1)
    obs = env.reset()
    assert obs[0].shape == (25,)
    for i in range(1, 4):
        assert obs[i].shape == (16,)


def test_agents_cannot_sink_into_obstacles():
    env = PursuitEnv(seed=0)
    env.reset()
    env.obstacles = np.array([[0.0, 0.0], [0.9, 0.9]])
    env.positions[0] = np.array([-0.3, 0.0])
    env.velocities[0] = np.zeros(2)
    for _ in range(10):
        env.step([2, 0, 0, 0])  # prey pushes +x into the obstacle
        dist = np.linalg.norm(env.positions[0] - env.obstacles[0])
        assert dist >= OBSTACLE_RADIUS + PREY_RADIUS - 1e-12


def test_positions_stay_in_bounds():
    env = PursuitEnv(seed=2)
    env.reset()
    for _ in range(60):
        try:
            env.step([2, 2, 2, 2])
        except Exception:
            break
    assert (np.abs(env.positions) <= 1.0).all()


def test_episode_runs_to_horizon_even_after_captures():
    env = PursuitEnv(seed=3, horizon=5)
    env.reset()
    env.positions = np.tile(np.array([[0.0, 0.0]]), (4, 1))
    steps = 0
    done = False
    while not done:
        res = env.step([0, 0, 0, 0])
        steps += 1
        done = res.done
    assert steps == 5


def test_capture_radius_is_sum_of_body_radii():
    assert CAPTURE_RADIUS == pytest.approx(0.125)
    assert PREY_RADIUS == 0.05
