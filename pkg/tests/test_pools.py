import numpy as np
import pytest

from liamlab.envs import DoubleSpeakerListenerEnv, ForagingEnv, PursuitEnv
from liamlab.errors import ConfigError, DimensionError, UsageError
from liamlab.pools import (
    FixedPolicyPool,
    build_pool,
    lbf_heuristic_target,
    policy_act,
    pp_heuristic_target,
    sample_policy,
)
from liamlab.pools.foraging import LOAD, ParsedView, parse_view
from liamlab.pools.pursuit import PREDATOR_OBS_DIM


# ---------------------------------------------------------------------------
# pool construction and sampling
# ---------------------------------------------------------------------------

def test_dsl_paired_pool_has_distinct_message_maps():
    pool = build_pool("dsl", "paired", size=10, seed=0)
    maps = [tuple(p.params["message_map"]) for p in pool.policies]
    assert len(set(maps)) == 10
    assert [p.id for p in pool.policies] == list(range(10))


def test_dsl_cartesian_pool_has_one_hundred_policies():
    pool = build_pool("dsl", "cartesian", seed=0)
    assert pool.size == 100
    combos = {(tuple(p.params["message_map"]), p.params["deadzone"], p.params["prefer_x"])
              for p in pool.policies}
    assert len(combos) == 100


def test_same_seed_reproduces_pool_composition():
    m1 = build_pool("dsl", "paired", size=10, seed=5).manifest()
    m2 = build_pool("dsl", "paired", size=10, seed=5).manifest()
    assert m1 == m2
    m3 = build_pool("pp", "paired", size=10, seed=5).manifest()
    m4 = build_pool("pp", "paired", size=10, seed=5).manifest()
    assert m3 == m4


def test_unsupported_env_kind_raises():
    with pytest.raises(ConfigError):
        build_pool("chess", "paired", size=10, seed=0)


def test_sampling_single_policy_pool_always_returns_it():
    pool = build_pool("dsl", "paired", size=1, seed=0)
    rng = np.random.default_rng(0)
    assert all(sample_policy(pool, rng).id == 0 for _ in range(20))


def test_sampling_is_uniform_within_three_sigma():
    pool = build_pool("dsl", "paired", size=10, seed=1)
    rng = np.random.default_rng(2)
    draws = 10_000
    counts = np.zeros(10)
    for _ in range(draws):
        counts[sample_policy(pool, rng).id] += 1
    sigma = np.sqrt(0.1 * 0.9 / draws)
    assert (np.abs(counts / draws - 0.1) <= 3 * sigma).all()


def test_empty_pool_raises_on_sample():
    pool = FixedPolicyPool(env_kind="dsl", mode="paired", seed=0, policies=[])
    with pytest.raises(UsageError):
        sample_policy(pool, np.random.default_rng(0))


def test_policy_rejects_wrong_observation_length():
    pool = build_pool("dsl", "paired", size=2, seed=0)
    with pytest.raises(DimensionError):
        policy_act(pool.policies[0], np.zeros(7), np.random.default_rng(0))


def test_manifest_written_next_to_outputs(tmp_path):
    pool = build_pool("lbf", "paired", size=10, seed=3, grid_size=8, n_foods=2)
    path = tmp_path / "pool.json"
    pool.write_manifest(path)
    import json

    data = json.loads(path.read_text())
    assert data["size"] == 10 and len(data["policies"]) == 10
    assert data["policies"][0]["params"]["rule"] == "i"


# ---------------------------------------------------------------------------
# speaker-listener policies
# ---------------------------------------------------------------------------

def _dsl_obs(env):
    return env._observe(1)


def test_dsl_policy_emits_constant_message_for_partner_colour():
    env = DoubleSpeakerListenerEnv(seed=0)
    env.reset(seed=0)
    env.colours[0] = 0  # controlled agent is red
    pool = build_pool("dsl", "paired", size=10, seed=0)
    policy = pool.policies[0]
    expected = policy.params["message_map"][0]
    rng = np.random.default_rng(0)
    for _ in range(5):
        move, msg = policy_act(policy, _dsl_obs(env), rng)
        assert msg == expected
        env.step([(0, 0), (move, msg)])


def test_dsl_navigator_moves_toward_landmark_named_by_received_message():
    env = DoubleSpeakerListenerEnv(seed=0)
    env.reset(seed=0)
    pool = build_pool("dsl", "paired", size=10, seed=0)
    policy = pool.policies[0]
    message_map = policy.params["message_map"]
    # landmark 2 sits to the +x of the modelled agent; tell it to go there
    env.positions[1] = np.array([0.0, 0.0])
    env.landmarks[2] = np.array([0.9, 0.0])
    env.step([(0, message_map[2]), (0, 0)])
    move, _ = policy_act(policy, _dsl_obs(env), np.random.default_rng(0))
    assert move == 2  # +x


def test_dsl_navigator_holds_still_without_parseable_message():
    env = DoubleSpeakerListenerEnv(seed=0)
    env.reset(seed=0)
    pool = build_pool("dsl", "paired", size=10, seed=0)
    policy = pool.policies[0]
    # t = 0: no message received yet
    move, _ = policy_act(policy, _dsl_obs(env), np.random.default_rng(0))
    assert move == 0
    # a message outside the map's range is not parseable either
    outside = [m for m in range(5) if m not in policy.params["message_map"]]
    if outside:
        env.step([(0, outside[0]), (0, 0)])
        move, _ = policy_act(policy, _dsl_obs(env), np.random.default_rng(0))
        assert move == 0


# ---------------------------------------------------------------------------
# foraging heuristics
# ---------------------------------------------------------------------------

def _view(self_pos, self_level, others, foods):
    return ParsedView(
        self_pos=np.array(self_pos),
        self_level=self_level,
        others=[(True, np.array(p), l) for p, l in others],
        foods=[(True, np.array(p), l) for p, l in foods],
    )


def test_single_food_targeted_by_every_rule():
    view = _view([0, 0], 1, [([5, 5], 1)], [([3, 3], 1)])
    for rule in ("i", "ii", "iii", "iv"):
        assert lbf_heuristic_target(rule, view) == 0


def test_rule_iii_prefers_compatible_food_over_nearer_incompatible():
    # food 0: distance 2, level 5 (too high); food 1: distance 4, level 1
    view = _view([0, 0], 1, [], [([0, 2], 5), ([0, 4], 1)])
    assert lbf_heuristic_target("i", view) == 0
    assert lbf_heuristic_target("iii", view) == 1


def test_equidistant_foods_break_ties_lexicographically():
    view = _view([5, 5], 3, [], [([5, 7], 1), ([3, 5], 1)])
    # both manhattan distance 2; (3, 5) < (5, 7) lexicographically
    assert lbf_heuristic_target("i", view) == 1


def test_rule_iv_filters_by_combined_level():
    view = _view([0, 0], 1, [([0, 4], 1)], [([0, 2], 3), ([6, 6], 2)])
    # combined level 2: the level-3 food is not loadable, the level-2 one is
    assert lbf_heuristic_target("iv", view) == 1


def test_rules_fall_back_to_nearest_when_filter_empties():
    view = _view([0, 0], 1, [], [([0, 2], 5), ([0, 4], 5)])
    assert lbf_heuristic_target("iii", view) == 0
    assert lbf_heuristic_target("iv", view) == 0


def test_lbf_policy_moves_toward_food_and_loads_when_adjacent():
    env = ForagingEnv(seed=0)
    env.reset()
    env.agent_pos = np.array([[0, 0], [3, 5]])
    env.agent_levels = np.array([1, 3])
    env.food_pos = np.array([[3, 3], [10, 10], [12, 12], [15, 15]])
    env.food_levels = np.array([1, 1, 1, 1])
    env.food_present = np.ones(4, dtype=bool)
    pool = build_pool("lbf", "paired", size=10, seed=0, grid_size=20, n_foods=4)
    greedy = pool.policies[0]  # rule i, no jitter
    rng = np.random.default_rng(0)
    (move,) = policy_act(greedy, env._observe(1), rng)
    assert move == 2  # left: decrease column distance toward (3, 3)
    env.agent_pos[1] = np.array([3, 4])
    (move,) = policy_act(greedy, env._observe(1), rng)
    assert move == LOAD


def test_lbf_heuristics_are_deterministic_without_jitter():
    env = ForagingEnv(seed=5)
    env.reset()
    pool = build_pool("lbf", "paired", size=4, seed=0, grid_size=20, n_foods=4)
    obs = env._observe(1)
    for policy in pool.policies:
        a1 = policy_act(policy, obs, np.random.default_rng(0))
        a2 = policy_act(policy, obs, np.random.default_rng(99))
        assert a1 == a2


# ---------------------------------------------------------------------------
# pursuit heuristics
# ---------------------------------------------------------------------------

def test_pp_rule_i_always_targets_prey():
    env = PursuitEnv(seed=0)
    env.reset()
    for agent in (1, 2, 3):
        obs = env._observe(agent)
        assert pp_heuristic_target("i", obs, agent) == 0


def test_pp_rule_iii_targets_prey_when_nearest():
    env = PursuitEnv(seed=0)
    env.reset()
    env.positions = np.array([[0.0, 0.0], [0.1, 0.0], [0.9, 0.9], [-0.9, 0.9]])
    obs = env._observe(1)
    assert pp_heuristic_target("iii", obs, 1) == 0


def test_pp_rule_iv_matches_exhaustive_nearest_predator_scan():
    rng = np.random.default_rng(8)
    env = PursuitEnv(seed=0)
    env.reset()
    for _ in range(25):
        env.positions = rng.uniform(-1, 1, size=(4, 2))
        for agent in (1, 2, 3):
            obs = env._observe(agent)
            others = [j for j in (1, 2, 3) if j != agent]
            dists = [np.linalg.norm(env.positions[j] - env.positions[agent]) for j in others]
            expected = others[int(np.argmin(dists))]
            assert pp_heuristic_target("iv", obs, agent) == expected


def test_pp_designated_predator_rule_falls_back_to_prey_for_itself():
    env = PursuitEnv(seed=0)
    env.reset()
    assert pp_heuristic_target("ii", env._observe(1), 1) == 0
    assert pp_heuristic_target("ii", env._observe(2), 2) == 1
    assert pp_heuristic_target("ii", env._observe(3), 3) == 1


def test_pp_chase_moves_along_larger_axis_first():
    env = PursuitEnv(seed=0)
    env.reset()
    # prey north-east of predator 1, x gap larger than y gap
    env.positions = np.array([[0.5, 0.2], [0.0, 0.0], [0.9, 0.9], [-0.9, -0.9]])
    pool = build_pool("pp", "paired", size=10, seed=0)
    chaser = next(p for p in pool.policies if p.params["rules"][0] == "i")
    joint = np.concatenate([env._observe(i) for i in (1, 2, 3)])
    assert joint.shape == (3 * PREDATOR_OBS_DIM,)
    actions = policy_act(chaser, joint, np.random.default_rng(0))
    assert actions[0] == 2  # +x


def test_pp_pool_triples_are_distinct():
    pool = build_pool("pp", "paired", size=10, seed=0)
    triples = [tuple(p.params["rules"]) for p in pool.policies]
    assert len(set(triples)) == 10
