"""Bandit policies: frozen index values, conjugate posterior arithmetic,
discounting, and selection behavior."""

import math

import numpy as np
import pytest

from calboost.bandits import (
    Action,
    BanditState,
    apply_discount,
    gts_record,
    gts_sample_and_select,
    record_reward,
    select_action,
    ucb1_improved_index,
    ucb1_index,
    ucb_record,
)
from calboost.rng import RngStream


def test_ucb1_index_frozen_value():
    assert ucb1_index(0.5, 4, 100) == pytest.approx(2.01742, abs=1e-5)
    assert ucb1_index(0.3, 1, 1) == pytest.approx(0.3, abs=1e-12)


def test_ucb1_improved_index_frozen_value():
    assert ucb1_improved_index(0.5, 4, 100) == pytest.approx(1.25871, abs=1e-5)
    assert ucb1_improved_index(0.3, 1, 1) == pytest.approx(0.3, abs=1e-12)


def test_index_padding_relations():
    for k in (1, 2, 5, 17):
        pad = ucb1_index(0.0, k, 50)
        pad_improved = ucb1_improved_index(0.0, k, 50)
        assert pad_improved == pytest.approx(pad / 2.0, rel=1e-12)
    # padding shrinks as an arm is pulled more
    paddings = [ucb1_index(0.0, k, 100) for k in (1, 2, 4, 8)]
    assert paddings == sorted(paddings, reverse=True)


def test_index_requires_pulled_arm():
    with pytest.raises(ValueError):
        ucb1_index(0.0, 0, 10)
    with pytest.raises(ValueError):
        ucb1_improved_index(0.0, 0, 10)


def test_gts_conjugate_update_examples():
    st = BanditState("gts")
    gts_record(st, 0, 1.0)
    assert st.post_mean[0] == pytest.approx(0.5, abs=1e-12)
    assert st.post_var[0] == pytest.approx(0.5, abs=1e-12)
    gts_record(st, 0, 1.0)
    assert st.post_mean[0] == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert st.post_var[0] == pytest.approx(1.0 / 3.0, abs=1e-12)
    zero = BanditState("gts")
    gts_record(zero, 1, 0.0)
    assert zero.post_mean[1] == pytest.approx(0.0, abs=1e-12)
    assert zero.post_var[1] == pytest.approx(0.5, abs=1e-12)
    # untouched arm keeps its prior
    assert st.post_mean[1] == 0.0 and st.post_var[1] == 1.0


def test_gts_posterior_matches_closed_form():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m = int(rng.integers(1, 51))
        rewards = rng.normal(size=m)
        st = BanditState("gts")
        for r in rewards:
            gts_record(st, 0, float(r))
        assert st.post_mean[0] == pytest.approx(rewards.sum() / (m + 1), abs=1e-12)
        assert st.post_var[0] == pytest.approx(1.0 / (m + 1), abs=1e-12)


def test_gts_selection_respects_separated_posteriors():
    st = BanditState("gts")
    st.post_mean[:] = (10.0, 0.0)
    st.post_var[:] = 1e-12
    rng = RngStream(1)
    assert all(gts_sample_and_select(st, rng) == Action.TRAIN for _ in range(1000))
    st.post_mean[:] = (0.0, 10.0)
    assert all(gts_sample_and_select(st, rng) == Action.CALIBRATE for _ in range(1000))


def test_gts_selection_symmetric_for_identical_posteriors():
    st = BanditState("gts")
    rng = RngStream(2)
    picks = [int(gts_sample_and_select(st, rng)) for _ in range(10000)]
    assert abs(np.mean(picks) - 0.5) < 0.02


def test_ucb_record_arithmetic_and_isolation():
    st = BanditState("ucb1")
    ucb_record(st, 0, 0.2)
    ucb_record(st, 0, 0.4)
    assert st.reward_sum[0] / st.pull_count[0] == pytest.approx(0.3)
    assert st.pull_count[0] == 2
    assert st.pull_count[1] == 0 and st.reward_sum[1] == 0
    ucb_record(st, 1, -0.5)  # negative rewards are legal
    assert st.reward_sum[1] == -0.5


def test_non_finite_reward_skipped_with_warning(caplog):
    st = BanditState("ucb1")
    with caplog.at_level("WARNING"):
        record_reward(st, 0, float("nan"))
    assert st.pull_count.sum() == 0
    assert any("non-finite" in rec.message for rec in caplog.records)


def test_discount_decay_and_bound():
    st = BanditState("disc_ucb1", gamma=0.95)
    st.reward_sum[0] = 1.0
    st.pull_count[0] = 1.0
    for _ in range(10):
        apply_discount(st)
    assert st.pull_count[0] == pytest.approx(0.95**10, abs=1e-12)
    assert st.pull_count[0] == pytest.approx(0.59874, abs=1e-5)

    worked = BanditState("disc_ucb1", gamma=0.95)
    for _ in range(500):
        record_reward(worked, 0, 1.0)
        assert np.all(worked.pull_count <= 1.0 / (1.0 - 0.95) + 1.0)
    assert worked.pull_count[0] < 1.0 / (1.0 - 0.95) + 1e-9


def test_discounted_gts_variance_inflates_toward_prior():
    st = BanditState("disc_gts", gamma=0.95)
    for _ in range(5):
        record_reward(st, 0, 1.0)
    small_var = st.post_var[0]
    for _ in range(3):
        record_reward(st, 1, 0.0)  # discounts arm 0 without observing it
    assert st.post_var[0] > small_var
    assert np.all(st.post_var <= 1.0)


def test_undiscounted_policies_ignore_gamma():
    st = BanditState("ucb1", gamma=0.5)
    assert st.gamma == 1.0
    record_reward(st, 0, 1.0)
    apply_discount(st)
    assert st.pull_count[0] == 1.0


def test_select_action_force_pulls_fresh_arms():
    st = BanditState("ucb1")
    rng = RngStream(3)
    assert select_action(st, rng) == Action.TRAIN
    ucb_record(st, 0, 0.5)
    assert select_action(st, rng) == Action.CALIBRATE  # arm 1 still unpulled


def test_select_action_prefers_dominant_mean():
    st = BanditState("ucb1")
    ucb_record(st, 0, 0.9)
    ucb_record(st, 1, 0.1)
    assert select_action(st, RngStream(4)) == Action.TRAIN


def test_select_action_explores_underpulled_arm():
    st = BanditState("ucb1")
    st.pull_count[:] = (100.0, 1.0)
    st.reward_sum[:] = (0.0, 0.0)
    assert select_action(st, RngStream(5)) == Action.CALIBRATE


def test_ucb_selection_invariant_to_reward_shift():
    rng = np.random.default_rng(6)
    rewards = rng.uniform(-0.5, 0.5, size=200)
    arms = rng.integers(0, 2, size=200)
    for policy in ("ucb1", "ucb1_improved", "disc_ucb1"):
        a = BanditState(policy)
        b = BanditState(policy)
        picks_a, picks_b = [], []
        for arm, r in zip(arms, rewards):
            picks_a.append(int(select_action(a, RngStream(0))))
            picks_b.append(int(select_action(b, RngStream(0))))
            record_reward(a, int(arm), float(r))
            record_reward(b, int(arm), float(r) + 7.0)
        assert picks_a == picks_b


def test_all_policies_find_better_bernoulli_arm():
    # discounted variants deliberately keep exploring, so their floor is lower
    floors = {
        "ucb1": 0.9,
        "ucb1_improved": 0.9,
        "gts": 0.9,
        "disc_ucb1": 0.6,
        "disc_ucb1_improved": 0.6,
        "disc_gts": 0.6,
    }
    for policy, floor in floors.items():
        hits = []
        for seed in range(5):
            st = BanditState(policy)
            rng, env = RngStream(seed), RngStream(100 + seed)
            good = 0
            for n in range(2000):
                a = select_action(st, rng)
                p = 0.9 if a == Action.TRAIN else 0.1
                record_reward(st, int(a), 1.0 if env.uniform() <= p else 0.0)
                if n >= 1500 and a == Action.TRAIN:
                    good += 1
            hits.append(good / 500)
        assert min(hits) >= floor, f"{policy}: {hits}"


def test_unknown_policy_and_bad_gamma_rejected():
    with pytest.raises(ValueError):
        BanditState("epsilon_greedy")
    with pytest.raises(ValueError):
        BanditState("disc_ucb1", gamma=1.5)
