"""Two-armed bandit policies over {TRAIN, CALIBRATE}.

UCB1 and UCB1-Improved are index policies (mean plus an exploration
padding); Gaussian Thompson Sampling keeps a conjugate normal posterior
per arm.  Each has a discounted variant that geometrically decays past
reward sums and pull counts to track non-stationary rewards.
"""

import enum
import logging
import math

import numpy as np

from .rng import RngStream

log = logging.getLogger(__name__)

POLICIES = (
    "ucb1",
    "ucb1_improved",
    "gts",
    "disc_ucb1",
    "disc_ucb1_improved",
    "disc_gts",
)

DEFAULT_GAMMA = 0.95
DEFAULT_SIGMA_SQ_OBS = 1.0


class Action(enum.IntEnum):
    TRAIN = 0
    CALIBRATE = 1


N_ARMS = len(Action)


class BanditState:
    def __init__(
        self,
        policy: str,
        gamma: float = DEFAULT_GAMMA,
        sigma_sq_obs: float = DEFAULT_SIGMA_SQ_OBS,
    ):
        if policy not in POLICIES:
            raise ValueError(f"unknown bandit policy: {policy!r}")
        self.policy = policy
        self.discounted = policy.startswith("disc_")
        self.base = policy.removeprefix("disc_")
        if self.discounted and not 0.0 < gamma < 1.0:
            raise ValueError(f"discount factor must be in (0, 1), got {gamma}")
        self.gamma = gamma if self.discounted else 1.0
        self.sigma_sq_obs = sigma_sq_obs
        self.pull_count = np.zeros(N_ARMS)  # fractional under discounting
        self.reward_sum = np.zeros(N_ARMS)
        self.post_mean = np.zeros(N_ARMS)  # N(0, 1) prior
        self.post_var = np.ones(N_ARMS)
        self.round = 0


def ucb1_index(mean: float, k: float, n: float) -> float:
    if k <= 0:
        raise ValueError("unpulled arm has no index; force-pull it instead")
    return mean + math.sqrt(2.0 * math.log(n) / k)


def ucb1_improved_index(mean: float, k: float, n: float) -> float:
    # halved exploration term relative to UCB1
    if k <= 0:
        raise ValueError("unpulled arm has no index; force-pull it instead")
    return mean + math.sqrt(math.log(n) / (2.0 * k))


def gts_sample_and_select(state: BanditState, rng: RngStream) -> Action:
    best_arm = 0
    best_theta = -math.inf
    for arm in range(N_ARMS):
        theta = rng.gaussian(state.post_mean[arm], state.post_var[arm])
        if theta > best_theta:  # ties keep the lower arm (TRAIN)
            best_theta = theta
            best_arm = arm
    return Action(best_arm)


def gts_record(state: BanditState, arm: int, reward: float) -> BanditState:
    mu, var = state.post_mean[arm], state.post_var[arm]
    s2 = state.sigma_sq_obs
    state.post_mean[arm] = (mu * s2 + reward * var) / (s2 + var)
    state.post_var[arm] = var * s2 / (var + s2)
    state.reward_sum[arm] += reward
    state.pull_count[arm] += 1.0
    state.round += 1
    return state


def ucb_record(state: BanditState, arm: int, reward: float) -> BanditState:
    state.reward_sum[arm] += reward
    state.pull_count[arm] += 1.0
    state.round += 1
    return state


def apply_discount(state: BanditState) -> BanditState:
    """Decay all arms' statistics before recording a new reward."""
    if state.gamma >= 1.0:
        return state
    state.reward_sum *= state.gamma
    state.pull_count *= state.gamma
    if state.base == "gts":
        # inflate posteriors back toward the N(0, 1) prior
        state.post_var = np.minimum(state.post_var / state.gamma, 1.0)
    return state


def record_reward(state: BanditState, arm: int, reward: float) -> BanditState:
    if not math.isfinite(reward):
        log.warning("skipping non-finite bandit reward %r for arm %d", reward, arm)
        return state
    if state.discounted:
        apply_discount(state)
    if state.base == "gts":
        return gts_record(state, arm, reward)
    return ucb_record(state, arm, reward)


def select_action(state: BanditState, rng: RngStream) -> Action:
    if state.base == "gts":
        return gts_sample_and_select(state, rng)
    for arm in range(N_ARMS):  # force-pull under-sampled arms, lowest index first
        if state.pull_count[arm] < 1.0:
            return Action(arm)
    n_eff = max(float(state.pull_count.sum()), 2.0)
    index_fn = ucb1_index if state.base == "ucb1" else ucb1_improved_index
    indices = [
        index_fn(state.reward_sum[arm] / state.pull_count[arm], state.pull_count[arm], n_eff)
        for arm in range(N_ARMS)
    ]
    return Action(int(np.argmax(indices)))
