"""Per-round orchestration: predict, score, reward the previous bandit
action, choose and perform this round's action (train the ensemble vs.
update the calibrator), and log everything.

Reward timing follows the prequential reading: the loss of round n is
measured on minibatch n's predictions before any update touches its
labels, and the reward credited to the previous round's action is the
relative loss decrease 1 - L_n / L_{n-1}, emitted at the start of round n.
The literal same-batch reading (re-scoring the minibatch right after the
action) is available via reward_timing="same_batch".
"""

from dataclasses import dataclass, field

import numpy as np

from . import boosting, calibration, metrics
from .bandits import Action, BanditState, record_reward, select_action
from .calibration import Calibrator
from .rng import RngStream
from .types import Minibatch

FIXED_NC_GRID = (2, 4, 6, 8, 10, 12, 14)
WARMUP_ROUNDS = 1  # bandit policies train unconditionally on the first round


@dataclass
class PolicySpec:
    kind: str  # "uncalibrated" | "fixed" | "bandit"
    n_c: int | None = None
    bandit_policy: str | None = None
    gamma: float = 0.95

    def __post_init__(self):
        if self.kind == "fixed":
            if self.n_c is None or self.n_c < 2:
                raise ValueError("fixed policy needs n_c >= 2")
        elif self.kind == "bandit":
            if self.bandit_policy is None:
                raise ValueError("bandit policy name required")
        elif self.kind != "uncalibrated":
            raise ValueError(f"unknown policy kind: {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "fixed":
            return f"fixed:{self.n_c}"
        if self.kind == "bandit":
            return self.bandit_policy
        return "uncalibrated"


@dataclass
class RoundRecord:
    round: int
    action: str
    loss: float
    running_loss: float
    brier: float
    reward: float | None
    probs: np.ndarray = field(repr=False, default=None)

    def to_json(self, include_probs: bool = False) -> dict:
        rec = {
            "round": self.round,
            "action": self.action,
            "loss": self.loss,
            "running_loss": self.running_loss,
            "brier": self.brier,
            "reward": self.reward,
        }
        if include_probs:
            rec["probs"] = [float(p) for p in self.probs]
        return rec


def compute_reward(l_prev: float, l_cur: float) -> float:
    if l_prev < 0 or l_cur < 0 or not (np.isfinite(l_prev) and np.isfinite(l_cur)):
        raise ValueError("losses must be finite and non-negative")
    if l_prev < 1e-12:
        return 0.0
    return 1.0 - l_cur / l_prev


def fixed_policy_action(n: int, n_c: int) -> Action:
    if n > 1 and n % n_c == 0:
        return Action.CALIBRATE
    return Action.TRAIN


class Orchestrator:
    def __init__(
        self,
        ensemble: boosting.Ensemble,
        policy: PolicySpec,
        score_kind: str = "vote",
        eps_clip: float = metrics.EPS_CLIP,
        reward_timing: str = "prequential",
    ):
        if score_kind not in ("vote", "sigmoid"):
            raise ValueError(f"unknown score kind: {score_kind!r}")
        if reward_timing not in ("prequential", "same_batch"):
            raise ValueError(f"unknown reward timing: {reward_timing!r}")
        self.ensemble = ensemble
        self.calibrator = Calibrator()
        self.policy = policy
        self.bandit = (
            BanditState(policy.bandit_policy, gamma=policy.gamma)
            if policy.kind == "bandit"
            else None
        )
        self.score_kind = score_kind
        self.eps_clip = eps_clip
        self.reward_timing = reward_timing
        self.round = 0
        self.last_round_loss: float | None = None
        self.pending_arm: Action | None = None
        self.loss_total = 0.0
        self.loss_count = 0
        self.n_bandit_actions = 0
        self.n_rewards = 0

    def _raw_scores(self, X) -> np.ndarray:
        if self.score_kind == "vote":
            return boosting.score_vote_batch(self.ensemble, X)
        return boosting.score_sigmoid_batch(self.ensemble, X)

    def _probabilities(self, scores) -> np.ndarray:
        if self.policy.kind == "uncalibrated":
            return metrics.clip_prob(scores, self.eps_clip)
        return metrics.clip_prob(calibration.calibrate_score(self.calibrator, scores), self.eps_clip)

    def _choose_action(self, n: int, rng: RngStream) -> Action:
        if self.policy.kind == "uncalibrated":
            return Action.TRAIN
        if self.policy.kind == "fixed":
            return fixed_policy_action(n, self.policy.n_c)
        if n <= WARMUP_ROUNDS:
            return Action.TRAIN
        action = select_action(self.bandit, rng)
        self.n_bandit_actions += 1
        if self.reward_timing == "prequential":
            self.pending_arm = action
        return action

    def _perform(self, action: Action, mb: Minibatch, scores, rng: RngStream):
        if action == Action.TRAIN:
            self.ensemble.update_batch(mb.X, mb.y, rng)
        else:
            calibration.calibrator_update(self.calibrator, scores, mb.y)

    def run_round(self, mb: Minibatch, rng: RngStream) -> RoundRecord:
        n = self.round + 1
        if mb.index != n:
            raise ValueError(f"expected minibatch {n}, got {mb.index}")

        # predict before any update sees this minibatch's labels
        scores = self._raw_scores(mb.X)
        probs = self._probabilities(scores)
        losses = metrics.logloss(probs, mb.y, self.eps_clip)
        round_loss = float(np.mean(losses))
        round_brier = float(np.mean(metrics.brier(probs, mb.y)))
        self.loss_total, self.loss_count, running = metrics.running_update(
            self.loss_total, self.loss_count, losses
        )

        reward = None
        if self.bandit is not None and self.pending_arm is not None:
            reward = compute_reward(self.last_round_loss, round_loss)
            record_reward(self.bandit, int(self.pending_arm), reward)
            self.n_rewards += 1
            self.pending_arm = None

        action = self._choose_action(n, rng)
        self._perform(action, mb, scores, rng)

        if (
            self.bandit is not None
            and self.reward_timing == "same_batch"
            and n > WARMUP_ROUNDS
        ):
            after = metrics.logloss(self._probabilities(self._raw_scores(mb.X)), mb.y, self.eps_clip)
            reward = compute_reward(round_loss, float(np.mean(after)))
            record_reward(self.bandit, int(action), reward)
            self.n_rewards += 1

        calibration.update_counts(self.calibrator, mb.y)
        self.last_round_loss = round_loss
        self.round = n
        return RoundRecord(
            round=n,
            action=action.name,
            loss=round_loss,
            running_loss=running,
            brier=round_brier,
            reward=reward,
            probs=probs,
        )
