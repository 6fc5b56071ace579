"""Online boosting ensemble: sequential Poisson-weighted updates, confidence
weights beta_t = log((1-eps_t)/eps_t), and the scoring functions built on
them (weighted vote fraction, sigmoid of the ensemble output, margins, and
the product-of-experts form).
"""

import math

import numpy as np

from . import kernels
from .learners import DEFAULT_ETA, KIND_CODES, VAR_FLOOR
from .rng import POISSON_K_MAX, RngStream

EPS_MIN = 1e-10

_RESAMPLING_KINDS = {kernels.KIND_NB}


class Ensemble:
    """T weak learners of one kind plus per-learner correct/wrong weight sums."""

    def __init__(
        self,
        kind: str,
        n_learners: int,
        n_features: int,
        mode: str | None = None,
        eta: float = DEFAULT_ETA,
        l1: float = 0.0,
        var_floor: float = VAR_FLOOR,
    ):
        if kind not in KIND_CODES:
            raise ValueError(f"unknown weak learner kind: {kind!r}")
        if n_learners < 1:
            raise ValueError("need at least one weak learner")
        self.kind = kind
        self.kind_code = KIND_CODES[kind]
        if mode is None:
            # NB is lossless and has no weighted-update cost advantage, so it
            # takes the resampling path; SGD learners accept weights directly.
            mode = "resampling" if self.kind_code in _RESAMPLING_KINDS else "reweighting"
        if mode not in ("resampling", "reweighting"):
            raise ValueError(f"unknown mode: {mode!r}")
        self.mode = mode
        self.mode_code = (
            kernels.MODE_RESAMPLING if mode == "resampling" else kernels.MODE_REWEIGHTING
        )
        self.n_learners = n_learners
        self.n_features = n_features
        self.eta = eta
        self.l1 = l1
        self.var_floor = var_floor
        T, d = n_learners, n_features
        self.W = np.zeros((T, d))
        self.B = np.zeros(T)
        self.CW = np.zeros((T, 2))
        self.MEAN = np.zeros((T, 2, d))
        self.M2 = np.zeros((T, 2, d))
        self.lambda_sc = np.zeros(T)
        self.lambda_sw = np.zeros(T)

    def _check(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.n_features:
            raise ValueError(
                f"feature dimension {X.shape[1]} does not match ensemble ({self.n_features})"
            )
        return X

    def update(self, features, label, rng: RngStream):
        """One Algorithm-1 pass of a single example through all learners."""
        X = self._check(features)
        y = np.array([float(label)])
        self._update_batch(X, y, rng)
        return self

    def update_batch(self, X, y, rng: RngStream):
        X = self._check(X)
        y = np.asarray(y, dtype=np.float64)
        self._update_batch(X, y, rng)
        return self

    def _update_batch(self, X, y, rng):
        kernels.boost_minibatch(
            self.kind_code, self.mode_code,
            self.W, self.B, self.CW, self.MEAN, self.M2,
            self.lambda_sc, self.lambda_sw,
            X, y, rng._state,
            self.eta, self.l1, self.var_floor, POISSON_K_MAX, EPS_MIN,
        )

    def votes(self, features) -> np.ndarray:
        return self.votes_batch(features)[0]

    def votes_batch(self, X) -> np.ndarray:
        X = self._check(X)
        return kernels.votes_minibatch(
            self.kind_code, self.W, self.B, self.CW, self.MEAN, self.M2,
            X, self.var_floor,
        ).astype(np.float64)

    def weighted_errors(self) -> np.ndarray:
        """Clamped eps_t for all learners; never-updated learners get 0.5."""
        denom = self.lambda_sc + self.lambda_sw
        with np.errstate(invalid="ignore"):
            eps = self.lambda_sw / denom
        eps = np.where(denom > 0, eps, 0.5)
        return np.clip(eps, EPS_MIN, 1.0 - EPS_MIN)

    def betas(self) -> np.ndarray:
        eps = self.weighted_errors()
        return np.log((1.0 - eps) / eps)


def weighted_error(ens: Ensemble, t: int) -> float:
    return float(ens.weighted_errors()[t])


def confidence(epsilon: float) -> float:
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"error rate must be in (0, 1), got {epsilon}")
    return math.log((1.0 - epsilon) / epsilon)


def ensemble_output(ens: Ensemble, features) -> float:
    return float(ens.votes(features) @ ens.betas())


def predicted_label(F: float) -> int:
    return 1 if F >= 0 else -1


def score_vote(ens: Ensemble, features) -> float:
    return float(score_vote_batch(ens, ens._check(features))[0])


def score_vote_batch(ens: Ensemble, X) -> np.ndarray:
    """Weighted fraction of learners voting positive, clamped to [0, 1].

    Denominator is the total confidence sum (the reading consistent with
    the margin identity); a zero sum yields the uninformative 0.5.
    """
    beta = ens.betas()
    denom = beta.sum()
    votes = ens.votes_batch(X)
    if denom == 0.0:
        return np.full(votes.shape[0], 0.5)
    num = (votes > 0) @ beta
    return np.clip(num / denom, 0.0, 1.0)


def score_sigmoid(ens: Ensemble, features) -> float:
    return float(score_sigmoid_batch(ens, ens._check(features))[0])


def score_sigmoid_batch(ens: Ensemble, X) -> np.ndarray:
    F = ens.votes_batch(X) @ ens.betas()
    return _sigmoid(F)


def _sigmoid(z):
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def margin(ens: Ensemble, features, label) -> float:
    beta = ens.betas()
    denom = beta.sum()
    if denom == 0.0:
        raise ValueError("margin undefined: total confidence weight is zero")
    F = float(ens.votes(features) @ beta)
    return label * F / denom


def poe_score(ens: Ensemble, features) -> float:
    """Product-of-experts score, computed in log space.

    Each learner is an expert with p(+1|x) = 1-eps_t on a positive vote and
    eps_t otherwise.
    """
    eps = ens.weighted_errors()
    return float(poe_from_errors(eps, ens.votes(features)))


def poe_from_errors(eps: np.ndarray, votes: np.ndarray) -> float:
    eps = np.asarray(eps, dtype=np.float64)
    if np.any((eps <= 0.0) | (eps >= 1.0)):
        raise ValueError("expert error rates must lie strictly inside (0, 1)")
    votes = np.asarray(votes, dtype=np.float64)
    log_pos = np.where(votes > 0, np.log1p(-eps), np.log(eps)).sum()
    log_neg = np.where(votes > 0, np.log(eps), np.log1p(-eps)).sum()
    # s' = exp(log_pos) / (exp(log_pos) + exp(log_neg)), overflow-safe
    return float(_sigmoid(log_pos - log_neg))


def appendix_a_weight_update(lambda_prev: float, epsilon: float, label: int, vote: int) -> float:
    """Exponential-form reweighting with half-log confidence and normalizer
    Z = 2(1-eps)/exp(beta); algebraically equal to the case-split
    multipliers 1/(2(1-eps)) and 1/(2 eps)."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"error rate must be in (0, 1), got {epsilon}")
    if not lambda_prev > 0:
        raise ValueError(f"previous weight must be positive, got {lambda_prev}")
    beta_half = 0.5 * math.log((1.0 - epsilon) / epsilon)
    z_norm = 2.0 * (1.0 - epsilon) / math.exp(beta_half)
    return lambda_prev * math.exp(-label * beta_half * vote) / z_norm
