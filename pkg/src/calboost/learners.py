"""Online, weight-aware base learners.

Gaussian Naive Bayes keeps exact weighted sufficient statistics (weighted
class counts, per-feature weighted mean and sum of squared deviations), so
its online model equals the batch weighted model.  The SGD family (logistic
regression, linear SVM, perceptron) takes one gradient step per update,
scaled by the example weight, with optional L1 shrinkage.
"""

import math

import numpy as np

from . import kernels

KIND_CODES = {
    "naive_bayes": kernels.KIND_NB,
    "nb": kernels.KIND_NB,
    "logreg": kernels.KIND_LOGREG,
    "linear_svm": kernels.KIND_SVM,
    "svm": kernels.KIND_SVM,
    "perceptron": kernels.KIND_PERCEPTRON,
}

DEFAULT_ETA = 0.01
VAR_FLOOR = 1e-9


class WeakLearner:
    """State of one base learner; arrays may be views into an ensemble."""

    def __init__(self, kind, n_features, eta=DEFAULT_ETA, l1=0.0, var_floor=VAR_FLOOR):
        if kind not in KIND_CODES:
            raise ValueError(f"unknown weak learner kind: {kind!r}")
        self.kind = kind
        self.kind_code = KIND_CODES[kind]
        self.n_features = n_features
        self.eta = eta
        self.l1 = l1
        self.var_floor = var_floor
        self.w = np.zeros(n_features)
        self.b = np.zeros(1)
        self.class_weight = np.zeros(2)  # [negative, positive]
        self.mean = np.zeros((2, n_features))
        self.m2 = np.zeros((2, n_features))

    def _check(self, features):
        x = np.asarray(features, dtype=np.float64)
        if x.shape != (self.n_features,):
            raise ValueError(
                f"feature dimension {x.shape} does not match learner ({self.n_features},)"
            )
        return x

    def update(self, features, label, weight):
        if not (weight > 0 and math.isfinite(weight)):
            raise ValueError(f"weight must be positive and finite, got {weight}")
        x = self._check(features)
        kernels.learner_update(
            self.kind_code, self.w, self.b, self.class_weight, self.mean, self.m2,
            x, float(label), float(weight), self.eta, self.l1,
        )
        return self

    def predict(self, features) -> int:
        x = self._check(features)
        return int(
            kernels.learner_vote(
                self.kind_code, self.w, self.b, self.class_weight, self.mean,
                self.m2, x, self.var_floor,
            )
        )

    def variances(self) -> np.ndarray:
        """Per-class, per-feature weighted variance (floored)."""
        with np.errstate(divide="ignore", invalid="ignore"):
            var = self.m2 / self.class_weight[:, None]
        var = np.where(np.isfinite(var), var, 0.0)
        return np.maximum(var, self.var_floor)


def wl_update(state: WeakLearner, example, weight) -> WeakLearner:
    return state.update(example.features, example.label, weight)


def wl_predict(state: WeakLearner, features) -> int:
    return state.predict(features)
