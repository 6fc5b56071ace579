"""Shared domain types for the streaming toolkit."""

from dataclasses import dataclass

import numpy as np


@dataclass
class Example:
    """One labelled point: dense real features, label in {-1, +1}."""

    features: np.ndarray
    label: int

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        if self.features.ndim != 1 or not np.all(np.isfinite(self.features)):
            raise ValueError("features must be a 1-D finite real vector")
        if self.label not in (-1, 1):
            raise ValueError(f"label must be -1 or +1, got {self.label}")


@dataclass
class Minibatch:
    """One round's worth of examples (1-based round index)."""

    index: int
    X: np.ndarray  # (b, d) float64
    y: np.ndarray  # (b,) float64 in {-1, +1}

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=np.float64)
        self.y = np.asarray(self.y, dtype=np.float64)
        if self.X.ndim != 2 or self.X.shape[0] == 0:
            raise ValueError("minibatch must be a non-empty (b, d) array")
        if self.y.shape != (self.X.shape[0],):
            raise ValueError("labels must align with examples")
        if self.index < 1:
            raise ValueError("minibatch index is 1-based")

    def __len__(self):
        return self.X.shape[0]


@dataclass
class Prediction:
    score: float  # raw ensemble score in [0, 1]
    probability: float  # calibrated (and clipped) estimate of p(y=1|x)
    predicted_label: int  # +1 iff ensemble output F(x) >= 0
