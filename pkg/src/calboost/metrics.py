"""Probability-quality metrics: clipped log-loss, Brier score, exact
streaming means, reliability-diagram bins, and across-run confidence
intervals."""

import numpy as np

EPS_CLIP = 1e-7
DEFAULT_BINS = 10
CI_MULTIPLIER = 1.96


def clip_prob(prob, eps_clip: float = EPS_CLIP):
    return np.clip(prob, eps_clip, 1.0 - eps_clip)


def logloss(prob, label, eps_clip: float = EPS_CLIP):
    """Per-prediction negative log-likelihood; accepts scalars or arrays."""
    p = clip_prob(np.asarray(prob, dtype=np.float64), eps_clip)
    pos = np.asarray(label) > 0
    out = np.where(pos, -np.log(p), -np.log(1.0 - p))
    return float(out) if out.ndim == 0 else out


def brier(prob, label):
    p = np.asarray(prob, dtype=np.float64)
    y01 = (np.asarray(label, dtype=np.float64) + 1.0) / 2.0
    out = (y01 - p) ** 2
    return float(out) if out.ndim == 0 else out


def running_update(total: float, count: int, batch_losses):
    """Exact streaming mean; returns (total', count', mean)."""
    batch = np.asarray(batch_losses, dtype=np.float64)
    total += float(batch.sum())
    count += batch.size
    mean = total / count if count else 0.0
    return total, count, mean


class ReliabilityBins:
    """Equal-width histogram of predictions vs. empirical positive rates."""

    def __init__(self, bin_count: int = DEFAULT_BINS):
        self.bin_count = bin_count
        self.counts = np.zeros(bin_count, dtype=np.int64)
        self.prob_sums = np.zeros(bin_count)
        self.pos_counts = np.zeros(bin_count, dtype=np.int64)

    def _bin(self, prob):
        idx = np.floor(np.asarray(prob, dtype=np.float64) * self.bin_count).astype(np.int64)
        return np.minimum(idx, self.bin_count - 1)  # prob == 1 lands in the top bin

    def update(self, prob: float, label: int):
        self.update_batch([prob], [label])
        return self

    def update_batch(self, probs, labels):
        probs = np.asarray(probs, dtype=np.float64)
        idx = self._bin(probs)
        np.add.at(self.counts, idx, 1)
        np.add.at(self.prob_sums, idx, probs)
        np.add.at(self.pos_counts, idx, (np.asarray(labels) > 0).astype(np.int64))
        return self

    def merge(self, other: "ReliabilityBins"):
        if other.bin_count != self.bin_count:
            raise ValueError("cannot merge bins of different resolution")
        self.counts += other.counts
        self.prob_sums += other.prob_sums
        self.pos_counts += other.pos_counts
        return self

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def as_dict(self):
        return {
            "bin_count": self.bin_count,
            "counts": self.counts.tolist(),
            "prob_sums": self.prob_sums.tolist(),
            "pos_counts": self.pos_counts.tolist(),
        }


def aggregate_ci(per_run_series, multiplier: float = CI_MULTIPLIER):
    """Per-index mean and 95% half-width (normal approximation) across runs."""
    series = [np.asarray(s, dtype=np.float64) for s in per_run_series]
    if len(series) < 2:
        raise ValueError("need at least two runs to aggregate")
    length = series[0].shape[0]
    if any(s.shape != (length,) for s in series):
        raise ValueError("all runs must have series of equal length")
    stacked = np.stack(series)
    mean = stacked.mean(axis=0)
    stderr = stacked.std(axis=0, ddof=1) / np.sqrt(len(series))
    return mean, multiplier * stderr
