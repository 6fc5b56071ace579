"""Data ingestion and stream construction.

CSV files need a header row and numeric feature columns; raw labels are
binarized through an explicit positive-class set (defaulting to the most
frequent class vs. rest).  The synthetic generator produces two spherical
Gaussian classes with configurable mean separation and optional drift,
as a desk-scale stand-in for real stream benchmarks.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .rng import RngStream
from .types import Minibatch


@dataclass
class SyntheticSpec:
    n_examples: int
    n_features: int = 5
    delta: float = 2.0  # distance between class means along each coordinate axis
    drift: float = 0.0  # per-block shift applied to both class means
    drift_block: int = 50  # examples per drift step (one minibatch-equivalent)

    def __post_init__(self):
        if self.n_features < 1 or self.delta < 0 or self.n_examples < 1:
            raise ValueError("invalid synthetic spec")


def generate_synthetic(spec: SyntheticSpec, rng: RngStream):
    """Balanced two-class stream; class c has mean c*(delta/2) per feature."""
    X = np.empty((spec.n_examples, spec.n_features))
    y = np.empty(spec.n_examples)
    half = spec.delta / 2.0
    for i in range(spec.n_examples):
        label = -1.0 if rng.uniform() <= 0.5 else 1.0
        shift = spec.drift * (i // spec.drift_block)
        center = label * half + shift
        for j in range(spec.n_features):
            X[i, j] = center + rng.normal()
        y[i] = label
    return X, y


class DataError(ValueError):
    pass


def load_csv(path, label_column=None, positive_classes=None):
    """Parse a headered CSV into (X, y, label_mapping_metadata)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row")
        rows = list(reader)
    if not rows:
        raise DataError(f"{path}: no data rows")

    if label_column is None:
        label_idx = len(header) - 1
    else:
        try:
            label_idx = header.index(label_column)
        except ValueError:
            raise DataError(
                f"{path}: label column {label_column!r} not in header {header} "
                "(is the header row missing?)"
            )
    feature_idx = [i for i in range(len(header)) if i != label_idx]

    raw_labels = [row[label_idx] for row in rows]
    if positive_classes is None:
        values, counts = np.unique(raw_labels, return_counts=True)
        positive_classes = {values[int(np.argmax(counts))]}
    positive_classes = {str(v) for v in positive_classes}

    X = np.empty((len(rows), len(feature_idx)))
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise DataError(f"{path}: row {r + 2} has {len(row)} fields, expected {len(header)}")
        for c, i in enumerate(feature_idx):
            try:
                X[r, c] = float(row[i])
            except ValueError:
                raise DataError(
                    f"{path}: row {r + 2}, column {header[i]!r}: non-numeric value {row[i]!r}"
                )
    y = np.where(np.isin(raw_labels, sorted(positive_classes)), 1.0, -1.0)
    meta = {
        "label_column": header[label_idx],
        "positive_classes": sorted(positive_classes),
        "n_positive": int(np.sum(y > 0)),
        "n_negative": int(np.sum(y < 0)),
    }
    return X, y, meta


def make_stream(X, y, batch_size: int, stationary: bool, rng: RngStream):
    """Partition into minibatches, shuffling first iff the data are i.i.d."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    if n == 0:
        raise DataError("empty dataset")
    if batch_size < 1:
        raise ValueError("batch size must be >= 1")
    if stationary:
        perm = rng.shuffle(n)
        X, y = X[perm], y[perm]
    batches = []
    for index, start in enumerate(range(0, n, batch_size), start=1):
        stop = min(start + batch_size, n)
        batches.append(Minibatch(index=index, X=X[start:stop], y=y[start:stop]))
    return batches
