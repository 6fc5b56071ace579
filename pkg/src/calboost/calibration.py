"""Online Platt scaling.

A two-parameter sigmoid p = 1/(1 + exp(w1*s + w0)) maps raw ensemble
scores to probabilities.  On each calibrate action we take a few BFGS
steps on the current minibatch's prior-corrected log-loss, warm-started
from the persisted (w0, w1), so the cost and memory per round are
constant.  The 2x2 inverse-Hessian approximation is rebuilt from the
identity on each calibrate action: curvature estimated on one minibatch
transfers poorly to the next, and carrying it over makes the fitted
sigmoid whipsaw between batches.
"""

import numpy as np

BFGS_ITERS = 5
ARMIJO_C = 1e-4
MAX_HALVINGS = 20


class Calibrator:
    """Tracks (w0, w1), the class counters N+/N-, and quasi-Newton memory."""

    def __init__(self):
        self.w0 = 0.0
        self.w1 = 0.0
        self.n_pos = 0
        self.n_neg = 0
        self.inv_hessian = np.eye(2)


def calibrate_score(cal: Calibrator, s):
    """p(y=1|x) = sigmoid(-(w1*s + w0)), overflow-safe; works on arrays."""
    z = cal.w1 * np.asarray(s, dtype=np.float64) + cal.w0
    return _neg_sigmoid(z)


def _neg_sigmoid(z):
    # sigmoid(-z), stable for both signs
    z = np.asarray(z, dtype=np.float64)
    out = np.empty_like(z)
    pos = z >= 0
    ez = np.exp(-z[pos])
    out[pos] = ez / (1.0 + ez)
    out[~pos] = 1.0 / (1.0 + np.exp(z[~pos]))
    return out


def platt_targets(n_pos: int, n_neg: int) -> tuple[float, float]:
    if n_pos < 0 or n_neg < 0:
        raise ValueError("class counts cannot be negative")
    return (n_pos + 1.0) / (n_pos + 2.0), 1.0 / (n_neg + 2.0)


def update_counts(cal: Calibrator, labels) -> Calibrator:
    labels = np.asarray(labels)
    cal.n_pos += int(np.sum(labels > 0))
    cal.n_neg += int(np.sum(labels < 0))
    return cal


def _softplus(z):
    return np.logaddexp(0.0, z)


def loss_and_grad(params, scores, targets):
    """Mean prior-corrected log-loss and its analytic gradient in (w0, w1).

    With z = w1*s + w0 and p = sigmoid(-z):
        loss = mean(t*softplus(z) + (1-t)*softplus(-z))
        dloss/dz = t - p
    """
    w0, w1 = params
    z = w1 * scores + w0
    p = _neg_sigmoid(z)
    loss = float(np.mean(targets * _softplus(z) + (1.0 - targets) * _softplus(-z)))
    dz = targets - p
    grad = np.array([np.mean(dz), np.mean(dz * scores)])
    return loss, grad


def _corrected_targets(cal, labels):
    # counts at update time include the current batch: its labels have
    # already arrived by the time a calibrate action runs
    labels = np.asarray(labels)
    n_pos = cal.n_pos + int(np.sum(labels > 0))
    n_neg = cal.n_neg + int(np.sum(labels < 0))
    y_plus, y_minus = platt_targets(n_pos, n_neg)
    return np.where(labels > 0, y_plus, y_minus)


def calibrator_update(cal: Calibrator, scores, labels, n_iters: int = BFGS_ITERS) -> Calibrator:
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels)
    if scores.size == 0 or scores.shape != labels.shape:
        raise ValueError("scores and labels must be non-empty and aligned")
    targets = _corrected_targets(cal, labels)

    theta = np.array([cal.w0, cal.w1])
    H = np.eye(2)
    loss, grad = loss_and_grad(theta, scores, targets)
    for _ in range(n_iters):
        if not np.all(np.isfinite(grad)):
            H = np.eye(2)
            break
        direction = -H @ grad
        slope = float(direction @ grad)
        if slope >= 0.0:  # H lost positive-definiteness; fall back to steepest descent
            H = np.eye(2)
            direction = -grad
            slope = -float(grad @ grad)
        if slope == 0.0:
            break
        step = 1.0
        new_loss = None
        for _ in range(MAX_HALVINGS):
            candidate = theta + step * direction
            cand_loss, cand_grad = loss_and_grad(candidate, scores, targets)
            if cand_loss <= loss + ARMIJO_C * step * slope:
                new_loss = cand_loss
                break
            step *= 0.5
        if new_loss is None:  # line search failed; keep parameters as they are
            break
        s_vec = step * direction
        y_vec = cand_grad - grad
        theta, loss, grad = candidate, new_loss, cand_grad
        sy = float(s_vec @ y_vec)
        if sy > 1e-12:
            rho = 1.0 / sy
            I = np.eye(2)
            V = I - rho * np.outer(s_vec, y_vec)
            H = V @ H @ V.T + rho * np.outer(s_vec, s_vec)
            H = 0.5 * (H + H.T)
        if not (np.all(np.isfinite(H)) and H[0, 0] > 0 and np.linalg.det(H) > 0):
            H = np.eye(2)

    cal.w0, cal.w1 = float(theta[0]), float(theta[1])
    cal.inv_hessian = H
    return cal
