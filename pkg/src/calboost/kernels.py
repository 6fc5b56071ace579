"""Numeric hot-path kernels shared by the numba and pure-numpy backends.

Every function here is written in nopython-compatible style and compiled
via :func:`calboost._accel.maybe_njit`.  The same source runs undecorated
when ``CALBOOST_NO_NUMBA=1``, which is why the random-number generator is
implemented from scratch (splitmix64): both backends must consume the
stream identically, bit for bit.

RNG state is a length-1 uint64 array, mutated in place.  All uint64
arithmetic happens on arrays (never scalars) so the fallback path wraps
silently instead of raising numpy overflow warnings.
"""

import numpy as np

from ._accel import maybe_njit

_SM64_STEP = np.uint64(0x9E3779B97F4A7C15)
_SM64_M1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_M2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_ONE = np.uint64(1)
_INV_2_53 = 2.0 ** -53

# weak learner kind codes
KIND_NB = 0
KIND_LOGREG = 1
KIND_SVM = 2
KIND_PERCEPTRON = 3

# ensemble weighting modes
MODE_RESAMPLING = 0
MODE_REWEIGHTING = 1


@maybe_njit
def next_u64(state):
    state += _SM64_STEP
    z = state.copy()
    z ^= z >> _S30
    z *= _SM64_M1
    z ^= z >> _S27
    z *= _SM64_M2
    z ^= z >> _S31
    return z[0]


@maybe_njit
def rand_u01(state):
    """Uniform draw in (0, 1] with 53-bit resolution."""
    return float((next_u64(state) >> _S11) + _ONE) * _INV_2_53


@maybe_njit
def rand_normal(state):
    """Standard normal via Box-Muller (two uniforms per draw)."""
    u1 = rand_u01(state)
    u2 = rand_u01(state)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


@maybe_njit
def rand_poisson(state, lam, k_max):
    """Poisson draw by inversion with sequential search, capped at k_max.

    When exp(-lam) underflows to 0 the search runs to the cap, so huge
    lambdas deterministically return k_max.
    """
    if lam <= 0.0:
        return 0
    u = rand_u01(state)
    p = np.exp(-lam)
    s = p
    k = 0
    while u > s and k < k_max:
        k += 1
        p *= lam / k
        s += p
    return k


@maybe_njit
def sgd_raw(w, b, x):
    z = b[0]
    for j in range(w.shape[0]):
        z += w[j] * x[j]
    return z


@maybe_njit
def sgd_update(kind, w, b, x, y, weight, eta, l1):
    z = sgd_raw(w, b, x)
    g = 0.0
    if kind == KIND_LOGREG:
        # d/dz log(1 + exp(-y z)) = -y * sigmoid(-y z), overflow-safe
        m = y * z
        if m > 0.0:
            e = np.exp(-m)
            g = -y * (e / (1.0 + e))
        else:
            g = -y / (1.0 + np.exp(m))
    elif kind == KIND_SVM:
        # hinge subgradient; margin exactly 1 -> no update
        if y * z < 1.0:
            g = -y
    else:
        # perceptron: update only on sign disagreement, sign(0) = +1
        pred = 1.0 if z >= 0.0 else -1.0
        if pred != y:
            g = -y
    if g != 0.0:
        step = eta * weight * g
        for j in range(w.shape[0]):
            w[j] -= step * x[j]
        b[0] -= step
    if l1 > 0.0:
        shrink = eta * l1
        for j in range(w.shape[0]):
            if w[j] > 0.0:
                w[j] -= shrink
            elif w[j] < 0.0:
                w[j] += shrink


@maybe_njit
def nb_update(cw, mean, m2, x, y, weight):
    """Weighted sufficient statistics via West's incremental recurrence."""
    c = 1 if y > 0.0 else 0
    cw[c] += weight
    wc = cw[c]
    for j in range(x.shape[0]):
        delta = x[j] - mean[c, j]
        mean[c, j] += delta * weight / wc
        m2[c, j] += weight * delta * (x[j] - mean[c, j])


@maybe_njit
def nb_vote(cw, mean, m2, x, var_floor):
    w_neg = cw[0]
    w_pos = cw[1]
    if w_neg <= 0.0 and w_pos <= 0.0:
        return 1
    if w_neg <= 0.0:
        return 1
    if w_pos <= 0.0:
        return -1
    # log posterior ratio, positive minus negative; shared normalizers cancel
    ll = np.log(w_pos) - np.log(w_neg)
    for j in range(x.shape[0]):
        var_neg = m2[0, j] / w_neg
        if var_neg < var_floor:
            var_neg = var_floor
        var_pos = m2[1, j] / w_pos
        if var_pos < var_floor:
            var_pos = var_floor
        d_neg = x[j] - mean[0, j]
        d_pos = x[j] - mean[1, j]
        ll += 0.5 * (np.log(var_neg) - np.log(var_pos))
        ll += d_neg * d_neg / (2.0 * var_neg) - d_pos * d_pos / (2.0 * var_pos)
    return 1 if ll >= 0.0 else -1


@maybe_njit
def learner_vote(kind, w, b, cw, mean, m2, x, var_floor):
    if kind == KIND_NB:
        return nb_vote(cw, mean, m2, x, var_floor)
    z = sgd_raw(w, b, x)
    return 1 if z >= 0.0 else -1


@maybe_njit
def learner_update(kind, w, b, cw, mean, m2, x, y, weight, eta, l1):
    if kind == KIND_NB:
        nb_update(cw, mean, m2, x, y, weight)
    else:
        sgd_update(kind, w, b, x, y, weight, eta, l1)


@maybe_njit
def votes_minibatch(kind, W, B, CW, MEAN, M2, X, var_floor):
    """Per-example, per-learner votes for a minibatch; shape (b, T) in {-1,+1}."""
    n = X.shape[0]
    T = W.shape[0]
    out = np.empty((n, T), dtype=np.int8)
    for i in range(n):
        for t in range(T):
            out[i, t] = learner_vote(
                kind, W[t], B[t : t + 1], CW[t], MEAN[t], M2[t], X[i], var_floor
            )
    return out


@maybe_njit
def boost_minibatch(
    kind,
    mode,
    W,
    B,
    CW,
    MEAN,
    M2,
    lam_sc,
    lam_sw,
    X,
    Y,
    rng_state,
    eta,
    l1,
    var_floor,
    k_max,
    eps_min,
):
    """Sequential online-boosting pass over a minibatch (the training kernel).

    Each example flows through the T learners in order with an evolving
    weight lam.  Resampling mode trains with the Poisson draw k as the
    weight; reweighting mode trains with the expected weight lam and draws
    nothing.  The correctness bookkeeping always uses lam, and the error
    rate is clamped away from {0,1} before the multiplier.
    """
    n = X.shape[0]
    T = W.shape[0]
    for i in range(n):
        x = X[i]
        y = Y[i]
        lam = 1.0
        for t in range(T):
            if mode == MODE_RESAMPLING:
                k = rand_poisson(rng_state, lam, k_max)
                if k > 0:
                    learner_update(
                        kind, W[t], B[t : t + 1], CW[t], MEAN[t], M2[t],
                        x, y, float(k), eta, l1,
                    )
            else:
                learner_update(
                    kind, W[t], B[t : t + 1], CW[t], MEAN[t], M2[t],
                    x, y, lam, eta, l1,
                )
            vote = learner_vote(
                kind, W[t], B[t : t + 1], CW[t], MEAN[t], M2[t], x, var_floor
            )
            correct = vote == int(y)
            if correct:
                lam_sc[t] += lam
            else:
                lam_sw[t] += lam
            eps = lam_sw[t] / (lam_sw[t] + lam_sc[t])
            if eps < eps_min:
                eps = eps_min
            elif eps > 1.0 - eps_min:
                eps = 1.0 - eps_min
            if correct:
                lam *= 1.0 / (2.0 * (1.0 - eps))
            else:
                lam *= 1.0 / (2.0 * eps)
