"""Independent reference computations shared by the test modules.

Everything here is deliberately written the slow, obvious way (loops,
closed forms, double sums) so it cannot share a bug with the library code
it checks.
"""

from __future__ import annotations

import numpy as np

from liamlab.nn import ParameterStore, Tensor


def matmul_triple_loop(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, k = a.shape
    k2, m = b.shape
    assert k == k2
    out = np.zeros((n, m), dtype=a.dtype)
    for i in range(n):
        for j in range(m):
            for l in range(k):
                out[i, j] += a[i, l] * b[l, j]
    return out


def lstm_cell_by_hand(x, h, c, W_ih, W_hh, b):
    """Direct evaluation of the cell equations, gate order (i, f, g, o)."""

    def sig(v):
        return 1.0 / (1.0 + np.exp(-v))

    H = h.shape[1]
    gates = x @ W_ih + h @ W_hh + b
    i = sig(gates[:, 0:H])
    f = sig(gates[:, H : 2 * H])
    g = np.tanh(gates[:, 2 * H : 3 * H])
    o = sig(gates[:, 3 * H : 4 * H])
    c2 = f * c + i * g
    h2 = o * np.tanh(c2)
    return h2, c2


def finite_difference_grads(loss_fn, store: ParameterStore, h: float = 1e-5):
    """Central-difference gradients of a scalar loss over every store entry.

    ``loss_fn`` must be a pure function of the current parameter values and
    return a plain float.
    """
    grads = {}
    for name, entry in store.entries():
        p = entry.tensor.data
        g = np.zeros_like(p)
        flat = p.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + h
            up = loss_fn()
            flat[i] = orig - h
            down = loss_fn()
            flat[i] = orig
            gflat[i] = (up - down) / (2.0 * h)
        grads[name] = g
    return grads


def max_relative_grad_error(analytic: dict, numeric: dict, floor: float = 1e-8) -> float:
    """max |a-b| / max(|a|, |b|), pairs where both magnitudes < floor count as 0."""
    worst = 0.0
    for name, num in numeric.items():
        ana = analytic.get(name)
        ana = np.zeros_like(num) if ana is None else ana
        denom = np.maximum(np.abs(ana), np.abs(num))
        err = np.abs(ana - num)
        mask = denom >= floor
        if mask.any():
            worst = max(worst, float((err[mask] / denom[mask]).max()))
    return worst


def adam_scalar_recurrence(grads, lr, b1=0.9, b2=0.999, eps=1e-8, p0=0.0):
    """Independently coded Adam on a scalar parameter; returns the final value."""
    p, m, v = p0, 0.0, 0.0
    for t, g in enumerate(grads, start=1):
        m = b1 * m + (1 - b1) * g
        v = b2 * v + (1 - b2) * g * g
        mh = m / (1 - b1**t)
        vh = v / (1 - b2**t)
        p = p - lr * mh / (np.sqrt(vh) + eps)
    return p


def gae_double_loop(rewards, values, dones, bootstrap, gamma, lam):
    """Brute-force advantage: A_t = sum_l (gamma*lam)^l * delta_{t+l}, stopping at
    episode boundaries. ``values`` has length T, ``bootstrap`` closes the segment."""
    T = len(rewards)
    v_next = np.append(values[1:], bootstrap)
    deltas = np.array(
        [rewards[t] + gamma * v_next[t] * (0.0 if dones[t] else 1.0) - values[t] for t in range(T)]
    )
    adv = np.zeros(T)
    for t in range(T):
        acc = 0.0
        w = 1.0
        for l in range(t, T):
            acc += w * deltas[l]
            if dones[l]:
                break
            w *= gamma * lam
        adv[t] = acc
    return adv, adv + np.asarray(values)


def silhouette_per_point(points: np.ndarray, labels: np.ndarray) -> float:
    """Plain per-point silhouette with Euclidean distances, singletons excluded."""
    scores = []
    for i in range(len(points)):
        same = [j for j in range(len(points)) if labels[j] == labels[i] and j != i]
        if not same:
            continue
        a = np.mean([np.linalg.norm(points[i] - points[j]) for j in same])
        b = np.inf
        for lab in set(labels.tolist()):
            if lab == labels[i]:
                continue
            others = [j for j in range(len(points)) if labels[j] == lab]
            if others:
                b = min(b, np.mean([np.linalg.norm(points[i] - points[j]) for j in others]))
        denom = max(a, b)
        scores.append(0.0 if denom == 0 else (b - a) / denom)
    return float(np.mean(scores))


def kl_diag_gaussians(mu_q, logv_q, mu_p, logv_p) -> float:
    """Closed-form KL(N(mu_q, e^logv_q) || N(mu_p, e^logv_p)), summed over dims."""
    vq = np.exp(logv_q)
    vp = np.exp(logv_p)
    per_dim = 0.5 * (logv_p - logv_q + (vq + (mu_q - mu_p) ** 2) / vp - 1.0)
    return float(per_dim.sum())
