"""Pure-numpy fallback for the step kernels (see _stepcore.pyx)."""

from __future__ import annotations

import numpy as np


def evolve(psi, coin, perm, n_steps):
    """Apply the walk step (coin mix, then shift) ``n_steps`` times."""
    n = psi.shape[0]
    d = coin.shape[0]
    nv = n // d
    coin_t = np.ascontiguousarray(coin.T)
    cur = np.array(psi, dtype=np.complex128, copy=True)
    out = np.empty(n, dtype=np.complex128)
    for _ in range(int(n_steps)):
        out[perm] = (cur.reshape(nv, d) @ coin_t).ravel()
        cur, out = out, cur
    return cur


def measured_run(psi, coin, perm, final_rows, n_steps):
    """Step, record the arrival probability on ``final_rows``, absorb.

    Returns (q, psi_final): q[t] is the probability absorbed at step
    t + 1 and psi_final the unnormalized surviving state.
    """
    n = psi.shape[0]
    d = coin.shape[0]
    nv = n // d
    coin_t = np.ascontiguousarray(coin.T)
    cur = np.array(psi, dtype=np.complex128, copy=True)
    out = np.empty(n, dtype=np.complex128)
    q = np.empty(int(n_steps), dtype=np.float64)
    for t in range(int(n_steps)):
        out[perm] = (cur.reshape(nv, d) @ coin_t).ravel()
        amp = out[final_rows]
        q[t] = float((amp.real ** 2 + amp.imag ** 2).sum())
        out[final_rows] = 0.0
        cur, out = out, cur
    return q, cur
