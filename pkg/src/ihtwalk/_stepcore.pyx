# cython: language_level=3
"""Compiled step kernels for the coined walk.

The walk operators here are tiny (N <= a few thousand) but the measured
walk iterates them for thousands of steps, where per-step Python and
numpy dispatch overhead dominates. These loops mirror _steppy.py exactly;
ihtwalk.stepper picks whichever import succeeds.
"""

import numpy as np


def evolve(const double complex[::1] psi, const double complex[:, ::1] coin,
           const long long[::1] perm, Py_ssize_t n_steps):
    """Apply the walk step (coin mix, then shift) ``n_steps`` times."""
    cdef Py_ssize_t n = psi.shape[0]
    cdef Py_ssize_t d = coin.shape[0]
    cdef Py_ssize_t nv = n // d
    cur_arr = np.array(psi, dtype=np.complex128, copy=True)
    out_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] cur = cur_arr
    cdef double complex[::1] out = out_arr
    cdef double complex[::1] swap
    cdef Py_ssize_t t, v, i, j, base
    cdef double complex acc
    for t in range(n_steps):
        for v in range(nv):
            base = v * d
            for i in range(d):
                acc = 0
                for j in range(d):
                    acc = acc + coin[i, j] * cur[base + j]
                out[perm[base + i]] = acc
        swap = cur
        cur = out
        out = swap
    return cur_arr if n_steps % 2 == 0 else out_arr


def measured_run(const double complex[::1] psi, const double complex[:, ::1] coin,
                 const long long[::1] perm, const long long[::1] final_rows,
                 Py_ssize_t n_steps):
    """Step, record the arrival probability on ``final_rows``, absorb.

    Returns (q, psi_final): q[t] is the probability absorbed at step
    t + 1 and psi_final the unnormalized surviving state.
    """
    cdef Py_ssize_t n = psi.shape[0]
    cdef Py_ssize_t d = coin.shape[0]
    cdef Py_ssize_t nv = n // d
    cdef Py_ssize_t nf = final_rows.shape[0]
    cur_arr = np.array(psi, dtype=np.complex128, copy=True)
    out_arr = np.empty(n, dtype=np.complex128)
    q_arr = np.empty(n_steps, dtype=np.float64)
    cdef double complex[::1] cur = cur_arr
    cdef double complex[::1] out = out_arr
    cdef double complex[::1] swap
    cdef double[::1] q = q_arr
    cdef Py_ssize_t t, v, i, j, r, base, idx
    cdef double complex acc
    cdef double s
    for t in range(n_steps):
        for v in range(nv):
            base = v * d
            for i in range(d):
                acc = 0
                for j in range(d):
                    acc = acc + coin[i, j] * cur[base + j]
                out[perm[base + i]] = acc
        s = 0.0
        for r in range(nf):
            idx = final_rows[r]
            acc = out[idx]
            s = s + acc.real * acc.real + acc.imag * acc.imag
            out[idx] = 0
        q[t] = s
        swap = cur
        cur = out
        out = swap
    return q_arr, (cur_arr if n_steps % 2 == 0 else out_arr)
