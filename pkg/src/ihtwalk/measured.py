"""Absorbing-measurement walk simulation.

After every unitary step the final vertices are measured: the amplitude
there is recorded as that step's arrival probability and removed
(absorbed). Residual states stay unnormalized so the recorded q_t are
absolute probabilities and their running sum plus the surviving weight
is conserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import stepper
from .errors import InvariantError
from .walk import FinalProjector, WalkUnitary

CONSERVATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MeasuredWalkResult:
    arrival: np.ndarray  # q_t for t = 1..horizon
    survival: float      # squared norm of the residual state after horizon
    horizon: int
    initial_arrival: float  # t = 0 mass, nonzero only with measure_initial
    final_state: np.ndarray  # unnormalized residual

    @property
    def hitting_time_truncated(self) -> float:
        """Sum of t * q_t up to the horizon. A truncated estimate: it
        understates (and diverges with the horizon) whenever the
        survival probability does not vanish."""
        t = np.arange(1, self.horizon + 1, dtype=np.float64)
        return float((t * self.arrival).sum())

    def survival_curve(self) -> np.ndarray:
        """Surviving probability after each step, length horizon."""
        return 1.0 - self.initial_arrival - np.cumsum(self.arrival)


def simulate(u: WalkUnitary, proj: FinalProjector, psi0: np.ndarray,
             n_steps: int = 5000, *,
             measure_initial: bool = False) -> MeasuredWalkResult:
    """Run the measured walk for ``n_steps`` steps.

    Default convention is step-then-measure: q is counted from t = 1.
    With ``measure_initial`` the state is measured once at t = 0 before
    any step and the absorbed mass reported separately.
    """
    if n_steps < 1:
        raise ValueError(f"horizon must be >= 1, got {n_steps}")
    psi0 = np.asarray(psi0, dtype=np.complex128)
    if psi0.shape != (u.n,):
        raise ValueError(f"state must have shape ({u.n},), got {psi0.shape}")
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"initial state must be normalized, got norm {norm!r}")
    if proj.n != u.n:
        raise ValueError("projector dimension does not match the unitary")

    initial = 0.0
    if measure_initial:
        initial = proj.weight(psi0)
        psi0 = proj.complement(psi0)

    q, final = stepper.measured_run(psi0, u.coin.matrix,
                                    u.shift.permutation, proj.rows, n_steps)
    survival = float((final.real ** 2 + final.imag ** 2).sum())
    balance = abs(initial + q.sum() + survival - 1.0)
    if balance > CONSERVATION_TOL:
        raise InvariantError(
            f"probability conservation violated by {balance:.3e}")
    q.setflags(write=False)
    return MeasuredWalkResult(arrival=q, survival=survival, horizon=n_steps,
                              initial_arrival=initial, final_state=final)


def hitting_time(result: MeasuredWalkResult) -> float:
    """Truncated expected first-arrival time of a finished simulation."""
    return result.hitting_time_truncated
