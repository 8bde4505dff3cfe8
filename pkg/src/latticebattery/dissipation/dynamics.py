"""Time evolution of density matrices under a Lindblad generator."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from ..errors import InvalidArgumentError, InvalidStateError, NotConvergedError
from ..linalg import check_density_matrix, hermitize, unvec, vec
from .liouvillian import build_liouvillian, make_rhs

__all__ = ["Trajectory", "evolve", "DENSE_PROPAGATOR_MAX"]

DENSE_PROPAGATOR_MAX = 24


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Density-matrix snapshots ``states[k]`` at ``times[k]``."""

    times: np.ndarray
    states: np.ndarray

    def __len__(self):
        return len(self.times)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def trace_drift(self) -> float:
        tr = np.trace(self.states, axis1=1, axis2=2)
        return float(np.max(np.abs(tr - 1.0)))

    def hermiticity_error(self) -> float:
        return float(np.max(np.abs(self.states - np.conj(np.swapaxes(self.states, 1, 2)))))

    def min_eigenvalue(self) -> float:
        return float(min(np.linalg.eigvalsh(hermitize(r))[0] for r in self.states))

    def check(self, atol=1e-8):
        """Raise :class:`InvalidStateError` if any snapshot leaves the state space."""
        for name, value, bad in (
            ("trace drift", self.trace_drift(), lambda x: x > atol),
            ("Hermiticity error", self.hermiticity_error(), lambda x: x > atol),
            ("minimum eigenvalue", self.min_eigenvalue(), lambda x: x < -atol),
        ):
            if bad(value):
                raise InvalidStateError(f"trajectory {name} {value:.3e} beyond tolerance {atol:g}")
        return self


def _check_grid(times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise InvalidArgumentError("time grid must be a non-empty 1-D array")
    if times[0] != 0.0:
        raise InvalidArgumentError(f"time grid must start at 0, got {times[0]}")
    if np.any(np.diff(times) <= 0):
        raise InvalidArgumentError("time grid must be strictly increasing")
    return times


def _default_max_step(H, jumps):
    if jumps:
        return 0.1 / max(J.rate for J in jumps)
    return 0.1 / max(1.0, float(np.linalg.norm(H, 2)))


def evolve(rho0, H, jumps, times, method="rk", atol=1e-9, rtol=1e-9, max_step=None, check=True):
    """Integrate the Lindblad equation from ``rho0`` and sample it on ``times``.

    Parameters
    ----------
    rho0 : (N, N) array
        Valid initial density matrix.
    H : (N, N) array
        Hamiltonian.
    jumps : list of JumpOperator
    times : 1-D array
        Strictly increasing sample times starting at 0.
    method : {"rk", "expm"}
        ``"rk"`` integrates the operator-form right-hand side with an
        adaptive 8(5,3) Runge-Kutta scheme. ``"expm"`` applies the dense
        superoperator exponential (scaling and squaring); it is limited to
        ``N <= 24`` and is meant as an independent cross-check.
    atol, rtol : float
        Per-step tolerances of the adaptive integrator.
    max_step : float, optional
        Largest integrator step; defaults to ``0.1 / max(rate)``.
    check : bool
        Verify positivity, trace and Hermiticity of every snapshot to 1e-8.

    Returns
    -------
    Trajectory
    """
    rho0 = check_density_matrix(rho0).astype(complex)
    times = _check_grid(times)
    n = rho0.shape[0]
    if np.shape(H) != (n, n):
        raise InvalidArgumentError(f"rho0 is {n}x{n} but H has shape {np.shape(H)}")

    if method == "rk":
        states = _evolve_rk(rho0, H, jumps, times, atol, rtol, max_step)
    elif method == "expm":
        states = _evolve_expm(rho0, H, jumps, times)
    else:
        raise InvalidArgumentError(f"unknown evolution method {method!r}")

    traj = Trajectory(times, states)
    if check:
        traj.check(1e-8)
    return traj


def _evolve_rk(rho0, H, jumps, times, atol, rtol, max_step):
    n = rho0.shape[0]
    if times.size == 1:
        return rho0[None].copy()
    f = make_rhs(H, jumps)

    def fun(_t, y):
        return f(y.reshape(n, n)).reshape(-1)

    if max_step is None:
        max_step = _default_max_step(H, jumps)
    sol = solve_ivp(
        fun,
        (times[0], times[-1]),
        rho0.reshape(-1),
        method="DOP853",
        t_eval=times,
        atol=atol,
        rtol=rtol,
        max_step=max_step,
    )
    if not sol.success:
        raise NotConvergedError(f"integrator failed: {sol.message}")
    return sol.y.T.reshape(-1, n, n)


def _evolve_expm(rho0, H, jumps, times):
    n = rho0.shape[0]
    if n > DENSE_PROPAGATOR_MAX:
        raise InvalidArgumentError(
            f"dense propagator limited to N <= {DENSE_PROPAGATOR_MAX}, got N = {n}"
        )
    Lm = build_liouvillian(H, jumps).dense()
    cache = {}
    x = vec(rho0)
    states = [rho0.copy()]
    for dt in np.diff(times):
        key = float(dt)
        if key not in cache:
            cache[key] = expm(Lm * dt)
        x = cache[key] @ x
        states.append(unvec(x, n))
    return np.array(states)
