"""Steady states of the Lindblad generator.

Three routes, selected by ``method``:

``"dense"``
    Least squares on the dense superoperator with an appended
    trace-normalization row. The smallest singular value of the augmented
    matrix vanishes exactly when the zero eigenspace is degenerate, which
    gives the uniqueness check for free.
``"sparse"``
    Sparse LU solve of the superoperator with one redundant population
    equation replaced by the trace condition. Used above ``dense_max``.
``"evolve"``
    Long-time integration until ``|rhs|_F <= tol``.
"""
from __future__ import annotations

import logging

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from ..errors import InvalidArgumentError, InvalidStateError, NonUniqueSteadyStateError, NotConvergedError
from ..linalg import hermitize, random_density_matrix, unvec, vec
from .dynamics import evolve
from .liouvillian import _check_dims, build_liouvillian, make_rhs

__all__ = ["steady_state", "relax", "DENSE_STEADY_MAX"]

log = logging.getLogger(__name__)

DENSE_STEADY_MAX = 40
PSD_CLIP = 1e-9


def _finalize(x, n):
    rho = hermitize(unvec(x, n))
    tr = np.trace(rho).real
    if not np.isfinite(tr) or abs(tr) < 1e-300:
        raise NonUniqueSteadyStateError("steady-state solve produced a zero-trace or non-finite vector")
    rho = rho / tr
    lam, X = np.linalg.eigh(rho)
    if lam[0] < -PSD_CLIP:
        raise InvalidStateError(f"steady state has eigenvalue {lam[0]:.3e} below -{PSD_CLIP:g}")
    lam = np.clip(lam, 0.0, None)
    lam /= lam.sum()
    return hermitize((X * lam) @ X.conj().T)


def _solve_dense(H, jumps, gap_tol):
    n = np.shape(H)[0]
    Lm = build_liouvillian(H, jumps).dense()
    trace_row = vec(np.eye(n, dtype=complex))[None, :]
    A = np.vstack([Lm, trace_row])
    b = np.zeros(A.shape[0], dtype=complex)
    b[-1] = 1.0
    x, _res, _rank, s = np.linalg.lstsq(A, b, rcond=None)
    if s[-1] <= gap_tol:
        raise NonUniqueSteadyStateError(
            f"degenerate zero eigenspace: smallest augmented singular value {s[-1]:.3e}"
        )
    return x


def _solve_sparse(H, jumps):
    n = np.shape(H)[0]
    Lm = build_liouvillian(H, jumps, sparse=True).matrix.tocsr()
    # The populations rows sum to the (zero) trace row, so row 0 is redundant.
    keep = np.ones(n * n)
    keep[0] = 0.0
    trace_row = sp.csr_matrix(
        (np.ones(n), (np.zeros(n, dtype=int), np.arange(n) * (n + 1))), shape=(n * n, n * n)
    )
    A = (sp.diags(keep) @ Lm + trace_row).tocsc()
    b = np.zeros(n * n, dtype=complex)
    b[0] = 1.0
    try:
        x = splu(A).solve(b)
    except RuntimeError as exc:
        raise NonUniqueSteadyStateError(f"singular steady-state system: {exc}") from exc
    if not np.all(np.isfinite(x)):
        raise NonUniqueSteadyStateError("singular steady-state system (non-finite solution)")
    return x


def relax(H, jumps, rho0=None, tol=1e-8, t_chunk=None, t_cap=None):
    """Integrate from ``rho0`` (default ``I/N``) until ``|rhs|_F <= tol``.

    Chunks of length ``t_chunk`` (default ``20 / min(rate)``) are chained
    and doubled until the residual criterion holds or ``t_cap``
    (default ``1e5 / min(rate)``) is exceeded.
    """
    H, n = _check_dims(H, jumps)
    if not jumps:
        raise InvalidArgumentError("relaxation needs at least one jump operator")
    gmin = min(J.rate for J in jumps)
    t_chunk = 20.0 / gmin if t_chunk is None else t_chunk
    t_cap = 1e5 / gmin if t_cap is None else t_cap
    rho = np.eye(n, dtype=complex) / n if rho0 is None else np.asarray(rho0, dtype=complex)
    f = make_rhs(H, jumps)
    elapsed = 0.0
    while True:
        traj = evolve(rho, H, jumps, [0.0, t_chunk], max_step=np.inf, atol=1e-12, rtol=1e-10, check=False)
        rho = hermitize(traj.final)
        rho = rho / np.trace(rho).real
        elapsed += t_chunk
        resid = np.linalg.norm(f(rho))
        if resid <= tol:
            return rho
        if elapsed >= t_cap:
            raise NotConvergedError(
                f"relaxation residual {resid:.3e} after time {elapsed:g}", best=resid
            )
        t_chunk *= 2


def steady_state(H, jumps, method="auto", tol=1e-8, gap_tol=1e-8, dense_max=DENSE_STEADY_MAX,
                 verify_unique=False, rng=None):
    """Unique stationary density matrix of the Lindblad generator.

    The raw solution is Hermitized, eigenvalues in ``[-1e-9, 0)`` are
    clipped to zero and the result renormalized to unit trace.

    Parameters
    ----------
    method : {"auto", "dense", "sparse", "evolve"}
        ``"auto"`` uses ``"dense"`` for ``N <= dense_max`` and ``"sparse"``
        otherwise.
    tol : float
        Required Frobenius norm of the right-hand side at the solution.
    gap_tol : float
        Degeneracy threshold for the dense route.
    verify_unique : bool
        Additionally relax two random initial states and require that they
        coincide with the solution within 1e-6 (the only uniqueness check
        available on the sparse route).

    Raises
    ------
    NonUniqueSteadyStateError
        Degenerate zero eigenspace.
    NotConvergedError
        The residual criterion is not met.
    """
    H, n = _check_dims(H, jumps)
    if method == "auto":
        method = "dense" if n <= dense_max else "sparse"
    if method == "dense":
        rho = _finalize(_solve_dense(H, jumps, gap_tol), n)
    elif method == "sparse":
        rho = _finalize(_solve_sparse(H, jumps), n)
    elif method == "evolve":
        rho = _finalize(vec(relax(H, jumps, tol=0.1 * tol)), n)
    else:
        raise InvalidArgumentError(f"unknown steady-state method {method!r}")

    resid = np.linalg.norm(make_rhs(H, jumps)(rho))
    if resid > tol:
        raise NotConvergedError(f"steady-state residual {resid:.3e} exceeds {tol:g}", best=resid)

    if verify_unique:
        rng = np.random.default_rng(rng)
        for _ in range(2):
            other = relax(H, jumps, random_density_matrix(n, rng), tol=0.1 * tol)
            dist = np.linalg.norm(other - rho)
            log.debug("uniqueness check: distance %.3e", dist)
            if dist > 1e-6:
                raise NonUniqueSteadyStateError(
                    f"relaxation from a random state ends {dist:.3e} away from the solution"
                )
    return rho
