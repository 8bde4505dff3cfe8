"""Small dense linear-algebra helpers used across the package.

Vectorization uses column stacking throughout, so that
``vec(A @ X @ B) == kron(B.T, A) @ vec(X)``.
"""
import numpy as np

from .errors import InvalidArgumentError, InvalidStateError

__all__ = [
    "vec",
    "unvec",
    "hermitize",
    "is_hermitian",
    "check_square",
    "check_density_matrix",
    "projector",
    "random_density_matrix",
]


def vec(X):
    """Column-stack a square matrix into a vector."""
    return np.asarray(X).reshape(-1, order="F")


def unvec(x, n=None):
    """Inverse of :func:`vec`."""
    x = np.asarray(x)
    if n is None:
        n = int(round(np.sqrt(x.size)))
    if n * n != x.size:
        raise InvalidArgumentError(f"vector of size {x.size} is not a square matrix")
    return x.reshape(n, n, order="F")


def hermitize(X):
    return 0.5 * (X + X.conj().T)


def is_hermitian(X, atol=1e-12):
    X = np.asarray(X)
    return X.ndim == 2 and X.shape[0] == X.shape[1] and np.allclose(X, X.conj().T, rtol=0, atol=atol)


def check_square(X, name="matrix"):
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1]:
        raise InvalidArgumentError(f"{name} must be square, got shape {X.shape}")
    return X


def check_density_matrix(rho, atol=1e-10, psd_tol=1e-9):
    """Validate ``rho`` as a density matrix and return it as an array.

    Raises
    ------
    InvalidStateError
        If ``rho`` is not Hermitian within ``atol``, its trace differs from
        one by more than ``atol``, or its smallest eigenvalue is below
        ``-psd_tol``.
    """
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"density matrix must be square, got shape {rho.shape}")
    herm_err = np.max(np.abs(rho - rho.conj().T)) if rho.size else 0.0
    if herm_err > atol:
        raise InvalidStateError(f"density matrix not Hermitian (max deviation {herm_err:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > atol:
        raise InvalidStateError(f"density matrix trace {tr.real:.12g} differs from 1")
    lam_min = np.linalg.eigvalsh(hermitize(rho))[0]
    if lam_min < -psd_tol:
        raise InvalidStateError(f"density matrix has negative eigenvalue {lam_min:.3e}")
    return rho


def projector(psi):
    """Return ``|psi><psi|`` for a normalized copy of ``psi``."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


def random_density_matrix(n, rng=None, rank=None):
    """Random full-rank (or rank-``rank``) density matrix from a Ginibre draw."""
    rng = np.random.default_rng(rng)
    k = n if rank is None else rank
    G = rng.normal(size=(n, k)) + 1j * rng.normal(size=(n, k))
    rho = G @ G.conj().T
    return hermitize(rho / np.trace(rho).real)
