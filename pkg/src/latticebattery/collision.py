"""Repeated-interaction charging of a qubit by thermal ancillas.

Each collision couples the battery qubit to a fresh ancilla in the Gibbs
state of ``H_A = (omega/2) sigma_z`` through
``V = g (s+ s+ + s- s-)``, evolves for ``duration`` under
``H_B + H_A + V`` and traces the ancilla out. ``V`` only connects
``|gg>`` and ``|ee>``, so ``U`` commutes with ``-H_B + H_A`` and the
map's fixed point is the inverted Gibbs state ``exp(+beta H_B) / Z``.

Qubit basis order is ``(|g>, |e>)``, i.e. ``sigma_z = diag(-1, +1)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import InvalidSpecError, NotConvergedError
from .lattice import SpectralDecomposition
from .linalg import check_density_matrix, hermitize
from .workmetrics import ergotropy

__all__ = [
    "CollisionSpec",
    "SIGMA_Z",
    "SIGMA_PLUS",
    "battery_hamiltonian",
    "ancilla_state",
    "collision_unitary",
    "collision_step",
    "conserved_operator",
    "inverted_gibbs",
    "iterate_to_fixed_point",
]

SIGMA_Z = np.diag([-1.0, 1.0]).astype(complex)
SIGMA_PLUS = np.array([[0, 0], [1, 0]], dtype=complex)  # |e><g|
SIGMA_MINUS = SIGMA_PLUS.conj().T
I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class CollisionSpec:
    omega: float = 1.0
    beta: float = 1.0
    coupling: float = 1.0
    duration: float = np.pi / 4
    collisions: int = 50

    def __post_init__(self):
        if not self.omega > 0:
            raise InvalidSpecError(f"battery splitting must be > 0, got {self.omega}")
        if not self.beta >= 0:
            raise InvalidSpecError(f"inverse temperature must be >= 0, got {self.beta}")
        if self.collisions < 1:
            raise InvalidSpecError("need at least one collision")


def battery_hamiltonian(spec: CollisionSpec):
    return 0.5 * spec.omega * SIGMA_Z


def ancilla_state(spec: CollisionSpec):
    w = np.exp(-spec.beta * 0.5 * spec.omega * np.array([-1.0, 1.0]))
    return np.diag(w / w.sum()).astype(complex)


def collision_unitary(spec: CollisionSpec):
    """``exp(-i duration (H_B + H_A + V))`` on battery (x) ancilla."""
    h = 0.5 * spec.omega * SIGMA_Z
    V = spec.coupling * (np.kron(SIGMA_PLUS, SIGMA_PLUS) + np.kron(SIGMA_MINUS, SIGMA_MINUS))
    H = np.kron(h, I2) + np.kron(I2, h) + V
    return expm(-1j * spec.duration * H)


def conserved_operator(spec: CollisionSpec):
    """``H_0 + H_A`` with ``H_0 = -H_B``."""
    h = 0.5 * spec.omega * SIGMA_Z
    return np.kron(-h, I2) + np.kron(I2, h)


def collision_step(rho_b, spec: CollisionSpec, U=None):
    """Apply one collision to the battery state ``rho_b``."""
    rho_b = check_density_matrix(rho_b)
    if rho_b.shape != (2, 2):
        raise InvalidSpecError("collision model acts on a single qubit")
    if U is None:
        U = collision_unitary(spec)
    joint = U @ np.kron(rho_b, ancilla_state(spec)) @ U.conj().T
    out = np.einsum("iaja->ij", joint.reshape(2, 2, 2, 2))
    return hermitize(out)


def inverted_gibbs(spec: CollisionSpec):
    """Closed-form fixed point ``exp(beta H_B) / Z``."""
    w = np.exp(spec.beta * 0.5 * spec.omega * np.array([-1.0, 1.0]))
    return np.diag(w / w.sum()).astype(complex)


def iterate_to_fixed_point(spec: CollisionSpec, rho0=None, tol=1e-10):
    """Iterate collisions until successive states differ by less than ``tol``.

    Returns
    -------
    rho : (2, 2) array
        Converged battery state.
    work : float
        Its ergotropy with respect to ``H_B``.
    history : list of (2, 2) arrays
        States after each collision, starting with ``rho0``.

    Raises
    ------
    NotConvergedError
        If ``spec.collisions`` steps do not reach the tolerance.
    """
    if rho0 is None:
        rho0 = np.diag([1.0, 0.0]).astype(complex)
    U = collision_unitary(spec)
    rho = np.asarray(rho0, dtype=complex)
    history = [rho]
    for _ in range(spec.collisions):
        new = collision_step(rho, spec, U)
        history.append(new)
        if np.linalg.norm(new - rho) < tol:
            rho = new
            break
        rho = new
    else:
        raise NotConvergedError(
            f"collision map not converged after {spec.collisions} collisions",
            best=float(np.linalg.norm(history[-1] - history[-2])),
        )
    hb = SpectralDecomposition(0.5 * spec.omega * np.array([-1.0, 1.0]), I2)
    return rho, ergotropy(rho, hb), history
