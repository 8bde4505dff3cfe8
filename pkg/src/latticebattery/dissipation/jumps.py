"""Single-particle jump operators and the ancilla-mediated effective rate."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import InvalidArgumentError

__all__ = [
    "JumpOperator",
    "bond_jump",
    "bond_factors",
    "dephasing_jump",
    "bond_jumps",
    "dephasing_jumps",
    "effective_rate",
]

JUMP_KINDS = ("bond", "dephasing", "custom")


@dataclass(frozen=True, eq=False)
class JumpOperator:
    """A Lindblad channel ``rate * D[matrix]``.

    ``factors`` optionally holds vectors ``(u, v)`` with
    ``matrix == outer(u, v)``; rank-one channels are evaluated in
    O(N^2) by the operator-form right-hand side.
    """

    matrix: np.ndarray
    rate: float
    kind: str = "custom"
    sites: tuple = ()
    factors: Optional[tuple] = None

    def __post_init__(self):
        if not self.rate > 0:
            raise InvalidArgumentError(f"jump rate must be > 0, got {self.rate}")
        if self.kind not in JUMP_KINDS:
            raise InvalidArgumentError(f"unknown jump kind {self.kind!r}")
        m = np.asarray(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidArgumentError(f"jump matrix must be square, got {m.shape}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check_site(i, n):
    if not 0 <= i < n:
        raise IndexError(f"site {i} out of range for dimension {n}")


def bond_factors(i, j, phi, n):
    """Vectors ``u = e_i + eta e_j`` and ``v = e_i - eta e_j``, ``eta = exp(i phi)``."""
    if i == j:
        raise InvalidArgumentError("bond jump needs two distinct sites")
    _check_site(i, n)
    _check_site(j, n)
    eta = np.exp(1j * phi)
    u = np.zeros(n, dtype=complex)
    v = np.zeros(n, dtype=complex)
    u[i], u[j] = 1.0, eta
    v[i], v[j] = 1.0, -eta
    return u, v


def bond_jump(i, j, phi, n):
    """One-particle matrix of ``(c_i^+ + eta c_j^+)(c_i - eta c_j)``.

    Equal to ``outer(u, v)`` with ``u, v`` from :func:`bond_factors`; the
    vector ``x`` is annihilated exactly when ``x_i = eta x_j``.
    """
    u, v = bond_factors(i, j, phi, n)
    return np.outer(u, v)


def dephasing_jump(j, n):
    """Projector ``|j><j|`` (number operator on site ``j``)."""
    _check_site(j, n)
    M = np.zeros((n, n), dtype=complex)
    M[j, j] = 1.0
    return M


def bond_jumps(bonds, n, phi=0.0, rate=1.0):
    """Bond dissipators on every bond of ``bonds`` with a common rate."""
    out = []
    for i, j in bonds:
        u, v = bond_factors(i, j, phi, n)
        out.append(JumpOperator(np.outer(u, v), rate, "bond", (i, j), (u, v)))
    return out


def dephasing_jumps(n, rate):
    """Local dephasing on all ``n`` sites; empty when ``rate == 0``."""
    if rate == 0:
        return []
    out = []
    for j in range(n):
        e = np.zeros(n, dtype=complex)
        e[j] = 1.0
        out.append(JumpOperator(dephasing_jump(j, n), rate, "dephasing", (j,), (e, e)))
    return out


def effective_rate(omega, Gamma, delta):
    """Bond-dissipation rate after eliminating a decaying ancilla.

    ``gamma = Gamma |omega|^2 / (delta^2 + (Gamma / 2)^2)`` for Rabi
    amplitude ``omega``, ancilla decay rate ``Gamma`` and laser detuning
    ``delta`` (all in the same angular-frequency units).
    """
    if not Gamma > 0:
        raise InvalidArgumentError(f"ancilla decay rate must be > 0, got {Gamma}")
    return Gamma * abs(omega) ** 2 / (delta ** 2 + (0.5 * Gamma) ** 2)
