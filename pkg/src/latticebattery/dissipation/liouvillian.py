"""Lindblad generator in superoperator and operator form.

Superoperator form (column stacking)::

    L = -i (I (x) H - H^T (x) I)
        + sum_k g_k [ conj(L_k) (x) L_k - 1/2 I (x) L_k^+ L_k - 1/2 (L_k^+ L_k)^T (x) I ]

The operator form evaluates the same right-hand side directly on the N x N
density matrix. Rank-one channels ``L = u v^T`` use
``L rho L^+ = (v^T rho conj(v)) u u^+`` and ``L^+ L = |u|^2 conj(v) v^T``, so
each costs O(N^2) instead of O(N^3).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from ..errors import InvalidArgumentError
from ..linalg import check_square, vec

__all__ = ["LiouvillianMatrix", "build_liouvillian", "rhs", "make_rhs"]


@dataclass(frozen=True, eq=False)
class LiouvillianMatrix:
    """N^2 x N^2 generator acting on column-stacked density matrices.

    ``matrix`` is a dense ``ndarray`` or a ``scipy.sparse`` CSC matrix.
    """

    matrix: object
    dim: int
    convention: str = "column"

    @property
    def is_sparse(self) -> bool:
        return sp.issparse(self.matrix)

    def dense(self) -> np.ndarray:
        return self.matrix.toarray() if self.is_sparse else np.asarray(self.matrix)

    def apply(self, rho):
        """Return ``L[rho]`` as an N x N matrix."""
        out = self.matrix @ vec(rho)
        return np.asarray(out).reshape(self.dim, self.dim, order="F")


def _check_dims(H, jumps):
    H = check_square(np.asarray(H), "Hamiltonian")
    n = H.shape[0]
    for k, J in enumerate(jumps):
        if J.matrix.shape != (n, n):
            raise InvalidArgumentError(
                f"jump {k} has shape {J.matrix.shape}, Hamiltonian is {n}x{n}"
            )
    return H, n


def build_liouvillian(H, jumps, sparse=False) -> LiouvillianMatrix:
    """Assemble the Lindblad superoperator for ``H`` and ``jumps``."""
    H, n = _check_dims(H, jumps)
    if sparse:
        kron = sp.kron
        eye = sp.identity(n, dtype=complex, format="csr")
        H = sp.csr_matrix(H)

        def conv(M):
            return sp.csr_matrix(M)
    else:
        kron = np.kron
        eye = np.eye(n, dtype=complex)

        def conv(M):
            return np.asarray(M, dtype=complex)

    Lm = -1j * (kron(eye, H) - kron(H.T, eye))
    for J in jumps:
        M = conv(J.matrix)
        MdM = M.conj().T @ M
        Lm = Lm + J.rate * (kron(M.conj(), M) - 0.5 * kron(eye, MdM) - 0.5 * kron(MdM.T, eye))
    if sparse:
        Lm = sp.csc_matrix(Lm)
        Lm.eliminate_zeros()
    return LiouvillianMatrix(Lm, n)


def make_rhs(H, jumps):
    """Precompute the operator-form generator; returns ``f(rho) -> drho/dt``."""
    H, n = _check_dims(H, jumps)
    H = np.asarray(H, dtype=complex)
    rank1 = [J for J in jumps if J.factors is not None]
    dense = [J for J in jumps if J.factors is None]

    K = np.zeros((n, n), dtype=complex)  # sum_k g_k L_k^+ L_k
    if rank1:
        U = np.stack([np.asarray(J.factors[0], dtype=complex) for J in rank1], axis=1)
        V = np.stack([np.asarray(J.factors[1], dtype=complex) for J in rank1], axis=1)
        g = np.array([J.rate for J in rank1], dtype=float)
        Vc = V.conj()
        gU = U * g
        UH = U.conj().T
        K += (Vc * (g * np.sum(np.abs(U) ** 2, axis=0))) @ V.T
    dense_ops = []
    for J in dense:
        M = np.asarray(J.matrix, dtype=complex)
        MH = M.conj().T
        K += J.rate * (MH @ M)
        dense_ops.append((J.rate, M, MH))

    Heff = H - 0.5j * K
    HeffH = Heff.conj().T

    def f(rho):
        out = -1j * (Heff @ rho - rho @ HeffH)
        if rank1:
            a = np.sum(V * (rho @ Vc), axis=0)
            out += (gU * a) @ UH
        for rate, M, MH in dense_ops:
            out += rate * (M @ rho @ MH)
        return out

    return f


def rhs(rho, H, jumps):
    """Right-hand side ``d rho / d tau`` of the Lindblad equation."""
    rho = check_square(np.asarray(rho), "density matrix")
    if rho.shape != np.shape(H):
        raise InvalidArgumentError(f"rho has shape {rho.shape}, Hamiltonian {np.shape(H)}")
    return make_rhs(H, jumps)(rho.astype(complex))
