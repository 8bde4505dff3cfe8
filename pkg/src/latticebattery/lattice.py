"""Tight-binding lattices: periodic chain and honeycomb (graphene) sheet.

Hamiltonians live in the single-particle site basis and are returned as
dense complex ``numpy`` arrays. Every builder also returns the
nearest-neighbour :class:`BondList`, which is what the bond dissipators
are attached to.

Honeycomb indexing follows a brick-wall embedding: the unit cell ``(x, y)``
holds sublattice sites ``A = 2 * (x * Ly + y)`` and ``B = A + 1``. Each A
site bonds to the B site of its own cell and to the B sites of cells
``(x - 1, y)`` and ``(x, y - 1)``, all wrapped periodically.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .errors import InvalidArgumentError, InvalidSpecError

__all__ = [
    "LatticeSpec",
    "BondList",
    "SpectralDecomposition",
    "build_chain",
    "build_honeycomb",
    "build_lattice",
    "add_disorder",
    "disorder_rng",
    "eig",
    "chain_spectrum",
    "matrix_to_dict",
    "matrix_from_dict",
    "save_matrix",
    "load_matrix",
]

KINDS = ("chain", "honeycomb")


@dataclass(frozen=True)
class LatticeSpec:
    """Geometry, hopping and disorder parameters of a lattice.

    ``sites`` is used by the chain, ``cells_x``/``cells_y`` by the honeycomb
    (two sites per cell). Only periodic boundaries are supported.
    """

    kind: str = "chain"
    sites: int = 64
    cells_x: int = 4
    cells_y: int = 4
    hopping: float = 1.0
    boundary: str = "periodic"
    disorder: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidSpecError(f"unknown lattice kind {self.kind!r}; expected one of {KINDS}")
        if self.boundary != "periodic":
            raise InvalidSpecError("only periodic boundary conditions are supported")
        if self.kind == "chain" and self.sites < 2:
            raise InvalidSpecError(f"chain needs at least 2 sites, got {self.sites}")
        if self.kind == "honeycomb" and (self.cells_x < 2 or self.cells_y < 2):
            raise InvalidSpecError(
                f"honeycomb needs at least 2x2 cells, got {self.cells_x}x{self.cells_y}"
            )
        if self.hopping == 0:
            raise InvalidSpecError("hopping amplitude must be non-zero")
        if not self.disorder >= 0:
            raise InvalidSpecError(f"disorder strength must be >= 0, got {self.disorder}")

    @property
    def n_sites(self) -> int:
        if self.kind == "chain":
            return self.sites
        return 2 * self.cells_x * self.cells_y


@dataclass(frozen=True)
class BondList:
    """Ordered nearest-neighbour bonds, each listed once."""

    pairs: tuple[tuple[int, int], ...]
    n_sites: int

    def __post_init__(self):
        seen = set()
        for i, j in self.pairs:
            if i == j:
                raise InvalidSpecError(f"self-bond ({i}, {j})")
            if not (0 <= i < self.n_sites and 0 <= j < self.n_sites):
                raise InvalidSpecError(f"bond ({i}, {j}) out of range for {self.n_sites} sites")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise InvalidSpecError(f"duplicate bond ({i}, {j})")
            seen.add(key)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __getitem__(self, k):
        return self.pairs[k]


class SpectralDecomposition(NamedTuple):
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.energies)

    def hamiltonian(self) -> np.ndarray:
        X = self.vectors
        return (X * self.energies) @ X.conj().T


def _hopping_matrix(pairs, n, t):
    H = np.zeros((n, n), dtype=complex)
    for i, j in pairs:
        H[i, j] += t
        H[j, i] += np.conj(t)
    return H


def build_chain(spec: LatticeSpec):
    """Clean periodic chain ``H = sum_i t (|i><i+1| + h.c.)``.

    The two-site ring keeps a single bond so that the bond list stays a
    simple graph (spectrum ``{-t, +t}``).

    Returns
    -------
    H : ndarray, shape (L, L)
    bonds : BondList
    """
    if spec.kind != "chain":
        raise InvalidSpecError(f"build_chain called with kind {spec.kind!r}")
    L = spec.sites
    if L == 2:
        pairs = ((0, 1),)
    else:
        pairs = tuple((i, (i + 1) % L) for i in range(L))
    bonds = BondList(pairs, L)
    return _hopping_matrix(pairs, L, spec.hopping), bonds


def build_honeycomb(spec: LatticeSpec):
    """Clean periodic honeycomb lattice with ``N = 2 * Lx * Ly`` sites and
    ``3 * Lx * Ly`` bonds (brick-wall indexing, see module docstring)."""
    if spec.kind != "honeycomb":
        raise InvalidSpecError(f"build_honeycomb called with kind {spec.kind!r}")
    Lx, Ly = spec.cells_x, spec.cells_y

    def a_site(x, y):
        return 2 * ((x % Lx) * Ly + (y % Ly))

    pairs = []
    for x in range(Lx):
        for y in range(Ly):
            a = a_site(x, y)
            pairs.append((a, a + 1))
            pairs.append((a, a_site(x - 1, y) + 1))
            pairs.append((a, a_site(x, y - 1) + 1))
    n = 2 * Lx * Ly
    bonds = BondList(tuple(pairs), n)
    return _hopping_matrix(pairs, n, spec.hopping), bonds


def disorder_rng(seed, realization=0) -> np.random.Generator:
    """Counter-based generator keyed by ``(seed, realization)``.

    Philox streams do not depend on execution order, so realization ``r``
    draws the same potential regardless of how jobs are scheduled.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(realization)])))


def add_disorder(H, W, seed, realization=0):
    """Return ``H + diag(eps)`` with ``eps_i ~ U[-W/2, W/2]`` i.i.d.

    ``seed`` may be an integer (combined with ``realization``) or an
    existing ``numpy.random.Generator``. Off-diagonal entries are copied
    untouched; ``W = 0`` returns an exact copy.
    """
    if not W >= 0:
        raise InvalidArgumentError(f"disorder strength must be >= 0, got {W}")
    H = np.array(H, dtype=complex, copy=True)
    if W == 0:
        return H
    rng = seed if isinstance(seed, np.random.Generator) else disorder_rng(seed, realization)
    eps = rng.uniform(-0.5 * W, 0.5 * W, size=H.shape[0])
    H[np.diag_indices_from(H)] += eps
    return H


def build_lattice(spec: LatticeSpec, realization=0):
    """Build the (possibly disordered) Hamiltonian described by ``spec``."""
    builder = build_chain if spec.kind == "chain" else build_honeycomb
    H, bonds = builder(spec)
    return add_disorder(H, spec.disorder, spec.seed, realization), bonds


def eig(H, atol=1e-10) -> SpectralDecomposition:
    """Hermitian eigendecomposition with ascending eigenvalues.

    Raises
    ------
    InvalidArgumentError
        If ``H`` deviates from Hermiticity by more than
        ``atol * max(1, |H|_max)``.
    """
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidArgumentError(f"Hamiltonian must be square, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H)))) if H.size else 1.0
    if H.size and np.max(np.abs(H - H.conj().T)) > atol * scale:
        raise InvalidArgumentError("Hamiltonian is not Hermitian")
    E, X = np.linalg.eigh(H)
    return SpectralDecomposition(E, X)


def chain_spectrum(L, t=1.0):
    """Analytic clean-ring spectrum ``2 t cos(2 pi n / L)``, sorted."""
    if L == 2:
        return np.sort(np.array([-t, t], dtype=float))
    n = np.arange(L)
    return np.sort(2 * t * np.cos(2 * np.pi * n / L))


# -- serialization -----------------------------------------------------------
#
# JSON form: {"shape": [rows, cols], "data": [[re, im], ...]} in row-major order.
# Binary form: two little-endian int64 (rows, cols) followed by rows*cols
# little-endian float64 (re, im) pairs in row-major order.

_HEADER = struct.Struct("<qq")


def matrix_to_dict(M):
    M = np.asarray(M, dtype=complex)
    flat = M.reshape(-1)
    return {"shape": list(M.shape), "data": [[float(z.real), float(z.imag)] for z in flat]}


def matrix_from_dict(d):
    rows, cols = d["shape"]
    pairs = np.asarray(d["data"], dtype=float).reshape(rows * cols, 2)
    return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(rows, cols)


def save_matrix(path, M):
    """Write ``M`` as JSON (``.json`` suffix) or the binary complex-pair form."""
    M = np.asarray(M, dtype=complex)
    path = str(path)
    if path.endswith(".json"):
        with open(path, "w") as fh:
            json.dump(matrix_to_dict(M), fh)
        return
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(*M.shape))
        fh.write(np.ascontiguousarray(M).astype("<c16").tobytes())


def load_matrix(path):
    path = str(path)
    if path.endswith(".json"):
        with open(path) as fh:
            return matrix_from_dict(json.load(fh))
    with open(path, "rb") as fh:
        rows, cols = _HEADER.unpack(fh.read(_HEADER.size))
        data = np.frombuffer(fh.read(), dtype="<c16")
    return data.reshape(rows, cols).astype(complex)
