"""Ergotropy, passive states and thermodynamic work bounds.

All functions take the Hamiltonian through its
:class:`~latticebattery.lattice.SpectralDecomposition` (ascending energies,
eigenvector columns). Entropies are in nats.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, InvalidArgumentError, LatticeBatteryError, NotConvergedError
from .lattice import SpectralDecomposition
from .linalg import hermitize

__all__ = [
    "ErgotropyReport",
    "ChargingTrace",
    "passive_state",
    "passive_populations",
    "ergotropy",
    "ergotropy_double_sum",
    "mean_energy",
    "von_neumann_entropy",
    "gibbs_populations",
    "gibbs_state",
    "entropy_matched_beta",
    "w_bound",
    "occupations",
    "charging_power",
    "ergotropy_report",
]

PSD_CLIP = 1e-9


def _check_dims(rho, spec: SpectralDecomposition):
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape != (spec.dim, spec.dim):
        raise InvalidArgumentError(f"state of shape {rho.shape} does not match dimension {spec.dim}")
    return hermitize(rho)


def _populations(rho):
    """Eigenvalues of ``rho`` in descending order with round-off clipped."""
    lam = np.linalg.eigvalsh(rho)[::-1]
    return np.where((lam < 0) & (lam >= -PSD_CLIP), 0.0, lam)


def mean_energy(rho, spec: SpectralDecomposition) -> float:
    return float(np.real(np.sum(spec.energies * occupations(rho, spec))))


def passive_populations(rho):
    """Populations of the passive state, largest first (paired with lowest energy)."""
    return _populations(hermitize(np.asarray(rho)))


def passive_state(rho, spec: SpectralDecomposition):
    """Passive state: eigenvalues of ``rho`` sorted descending, placed on the
    energy eigenstates sorted ascending."""
    rho = _check_dims(rho, spec)
    p = passive_populations(rho)
    X = spec.vectors
    return hermitize((X * p) @ X.conj().T)


def ergotropy_double_sum(rho, spec: SpectralDecomposition) -> float:
    """``sum_{a,b} (E_b - E_a) p_a |<psi_a|chi_b>|^2`` with ``p_a`` descending.

    ``E_a`` is the energy assigned to population ``p_a`` by the passive
    pairing; this is an independent route to the same number as
    :func:`ergotropy`.
    """
    rho = _check_dims(rho, spec)
    lam, psi = np.linalg.eigh(rho)
    order = np.argsort(-lam, kind="stable")
    p = lam[order]
    psi = psi[:, order]
    overlap = np.abs(psi.conj().T @ spec.vectors) ** 2  # [a, b]
    E = spec.energies
    return float(np.sum((E[None, :] - E[:, None]) * p[:, None] * overlap))


def ergotropy(rho, spec: SpectralDecomposition, cross_check=True) -> float:
    """Maximal work extractable by a unitary, ``Tr[H (rho - sigma_rho)]``.

    With ``cross_check`` the double-sum form is evaluated as well and the
    two must agree within 1e-9.
    """
    rho = _check_dims(rho, spec)
    value = mean_energy(rho, spec) - float(np.dot(passive_populations(rho), spec.energies))
    if cross_check:
        other = ergotropy_double_sum(rho, spec)
        if abs(other - value) > 1e-9 * max(1.0, abs(value)):
            raise LatticeBatteryError(
                f"ergotropy routes disagree: sorted pairing {value!r}, double sum {other!r}"
            )
    return value


def von_neumann_entropy(rho) -> float:
    """``S = -Tr[rho ln rho]`` in nats, with ``0 ln 0 = 0``."""
    p = _populations(hermitize(np.asarray(rho)))
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def gibbs_populations(energies, beta):
    """Boltzmann weights ``exp(-beta E) / Z`` computed with a max shift."""
    if not (beta >= 0 and np.isfinite(beta)):
        raise InvalidArgumentError(f"inverse temperature must be finite and >= 0, got {beta}")
    x = -beta * (np.asarray(energies, dtype=float) - np.min(energies))
    w = np.exp(x)
    return w / w.sum()


def gibbs_state(spec: SpectralDecomposition, beta):
    X = spec.vectors
    return hermitize((X * gibbs_populations(spec.energies, beta)) @ X.conj().T)


def _gibbs_entropy(energies, beta):
    p = gibbs_populations(energies, beta)
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def entropy_matched_beta(rho, spec: SpectralDecomposition, tol=1e-10) -> float:
    """Inverse temperature of the Gibbs state with the same entropy as ``rho``.

    Raises
    ------
    BracketError
        If the entropy of ``rho`` is below what is reachable at
        ``beta_max = 1e6 / |H|``.
    NotConvergedError
        If ``H`` is fully degenerate and ``S(rho) < ln N`` (the Gibbs entropy
        does not depend on ``beta``).
    """
    rho = _check_dims(rho, spec)
    E = spec.energies
    n = len(E)
    target = von_neumann_entropy(rho)
    s_max = np.log(n)
    if target >= s_max - tol:
        return 0.0
    width = float(E[-1] - E[0])
    if width <= 1e-12 * max(1.0, float(np.max(np.abs(E)))):
        raise NotConvergedError("fully degenerate spectrum: Gibbs entropy is constant in beta")
    norm = float(np.max(np.abs(E)))
    beta_max = 1e6 / norm

    def f(beta):
        return _gibbs_entropy(E, beta) - target

    hi = 1.0 / width
    while f(hi) > 0:
        if hi >= beta_max:
            floor = f(beta_max) + target
            if floor - target > tol:
                raise BracketError(
                    f"entropy {target:.6g} below the floor {floor:.6g} reachable at beta_max"
                )
            return beta_max
        hi = min(2 * hi, beta_max)
    if f(hi) == 0:
        return hi
    beta = brentq(f, 0.0, hi, xtol=1e-15 * max(1.0, hi), rtol=4 * np.finfo(float).eps, maxiter=500)
    if abs(f(beta)) > tol:
        raise NotConvergedError(f"entropy mismatch {f(beta):.3e} at beta={beta}", best=beta)
    return float(beta)


def w_bound(rho, spec: SpectralDecomposition, beta=None) -> float:
    """Free-energy work bound ``Tr[H rho] - Tr[H gibbs(beta_bar)]``."""
    rho = _check_dims(rho, spec)
    if beta is None:
        beta = entropy_matched_beta(rho, spec)
    e_gibbs = float(np.dot(gibbs_populations(spec.energies, beta), spec.energies))
    return mean_energy(rho, spec) - e_gibbs


def occupations(rho, spec: SpectralDecomposition):
    """``<chi_b|rho|chi_b>`` for each eigenstate, ascending energy."""
    rho = np.asarray(rho)
    if rho.shape != (spec.dim, spec.dim):
        raise InvalidArgumentError(f"state of shape {rho.shape} does not match dimension {spec.dim}")
    X = spec.vectors
    return np.real(np.einsum("ib,ij,jb->b", X.conj(), rho, X))


def charging_power(times, values, e_ss, fraction=0.99):
    """First time ``tau`` with ``E(tau) = fraction * e_ss`` and ``P = E(tau) / tau``.

    ``tau`` is linearly interpolated between the bracketing samples.

    Raises
    ------
    NotConvergedError
        If the threshold is never reached; ``best`` holds the largest
        fraction attained.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if not e_ss > 0:
        raise InvalidArgumentError(f"saturation ergotropy must be > 0, got {e_ss}")
    target = fraction * e_ss
    hit = np.flatnonzero(values >= target)
    if hit.size == 0:
        best = float(np.max(values) / e_ss) if values.size else 0.0
        raise NotConvergedError(
            f"ergotropy reached only {best:.6f} of its saturation value", best=best
        )
    k = hit[0]
    if k == 0:
        tau = times[0]
    else:
        t0, t1 = times[k - 1], times[k]
        v0, v1 = values[k - 1], values[k]
        tau = t0 + (target - v0) / (v1 - v0) * (t1 - t0)
    if not tau > 0:
        raise InvalidArgumentError("threshold already met at the initial time; power undefined")
    return float(tau), float(target / tau)


@dataclass
class ErgotropyReport:
    """Work metrics of a single state with respect to a fixed Hamiltonian."""

    ergotropy: float
    mean_energy: float
    passive_energy: float
    w_bound: float | None
    beta_bar: float | None
    entropy: float
    occupations: np.ndarray
    energies: np.ndarray

    def to_dict(self):
        return {
            "ergotropy": self.ergotropy,
            "mean_energy": self.mean_energy,
            "passive_energy": self.passive_energy,
            "w_bound": self.w_bound,
            "beta_bar": self.beta_bar,
            "entropy": self.entropy,
            "occupations": self.occupations.tolist(),
            "energies": self.energies.tolist(),
        }


def ergotropy_report(rho, spec: SpectralDecomposition) -> ErgotropyReport:
    """Bundle ergotropy, energies, entropy, ``W_bound`` and occupations.

    ``w_bound``/``beta_bar`` are ``None`` when no entropy-matched Gibbs
    state exists (bracket failure or degenerate spectrum).
    """
    rho = _check_dims(rho, spec)
    erg = ergotropy(rho, spec)
    energy = mean_energy(rho, spec)
    try:
        beta = entropy_matched_beta(rho, spec)
        bound = w_bound(rho, spec, beta)
    except (BracketError, NotConvergedError):
        beta = bound = None
    return ErgotropyReport(
        ergotropy=erg,
        mean_energy=energy,
        passive_energy=energy - erg,
        w_bound=bound,
        beta_bar=beta,
        entropy=von_neumann_entropy(rho),
        occupations=occupations(rho, spec),
        energies=np.asarray(spec.energies, dtype=float),
    )


@dataclass
class ChargingTrace:
    """Ergotropy versus time while charging from the passive state."""

    times: np.ndarray
    ergotropy: np.ndarray
    e_ss: float
    tau99: float
    power: float
    extra: dict = field(default_factory=dict)

    @property
    def ergotropy_over_ss(self):
        return self.ergotropy / self.e_ss

    def to_dict(self):
        return {
            "times": np.asarray(self.times).tolist(),
            "ergotropy": np.asarray(self.ergotropy).tolist(),
            "e_ss": self.e_ss,
            "tau99": self.tau99,
            "power": self.power,
        }
