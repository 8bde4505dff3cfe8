import numpy as np
import pytest

from latticebattery.dissipation import (
    JumpOperator,
    bond_jumps,
    dephasing_jumps,
    rhs,
    steady_state,
)
from latticebattery.errors import NonUniqueSteadyStateError
from latticebattery.lattice import LatticeSpec, add_disorder, build_chain, build_honeycomb, eig
from latticebattery.linalg import check_density_matrix, projector
from latticebattery.workmetrics import ergotropy, occupations


def chain(L, W=0.0, seed=0):
    H, bonds = build_chain(LatticeSpec("chain", sites=L))
    return add_disorder(H, W, seed), bonds


def test_two_site_dark_state():
    H = np.array([[0, 1], [1, 0]], dtype=complex)
    _, bonds = chain(2)
    rho = steady_state(H, bond_jumps(bonds, 2))
    np.testing.assert_allclose(rho, projector([1, 1]), atol=1e-10)
    assert np.real(np.trace(H @ rho)) == pytest.approx(1.0, abs=1e-10)


def test_clean_chain_band_top():
    H, bonds = chain(8)
    jumps = bond_jumps(bonds, 8)
    rho = steady_state(H, jumps)
    n = occupations(rho, eig(H))
    assert np.argmax(n) == 7
    # the k = 0 momentum state is an exact dark state
    uniform = projector(np.ones(8))
    assert np.max(np.abs(rhs(uniform, H, jumps))) <= 1e-12
    np.testing.assert_allclose(rho, uniform, atol=1e-8)


def test_opposite_phase_band_bottom():
    H, bonds = chain(8)
    rho = steady_state(H, bond_jumps(bonds, 8, phi=np.pi))
    spec = eig(H)
    assert np.argmax(occupations(rho, spec)) == 0
    assert ergotropy(rho, spec) <= 1e-8


@pytest.mark.parametrize("method", ["dense", "sparse", "evolve"])
def test_methods_agree(method):
    H, bonds = chain(8, 0.6, 4)
    jumps = bond_jumps(bonds, 8) + dephasing_jumps(8, 0.1)
    ref = steady_state(H, jumps, method="dense")
    rho = steady_state(H, jumps, method=method)
    check_density_matrix(rho)
    assert np.linalg.norm(rho - ref) <= 1e-6
    assert np.linalg.norm(rhs(rho, H, jumps)) <= 1e-8


def test_dense_and_relaxation_agree_on_honeycomb():
    H, bonds = build_honeycomb(LatticeSpec("honeycomb", cells_x=2, cells_y=3))
    H = add_disorder(H, 0.5, 1)
    jumps = bond_jumps(bonds, 12)
    a = steady_state(H, jumps, method="dense")
    b = steady_state(H, jumps, method="evolve")
    assert np.linalg.norm(a - b) <= 1e-6


def test_auto_switches_to_sparse_above_threshold():
    H, bonds = chain(44, 0.5, 0)
    jumps = bond_jumps(bonds, 44)
    rho = steady_state(H, jumps)
    assert np.linalg.norm(rhs(rho, H, jumps)) <= 1e-8
    ref = steady_state(H, jumps, method="sparse", dense_max=10)
    np.testing.assert_allclose(rho, ref, atol=1e-12)


def test_sparse_uniqueness_check():
    H, bonds = chain(6, 0.9, 3)
    jumps = bond_jumps(bonds, 6) + dephasing_jumps(6, 0.5)
    rho = steady_state(H, jumps, method="sparse", verify_unique=True, rng=0)
    check_density_matrix(rho)


def test_translation_covariance():
    L = 10
    H, bonds = chain(L)
    rho = steady_state(H, bond_jumps(bonds, L) + dephasing_jumps(L, 0.4))
    S = np.roll(np.eye(L), 1, axis=0)
    assert np.max(np.abs(S @ rho - rho @ S)) <= 1e-8


@pytest.mark.parametrize("method", ["dense", "sparse"])
def test_degenerate_steady_state_reported(method):
    # pure dephasing without hopping: every diagonal state is stationary
    H = np.zeros((3, 3))
    with pytest.raises(NonUniqueSteadyStateError):
        steady_state(H, dephasing_jumps(3, 1.0), method=method)


def test_disconnected_chain_is_degenerate():
    # two decoupled two-site blocks with bond dissipation on each
    H = np.zeros((4, 4), complex)
    H[0, 1] = H[1, 0] = H[2, 3] = H[3, 2] = 1.0
    jumps = [j for j in bond_jumps([(0, 1), (2, 3)], 4)]
    with pytest.raises(NonUniqueSteadyStateError):
        steady_state(H, jumps)


def test_custom_jump_decay():
    L = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
    rho = steady_state(np.diag([0.0, 1.0]), [JumpOperator(L, 1.0)])
    np.testing.assert_allclose(rho, np.diag([1.0, 0.0]), atol=1e-10)
