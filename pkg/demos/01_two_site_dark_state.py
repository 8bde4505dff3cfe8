"""
A two-site battery and its dark state
=====================================

The smallest bond-dissipative battery: two sites, one hopping bond and
one jump operator ``L = (e_0 + e_1)(e_0 - e_1)^T``. The jump empties the
antisymmetric mode into the symmetric one, which is also the top of the
two-level band. The symmetric state is annihilated by ``L``, so it is
stationary and the battery ends up fully charged.
"""
import numpy as np
from scipy.linalg import null_space

from latticebattery import LatticeSpec, bond_jumps, build_chain, eig, ergotropy, evolve, steady_state
from latticebattery.dissipation import build_liouvillian
from latticebattery.linalg import projector, unvec

H, bonds = build_chain(LatticeSpec("chain", sites=2))
jumps = bond_jumps(bonds, 2)
print("H =\n", H.real)

# The generator is only 4x4, so the null space can be read off directly.
L = build_liouvillian(H, jumps).dense()
rho_null = unvec(null_space(L)[:, 0], 2)
rho_null /= np.trace(rho_null)
print("null-space steady state:\n", np.round(rho_null, 12))

rho_ss = steady_state(H, jumps)
print("distance to symmetric projector:", np.linalg.norm(rho_ss - projector([1, 1])))

spec = eig(H)
print("steady-state ergotropy:", ergotropy(rho_ss, spec), "(band width 2t = 2)")

# Start from the discharged antisymmetric state and watch it charge.
times = np.linspace(0, 8, 9)
traj = evolve(projector([1, -1]), H, jumps, times)
for t, rho in zip(times, traj.states):
    print(f"t = {t:3.0f}   ergotropy = {ergotropy(rho, spec):.6f}")
