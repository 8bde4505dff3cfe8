"""Bond-dissipative and dephasing Lindblad dynamics in the one-particle sector."""
from .dynamics import DENSE_PROPAGATOR_MAX, Trajectory, evolve
from .jumps import (
    JumpOperator,
    bond_factors,
    bond_jump,
    bond_jumps,
    dephasing_jump,
    dephasing_jumps,
    effective_rate,
)
from .liouvillian import LiouvillianMatrix, build_liouvillian, make_rhs, rhs
from .steady import DENSE_STEADY_MAX, relax, steady_state

__all__ = [
    "DENSE_PROPAGATOR_MAX",
    "DENSE_STEADY_MAX",
    "JumpOperator",
    "LiouvillianMatrix",
    "Trajectory",
    "bond_factors",
    "bond_jump",
    "bond_jumps",
    "build_liouvillian",
    "dephasing_jump",
    "dephasing_jumps",
    "effective_rate",
    "evolve",
    "make_rhs",
    "relax",
    "rhs",
    "steady_state",
]
