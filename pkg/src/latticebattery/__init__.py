"""Dissipative charging of tight-binding quantum batteries.

Submodules
----------
lattice       chain and honeycomb tight-binding Hamiltonians, disorder, eigensolver
dissipation   bond and dephasing jump operators, Liouvillian, dynamics, steady states
workmetrics   ergotropy, passive and Gibbs states, work bound, charging power
collision     qubit repeated-interaction charging model
scenarios     disorder-averaged campaigns, output writers and the command line
"""
__version__ = "0.1.0"

from . import collision, dissipation, lattice, workmetrics  # noqa: E402
from .dissipation import (  # noqa: E402
    bond_jump,
    bond_jumps,
    build_liouvillian,
    dephasing_jump,
    dephasing_jumps,
    effective_rate,
    evolve,
    rhs,
    steady_state,
)
from .errors import (  # noqa: E402
    BracketError,
    InvalidArgumentError,
    InvalidSpecError,
    InvalidStateError,
    LatticeBatteryError,
    NonUniqueSteadyStateError,
    NotConvergedError,
)
from .lattice import LatticeSpec, add_disorder, build_chain, build_honeycomb, build_lattice, eig  # noqa: E402
from .workmetrics import (  # noqa: E402
    charging_power,
    entropy_matched_beta,
    ergotropy,
    ergotropy_report,
    gibbs_state,
    occupations,
    passive_state,
    von_neumann_entropy,
    w_bound,
)
