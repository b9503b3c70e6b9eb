"""Ground-state degeneracy counting for k-local spin Hamiltonians.

A qubit Hamiltonian is lifted to an operator-space Hamiltonian on ququart
sites; evolving the identity operator toward the ground space of the lift
and reading the vacuum overlap yields the ground-state degeneracy D of the
original model.  Backends: dense diagonalization (oracle), matrix-free
Lanczos, MPS power iteration, and imaginary time evolution.
"""

from .basis import OperatorBasis, build_basis, multiply_codes, structure_tensor
from .dense import (
    SpectrumReport,
    correspondence_check,
    count_degeneracy_dense,
    evolution_limit_check,
    full_spectrum,
    ground_projector,
    to_dense,
)
from .geometry import (
    count_classical_ground_configs,
    load_geometry,
    three_hexagon_edges,
    triangle_edges,
)
from .hamiltonian import (
    HamiltonianFormatError,
    HamiltonianSpec,
    PauliTerm,
    ResourceBudgetError,
    build_kitaev_hubbard,
    build_tfi,
    build_triangular_tfi,
    diagonal_spec,
    parse_hamiltonian,
    random_two_local,
    serialize_hamiltonian,
    shift_constant,
    simplify,
)
from .ite import (
    ItePath,
    IteSample,
    convergence_curves,
    count_degeneracy_ite,
    ite_evolve,
    qite_overlap_check,
)
from .lanczos import (
    LanczosConfig,
    LanczosResult,
    apply_hamiltonian,
    count_degeneracy_lanczos,
    lanczos_ground,
    make_applier,
)
from .lift import (
    DegeneracyResult,
    StateVector,
    decode_state,
    degeneracy_from_overlap,
    encode_operator,
    lift,
    lifted_site_ops,
    vacuum_state,
)
from .mps import (
    EvolutionFailure,
    MPOOperator,
    MPSState,
    PowerConfig,
    PowerRunResult,
    apply_and_truncate,
    count_degeneracy_mps,
    degeneracy_readout_mps,
    expectation,
    identity_product_mps,
    mpo_from_spec,
    pinned_magnetization,
    power_iterate,
    product_mps,
    resolution_experiment,
)
from .verify import CheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "DegeneracyResult",
    "EvolutionFailure",
    "HamiltonianFormatError",
    "HamiltonianSpec",
    "ItePath",
    "IteSample",
    "LanczosConfig",
    "LanczosResult",
    "MPOOperator",
    "MPSState",
    "OperatorBasis",
    "PauliTerm",
    "PowerConfig",
    "PowerRunResult",
    "ResourceBudgetError",
    "SpectrumReport",
    "StateVector",
    "apply_and_truncate",
    "apply_hamiltonian",
    "build_basis",
    "build_kitaev_hubbard",
    "build_tfi",
    "build_triangular_tfi",
    "convergence_curves",
    "correspondence_check",
    "count_classical_ground_configs",
    "count_degeneracy_dense",
    "count_degeneracy_ite",
    "count_degeneracy_lanczos",
    "count_degeneracy_mps",
    "decode_state",
    "degeneracy_from_overlap",
    "degeneracy_readout_mps",
    "diagonal_spec",
    "encode_operator",
    "evolution_limit_check",
    "expectation",
    "full_spectrum",
    "ground_projector",
    "identity_product_mps",
    "ite_evolve",
    "lanczos_ground",
    "lift",
    "lifted_site_ops",
    "load_geometry",
    "make_applier",
    "mpo_from_spec",
    "multiply_codes",
    "parse_hamiltonian",
    "pinned_magnetization",
    "power_iterate",
    "product_mps",
    "qite_overlap_check",
    "random_two_local",
    "resolution_experiment",
    "run_all",
    "serialize_hamiltonian",
    "shift_constant",
    "simplify",
    "structure_tensor",
    "three_hexagon_edges",
    "to_dense",
    "triangle_edges",
    "vacuum_state",
]
