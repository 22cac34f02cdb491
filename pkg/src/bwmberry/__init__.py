"""Numerical toolkit for a rank-3 braid/Temperley-Lieb representation.

The package constructs the two-generator representation, Yang-Baxterizes
it into a velocity family of unitaries, builds the periodically driven
three-level Hamiltonian the family induces, and computes the geometric
phases of its eigenvalue branches both in closed form and by
gauge-invariant Wilson-loop products.
"""

from .algebra import (
    GOLDEN_RATIO,
    AlgebraParams,
    RelationCheck,
    RelationReport,
    check_braid,
    check_bwm_suite,
    check_tla,
    d_of_q,
    d_topological,
    make_a,
    make_b,
    make_ea,
    make_eb,
    make_u,
)
from .berry import (
    SECTION_D_VALUES,
    BerryResult,
    berry_closed,
    berry_wilson_loop,
    figure_data,
    loop_eigenframes,
    pancharatnam_phase,
    solid_angle,
)
from .errors import (
    BwmBerryError,
    ConfigError,
    DegenerateSpectrum,
    DegenerateZeta,
    DomainError,
    InvalidParam,
    NoConvergence,
    NonUnimodular,
    NotHermitian,
    PoleEncountered,
    SingularMatrix,
)
from .matrices import EigenSystem, dagger, frobenius, hermitian_eigs, inverse, rel_residual
from .spin import (
    DriveParams,
    GellMannBasis,
    SpinTriple,
    b_of_phi,
    cos_alpha,
    decomposition_residual,
    gell_mann_basis,
    hamiltonian,
    hamiltonian_stack,
    ladder_ops,
)
from .yangbaxter import (
    SpectralParams,
    UnitaryRPair,
    make_r_theta,
    make_r_u,
    theta_of_u,
    velocity_add,
    ybe_residual,
    z_of_u,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraParams",
    "BerryResult",
    "BwmBerryError",
    "ConfigError",
    "DegenerateSpectrum",
    "DegenerateZeta",
    "DomainError",
    "DriveParams",
    "EigenSystem",
    "GOLDEN_RATIO",
    "GellMannBasis",
    "InvalidParam",
    "NoConvergence",
    "NonUnimodular",
    "NotHermitian",
    "PoleEncountered",
    "RelationCheck",
    "RelationReport",
    "SECTION_D_VALUES",
    "SingularMatrix",
    "SpectralParams",
    "SpinTriple",
    "UnitaryRPair",
    "b_of_phi",
    "berry_closed",
    "berry_wilson_loop",
    "check_braid",
    "check_bwm_suite",
    "check_tla",
    "cos_alpha",
    "d_of_q",
    "d_topological",
    "dagger",
    "decomposition_residual",
    "figure_data",
    "frobenius",
    "gell_mann_basis",
    "hamiltonian",
    "hamiltonian_stack",
    "hermitian_eigs",
    "inverse",
    "ladder_ops",
    "loop_eigenframes",
    "make_a",
    "make_b",
    "make_ea",
    "make_eb",
    "make_r_theta",
    "make_r_u",
    "make_u",
    "pancharatnam_phase",
    "rel_residual",
    "solid_angle",
    "theta_of_u",
    "velocity_add",
    "ybe_residual",
    "z_of_u",
]
