"""Verlinde algebras of quantum groups at roots of unity.

Exact construction of the level-l Verlinde ring through anti-symmetric
characters on a finite torus, graded unitary representations loaded from
quiver data, quantum root systems, and the spectrum correspondence with
Coxeter exponents.  Floating point only ever appears in validated
rounding steps and numerical cross-checks; every record value is an
integer or a Fraction.
"""

__version__ = "0.1.0"

from .config import DEFAULT, Config
from .errors import (
    CapError,
    InputError,
    ValidationFailure,
    VerlindeError,
)
from .fusion import (
    FusionRing,
    build_fusion_ring,
    fusion_kacwalton,
    fusion_verlinde,
    weyl_character_at,
)
from .graphs import GradedQuiver, ade_graph, ring_quiver
from .gusrep import (
    USRep,
    check_quantum_dynkin,
    load_usrep,
    regular_rep,
    spectrum,
    validate,
)
from .intlat import FiniteAbelianGroup, IntMatrix, hnf, lattice_quotient, snf
from .lie import LieAlgebra, WeightSystem, WeylElement, build_algebra, weyl_group
from .rootspace import (
    QuantumRoot,
    RootSpaceData,
    ar_quiver,
    build_root_space,
    coxeter_exponent,
    exponent_multiplicities,
    multiplicity_mA,
    multiplicity_mA0,
    project_delta,
    quantum_root_system,
    root_inner,
    translate,
    translate_root,
)
from .torus import LevelData, TorusElement, build_level, pairing

__all__ = [
    "DEFAULT",
    "Config",
    "VerlindeError",
    "ValidationFailure",
    "CapError",
    "InputError",
    "IntMatrix",
    "FiniteAbelianGroup",
    "hnf",
    "snf",
    "lattice_quotient",
    "LieAlgebra",
    "WeightSystem",
    "WeylElement",
    "build_algebra",
    "weyl_group",
    "LevelData",
    "TorusElement",
    "build_level",
    "pairing",
    "FusionRing",
    "build_fusion_ring",
    "fusion_verlinde",
    "fusion_kacwalton",
    "weyl_character_at",
    "GradedQuiver",
    "ade_graph",
    "ring_quiver",
    "USRep",
    "load_usrep",
    "regular_rep",
    "validate",
    "spectrum",
    "check_quantum_dynkin",
    "QuantumRoot",
    "RootSpaceData",
    "build_root_space",
    "project_delta",
    "root_inner",
    "quantum_root_system",
    "translate",
    "translate_root",
    "multiplicity_mA",
    "multiplicity_mA0",
    "coxeter_exponent",
    "exponent_multiplicities",
    "ar_quiver",
]
