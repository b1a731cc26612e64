"""Exact ground states of the SOS model with an external field on Cayley trees."""
from .energy import (
    EVEN_ODD,
    TRANSLATION_INVARIANT,
    AffineEnergy,
    BallPattern,
    EnergyCatalog,
    FieldSpec,
    ParameterPoint,
    ball_energy_numeric,
    ball_energy_symbolic,
    enumerate_ball_patterns,
    enumerate_energy_forms,
    hamiltonian_finite,
)
from .groundstate import (
    GroundStateReport,
    PeriodicConfiguration,
    ball_patterns_of,
    exhaustive_ground_check,
    ground_state_region,
    is_ground_state,
)
from .paper_tables import paper_catalog, paper_forms, paper_region_table
from .regions import (
    LinearConstraint,
    Region,
    argmin_region,
    contains_point,
    intersect,
    region_equal,
    region_subset,
    simplify,
)
from .words import FiniteTree, GroupWord, UnitBall, coset_class, left_shift, neighbors, reduce

__version__ = "0.1.0"
