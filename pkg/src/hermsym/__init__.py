"""Jordan-pair computations on compact Hermitian symmetric spaces.

Moment maps in Bergman-operator form, the multiplicity-free decomposition of
the sections of the ample generator, and the Okounkov body of that bundle.
"""

__version__ = "0.1.0"

from .branching import KType, KTypeTable, decompose, integral_points, ktype_dimension
from .jordan import JordanModel, RectModel, SpinModel, parse_model
from .lie import MarkedParabolic, RootSystem, Weight, build_marked_parabolic, root_system, weyl_dimension
from .moment import (
    MomentValue,
    PairPoint,
    gamma_operator,
    moment_chart,
    moment_general,
    moment_normal_form,
    moment_polytope,
    moment_spectral,
    moment_to_weight,
    same_fibre,
)
from .okounkov import (
    build_section_space,
    highest_weight_vector,
    invlex_min,
    monomial_weight,
    okounkov_pipeline,
    raising_action,
    trivialize_fk,
    valuation,
)
from .polynomial import ExponentPolynomial
from .structure import frame_from_parabolic, rank, spectral_decomposition
