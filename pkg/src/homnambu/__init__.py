"""Exact computations for multiplicative n-ary Hom-Nambu-Lie superalgebras.

Structure constants are stored on canonical index tuples with rational
entries; every identity, kernel and cohomology dimension is computed exactly.
"""
from .axioms import AXIOMS, AxiomReport, check_identity, is_valid, verify
from .cohomology import (
    Cochain,
    CochainConstraint,
    def_coboundary_space,
    def_cocycle_space,
    def_cohomology_dim,
    delta0,
    delta1,
    delta_m,
    is_rigid,
)
from .constructions import (
    GradedSubspace,
    direct_sum,
    graph,
    graph_is_subalgebra_iff_morphism,
    is_ideal,
    is_morphism,
    is_subalgebra,
    yau_twist,
)
from .core import (
    AlgebraError,
    BracketTensor,
    HomNambuSuperalgebra,
    LinearMap,
    SuperSpace,
    WedgeBasis,
    WedgeElement,
    canonicalize_tuple,
    wedge_basis,
)
from .deformation import (
    DeformationReport,
    FormalAutomorphism,
    FormalDeformation,
    are_equivalent,
    check_deformation,
    formal_inverse,
    infinitesimal_class,
    pushforward,
    reduce_step,
    trivialize,
)
from .derivations import (
    DerivationSpace,
    InnerSpace,
    check_der_superalgebra,
    der_commutator,
    derivation_space,
    inner_derivation,
    inner_space,
)
from .io import parse_algebra_file, serialize_algebra
from .linalg import SubspaceBasis, contains, kernel_basis, quotient_dim, rank, solve_particular

__version__ = "0.1.0"
