"""hflab: exact computation with finite hyperfields, quadratic form
schemes, Witt rings, and valuation-shaped subgroup detection."""

from .construct import (
    OrderedGroupHyperfield,
    ValueSetTable,
    group_extension,
    identity_morphism,
    krasner,
    ordered_group_hyperfield,
    prime,
    quotient,
    scheme_to_hyperfield,
    sub_hyperfield,
)
from .core import (
    AxiomReport,
    Hyperfield,
    Morphism,
    SquareClassSubgroup,
    check_axioms,
    classify_morphism,
    find_isomorphisms,
    fingerprint,
    generated_subgroup,
    is_morphism,
    is_quadratic,
    relabel,
    subgroup,
    validated,
)
from .fields import (
    FiniteFieldSpec,
    PadicOracleConfig,
    ValuationDescriptor,
    char2_criterion,
    ntd_arithmetic,
    q_2adic,
    q_finite_field,
    q_local,
    q_padic,
    square_class_hyperfield,
    v_q_2rank,
    v_q_membership,
)
from .formats import parse, parse_document, serialize
from .gauss import GaussValuation, Polynomial, gauss_extend, parse_rational
from .kernels import BACKEND as KERNEL_BACKEND
from .rigidity import (
    DecompositionReport,
    RigidityReport,
    basic_part,
    detect_valuation_subgroups,
    enumerate_subgroups,
    is_t_rigid,
    match_subgroups,
    rank_lower_bound,
    subgroup_count,
)
from .witt import (
    DiagonalForm,
    WittClass,
    WittRing,
    binary_equiv,
    chain_class,
    classes_equal,
    form,
    harrison_check,
    is_isotropic,
    value_set,
    witt_reduce,
    witt_ring,
)

__version__ = "0.1.0"
