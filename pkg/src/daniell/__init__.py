"""Exact product Daniell integrals on finite-domain and step-function spaces."""
from .closure import (
    Approximation,
    Leaf,
    Limit,
    SqrtPolynomial,
    abs_certificate,
    abs_tree,
    chain_depth,
    constant_certificate,
    evaluate,
    extended_integral,
    lemma1_certificate,
    lemma6_abs_certificate,
    sqrt_iterates,
    sqrt_polynomial,
    tree_scale,
    tree_sum,
)
from .errors import (
    ConvergenceFailure,
    DaniellError,
    DomainMismatchError,
    FubiniDiscrepancyError,
    InsufficientSamplesError,
    InvalidBoundError,
    InvalidCertificateError,
    InvalidLevelError,
    MalformedInputError,
    ScenarioError,
)
from .finite import (
    DominatorWitness,
    FiniteFunction,
    FiniteGrid,
    SubspaceBasis,
    WeightedIntegral,
    integrate,
    p_closure_membership,
    riesz_closure_samples,
)
from .grid import GridFunction
from .product import (
    ProductIntegral,
    cellwise_integral,
    iterated_integral,
    partial_integral,
    product_integral,
    section,
    theorem1_residual,
)
from .rational import format_rational, parse_rational
from .riesz import AxiomReport, check_integral_axioms, derive_lattice_ops
from .step import (
    ElementaryIntegral1D,
    StepFunction1D,
    canonicalize,
    closed_form,
    combine,
    elementary_integral,
    lemma1_sequence,
    stationarity_index,
)
from .tensor import (
    CellPartition,
    Lemma6Approximation,
    TensorElement,
    check_lemma6_bounds,
    flatten,
    indicator_identity,
    lemma6_approximation,
    lemma6_dominator,
    riesz_closure_corpus,
)

__version__ = "0.1.0"
