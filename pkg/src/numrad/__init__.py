"""Numerical radius, numerical range and parallelism in finite-dimensional C*-algebras."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraElement,
    EigenDecomposition,
    adjoint,
    as_element,
    cartesian_parts,
    herm_eig,
    is_central,
    is_hermitian,
    is_normal,
    is_unitary,
    op_norm,
    spectral_radius,
)
from .ensembles import EnsembleSpec, generate
from .errors import (
    DimensionMismatch,
    InapplicableInput,
    NoConvergence,
    NotCentral,
    NotHermitian,
    NotUnitary,
    NumradError,
    ParseError,
    ShapeError,
    UnknownTag,
    UnsupportedFamilyDim,
)
from .inequalities import (
    CheckReport,
    check_basic_bounds,
    check_cor24,
    check_cor25,
    check_lemma210,
    check_thm23,
    check_thm28,
    check_thm29,
    check_thm211,
)
from .io import parse_element, serialize_element
from .numrange import (
    RangeSample,
    StateWitness,
    SweepResult,
    crawford,
    numerical_radius,
    numerical_radius_im,
    radius_alpha_beta,
    range_boundary,
    state_eval,
)
from .parallelism import (
    ParallelismCertificate,
    check_central_invariance,
    check_cor212,
    check_thm213_equivalence,
    norm_parallel,
    pure_state_witness,
    vradius_parallel,
)
from .suite import RunReport, run_suite
