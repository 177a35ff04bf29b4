"""Exact-arithmetic workbench for affine Kac-Moody algebras.

Builds finite and untwisted affine algebras from Cartan matrices over
exact rationals, constructs highest-weight functionals for the integrable,
elementary and exceptional families, and decides positivity of the
contravariant Hermitian form blockwise with exact verdicts.
"""

from ._ground import GROUND, Q
from .cartan import CartanClass, GCM, catalog_matrix, classify, principal_minors, symmetrize, validate_gcm
from .errors import KmxError, RejectionError, ResourceError
from .finite_lie import (
    DiagramAutomorphism,
    FiniteAlgebra,
    HermitianSplit,
    build_algebra,
    fundamental_weights_finite,
    generate_roots,
    hermitian_split_su_n1,
    matrix_realization,
)
from .affine import (
    AffineAlgebra,
    LoopElement,
    TwistedDecomposition,
    Weight,
    affinize,
    delta_and_lambda0,
    fundamental_weights_affine,
    in_exceptional_parabolic,
    in_natural_parabolic,
    in_standard_borel,
    twisted_decomposition,
)
from .scalars import GaussianRational, Scalar, scalar_from_json, scalar_to_json
from .verma import (
    FormContext,
    GramBlock,
    Verdict,
    apply_omega,
    form_value,
    gram_block,
    kernel_basis,
    psd_verdict,
    raise_once,
)
from .reps import (
    ConsistencyResult,
    ElementarySpec,
    IntegrableWeight,
    MomentSequence,
    UnitarityReport,
    consistency_check,
    elementary_functional,
    exceptional_functional,
    highest_weight_functional,
    integrable_functional,
    validate_moments,
    verify_unitarity,
)

__version__ = "0.1.0"
