"""Norms, factorizations and duality certificates for the four operator
interpretations of a complex matrix: vector map, bilinear form, Schur
multiplier, and mixed bilinear map."""

from .core import (
    ComplexMatrix,
    ComplexVector,
    apply_bform,
    apply_fmap,
    apply_gmap,
    apply_tmap,
    as_matrix,
    as_vector,
    col_embed,
    col_norm,
    diag_embed,
    hs_norm,
    ones_vector,
    op_norm,
    pairing,
    row_embed,
    row_norm,
    schur_product,
)
from .duality import (
    BallKind,
    MembershipReport,
    PolarReport,
    RatioReport,
    amplification_witness,
    grothendieck_ratio,
    membership,
    pairing_identity_check,
    polar_check,
)
from .factor import (
    Factorization,
    FactorizationError,
    bilinear_factor,
    fx_factor,
    gx_factor,
    rank_reduce,
    scale_split,
    schur_factor,
    tx_factor,
)
from .norms import (
    CrossValidationError,
    NormCertificate,
    SearchConfig,
    bx_cb,
    bx_norm,
    cb_norm,
    classical_norm,
    fx_cb,
    fx_norm,
    gamma2,
    gx_cb,
    gx_norm,
    schur_norm_lb,
    tx_cb,
    tx_norm,
)
from .sdp import (
    IndefiniteError,
    NonHermitianError,
    SdpError,
    SdpProblem,
    SdpSolution,
    herm_eig,
    numerical_rank,
    psd_factor,
    solve,
)

__version__ = "0.1.0"
