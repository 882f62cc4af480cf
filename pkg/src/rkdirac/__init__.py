"""Transfer and Koopman operators on the dyadic shift: Haar analysis, ladder
algebra, and Dirac commutator norms on finite-depth cylinder function spaces."""

from .words import (
    EPS0,
    EPS1,
    EPSILON,
    MAX_LEN,
    Word,
    all_words,
    index_word,
    is_prefix,
    prepend,
    shift,
    word_index,
    words_up_to,
)
from .dyadic import (
    DyadicFunction,
    HaarCoeffs,
    MAX_DEPTH,
    constant,
    from_haar,
    haar_function,
    indicator,
    inner,
    is_close,
    l2_dist,
    l2_norm,
    normalized,
    pointwise_mul,
    random_function,
    refine,
    state_n,
    state_nw,
    sup_norm,
    to_haar,
)
from .transfer import (
    Adjoint,
    AssembledMap,
    CondExp,
    Compose,
    KernelProj,
    Koopman,
    Mult,
    OperatorSpec,
    Proj,
    Ruelle,
    Sum,
    adjoint_check,
    assemble,
    commutator_with_K,
    commutator_with_L,
    cond_expectation,
    coords,
    dirac_blocks,
    identity,
    kernel_projection,
    koopman_apply,
    mult_apply,
    projection_apply,
    ruelle_apply,
    scaled,
)
from .spectra import NormEstimate, SweepPoint, depth_sweep, operator_norm
from .dirac import (
    BlockCommutator,
    VectorState,
    attainment_depth,
    block_norm,
    block_norms,
    connes_lower_bound,
    dirac_commutator,
    dirac_matrix,
    lipschitz_certify,
    self_adjoint_block_equality,
)
from .boson import (
    LadderConfig,
    annihilation,
    car_anticommutator,
    ccr_defect,
    chain_shift_check,
    creation,
    number_apply,
)
from . import formulas, io

__version__ = "0.1.0"
