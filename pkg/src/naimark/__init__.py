"""Generalized Naimark complements for finite frames and fusion frames."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DegenerateInput,
    InvalidInput,
    NaimarkError,
    NotAFrame,
    NotIsometric,
    NotUnitNorm,
    PadBoundTooSmall,
    ParseError,
    ScalingDegenerate,
    TooLarge,
)
from .numkernel import (  # noqa: E402
    EigResult,
    complete_orthonormal_rows,
    hermitian_eigendecomposition,
    singular_value_decomposition,
)
from .frames import Classification, SpectralData, classify, frame_operator, gram, spectral  # noqa: E402
from .completion import CompletionResult, check_rows_vs_eigs, complete_to_tight  # noqa: E402
from .complement import (  # noqa: E402
    ComplementBounds,
    NaimarkResult,
    VerificationReport,
    complement_bounds,
    naimark_complement,
    unitary_equivalence,
    verify_complement,
    verify_pair,
)
from .properties import (  # noqa: E402
    RipReport,
    cross_gram_negation,
    rip_complement_check,
    rip_constant,
    subset_carryover,
)
from .fusion import (  # noqa: E402
    FusionFrame,
    PrincipalAngles,
    chordal_complement_check,
    chordal_distance,
    fusion_naimark,
    fusion_operator,
    fusion_to_frame,
    fusion_unitary_equivalence,
    predicted_complement_angles,
    principal_angles,
)
