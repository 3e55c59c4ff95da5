"""Threshold-secure coding with a shared key."""

from .audit import (
    AuditReport,
    audit_eve_equivocation,
    audit_key_reuse,
    audit_key_security,
    audit_reliability,
    audit_threshold,
    audit_threshold_maximality,
    run_audit,
)
from .codebook import LinearCode, from_matrix, make_rm, make_rs, min_distance_bruteforce, verified
from .errors import (
    BudgetExceeded,
    CapabilityError,
    DecodingFailure,
    FieldMismatchError,
    IntegrityError,
    NotProper,
    ThresecError,
)
from .gf import Field, get_field
from .linalg import Matrix
from .rm_sc import decode_sc, embed_erasures, sc_decode
from .robust import (
    ConcatScheme,
    UnifiedRmScheme,
    build_concat,
    build_gtilde,
    build_unified,
    concat_decode,
    concat_encode,
    dec_be,
    decode_unified,
    unified_encode,
)
from .scheme import ThresholdScheme, build_scheme, decode_generic, decode_rs_fast, encode
from .symbols import ERASURE, ErasureWord

__version__ = "0.1.0"
