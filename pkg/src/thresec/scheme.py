"""Threshold-secure encoding with a shared key.

The scheme matrix ``W`` (n x m) is the transpose of a code generator.  Rows
indexed by ``A`` carry the message, rows indexed by ``A_c`` carry the
key, and the codeword is ``c = message @ W[A] + key @ W[A_c]``.

Indices are 0-based.  Security statements about a scheme assume message
and key symbols are independent and uniform over the field; the encoder
cannot enforce that.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .codebook import DEFAULT_BUDGET, LinearCode, rm_row_split, verified
from .errors import (
    CapabilityError,
    InconsistentSystemError,
    IntegrityError,
    NonUniqueSolutionError,
    NotProper,
)
from .gf import Field
from .linalg import Matrix, rank, solve, vandermonde_inverse


@dataclass(frozen=True, eq=False)
class ThresholdScheme:
    code: LinearCode
    W: Matrix
    A: tuple
    A_c: tuple
    t: int
    message_rank: int
    key_rank: int
    warnings: tuple = ()
    rs_inverse: Matrix | None = dc_field(default=None, repr=False)

    @property
    def field(self) -> Field:
        return self.W.field

    @property
    def n(self) -> int:
        return self.W.rows

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def k(self) -> int:
        return len(self.A_c)

    @property
    def proper(self) -> bool:
        return self.message_rank == self.m and self.key_rank == self.k

    @property
    def W_A(self) -> Matrix:
        return self.W.select_rows(self.A)

    @property
    def W_Ac(self) -> Matrix:
        return self.W.select_rows(self.A_c)

    def assemble(self, message, key) -> np.ndarray:
        """u = pi(key, message): scatter message to A and key to A_c."""
        message, key = _check_lengths(self, message, key)
        shape = np.broadcast_shapes(message.shape[:-1], key.shape[:-1]) + (self.n,)
        u = np.zeros(shape, dtype=np.int64)
        u[..., list(self.A)] = message
        u[..., list(self.A_c)] = key
        return u

    def split(self, u):
        u = self.field.check(u)
        return u[..., list(self.A)], u[..., list(self.A_c)]

    def summary(self) -> dict:
        return {
            "code": self.code.describe(),
            "q": self.field.q,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "d_min": self.code.d_min,
            "d_min_source": self.code.d_min_source,
            "t": self.t,
            "proper": self.proper,
            "rank_W_A": self.message_rank,
            "rank_W_Ac": self.key_rank,
            "A": list(self.A),
            "A_c": list(self.A_c),
            "warnings": list(self.warnings),
        }


def default_layout(code: LinearCode) -> list[int]:
    """Message rows: first m for RS, kept RM rows for RM."""
    if code.family == "rs":
        return list(range(code.m))
    if code.family == "rm":
        return rm_row_split(code.s, code.r)[0]
    raise ValueError("generic codes have no default layout; pass A explicitly")


def build_scheme(code: LinearCode, A=None, *, strict: bool = True,
                 budget: int = DEFAULT_BUDGET) -> ThresholdScheme:
    """Certify an index assignment and return the scheme.

    With ``strict`` (the default) a scheme failing either full-row-rank
    condition raises :class:`NotProper`.  ``strict=False`` builds it anyway
    (used for negative controls and for RM layouts with k > m).

    The threshold is ``t = d_min - 1``; an unknown d_min is found by
    exhaustive search within ``budget``.
    """
    n, m = code.n, code.m
    A = default_layout(code) if A is None else [int(i) for i in A]
    if len(A) != m or len(set(A)) != m or any(not 0 <= i < n for i in A):
        raise ValueError(f"A must be {m} distinct indices in [0, {n})")
    A = sorted(A)
    A_set = set(A)
    A_c = [i for i in range(n) if i not in A_set]
    k = len(A_c)

    W = code.generator.T
    r_msg = rank(W.select_rows(A))
    r_key = rank(W.select_rows(A_c)) if k else 0
    if strict and r_msg < m:
        raise NotProper("message", r_msg, m)
    if strict and r_key < k:
        raise NotProper("key", r_key, k)

    if code.d_min is None:
        code = verified(code, budget)
    t = code.d_min - 1
    if t > k:
        raise AssertionError(f"t={t} exceeds k={k}; violates the Singleton bound")

    warnings = []
    if k >= m:
        warnings.append(f"k={k} >= m={m}: a one-time pad already gives t=m")
    if r_msg < m:
        warnings.append(f"not proper (message-side): rank(W_A)={r_msg} < {m}")
    if r_key < k:
        warnings.append(f"not proper (key-side): rank(W_Ac)={r_key} < {k}")

    rs_inv = None
    if code.family == "rs" and A == list(range(m)):
        # W_A[a][i] = x_a^i is the transpose of the Vandermonde matrix on x_0..x_{m-1}
        points = code.field.alpha_pow(np.arange(m))
        rs_inv = vandermonde_inverse(code.field, points).T

    return ThresholdScheme(
        code=code, W=W, A=tuple(A), A_c=tuple(A_c), t=t,
        message_rank=r_msg, key_rank=r_key, warnings=tuple(warnings),
        rs_inverse=rs_inv,
    )


def _check_lengths(scheme, message, key):
    f = scheme.field
    message = f.check(message)
    key = f.check(key)
    if message.shape[-1:] != (scheme.m,) and not (scheme.m == 0 and message.size == 0):
        raise ValueError(f"message length must be {scheme.m}")
    if key.shape[-1:] != (scheme.k,) and not (scheme.k == 0 and key.size == 0):
        raise ValueError(f"key length must be {scheme.k}")
    return message.reshape(message.shape[:-1] + (scheme.m,)), key.reshape(key.shape[:-1] + (scheme.k,))


def encode(scheme: ThresholdScheme, message, key) -> np.ndarray:
    """c = message @ W_A + key @ W_Ac.  Batches broadcast over leading axes."""
    message, key = _check_lengths(scheme, message, key)
    f = scheme.field
    return f.add(f.matmul(message, scheme.W_A.data), f.matmul(key, scheme.W_Ac.data))


def encode_u(scheme: ThresholdScheme, u) -> np.ndarray:
    """c = u @ W for the assembled input u."""
    return scheme.field.matmul(scheme.field.check(u), scheme.W.data)


def _key_offset(scheme, codeword, key):
    f = scheme.field
    c = f.check(codeword)
    if c.shape[-1] != scheme.W.cols:
        raise ValueError(f"codeword length must be {scheme.W.cols}")
    _, key = _check_lengths(scheme, np.zeros(scheme.m, dtype=np.int64), key)
    return f.sub(c, f.matmul(key, scheme.W_Ac.data))


def decode_generic(scheme: ThresholdScheme, codeword, key) -> np.ndarray:
    """Recover the message by Gaussian elimination on m @ W_A = c - key @ W_Ac.

    A wrong key is not detected: it yields some other message.

    Raises
    ------
    IntegrityError
        The codeword is not in the coset selected by ``key``.
    NotProper
        W_A is rank deficient, so the message is not unique.
    """
    target = _key_offset(scheme, codeword, key)
    try:
        return solve(scheme.W_A, target)
    except InconsistentSystemError as exc:
        raise IntegrityError("codeword is not a valid encoding under this key") from exc
    except NonUniqueSolutionError as exc:
        raise NotProper("message", exc.rank, scheme.m) from exc


def decode_rs_fast(scheme: ThresholdScheme, codeword, key) -> np.ndarray:
    """m = (c - key @ W_Ac) @ W_A^{-1} with the precomputed Vandermonde inverse."""
    if scheme.rs_inverse is None:
        raise CapabilityError(
            "fast decoding needs an RS scheme with the message on the first m rows; "
            "use decode_generic"
        )
    target = _key_offset(scheme, codeword, key)
    return scheme.field.matmul(target, scheme.rs_inverse.data)
