"""Successive-cancellation decoding for the Reed-Muller scheme.

For the RM layout the scheme matrix is ``W = F[:, A]`` with
``F = F2^{⊗s}``, so the codeword is ``x = u @ F`` observed only on ``A``.
The decoder re-inserts the key positions as erasures and walks the
Kronecker tree: the right half is decoded first, re-encoded and cancelled
from the left half, then the left half is decoded.  Recursive calls carry
global index ranges, so key lookups use the original u-indices.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from . import instrument
from .codebook import rm_row_split
from .errors import CapabilityError
from .scheme import ThresholdScheme
from .symbols import ERASURE, ErasureWord, exor


def embed_erasures(scheme: ThresholdScheme, codeword) -> ErasureWord:
    """Length-n word: codeword bits at A (in order), ERASURE at A_c."""
    c = np.asarray(codeword, dtype=np.int64)
    if c.shape[-1] != scheme.m:
        raise ValueError(f"codeword length must be {scheme.m}")
    z = np.full(c.shape[:-1] + (scheme.n,), ERASURE, dtype=np.int64)
    z[..., list(scheme.A)] = c
    return ErasureWord(z)


def _key_matrix(key, A_c, batch):
    if isinstance(key, Mapping):
        if set(int(i) for i in key) != set(A_c):
            raise ValueError("key map domain must equal A_c")
        vals = np.array([[key[i] for i in A_c]], dtype=np.int64).reshape(1, len(A_c))
    else:
        vals = np.asarray(key, dtype=np.int64)
        vals = vals.reshape((1, len(A_c)) if vals.ndim <= 1 else vals.shape)
    if vals.shape[-1] != len(A_c):
        raise ValueError(f"expected {len(A_c)} key bits")
    if vals.size and (vals.min() < 0 or vals.max() > 1):
        raise ValueError("key bits must be 0 or 1")
    return np.broadcast_to(vals, (batch, len(A_c)))


def _sc(z, u, lo):
    n = z.shape[1]
    if n == 1:
        u[:, lo] = np.where(z[:, 0] == ERASURE, u[:, lo], z[:, 0])
        return u[:, lo:lo + 1].copy()
    if n == 2:
        z1, z2 = z[:, 0], z[:, 1]
        u2 = np.where(z2 == ERASURE, u[:, lo + 1], z2)
        u1 = np.where(z1 == ERASURE, u[:, lo], u2 ^ np.maximum(z1, 0))
        u[:, lo + 1] = u2
        u[:, lo] = u1
        instrument.tally("xor", 2 * z.shape[0])
        return np.stack([u1 ^ u2, u2], axis=1)
    half = n // 2
    h_right = _sc(z[:, half:], u, lo + half)
    zbar = exor(h_right, z[:, :half])
    h_left = _sc(zbar, u, lo)
    instrument.tally("xor", n * z.shape[0])
    return np.concatenate([h_left ^ h_right, h_right], axis=1)


def rm_transform(u) -> np.ndarray:
    """x = u @ F2^{⊗s} over GF(2) by butterflies, for u of length 2^s (batched)."""
    x = np.array(u, dtype=np.int64, copy=True)
    n = x.shape[-1]
    if n < 1 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    span = n // 2
    while span:
        view = x.reshape(x.shape[:-1] + (n // (2 * span), 2, span))
        view[..., 0, :] ^= view[..., 1, :]
        span //= 2
    return x


def sc_decode(key, z, A_c):
    """Recover ``u`` (and its re-encoding ``h = u @ F``) from an embedded word.

    Parameters
    ----------
    key : Mapping or array_like
        Either a map from u-index in ``A_c`` to key bit, or the key bits in
        ascending ``A_c`` order (shape ``(k,)`` or ``(batch, k)``).
    z : ErasureWord or array_like
        Output of :func:`embed_erasures`; shape ``(n,)`` or ``(batch, n)``.
    A_c : iterable of int
        Key indices; must coincide with the erased positions of ``z``.

    Returns
    -------
    h, u : ndarray
        Same leading shape as ``z``.
    """
    zz = z.symbols if isinstance(z, ErasureWord) else np.asarray(z, dtype=np.int64)
    single = zz.ndim == 1
    zz = np.atleast_2d(zz)
    batch, n = zz.shape
    if n < 1 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    A_c = sorted(int(i) for i in A_c)
    mask = np.zeros(n, dtype=bool)
    mask[A_c] = True
    if not np.array_equal(zz == ERASURE, np.broadcast_to(mask, zz.shape)):
        raise ValueError("erasure positions do not match A_c")
    u = np.zeros((batch, n), dtype=np.int64)
    u[:, A_c] = _key_matrix(key, A_c, batch)
    h = _sc(zz, u, 0)
    if single:
        return h[0], u[0]
    return h, u


def decode_sc(scheme: ThresholdScheme, codeword, key) -> np.ndarray:
    """Message from a codeword of the default RM scheme via SC decoding."""
    code = scheme.code
    if code.family != "rm" or list(scheme.A) != rm_row_split(code.s, code.r)[0]:
        raise CapabilityError("SC decoding needs an RM scheme with the default layout")
    z = embed_erasures(scheme, codeword)
    _, u = sc_decode(key, z, scheme.A_c)
    return u[..., list(scheme.A)]
