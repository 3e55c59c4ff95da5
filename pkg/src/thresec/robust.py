"""Threshold-secure coding over noisy Alice-Bob channels.

Two constructions:

* concatenation: outer threshold scheme ``W`` followed by an inner
  ``[N, m, D_min]`` code ``G_r``, so ``c = u @ W @ G_r``;
* unified Reed-Muller: ``c = u @ G(s,r)^T @ G(s,r)`` decoded for erasures by
  a single successive-cancellation pass.

Generator rows follow the Kronecker order of (F2^{⊗s})^T.  In that order
the product matrix satisfies

    Gt(s, r) = [[Gt(s-1, r), Gt(s-1, r)              ],
                [Gt(s-1, r), Gt(s-1, r) + Gt(s-1, r-1)]]

which is the reversed-index image of the usual Plotkin-ordered recursion.
Consequently the erasure decoder handles the second half of ``u`` (the
RM(s-1, r-1) part) first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import instrument
from .codebook import DEFAULT_BUDGET, LinearCode, make_rm, rm_row_split, verified
from .errors import CapabilityError, DecodingFailure, FieldMismatchError, InconsistentSystemError
from .gf import get_field
from .linalg import Matrix, kron_power, rank, solve
from .scheme import ThresholdScheme, build_scheme, decode_generic, encode
from .symbols import ERASURE, ErasureWord, erasure_count, exor

NEAREST_BUDGET = 1 << 20


@dataclass(frozen=True, eq=False)
class NoisyWord(ErasureWord):
    """Received word; ``tau`` is the number of symbol errors the channel injected."""

    tau: int = 0


# -- channels ---------------------------------------------------------------


def bec_transmit(codeword, epsilon: float, seed) -> NoisyWord:
    """Erase each symbol independently with probability ``epsilon``."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    c = np.asarray(codeword, dtype=np.int64)
    rng = np.random.default_rng(seed)
    erased = rng.random(c.shape) < epsilon
    return NoisyWord(np.where(erased, ERASURE, c))


def erase_positions(codeword, positions) -> NoisyWord:
    c = np.array(codeword, dtype=np.int64, copy=True)
    c[..., list(positions)] = ERASURE
    return NoisyWord(c)


def inject_errors(codeword, positions, field, seed=0, erasures=()) -> NoisyWord:
    """Replace the symbols at ``positions`` by different random field values."""
    c = np.array(codeword, dtype=np.int64, copy=True)
    rng = np.random.default_rng(seed)
    for p in positions:
        c[p] = field.add(int(c[p]), int(rng.integers(1, field.q)))
    c[list(erasures)] = ERASURE
    return NoisyWord(c, tau=len(positions))


def channel_from_spec(spec: dict):
    """Callable ``(codeword, trial) -> NoisyWord`` from a channel spec.

    ``{"type": "bec", "epsilon": 0.25, "seed": 7}`` erases with trial seed
    ``seed + trial``; ``{"type": "pattern", "erasures": [3, 9]}`` always
    erases the listed positions.
    """
    kind = spec.get("type")
    if kind == "bec":
        eps = float(spec["epsilon"])
        seed = int(spec.get("seed", 0))
        return lambda c, trial: bec_transmit(c, eps, seed + trial)
    if kind == "pattern":
        pos = [int(p) for p in spec.get("erasures", [])]
        return lambda c, trial: erase_positions(c, pos)
    raise ValueError(f"unknown channel type {kind!r}")


# -- concatenated scheme ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConcatScheme:
    outer: ThresholdScheme
    inner: LinearCode

    @property
    def field(self):
        return self.outer.field

    @property
    def n(self):
        return self.outer.n

    @property
    def m(self):
        return self.outer.m

    @property
    def k(self):
        return self.outer.k

    @property
    def A(self):
        return self.outer.A

    @property
    def A_c(self):
        return self.outer.A_c

    @property
    def t(self):
        return self.outer.t

    @property
    def N(self):
        return self.inner.n

    @property
    def D_min(self):
        return self.inner.d_min

    @property
    def W(self) -> Matrix:
        """Composed n x N map u -> c."""
        return self.outer.W @ self.inner.generator

    def summary(self) -> dict:
        out = self.outer.summary()
        out.update(inner=self.inner.describe(), N=self.N, D_min=self.D_min)
        return out


def build_concat(outer: ThresholdScheme, inner: LinearCode, budget: int = DEFAULT_BUDGET) -> ConcatScheme:
    if inner.field != outer.field:
        raise FieldMismatchError("outer and inner codes must share a field")
    if inner.m != outer.W.cols:
        raise ValueError(f"inner dimension {inner.m} != outer codeword length {outer.W.cols}")
    if inner.d_min is None:
        inner = verified(inner, budget)
    return ConcatScheme(outer, inner)


def concat_rank_certificate(cs: ConcatScheme) -> dict:
    """Ranks that keep the outer guarantees after the inner encoder.

    ``min_rank_B_complement`` is the smallest rank of ``W[B^c] @ G_r`` over
    every index set B of size t.
    """
    from itertools import combinations

    W = cs.outer.W
    G = cs.inner.generator
    n = cs.n
    worst = cs.m
    for B in combinations(range(n), cs.t):
        Bc = [i for i in range(n) if i not in B]
        worst = min(worst, rank(W.select_rows(Bc) @ G))
    return {
        "rank_W_G": rank(W @ G),
        "rank_W_A_G": rank(W.select_rows(cs.A) @ G),
        "rank_W_Ac_G": rank(W.select_rows(cs.A_c) @ G) if cs.k else 0,
        "min_rank_B_complement": worst,
        "m": cs.m,
        "k": cs.k,
    }


def concat_encode(cs: ConcatScheme, message, key) -> np.ndarray:
    """c = (message @ W_A + key @ W_Ac) @ G_r."""
    return cs.field.matmul(encode(cs.outer, message, key), cs.inner.generator.data)


def _inner_decode(cs: ConcatScheme, y: np.ndarray, budget: int) -> np.ndarray:
    field = cs.field
    G = cs.inner.generator
    D = cs.D_min
    kept = np.flatnonzero(y != ERASURE)
    rho = len(y) - len(kept)
    if rho > D - 1:
        raise DecodingFailure(f"{rho} erasures exceed D_min - 1 = {D - 1}")
    Gk = G.select_cols(kept)
    if rank(Gk) < cs.m:
        raise DecodingFailure("surviving positions do not determine the inner message")
    try:
        return solve(Gk, y[kept])
    except InconsistentSystemError:
        pass
    q, m = field.q, cs.m
    if q ** m > budget:
        raise CapabilityError(
            f"error correction enumerates q^m = {q ** m} words; budget is {budget}"
        )
    powers = q ** np.arange(m, dtype=np.int64)
    msgs = (np.arange(q ** m, dtype=np.int64)[:, None] // powers) % q
    words = field.matmul(msgs, Gk.data)
    dist = np.count_nonzero(words != y[kept], axis=1)
    best = int(dist.min())
    if 2 * best + rho > D - 1:
        raise DecodingFailure(f"2*{best} errors + {rho} erasures exceed D_min - 1 = {D - 1}")
    winners = np.flatnonzero(dist == best)
    if winners.size != 1:
        raise DecodingFailure("nearest codeword is not unique")
    return msgs[winners[0]]


def concat_decode(cs: ConcatScheme, received, key, budget: int = NEAREST_BUDGET) -> np.ndarray:
    """Inner decode (erasures by linear solve, errors by exhaustive nearest
    codeword) then outer :func:`decode_generic`.

    Raises :class:`DecodingFailure` when ``2*tau + rho > D_min - 1`` is
    detected, :class:`CapabilityError` when errors are present and q^m
    exceeds ``budget``.
    """
    y = received.symbols if isinstance(received, ErasureWord) else np.asarray(received, dtype=np.int64)
    if y.shape != (cs.N,):
        raise ValueError(f"received word must have length {cs.N}")
    c_tilde = _inner_decode(cs, y, budget)
    return decode_generic(cs.outer, c_tilde, key)


# -- unified RM scheme -------------------------------------------------------


def _f2():
    return get_field(2)


@lru_cache(maxsize=None)
def _gtilde_cached(s: int, r: int) -> Matrix:
    if r == 0:
        return Matrix(_f2(), np.ones((1 << s, 1 << s), dtype=np.int64))
    if r == s:
        return kron_power(Matrix(_f2(), [[1, 1], [1, 0]]), s)
    a = _gtilde_cached(s - 1, r).data
    b = _gtilde_cached(s - 1, r - 1).data
    return Matrix(_f2(), np.block([[a, a], [a, a ^ b]]))


def build_gtilde(s: int, r: int) -> Matrix:
    """G(s,r)^T G(s,r) built by block recursion.

    Bottoms out at the all-ones repetition product (r = 0) and at the
    full-code product (F2 F2^T)^{⊗s} (r = s).
    """
    if not 0 <= r <= s:
        raise ValueError(f"need 0 <= r <= s, got s={s}, r={r}")
    return _gtilde_cached(s, r)


def gtilde_direct(s: int, r: int) -> Matrix:
    G = make_rm(s, r).generator
    return G.T @ G


def _apply_gtilde(u: np.ndarray, s: int, r: int) -> np.ndarray:
    """u @ Gt(s, r) for a batch of binary rows, in O(n log n) per row."""
    r = min(r, s)
    if r == 0:
        parity = np.bitwise_xor.reduce(u, axis=1)
        instrument.tally("xor", u.size)
        return np.repeat(parity[:, None], u.shape[1], axis=1)
    half = u.shape[1] // 2
    u1, u2 = u[:, :half], u[:, half:]
    a = _apply_gtilde(u1 ^ u2, s - 1, r)
    b = _apply_gtilde(u2, s - 1, r - 1)
    instrument.tally("xor", u.size)
    return np.concatenate([a, a ^ b], axis=1)


@dataclass(frozen=True, eq=False)
class UnifiedRmScheme:
    base: ThresholdScheme
    gtilde: Matrix
    s: int
    r: int

    @property
    def field(self):
        return self.base.field

    @property
    def n(self):
        return self.base.n

    @property
    def m(self):
        return self.base.m

    @property
    def k(self):
        return self.base.k

    @property
    def A(self):
        return self.base.A

    @property
    def A_c(self):
        return self.base.A_c

    @property
    def t(self):
        return (1 << (self.s - self.r)) - 1

    @property
    def D_min(self):
        return 1 << (self.s - self.r)

    @property
    def W(self) -> Matrix:
        return self.gtilde

    def summary(self) -> dict:
        out = self.base.summary()
        out.update(mode="unified-rm", D_min=self.D_min)
        return out


def build_unified(s: int, r: int) -> UnifiedRmScheme:
    """Unified scheme on RM(s, r) with the default RM index layout.

    Built without the strict proper-ness check so that low-rate layouts
    (k > m, e.g. the repetition case r = 0) remain available; the base
    scheme's warnings record any deficiency.
    """
    base = build_scheme(make_rm(s, r), strict=False)
    return UnifiedRmScheme(base=base, gtilde=build_gtilde(s, r), s=s, r=r)


def unified_encode(us: UnifiedRmScheme, message, key) -> np.ndarray:
    """c = u @ Gt(s, r) with u the assembled (message, key) input."""
    u = us.base.assemble(message, key)
    single = u.ndim == 1
    c = _apply_gtilde(np.atleast_2d(u), us.s, us.r)
    return c[0] if single else c


def _dec_be(y, u, keymask, lo, s, r):
    r = min(r, s)
    batch, n = y.shape
    if r == 0:
        ok = y != ERASURE
        if not ok.any(axis=1).all():
            raise DecodingFailure("every symbol of a repetition block is erased")
        i1 = ok.argmax(axis=1)
        val = y[np.arange(batch), i1]
        block = np.arange(lo, lo + n)
        keys = block[keymask[block]]
        free = block[~keymask[block]]
        if free.size != 1:
            raise ValueError("repetition block must hold exactly one message index")
        parity = np.bitwise_xor.reduce(u[:, keys], axis=1) if keys.size else 0
        u[:, free[0]] = val ^ parity
        instrument.tally("xor", batch * n)
        return np.repeat(val[:, None], n, axis=1)
    half = n // 2
    ybar = exor(y[:, :half], y[:, half:])
    h_right = _dec_be(ybar, u, keymask, lo + half, s - 1, r - 1)
    h_mid = _apply_gtilde(u[:, lo + half: lo + n], s - 1, r)
    h_first = np.concatenate([h_mid, h_mid ^ h_right], axis=1)
    yt = exor(y, h_first)
    y1, y2 = yt[:, :half], yt[:, half:]
    pick_first = erasure_count(y1) <= erasure_count(y2)
    chosen = np.where(pick_first[:, None], y1, y2)
    h_left = _dec_be(chosen, u, keymask, lo, s - 1, r)
    instrument.tally("xor", batch * 3 * n)
    return h_first ^ np.concatenate([h_left, h_left], axis=1)


def dec_be(key, y, A_c, s: int, r: int, check_capability: bool = True):
    """Unified SC erasure decoder: returns ``(u, h)`` with h the codeword.

    Parameters
    ----------
    key : array_like or Mapping
        Key bits in ascending ``A_c`` order (``(k,)`` or ``(batch, k)``), or
        a map from u-index to bit.
    y : ErasureWord or array_like
        Received word(s) with ERASURE markers, shape ``(n,)`` or ``(batch, n)``.
    A_c : iterable of int
        Key indices; must be the default RM(s, r) layout.
    check_capability : bool
        Reject words with ``rho >= 2^(s-r)`` up front.  When false such
        words are decoded anyway; an all-erased repetition block still
        raises, but other violations may go undetected.
    """
    from .rm_sc import _key_matrix

    yy = y.symbols if isinstance(y, ErasureWord) else np.asarray(y, dtype=np.int64)
    single = yy.ndim == 1
    yy = np.atleast_2d(yy)
    batch, n = yy.shape
    if n != 1 << s:
        raise ValueError(f"word length {n} != 2^{s}")
    A_c = sorted(int(i) for i in A_c)
    if A_c != rm_row_split(s, r)[1]:
        raise ValueError("A_c must be the default RM(s, r) key layout")
    if check_capability:
        rho = erasure_count(yy)
        limit = (1 << (s - r)) - 1
        if np.any(rho > limit):
            raise DecodingFailure(f"{int(rho.max())} erasures exceed D_min - 1 = {limit}")
    keymask = np.zeros(n, dtype=bool)
    keymask[A_c] = True
    u = np.zeros((batch, n), dtype=np.int64)
    u[:, A_c] = _key_matrix(key, A_c, batch)
    h = _dec_be(yy, u, keymask, 0, s, r)
    if single:
        return u[0], h[0]
    return u, h


def decode_unified(us: UnifiedRmScheme, received, key, check_capability: bool = True) -> np.ndarray:
    """Message from a (possibly erased) unified codeword."""
    u, _ = dec_be(key, received, us.A_c, us.s, us.r, check_capability=check_capability)
    return u[..., list(us.A)]
