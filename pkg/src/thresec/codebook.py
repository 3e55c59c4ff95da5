"""Linear block codes: generic, Reed-Solomon and Reed-Muller.

A code is described by its m x n generator matrix ``G`` (rows span the
code).  The minimum distance carries a provenance tag so that reports can
tell an analytic value from one confirmed by exhaustive search.
"""

from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from math import comb
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded
from .gf import Field, get_field
from .linalg import Matrix, kernel_f2, kron_power, nullspace, rank, read_matrix, vandermonde

DEFAULT_BUDGET = 1 << 24
_CHUNK = 1 << 16


@dataclass(frozen=True)
class LinearCode:
    """An ``[n, m, d_min]_q`` linear block code.

    ``d_min_source`` is one of ``"analytic"``, ``"brute-force"`` or
    ``"unknown"``.  ``s`` and ``r`` are set only for Reed-Muller codes.
    """

    generator: Matrix
    family: str = "generic"
    d_min: int | None = None
    d_min_source: str = "unknown"
    s: int | None = None
    r: int | None = None

    def __post_init__(self):
        rk = rank(self.generator)
        if rk != self.generator.rows:
            raise ValueError(
                f"generator must have full row rank: rank {rk} < {self.generator.rows}"
            )
        if self.family not in ("generic", "rs", "rm"):
            raise ValueError(f"unknown code family {self.family!r}")
        if (self.d_min is None) != (self.d_min_source == "unknown"):
            raise ValueError("d_min and d_min_source disagree")

    @property
    def field(self) -> Field:
        return self.generator.field

    @property
    def n(self) -> int:
        return self.generator.cols

    @property
    def m(self) -> int:
        return self.generator.rows

    @property
    def rate(self) -> float:
        return self.m / self.n

    def with_min_distance(self, d: int, source: str) -> "LinearCode":
        return dataclasses.replace(self, d_min=int(d), d_min_source=source)

    def encode(self, x) -> np.ndarray:
        return self.field.matmul(self.field.check(x), self.generator.data)

    def describe(self) -> str:
        if self.family == "rm":
            name = f"RM({self.s},{self.r})"
        elif self.family == "rs":
            name = f"RS over GF({self.field.q})"
        else:
            name = f"linear code over GF({self.field.q})"
        d = "?" if self.d_min is None else self.d_min
        return f"{name} [{self.n},{self.m},{d}]_{self.field.q}"


def from_matrix(generator: Matrix, d_min: int | None = None) -> LinearCode:
    """Wrap a user generator matrix; rank is verified on construction."""
    if d_min is None:
        return LinearCode(generator)
    return LinearCode(generator, d_min=d_min, d_min_source="analytic")


def make_rs(field: Field, n: int, m: int) -> LinearCode:
    """Reed-Solomon code with evaluation points alpha^0, ..., alpha^(n-1).

    ``G[i][j] = (alpha^j)^i``, so ``d_min = n - m + 1``.
    """
    if not 0 < m < n:
        raise ValueError(f"need 0 < m < n, got m={m}, n={n}")
    if n > field.q - 1:
        raise ValueError(f"RS length {n} needs {n} distinct nonzero points; GF({field.q}) has {field.q - 1}")
    points = field.alpha_pow(np.arange(n))
    G = vandermonde(field, points, rows=m)
    return LinearCode(G, family="rs", d_min=n - m + 1, d_min_source="analytic")


def rm_row_split(s: int, r: int) -> tuple[list[int], list[int]]:
    """Indices of rows of (F2^{⊗s})^T kept for RM(s, r), and those removed.

    Row i of (F2^{⊗s})^T has weight 2^(s - popcount(i)), so a row is kept
    exactly when popcount(i) <= r; no matrix is built.
    """
    if not 0 <= r <= s:
        raise ValueError(f"need 0 <= r <= s, got s={s}, r={r}")
    kept = [i for i in range(1 << s) if bin(i).count("1") <= r]
    removed = [i for i in range(1 << s) if bin(i).count("1") > r]
    return kept, removed


def make_rm(s: int, r: int) -> LinearCode:
    """RM(s, r): rows of (F2^{⊗s})^T of weight >= 2^(s-r), in their original order."""
    kept, _ = rm_row_split(s, r)
    ft = kron_power(kernel_f2(), s).T
    G = ft.select_rows(kept)
    return LinearCode(G, family="rm", d_min=1 << (s - r), d_min_source="analytic", s=s, r=r)


def rm_dimension(s: int, r: int) -> int:
    return sum(comb(s, i) for i in range(r + 1))


# -- exhaustive minimum distance --------------------------------------------


def _message_chunks(q: int, m: int):
    total = q ** m
    powers = q ** np.arange(m, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        yield idx, (idx[:, None] // powers) % q


def _codeword_search(code: LinearCode):
    """Lowest-weight nonzero codeword by enumerating all q^m messages."""
    best_w, best = code.n + 1, None
    for idx, msgs in _message_chunks(code.field.q, code.m):
        cw = code.field.matmul(msgs, code.generator.data)
        w = np.count_nonzero(cw, axis=1)
        w[idx == 0] = code.n + 1
        j = int(np.argmin(w))
        if w[j] < best_w:
            best_w, best = int(w[j]), cw[j]
    return best_w, best


def _parity_search(code: LinearCode, budget: int):
    """Smallest linearly dependent set of parity-check columns.

    Its size is d_min; a codeword supported exactly on it is returned too.
    """
    H = nullspace(code.generator)
    n = code.n
    field = code.field
    if H.rows == 0:
        # every column of an empty parity check is the zero vector
        cw = np.zeros(n, dtype=np.int64)
        cw[0] = 1
        return 1, cw
    visited = 0
    binary = field.q == 2
    if binary:
        masks = [int("".join(str(int(b)) for b in H.data[:, j]), 2) for j in range(n)]
    for w in range(1, n + 1):
        visited += comb(n, w)
        if visited > budget:
            raise BudgetExceeded("parity-check subset search", visited, budget)
        for subset in itertools.combinations(range(n), w):
            if binary:
                acc = 0
                for j in subset:
                    acc ^= masks[j]
                dependent = acc == 0
            else:
                dependent = rank(H.select_cols(subset)) < w
            if dependent:
                coeffs = nullspace(H.select_cols(subset)).data[0]
                cw = np.zeros(n, dtype=np.int64)
                cw[list(subset)] = coeffs
                return w, cw
    raise AssertionError("parity-check columns are always dependent at size n - m + 1")


def _min_weight(code: LinearCode, budget: int):
    if code.field.q ** code.m <= budget:
        return _codeword_search(code)
    return _parity_search(code, budget)


def min_distance_bruteforce(code: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum Hamming weight over all nonzero codewords.

    Enumerates the q^m codewords when that fits in ``budget``; otherwise
    searches for the smallest dependent set of parity-check columns, which
    suits high-rate codes.  Raises :class:`BudgetExceeded` if neither fits.
    """
    return _min_weight(code, budget)[0]


def verified(code: LinearCode, budget: int = DEFAULT_BUDGET) -> LinearCode:
    """Copy of ``code`` whose d_min was confirmed by exhaustive search."""
    d = min_distance_bruteforce(code, budget)
    if code.d_min is not None and code.d_min != d:
        raise AssertionError(f"analytic d_min {code.d_min} != brute-force {d}")
    return code.with_min_distance(d, "brute-force")


def min_weight_codeword(code: LinearCode, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """A codeword of weight d_min.

    Uses a generator row of the right weight when one exists (true for
    Reed-Muller codes), otherwise exhaustive search.
    """
    if code.d_min is not None:
        w = code.generator.row_weights()
        hits = np.flatnonzero(w == code.d_min)
        if hits.size:
            return code.generator.data[hits[-1]].copy()
    return _min_weight(code, budget)[1]


# -- config ----------------------------------------------------------------


def code_from_config(cfg: dict, base_dir=None) -> LinearCode:
    """Build a code from ``{"family": "rm"|"rs"|"generic", ...}``."""
    family = cfg.get("family", "generic").lower()
    if family == "rm":
        return make_rm(int(cfg["s"]), int(cfg["r"]))
    if family == "rs":
        field = get_field(int(cfg["q"]), cfg.get("poly"))
        return make_rs(field, int(cfg["n"]), int(cfg["m"]))
    if family == "generic":
        if "matrix_file" in cfg:
            path = Path(cfg["matrix_file"])
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            G = read_matrix(path)
        else:
            field = get_field(int(cfg.get("q", 2)), cfg.get("poly"))
            G = Matrix(field, cfg["matrix"])
        return from_matrix(G, cfg.get("d_min"))
    raise ValueError(f"unknown code family {family!r}")


def code_to_config(code: LinearCode) -> dict:
    if code.family == "rm":
        return {"family": "rm", "s": code.s, "r": code.r}
    if code.family == "rs":
        cfg = {"family": "rs", **code.field.to_config(), "n": code.n, "m": code.m}
        return cfg
    cfg = {"family": "generic", **code.field.to_config(), "matrix": code.generator.tolist()}
    if code.d_min_source == "analytic":
        cfg["d_min"] = code.d_min
    return cfg
