"""Exact information-theoretic audits of small schemes.

Every audit enumerates the full input space (message and key uniform and
independent, so each of the q^n inputs has probability q^-n), tallies
integer occurrence counts, and only converts to bits at the end.  Values
are exact up to float rounding in the final logarithms.

The audits accept any scheme-like object exposing ``W`` (input-to-codeword
matrix), ``A``, ``A_c``, ``field``, ``m``, ``k`` and ``t``; plain,
concatenated and unified schemes all qualify.

When the full space is over budget, :func:`audit_threshold` and
:func:`audit_key_security` can fall back to a fiber count: for an input
subset B, ``u_B`` given ``c`` is uniform over a coset of
``S_B = {b : b @ W[B] in rowspace(W[B^c])}``, so ``H(u_B | c) = log2 |S_B|``.
That needs only the q^|B| candidates of ``u_B``.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field as dc_field
from itertools import combinations

import numpy as np

from .codebook import DEFAULT_BUDGET, min_weight_codeword
from .errors import BudgetExceeded
from .linalg import row_reduce

TOL = 1e-9
SAMPLE_THRESHOLD = 10_000
_CHUNK = 1 << 18


def entropy_from_counts(counts) -> float:
    """Shannon entropy in bits of the distribution proportional to ``counts``."""
    c = np.asarray(counts, dtype=np.float64)
    c = c[c > 0]
    total = c.sum()
    return float(math.log2(total) - np.dot(c, np.log2(c)) / total)


def entropy_of_labels(labels, size: int | None = None) -> float:
    """Entropy of the empirical distribution of equally likely ``labels``."""
    labels = np.asarray(labels)
    if size is not None and size <= 4 * labels.size + 1024:
        counts = np.bincount(labels, minlength=size)
    else:
        counts = np.unique(labels, return_counts=True)[1]
    return entropy_from_counts(counts)


def _snap(x: float) -> float:
    """Round-off in the final logarithms can leave +-1e-15; report exact zero."""
    return 0.0 if abs(x) < 1e-12 else float(x)


def _dense(labels):
    uniq, inv = np.unique(labels, return_inverse=True)
    return inv.astype(np.int64).reshape(-1), len(uniq)


def _row_labels(rows: np.ndarray, q: int):
    """Dense integer label per row vector, plus the number of labels."""
    L = rows.shape[1]
    if L == 0:
        return np.zeros(rows.shape[0], dtype=np.int64), 1
    if L * math.log2(q) < 62:
        lab = rows @ (q ** np.arange(L, dtype=np.int64))
        return _dense(lab)
    return _dense(np.unique(rows, axis=0, return_inverse=True)[1])


def _combine(a, na, b, nb):
    """Joint label of two dense label arrays."""
    lab = a * nb + b
    if na * nb > 1 << 40:
        return _dense(lab)
    return lab, na * nb


def _source_code(scheme):
    for attr in ("code", "outer", "base"):
        obj = getattr(scheme, attr, None)
        if obj is None:
            continue
        return obj if attr == "code" else _source_code(obj)
    raise TypeError("scheme has no source code")


class InputSpace:
    """All q^n inputs u of a scheme with their codewords c = u @ W."""

    def __init__(self, scheme, budget: int = DEFAULT_BUDGET):
        self.field = scheme.field
        self.q = q = scheme.field.q
        self.n = n = scheme.W.rows
        size = q ** n
        if size > budget:
            raise BudgetExceeded("input enumeration", size, budget)
        self.size = size
        self.index = np.arange(size, dtype=np.int64)
        self.powers = q ** np.arange(n, dtype=np.int64)
        W = scheme.W.data
        parts = []
        for start in range(0, size, _CHUNK):
            idx = self.index[start:start + _CHUNK]
            digits = (idx[:, None] // self.powers) % q
            parts.append(self.field.matmul(digits, W))
        cw = np.concatenate(parts, axis=0) if parts else np.zeros((0, W.shape[1]), dtype=np.int64)
        self.c_label, self.c_size = _row_labels(cw, q)

    def digits(self, positions) -> np.ndarray:
        positions = list(positions)
        if not positions:
            return np.zeros((self.size, 0), dtype=np.int64)
        return (self.index[:, None] // self.powers[positions]) % self.q

    def label(self, positions):
        positions = list(positions)
        lab = np.zeros(self.size, dtype=np.int64)
        for j, p in enumerate(positions):
            lab += ((self.index // self.powers[p]) % self.q) * self.q ** j
        return lab, self.q ** len(positions)

    def entropy(self, positions=(), with_c=False) -> float:
        lab, size = self.label(positions)
        if with_c:
            lab, size = _combine(self.c_label, self.c_size, lab, size)
        return entropy_of_labels(lab, size)

    def information(self, positions) -> float:
        """I(u_B; c) in bits."""
        return _snap(self.entropy(positions) + self.entropy((), with_c=True)
                     - self.entropy(positions, with_c=True))


def fiber_information(scheme, positions) -> float:
    """I(u_B; c) from the size of the fiber subspace S_B (see module doc)."""
    field = scheme.field
    q = field.q
    B = sorted(int(i) for i in positions)
    Bc = [i for i in range(scheme.W.rows) if i not in set(B)]
    W = scheme.W.data
    red, piv = row_reduce(field, W[Bc]) if Bc else (np.zeros((0, W.shape[1]), dtype=np.int64), [])
    basis = red[: len(piv)]
    nb = len(B)
    cand = (np.arange(q ** nb, dtype=np.int64)[:, None] // q ** np.arange(nb, dtype=np.int64)) % q
    X = field.matmul(cand, W[B]) if nb else np.zeros((1, W.shape[1]), dtype=np.int64)
    for row, col in zip(basis, piv):
        X = field.sub(X, field.mul(X[:, col:col + 1], row[None, :]))
    in_span = int(np.count_nonzero(~X.any(axis=1)))
    return _snap(nb * math.log2(q) - math.log2(in_span))


def _pick_method(scheme, budget, method, subset_size):
    if method != "auto":
        return method
    if scheme.field.q ** scheme.W.rows <= budget:
        return "enumerate"
    if scheme.field.q ** subset_size <= budget:
        return "fiber"
    raise BudgetExceeded("input enumeration", scheme.field.q ** scheme.W.rows, budget)


# -- individual claims ----------------------------------------------------------


def audit_key_security(scheme, budget: int = DEFAULT_BUDGET, method: str = "enumerate") -> float:
    """I(key; c) in bits (0 for proper schemes).

    ``method="auto"`` falls back to the fiber count when the input space is
    over budget.
    """
    method = _pick_method(scheme, budget, method, scheme.k)
    if method == "fiber":
        return fiber_information(scheme, scheme.A_c)
    return InputSpace(scheme, budget).information(scheme.A_c)


def audit_reliability(scheme, budget: int = DEFAULT_BUDGET) -> float:
    """H(message | c, key) in bits (0 when Bob always decodes)."""
    sp = InputSpace(scheme, budget)
    both = list(scheme.A) + list(scheme.A_c)
    return _snap(sp.entropy(both, with_c=True) - sp.entropy(scheme.A_c, with_c=True))


def audit_eve_equivocation(scheme, budget: int = DEFAULT_BUDGET) -> float:
    """H(message | c) in bits (k log2 q for proper schemes)."""
    sp = InputSpace(scheme, budget)
    return _snap(sp.entropy(scheme.A, with_c=True) - sp.entropy((), with_c=True))


@dataclass
class ThresholdResult:
    max_deviation: float
    worst_subset: tuple
    subsets_checked: int
    sampled: bool
    method: str


def _subsets(n, t, sample, seed):
    total = sum(math.comb(n, w) for w in range(1, t + 1))
    if sample is None and total <= SAMPLE_THRESHOLD:
        for w in range(1, t + 1):
            yield from combinations(range(n), w)
        return
    count = sample if sample is not None else SAMPLE_THRESHOLD
    rng = np.random.default_rng(seed)
    for _ in range(count):
        w = int(rng.integers(1, t + 1))
        yield tuple(sorted(int(i) for i in rng.choice(n, size=w, replace=False)))


def audit_threshold(scheme, t: int, budget: int = DEFAULT_BUDGET, sample: int | None = None,
                    seed: int = 0, method: str = "auto") -> ThresholdResult:
    """max over |B| <= t of H(u_B) - H(u_B | c).

    All subsets of sizes 1..t are checked unless there are more than
    10^4 of them or ``sample`` is given, in which case ``sample`` (default
    10^4) random subsets are drawn with a seeded generator.  The empty set
    trivially has deviation 0.
    """
    method = _pick_method(scheme, budget, method, t)
    space = InputSpace(scheme, budget) if method == "enumerate" else None
    worst, worst_set, checked = 0.0, (), 0
    total = sum(math.comb(scheme.W.rows, w) for w in range(1, t + 1))
    sampled = sample is not None or total > SAMPLE_THRESHOLD
    for B in _subsets(scheme.W.rows, t, sample, seed):
        dev = space.information(B) if space is not None else fiber_information(scheme, B)
        checked += 1
        if abs(dev) > abs(worst) or not worst_set:
            worst, worst_set = dev, B
    return ThresholdResult(worst, tuple(worst_set), checked, sampled, method)


@dataclass
class MaximalityResult:
    witness: tuple
    h_v: float
    h_v_given_c: float

    @property
    def deviation(self) -> float:
        return self.h_v - self.h_v_given_c


def audit_threshold_maximality(scheme, budget: int = DEFAULT_BUDGET, method: str = "auto") -> MaximalityResult:
    """Support F of a minimum-weight source codeword, with H(u_F) and H(u_F | c).

    |F| = t + 1 and H(u_F | c) < H(u_F), so the threshold cannot be raised.
    """
    cw = min_weight_codeword(_source_code(scheme), budget)
    F = tuple(int(i) for i in np.flatnonzero(cw))
    method = _pick_method(scheme, budget, method, len(F))
    h_v = len(F) * math.log2(scheme.field.q)
    if method == "fiber":
        return MaximalityResult(F, h_v, h_v - fiber_information(scheme, F))
    sp = InputSpace(scheme, budget)
    return MaximalityResult(F, sp.entropy(F), sp.entropy(F, with_c=True) - sp.entropy((), with_c=True))


def audit_key_reuse(scheme, v: int = 2, budget: int = DEFAULT_BUDGET) -> float:
    """I(key; c_1, ..., c_v) for v independent uniform messages under one key."""
    field = scheme.field
    q, m, k = field.q, scheme.m, scheme.k
    size = q ** (v * m + k)
    if size > budget:
        raise BudgetExceeded("key-reuse enumeration", size, budget)
    W = scheme.W
    WA, WAc = W.select_rows(scheme.A).data, W.select_rows(scheme.A_c).data

    def all_vectors(length):
        return (np.arange(q ** length, dtype=np.int64)[:, None]
                // q ** np.arange(length, dtype=np.int64)) % q

    msg_part = field.matmul(all_vectors(m), WA)
    key_part = field.matmul(all_vectors(k), WAc)
    state = np.arange(size, dtype=np.int64)
    key_idx = state % q ** k
    rest = state // q ** k
    joint, joint_size = np.zeros(size, dtype=np.int64), 1
    for _ in range(v):
        msg_idx = rest % q ** m
        rest //= q ** m
        cw = field.add(msg_part[msg_idx], key_part[key_idx])
        lab, n_lab = _row_labels(cw, q)
        joint, joint_size = _combine(joint, joint_size, lab, n_lab)
        joint, joint_size = _dense(joint)
    with_key, wk_size = _combine(joint, joint_size, key_idx, q ** k)
    return _snap(entropy_of_labels(joint, joint_size) + entropy_of_labels(key_idx, q ** k)
                  - entropy_of_labels(with_key, wk_size))


# -- full report ----------------------------------------------------------------

CLAIMS = ("key_security", "reliability", "threshold", "maximality", "eve_equivocation", "key_reuse")


@dataclass
class AuditReport:
    scheme: dict
    threshold_checked: int
    I_key_codeword: float | None = None
    reliability_residual: float | None = None
    threshold_max_deviation: float | None = None
    threshold_worst_subset: list | None = None
    threshold_subsets_checked: int | None = None
    threshold_sampled: bool | None = None
    eve_equivocation: float | None = None
    eve_equivocation_expected: float | None = None
    maximality_witness: list | None = None
    maximality_deviation: float | None = None
    multi_codeword_leakage: float | None = None
    key_reuse_v: int | None = None
    methods: dict = dc_field(default_factory=dict)
    verdicts: dict = dc_field(default_factory=dict)
    skipped: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    @property
    def failed_claims(self) -> list:
        return [c for c, ok in self.verdicts.items() if not ok]

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **{"indent": 2, "sort_keys": True, **kw})


def run_audit(scheme, claims=CLAIMS, budget: int = DEFAULT_BUDGET, subset_sample: int | None = None,
              seed: int = 0, v: int = 2) -> AuditReport:
    """Evaluate the requested claims; over-budget claims land in ``skipped``."""
    summary = scheme.summary() if hasattr(scheme, "summary") else {}
    rep = AuditReport(scheme=summary, threshold_checked=scheme.t)
    log_q = math.log2(scheme.field.q)
    for claim in claims:
        if claim not in CLAIMS:
            raise ValueError(f"unknown claim {claim!r}")
        try:
            if claim == "key_security":
                method = _pick_method(scheme, budget, "auto", scheme.k)
                rep.I_key_codeword = audit_key_security(scheme, budget, method)
                rep.methods[claim] = method
                rep.verdicts[claim] = rep.I_key_codeword <= TOL
            elif claim == "reliability":
                rep.reliability_residual = audit_reliability(scheme, budget)
                rep.verdicts[claim] = rep.reliability_residual <= TOL
            elif claim == "threshold":
                res = audit_threshold(scheme, scheme.t, budget, sample=subset_sample, seed=seed)
                rep.threshold_max_deviation = res.max_deviation
                rep.threshold_worst_subset = list(res.worst_subset)
                rep.threshold_subsets_checked = res.subsets_checked
                rep.threshold_sampled = res.sampled
                rep.methods[claim] = res.method
                rep.verdicts[claim] = abs(res.max_deviation) <= TOL
            elif claim == "maximality":
                res = audit_threshold_maximality(scheme, budget)
                rep.maximality_witness = list(res.witness)
                rep.maximality_deviation = res.deviation
                rep.verdicts[claim] = len(res.witness) == scheme.t + 1 and res.deviation > TOL
            elif claim == "eve_equivocation":
                rep.eve_equivocation = audit_eve_equivocation(scheme, budget)
                rep.eve_equivocation_expected = scheme.k * log_q
                rep.verdicts[claim] = abs(rep.eve_equivocation - rep.eve_equivocation_expected) <= TOL
            elif claim == "key_reuse":
                rep.multi_codeword_leakage = audit_key_reuse(scheme, v, budget)
                rep.key_reuse_v = v
                rep.verdicts[claim] = rep.multi_codeword_leakage <= TOL
        except BudgetExceeded as exc:
            rep.skipped[claim] = str(exc)
    return rep
