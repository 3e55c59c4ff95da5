"""Channel symbols: a field value or the erasure marker.

Words are int64 arrays; :data:`ERASURE` (-1) is a third state that never
collides with a field value.  :func:`exor` is XOR extended so that an
erasure absorbs: ``e ^ x == e`` for every x.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

ERASURE = -1


def exor(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    return np.where((a == ERASURE) | (b == ERASURE), ERASURE, a ^ b)


def erasure_count(word) -> np.ndarray:
    return np.count_nonzero(np.asarray(word) == ERASURE, axis=-1)


def parse_symbol(token: str) -> int:
    return ERASURE if token.lower() in ("e", "?", "-1") else int(token)


def format_symbol(v: int) -> str:
    return "e" if v == ERASURE else str(v)


@dataclass(frozen=True, eq=False)
class ErasureWord:
    """A received word whose erased positions are marked with ERASURE."""

    symbols: np.ndarray

    def __post_init__(self):
        arr = np.array(self.symbols, dtype=np.int64, copy=True)
        if arr.size and arr.min() < ERASURE:
            raise ValueError("symbols must be field values or ERASURE")
        arr.flags.writeable = False
        object.__setattr__(self, "symbols", arr)

    @property
    def erasure_positions(self) -> tuple:
        return tuple(int(i) for i in np.flatnonzero(self.symbols == ERASURE))

    @property
    def rho(self) -> int:
        return int(np.count_nonzero(self.symbols == ERASURE))

    def __len__(self):
        return self.symbols.shape[-1]
