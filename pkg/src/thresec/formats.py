"""File formats: scheme descriptors and block files.

Block files hold one block per line as whitespace-separated field values,
with ``e`` marking an erased symbol.  GF(2) blocks can also be packed,
8 symbols per byte in little-endian bit order, blocks laid end to end.

A scheme descriptor is JSON::

    {"code": {"family": "rm", "s": 4, "r": 2}, "layout": "default"}
    {"code": {"family": "rs", "q": 5, "n": 4, "m": 3}, "A": [0, 1, 2]}
    {"mode": "concat", "code": {...}, "inner": {...}}
    {"mode": "unified-rm", "s": 4, "r": 2}

A bare code config (``{"family": ...}``) is accepted as a plain scheme
with the default layout.  ``"strict": false`` skips the proper-ness check.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .codebook import code_from_config, code_to_config
from .robust import build_concat, build_unified
from .scheme import build_scheme
from .symbols import ERASURE, format_symbol, parse_symbol

MODES = ("plain", "concat", "unified-rm")


def read_blocks(path, packed: bool = False, length: int | None = None) -> np.ndarray:
    """Blocks as a 2-D int64 array (ERASURE for erased symbols)."""
    path = Path(path)
    if packed:
        if not length:
            raise ValueError("packed files need the block length")
        bits = np.unpackbits(np.frombuffer(path.read_bytes(), dtype=np.uint8), bitorder="little")
        usable = bits.size // length * length
        return bits[:usable].reshape(-1, length).astype(np.int64)
    rows = [[parse_symbol(tok) for tok in line.split()]
            for line in path.read_text().splitlines() if line.strip()]
    if not rows:
        return np.zeros((0, length or 0), dtype=np.int64)
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: blocks have different lengths")
    arr = np.array(rows, dtype=np.int64)
    if length is not None and arr.shape[1] != length:
        raise ValueError(f"{path}: expected blocks of length {length}, found {arr.shape[1]}")
    return arr


def write_blocks(path, blocks, packed: bool = False) -> None:
    arr = np.atleast_2d(np.asarray(blocks, dtype=np.int64))
    path = Path(path)
    if packed:
        if arr.size and (arr.min() < 0 or arr.max() > 1):
            raise ValueError("packed format holds GF(2) symbols only (no erasures)")
        path.write_bytes(np.packbits(arr.astype(np.uint8).reshape(-1), bitorder="little").tobytes())
        return
    lines = [" ".join(format_symbol(int(v)) for v in row) for row in arr]
    path.write_text("".join(line + "\n" for line in lines))


def load_descriptor(path) -> dict:
    path = Path(path)
    desc = json.loads(path.read_text())
    if not isinstance(desc, dict):
        raise ValueError(f"{path}: descriptor must be a JSON object")
    desc.setdefault("_base_dir", str(path.parent))
    return desc


def scheme_from_descriptor(desc: dict):
    """Build (and re-certify) the scheme a descriptor names."""
    base_dir = desc.get("_base_dir")
    mode = desc.get("mode", "plain")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}")
    if mode == "unified-rm":
        cfg = desc.get("code", desc)
        return build_unified(int(cfg["s"]), int(cfg["r"]))
    cfg = desc["code"] if "code" in desc else desc
    code = code_from_config(cfg, base_dir)
    A = desc.get("A")
    if A is None and desc.get("layout", "default") != "default":
        raise ValueError(f"unknown layout {desc['layout']!r}")
    scheme = build_scheme(code, A, strict=desc.get("strict", True))
    if mode == "concat":
        inner = code_from_config(desc["inner"], base_dir)
        return build_concat(scheme, inner)
    return scheme


def descriptor_for(scheme_code, A=None, mode="plain", inner=None) -> dict:
    """Descriptor dict for a code (and optional layout/inner code)."""
    desc = {"mode": mode, "code": code_to_config(scheme_code)}
    if A is None:
        desc["layout"] = "default"
    else:
        desc["A"] = [int(i) for i in A]
    if inner is not None:
        desc["inner"] = code_to_config(inner)
    return desc


__all__ = ["ERASURE", "MODES", "read_blocks", "write_blocks", "load_descriptor",
           "scheme_from_descriptor", "descriptor_for"]
