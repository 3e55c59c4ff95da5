"""``thresec`` command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 capability or budget
(including a non-proper scheme), 3 integrity or decoding failure, 4 an
audit claim failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import audit as audit_mod
from .codebook import DEFAULT_BUDGET
from .errors import CapabilityError, DecodingFailure, IntegrityError, NotProper
from .formats import load_descriptor, read_blocks, scheme_from_descriptor, write_blocks
from .rm_sc import decode_sc
from .robust import (
    ConcatScheme,
    UnifiedRmScheme,
    channel_from_spec,
    concat_decode,
    concat_encode,
    decode_unified,
    unified_encode,
)
from .scheme import decode_generic, decode_rs_fast, encode
from .symbols import ERASURE, erasure_count

EXIT_OK, EXIT_USAGE, EXIT_CAPABILITY, EXIT_DECODE, EXIT_AUDIT = 0, 1, 2, 3, 4

DECODE_MODES = ("generic", "rs-fast", "sc", "dec-be")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path):
    return scheme_from_descriptor(load_descriptor(path))


def _codeword_length(scheme):
    if isinstance(scheme, ConcatScheme):
        return scheme.N
    return scheme.W.cols


def _guarantee_radius(scheme) -> int:
    """Erasures every trial may suffer and still be decodable."""
    if isinstance(scheme, (ConcatScheme, UnifiedRmScheme)):
        return scheme.D_min - 1
    return 0


def _default_mode(scheme):
    return "dec-be" if isinstance(scheme, UnifiedRmScheme) else "generic"


def encode_blocks(scheme, messages, key):
    if isinstance(scheme, UnifiedRmScheme):
        return unified_encode(scheme, messages, key)
    if isinstance(scheme, ConcatScheme):
        return np.stack([concat_encode(scheme, msg, key_row)
                         for msg, key_row in zip(messages, np.broadcast_to(key, (len(messages), scheme.k)))])
    return encode(scheme, messages, key)


def decode_block(scheme, word, key, mode=None):
    """Message from one received word; erasures allowed where the mode copes."""
    mode = mode or _default_mode(scheme)
    if mode not in DECODE_MODES:
        raise ValueError(f"unknown decode mode {mode!r}")
    if isinstance(scheme, UnifiedRmScheme):
        if mode != "dec-be":
            raise CapabilityError(f"mode {mode!r} does not apply to a unified-rm scheme; use dec-be")
        return decode_unified(scheme, word, key)
    if isinstance(scheme, ConcatScheme):
        if mode != "generic":
            raise CapabilityError(f"mode {mode!r} does not apply to a concat scheme; use generic")
        return concat_decode(scheme, word, key)
    if mode == "dec-be":
        raise CapabilityError("dec-be needs a unified-rm scheme")
    if np.any(np.asarray(word) == ERASURE):
        raise DecodingFailure("plain schemes cannot repair erasures")
    if mode == "rs-fast":
        return decode_rs_fast(scheme, word, key)
    if mode == "sc":
        return decode_sc(scheme, word, key)
    return decode_generic(scheme, word, key)


def _key_rows(key, count):
    if key.shape[0] not in (1, count):
        raise ValueError(f"key file has {key.shape[0]} blocks; expected 1 or {count}")
    return np.broadcast_to(key, (count, key.shape[1]))


# -- commands ---------------------------------------------------------------


def cmd_info(args):
    scheme = _load(args.scheme)
    base = getattr(scheme, "outer", None) or getattr(scheme, "base", None) or scheme
    print(f"n={scheme.n} m={scheme.m} k={scheme.k} t={scheme.t}")
    print(f"code: {base.code.describe()}")
    print(f"q={scheme.field.q} d_min={base.code.d_min} ({base.code.d_min_source})")
    if isinstance(scheme, (ConcatScheme, UnifiedRmScheme)):
        extra = f" N={scheme.N}" if isinstance(scheme, ConcatScheme) else ""
        print(f"D_min={scheme.D_min}{extra}")
    print(f"A={list(scheme.A)}")
    print(f"A_c={list(scheme.A_c)}")
    print(f"proper: {'yes' if base.proper else 'no'} "
          f"(rank W_A = {base.message_rank}/{scheme.m}, rank W_Ac = {base.key_rank}/{scheme.k})")
    for w in base.warnings:
        print(f"warning: {w}")
    return EXIT_OK


def cmd_keygen(args):
    scheme = _load(args.scheme)
    rng = np.random.default_rng(args.seed)
    key = rng.integers(0, scheme.field.q, size=(args.blocks, scheme.k), dtype=np.int64)
    write_blocks(args.out, key, packed=args.packed)
    return EXIT_OK


def cmd_encode(args):
    scheme = _load(args.scheme)
    msgs = read_blocks(args.message, packed=args.packed, length=scheme.m)
    key = read_blocks(args.key, packed=args.packed, length=scheme.k)
    cw = np.atleast_2d(encode_blocks(scheme, msgs, _key_rows(key, len(msgs))))
    if args.channel:
        channel = channel_from_spec(_json_arg(args.channel))
        cw = np.stack([channel(c, i).symbols for i, c in enumerate(cw)]) if len(cw) else cw
    write_blocks(args.out, cw, packed=args.packed)
    return EXIT_OK


def cmd_decode(args):
    scheme = _load(args.scheme)
    words = read_blocks(args.codeword, packed=args.packed, length=_codeword_length(scheme))
    key = _key_rows(read_blocks(args.key, packed=args.packed, length=scheme.k), len(words))
    out = [decode_block(scheme, w, k, args.mode) for w, k in zip(words, key)]
    write_blocks(args.out, np.array(out, dtype=np.int64).reshape(len(out), scheme.m), packed=args.packed)
    return EXIT_OK


def cmd_audit(args):
    scheme = _load(args.scheme)
    claims = audit_mod.CLAIMS if not args.claims else tuple(c.strip() for c in args.claims.split(","))
    unknown = [c for c in claims if c not in audit_mod.CLAIMS]
    if unknown:
        print(f"unknown claim(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    report = audit_mod.run_audit(scheme, claims, budget=args.budget,
                                 subset_sample=args.subset_sample, seed=args.seed, v=args.reuse)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text + "\n")
    print(text)
    if not report.passed:
        print(f"audit failed: {', '.join(report.failed_claims)}", file=sys.stderr)
        return EXIT_AUDIT
    if report.skipped:
        for claim, why in sorted(report.skipped.items()):
            print(f"skipped {claim}: {why}", file=sys.stderr)
        return EXIT_CAPABILITY
    return EXIT_OK


def simulate(scheme, channel_spec: dict, trials: int, seed: int = 0, mode=None) -> dict:
    """Encode, transmit and decode ``trials`` random blocks; return statistics.

    Trial i draws its message and key from seed ``seed + i`` and feeds
    trial index i to the channel, so results do not depend on ordering.
    """
    channel = channel_from_spec(channel_spec)
    radius = _guarantee_radius(scheme)
    q = scheme.field.q
    per_trial = []
    for i in range(trials):
        rng = np.random.default_rng(seed + i)
        msg = rng.integers(0, q, size=scheme.m, dtype=np.int64)
        key = rng.integers(0, q, size=scheme.k, dtype=np.int64)
        cw = np.atleast_2d(encode_blocks(scheme, msg[None, :], key[None, :]))[0]
        received = channel(cw, i)
        rho = int(erasure_count(received.symbols))
        try:
            ok = bool(np.array_equal(decode_block(scheme, received.symbols, key, mode), msg))
            outcome = "ok" if ok else "wrong"
        except (DecodingFailure, IntegrityError):
            ok, outcome = False, "failure"
        per_trial.append({"trial": i, "rho": rho, "success": ok, "outcome": outcome})
    within = [p for p in per_trial if p["rho"] <= radius]
    hist = Counter(p["rho"] for p in per_trial)
    return {
        "trials": trials,
        "successes": sum(p["success"] for p in per_trial),
        "success_rate": (sum(p["success"] for p in per_trial) / trials) if trials else 1.0,
        "guarantee_radius": radius,
        "trials_within_guarantee": len(within),
        "fraction_within_guarantee": (len(within) / trials) if trials else 1.0,
        "success_rate_within_guarantee": (sum(p["success"] for p in within) / len(within)) if within else 1.0,
        "erasure_histogram": {str(r): hist[r] for r in sorted(hist)},
        "per_trial": per_trial,
    }


def cmd_simulate(args):
    scheme = _load(args.scheme)
    stats = simulate(scheme, _json_arg(args.channel), args.trials, args.seed, args.mode)
    if not args.per_trial:
        stats.pop("per_trial")
    text = json.dumps(stats, indent=2, sort_keys=True)
    if args.report:
        Path(args.report).write_text(text + "\n")
    print(text)
    if stats["success_rate_within_guarantee"] < 1.0:
        print("a trial inside the guaranteed erasure radius failed", file=sys.stderr)
        return EXIT_DECODE
    return EXIT_OK


def _json_arg(value):
    """A JSON literal or a path to a JSON file."""
    text = value.strip()
    if not text.startswith("{"):
        text = Path(value).read_text()
    return json.loads(text)


def build_parser():
    p = _Parser(prog="thresec", description="Threshold-secure coding with a shared key.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--scheme", required=True, help="scheme descriptor JSON file")
        sp.set_defaults(func=func)
        return sp

    add("info", cmd_info, "print scheme parameters and proper-ness certificate")

    sp = add("keygen", cmd_keygen, "write a seeded uniform key")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--blocks", type=int, default=1, help="number of key blocks")
    sp.add_argument("--packed", action="store_true", help="packed GF(2) binary format")

    sp = add("encode", cmd_encode, "encode message blocks under a key")
    sp.add_argument("--message", required=True)
    sp.add_argument("--key", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--channel", help="channel spec (JSON literal or file) applied to the output")
    sp.add_argument("--packed", action="store_true")

    sp = add("decode", cmd_decode, "decode received blocks with the key")
    sp.add_argument("--codeword", required=True)
    sp.add_argument("--key", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--mode", choices=DECODE_MODES, help="decoder (default depends on the scheme)")
    sp.add_argument("--packed", action="store_true")

    sp = add("audit", cmd_audit, "exact information-theoretic audit")
    sp.add_argument("--report", help="write the JSON report here as well")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget (states)")
    sp.add_argument("--subset-sample", type=int, help="check this many random subsets for the threshold claim")
    sp.add_argument("--claims", help=f"comma-separated subset of {','.join(audit_mod.CLAIMS)}")
    sp.add_argument("--seed", type=int, default=0, help="seed for subset sampling")
    sp.add_argument("--reuse", type=int, default=2, help="codewords per key in the key-reuse claim")

    sp = add("simulate", cmd_simulate, "encode -> channel -> decode over seeded trials")
    sp.add_argument("--channel", required=True, help='e.g. \'{"type": "bec", "epsilon": 0.3}\'')
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=DECODE_MODES)
    sp.add_argument("--report")
    sp.add_argument("--per-trial", action="store_true", help="include per-trial outcomes")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotProper as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except (IntegrityError, DecodingFailure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
