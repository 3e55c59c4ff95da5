import itertools

import numpy as np
import pytest

from thresec import instrument
from thresec.codebook import make_rm, make_rs, rm_row_split
from thresec.errors import CapabilityError
from thresec.gf import get_field
from thresec.rm_sc import decode_sc, embed_erasures, rm_transform, sc_decode
from thresec.scheme import build_scheme, decode_generic, encode
from thresec.symbols import ERASURE, ErasureWord, exor, parse_symbol


def test_exor_absorbs_erasures():
    assert exor([1, 0, ERASURE, 1], [1, ERASURE, 1, 0]).tolist() == [0, ERASURE, ERASURE, 1]
    assert parse_symbol("e") == ERASURE and parse_symbol("3") == 3


def test_erasure_word():
    w = ErasureWord([1, ERASURE, 0, ERASURE])
    assert w.rho == 2 and w.erasure_positions == (1, 3)
    with pytest.raises(ValueError):
        ErasureWord([0, -2])


def test_rm21_embedding():
    s = build_scheme(make_rm(2, 1))
    z = embed_erasures(s, [1, 0, 1])
    assert z.symbols.tolist() == [1, 0, 1, ERASURE]


@pytest.mark.parametrize("s_,r", [(s, r) for s in range(1, 5) for r in range(s + 1)])
def test_sc_matches_generic_exhaustively(s_, r):
    scheme = build_scheme(make_rm(s_, r), strict=False)
    n = scheme.n
    u = np.array(list(itertools.product((0, 1), repeat=n)), dtype=np.int64)
    msg, key = scheme.split(u)
    c = encode(scheme, msg, key)
    h, u_hat = sc_decode(key, embed_erasures(scheme, c), scheme.A_c)
    assert np.array_equal(u_hat, u)
    F = make_rm(s_, s_).generator.data.T  # full Kronecker matrix, u -> x
    assert np.array_equal(h, (u @ F) % 2)
    if scheme.proper:
        assert np.array_equal(decode_sc(scheme, c, key), decode_generic(scheme, c, key))


def test_key_as_mapping():
    scheme = build_scheme(make_rm(3, 1))
    msg = np.array([1, 0, 1, 1])
    key = np.array([0, 1, 1, 0])
    c = encode(scheme, msg, key)
    keymap = dict(zip(scheme.A_c, key.tolist()))
    _, u = sc_decode(keymap, embed_erasures(scheme, c), scheme.A_c)
    assert np.array_equal(u[list(scheme.A)], msg)


def test_rejects_bad_inputs():
    scheme = build_scheme(make_rm(2, 1))
    z = embed_erasures(scheme, [1, 0, 1])
    with pytest.raises(ValueError):
        sc_decode([1], z.symbols[:3], [2])  # length 3
    with pytest.raises(ValueError):
        sc_decode([1], z, [0])  # erasures not at A_c
    with pytest.raises(ValueError):
        sc_decode([2], z, scheme.A_c)
    with pytest.raises(CapabilityError):
        decode_sc(build_scheme(make_rs(get_field(5), 4, 3)), [0, 0, 0], [0])


def test_row_split_matches_row_weights():
    for s_ in range(6):
        ft = make_rm(s_, s_).generator
        w = ft.row_weights()
        for r in range(s_ + 1):
            kept, removed = rm_row_split(s_, r)
            assert kept == [i for i in range(2 ** s_) if w[i] >= 2 ** (s_ - r)]
            assert removed == [i for i in range(2 ** s_) if w[i] < 2 ** (s_ - r)]


def test_transform_matches_matrix(rng):
    for s_ in range(6):
        F = make_rm(s_, s_).generator.data.T
        u = rng.integers(0, 2, (10, 2 ** s_))
        assert np.array_equal(rm_transform(u), (u @ F) % 2)


def sc_ops(s):
    # large n: build z straight from the transform, no dense matrices
    kept, removed = rm_row_split(s, s // 2)
    rng = np.random.default_rng(s)
    u = rng.integers(0, 2, 2 ** s)
    z = rm_transform(u)
    z[removed] = ERASURE
    with instrument.count_ops() as ops:
        h, u_hat = sc_decode(u[removed], z, removed)
    assert np.array_equal(u_hat, u)
    return ops.total


def test_op_count_quasi_linear():
    counts = [sc_ops(s) for s in range(8, 16)]
    for a, b in zip(counts, counts[1:]):
        assert b / a <= 2.5
    # exactly n log2(n) xor tallies per word
    assert counts == [2 ** s * s for s in range(8, 16)]


@pytest.mark.parametrize("s_", [5, 6, 7])
def test_sc_random_inputs_large(s_):
    rng = np.random.default_rng(s_)
    for r in range(s_ + 1):
        kept, removed = rm_row_split(s_, r)
        u = rng.integers(0, 2, (1000, 2 ** s_))
        z = rm_transform(u)
        z[:, removed] = ERASURE
        h, u_hat = sc_decode(u[:, removed], z, removed)
        assert np.array_equal(u_hat, u)
        assert np.array_equal(h, rm_transform(u))


def test_two_symbol_base_case():
    # RM(1,0): x = (u1 + u2, u2), message at index 0, key at index 1
    scheme = build_scheme(make_rm(1, 0), strict=False)
    assert scheme.A == (0,) and scheme.A_c == (1,)
    for m, k in itertools.product((0, 1), repeat=2):
        z = embed_erasures(scheme, [m ^ k])
        assert z.symbols.tolist() == [m ^ k, ERASURE]
        h, u = sc_decode([k], z, [1])
        assert u.tolist() == [m, k] and h.tolist() == [m ^ k, k]
