import itertools
from math import comb

import numpy as np
import pytest

from thresec.codebook import (
    code_from_config,
    code_to_config,
    from_matrix,
    make_rm,
    make_rs,
    min_distance_bruteforce,
    min_weight_codeword,
    rm_dimension,
    rm_row_split,
    verified,
)
from thresec.gf import get_field
from thresec.linalg import Matrix, write_matrix


def naive_min_distance(code):
    q, m = code.field.q, code.m
    best = code.n
    for x in itertools.product(range(q), repeat=m):
        if any(x):
            best = min(best, int(np.count_nonzero(code.encode(np.array(x)))))
    return best


@pytest.mark.parametrize("s,r", [(s, r) for s in range(1, 5) for r in range(s + 1)])
def test_rm_parameters(s, r):
    code = make_rm(s, r)
    assert code.n == 2 ** s
    assert code.m == sum(comb(s, i) for i in range(r + 1)) == rm_dimension(s, r)
    assert code.d_min == 2 ** (s - r)
    if code.m <= 11:
        assert naive_min_distance(code) == code.d_min


def test_rm31_is_extended_hamming_dual():
    code = make_rm(3, 1)
    assert (code.n, code.m, code.d_min) == (8, 4, 4)


def test_rm21_split():
    kept, removed = rm_row_split(2, 1)
    assert kept == [0, 1, 2]
    assert removed == [3]


@pytest.mark.parametrize("s", range(1, 6))
def test_rm_bruteforce_matches_analytic(s):
    for r in range(s + 1):
        assert min_distance_bruteforce(make_rm(s, r)) == 2 ** (s - r)


@pytest.mark.parametrize("q,n,m", [(5, 4, 3), (5, 4, 2), (8, 7, 5), (8, 7, 3), (16, 6, 2)])
def test_rs_is_mds(q, n, m):
    code = make_rs(get_field(q), n, m)
    assert code.d_min == n - m + 1
    assert min_distance_bruteforce(code) == n - m + 1


def test_rs_length_limit():
    with pytest.raises(ValueError):
        make_rs(get_field(8), 8, 3)


def test_generic_code_gets_bruteforce_distance():
    # [7,4,3] Hamming code
    g = [[1, 0, 0, 0, 1, 1, 0], [0, 1, 0, 0, 1, 0, 1], [0, 0, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]]
    code = from_matrix(Matrix(get_field(2), g))
    assert code.d_min is None and code.d_min_source == "unknown"
    v = verified(code)
    assert v.d_min == 3 and v.d_min_source == "brute-force"
    cw = min_weight_codeword(v)
    assert np.count_nonzero(cw) == 3


def test_rank_deficient_generator_rejected():
    with pytest.raises(ValueError):
        from_matrix(Matrix(get_field(2), [[1, 1, 0], [1, 1, 0]]))


def test_config_round_trip(tmp_path):
    for code in (make_rm(3, 1), make_rs(get_field(8), 7, 5)):
        again = code_from_config(code_to_config(code))
        assert again.generator == code.generator and again.d_min == code.d_min
    g = Matrix(get_field(3), [[1, 0, 1], [0, 1, 2]])
    write_matrix(tmp_path / "g.txt", g)
    code = code_from_config({"family": "generic", "matrix_file": "g.txt"}, tmp_path)
    assert code.generator == g
