import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thresec import instrument
from thresec.errors import (
    FieldMismatchError,
    InconsistentSystemError,
    NonUniqueSolutionError,
    SingularMatrixError,
)
from thresec.gf import get_field
from thresec.linalg import (
    Matrix,
    inverse,
    kernel_f2,
    kron_power,
    nullspace,
    parse_matrix,
    format_matrix,
    rank,
    read_matrix,
    solve,
    vandermonde,
    vandermonde_inverse,
    write_matrix,
)


def brute_rank(field, a):
    # rank = log_q of the number of distinct vectors in the row space
    q = field.q
    rows = a.shape[0]
    span = set()
    for coeffs in itertools.product(range(q), repeat=rows):
        span.add(tuple(field.matmul(np.array(coeffs)[None, :], a)[0]))
    return round(np.log(len(span)) / np.log(q))


def test_row_vector_convention():
    f = get_field(5)
    a = Matrix(f, [[1, 2], [3, 4]])
    x = solve(a, [1, 0])
    assert np.array_equal(f.matmul(x[None, :], a.data)[0], [1, 0])


def test_rank_matches_span_count(rng):
    for q in (2, 3, 4):
        f = get_field(q)
        for _ in range(15):
            a = rng.integers(0, q, (rng.integers(1, 5), rng.integers(1, 5)))
            assert rank(Matrix(f, a)) == brute_rank(f, a)


def test_inconsistent_and_nonunique():
    f = get_field(2)
    a = Matrix(f, [[1, 1], [1, 1]])
    with pytest.raises(InconsistentSystemError):
        solve(a, [1, 0])
    with pytest.raises(NonUniqueSolutionError) as info:
        solve(a, [1, 1])
    assert info.value.rank == 1
    x = solve(a, [1, 1], allow_nonunique=True)
    assert np.array_equal(f.matmul(x[None, :], a.data)[0], [1, 1])


def test_batch_right_hand_sides(rng):
    f = get_field(7)
    a = Matrix(f, rng.integers(0, 7, (4, 4)))
    while rank(a) < 4:
        a = Matrix(f, rng.integers(0, 7, (4, 4)))
    x = rng.integers(0, 7, (10, 4))
    b = f.matmul(x, a.data)
    assert np.array_equal(solve(a, b), x)


def test_inverse_and_singular():
    f = get_field(8)
    a = Matrix(f, [[1, 2], [3, 4]])
    assert inverse(a) @ a == Matrix.identity(f, 2)
    with pytest.raises(SingularMatrixError):
        inverse(Matrix(f, [[1, 2], [1, 2]]))


def test_nullspace_is_right_kernel(rng):
    f = get_field(3)
    for _ in range(10):
        a = Matrix(f, rng.integers(0, 3, (3, 6)))
        ns = nullspace(a)
        assert ns.rows == 6 - rank(a)
        assert not (a @ ns.T).data.any()


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Matrix(get_field(2), [[1]]) @ Matrix(get_field(3), [[1]])


def test_kron_power_of_binary_kernel():
    f2 = kron_power(kernel_f2(), 2)
    assert f2.tolist() == [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [1, 1, 1, 1]]
    assert kron_power(kernel_f2(), 0).tolist() == [[1]]


@pytest.mark.parametrize("q,m", [(5, 3), (5, 4), (8, 5), (16, 7), (257, 9)])
def test_vandermonde_inverse_matches_gauss_jordan(q, m):
    f = get_field(q)
    pts = f.alpha_pow(np.arange(m))
    v = vandermonde(f, pts)
    assert vandermonde_inverse(f, pts) == inverse(v)


def test_vandermonde_inverse_repeated_points():
    f = get_field(7)
    with pytest.raises(SingularMatrixError):
        vandermonde_inverse(f, [1, 2, 2])


def test_vandermonde_inverse_op_count_is_quadratic():
    f = get_field(2 ** 16)
    counts = []
    for m in (64, 128, 256):
        with instrument.count_ops() as ops:
            vandermonde_inverse(f, f.alpha_pow(np.arange(m)))
        counts.append(ops.total)
    assert counts[1] / counts[0] <= 4.5
    assert counts[2] / counts[1] <= 4.5


def test_text_format_round_trip(tmp_path):
    f = get_field(16)
    a = Matrix(f, [[0, 15, 3], [7, 1, 2]])
    assert parse_matrix(format_matrix(a)) == a
    write_matrix(tmp_path / "a.txt", a)
    assert read_matrix(tmp_path / "a.txt") == a
    assert format_matrix(a).splitlines()[0].split()[:3] == ["2", "3", "16"]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 8]), st.integers(1, 5), st.data())
def test_solve_recovers_x_for_invertible_a(q, n, data):
    f = get_field(q)
    seed = data.draw(st.integers(0, 2 ** 31))
    r = np.random.default_rng(seed)
    a = Matrix(f, r.integers(0, q, (n, n)))
    x = r.integers(0, q, n)
    b = f.matmul(x[None, :], a.data)[0]
    if rank(a) == n:
        assert np.array_equal(solve(a, b), x)
    else:
        with pytest.raises(NonUniqueSolutionError):
            solve(a, b)
