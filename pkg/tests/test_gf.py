import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from thresec.errors import FieldMismatchError
from thresec.gf import DEFAULT_POLYNOMIALS, Field, get_field, is_irreducible_gf2, is_prime


def slow_gf2_mul(a, b, poly, e):
    # schoolbook carry-less product then reduction, bit by bit
    prod = 0
    for i in range(e):
        if (b >> i) & 1:
            prod ^= a << i
    for d in range(2 * e - 2, e - 1, -1):
        if (prod >> d) & 1:
            prod ^= poly << (d - e)
    return prod


FIELDS = [2, 3, 4, 5, 7, 8, 16, 31, 256, 257]


def test_small_primes():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_default_polynomials_are_irreducible():
    for e, poly in DEFAULT_POLYNOMIALS.items():
        assert poly.bit_length() == e + 1
        if e >= 2:
            assert is_irreducible_gf2(poly)
    assert not is_irreducible_gf2(0b101)  # x^2 + 1 = (x+1)^2


@pytest.mark.parametrize("q", [4, 8, 16, 32, 256])
def test_binary_extension_mul_matches_schoolbook(q):
    f = get_field(q)
    e = f.degree
    a, b = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    got = f.mul(a, b)
    want = np.array([[slow_gf2_mul(x, y, f.poly, e) for y in range(q)] for x in range(q)])
    assert np.array_equal(got, want)


@pytest.mark.parametrize("q", [3, 5, 7, 31, 257])
def test_prime_field_matches_modular_arithmetic(q):
    f = get_field(q)
    x = np.arange(q)
    assert np.array_equal(f.mul(x[:, None], x[None, :]), (x[:, None] * x[None, :]) % q)
    assert np.array_equal(f.add(x[:, None], x[None, :]), (x[:, None] + x[None, :]) % q)
    nz = x[1:]
    assert np.array_equal(f.inv(nz), np.array([pow(int(v), q - 2, q) for v in nz]))


@pytest.mark.parametrize("q", FIELDS)
def test_alpha_is_primitive(q):
    f = get_field(q)
    powers = {int(f.alpha_pow(i)) for i in range(q - 1)}
    assert powers == set(range(1, q))


def test_gf8_worked_values():
    f = get_field(8)
    # x^3 = x + 1 under x^3 + x + 1
    assert f.mul(2, 4) == 3
    assert f.inv(2) == 5  # x * (x^2 + 1) = x^3 + x = 1
    assert f.add(6, 3) == 5


def test_gf2_alpha_is_one():
    assert get_field(2).alpha == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        get_field(8).inv(0)


def test_rejects_bad_orders_and_values():
    for q in (1, 6, 12, 2 ** 17):
        with pytest.raises(ValueError):
            Field(q)
    with pytest.raises(ValueError):
        get_field(5).check([0, 5])
    with pytest.raises(ValueError):
        Field(16, poly=0b10101)  # reducible


def test_field_elements_refuse_mixing():
    a = get_field(5)(3)
    b = get_field(7)(3)
    with pytest.raises(FieldMismatchError):
        a + b
    assert int(a * a) == 4
    assert int(a / a) == 1


def test_get_field_is_cached_and_config_round_trips():
    f = get_field(16)
    assert get_field(16) is f
    assert Field.from_config(f.to_config()) == f


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(q, data):
    f = get_field(q)
    el = st.integers(0, q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.sub(f.add(a, b), b) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1
        assert f.div(f.mul(a, b), a) == b
        assert f.pow(a, q - 1) == 1


def test_matmul_matches_scalar_loop(rng):
    for q in (5, 16):
        f = get_field(q)
        a = rng.integers(0, q, (4, 6))
        b = rng.integers(0, q, (6, 3))
        want = np.zeros((4, 3), dtype=np.int64)
        for i in range(4):
            for j in range(3):
                acc = 0
                for l in range(6):
                    acc = f.add(acc, f.mul(a[i, l], b[l, j]))
                want[i, j] = acc
        assert np.array_equal(f.matmul(a, b), want)
