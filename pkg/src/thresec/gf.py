"""Finite-field arithmetic over GF(p) and GF(2^e).

Field elements are plain integers in ``[0, q)``.  For GF(2^e) an integer
packs the polynomial coefficients little-endian in degree (bit i is the
coefficient of x^i).  All :class:`Field` methods accept Python ints or
NumPy integer arrays and broadcast like NumPy ufuncs.

:class:`FieldElement` is a thin scalar wrapper with operator overloading
that refuses to mix elements of different fields.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import FieldMismatchError

MAX_EXTENSION_DEGREE = 16
MAX_PRIME = 1 << 16

# Low-weight irreducible polynomials, bit i = coefficient of x^i.
DEFAULT_POLYNOMIALS = {
    1: 0b11,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_degree(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    dm = _poly_degree(m)
    while a and _poly_degree(a) >= dm:
        a ^= m << (_poly_degree(a) - dm)
    return a


def _clmul_mod(a: int, b: int, poly: int, e: int) -> int:
    r = 0
    top = 1 << e
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= poly
    return r


def is_irreducible_gf2(poly: int) -> bool:
    """Trial division by every polynomial of degree <= deg(poly)/2."""
    e = _poly_degree(poly)
    if e < 1:
        return False
    if e == 1:
        return True
    if not poly & 1:
        return False
    for d in range(1, e // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, g) == 0:
                return False
    return True


def _parse_poly(poly) -> int:
    if isinstance(poly, str):
        return int(poly, 0)
    return int(poly)


class Field:
    """GF(q) for q prime (< 2^16) or q = 2^e with 1 <= e <= 16.

    Parameters
    ----------
    q : int
        Field order.
    poly : int or str, optional
        Reduction polynomial for q = 2^e (e >= 2), bit i = coefficient of
        x^i, including the x^e term.  Defaults to a fixed low-weight table.
        Ignored (must be None) for prime q.

    Use :func:`get_field` to obtain cached instances.
    """

    def __init__(self, q: int, poly=None):
        q = int(q)
        if is_prime(q):
            if poly is not None:
                raise ValueError(f"GF({q}) is a prime field; no reduction polynomial")
            if q > MAX_PRIME:
                raise ValueError(f"prime fields are limited to q <= {MAX_PRIME}, got {q}")
            self.characteristic = q
            self.degree = 1
            self.poly = None
        else:
            e = q.bit_length() - 1
            if q < 2 or q != 1 << e or e > MAX_EXTENSION_DEGREE:
                raise ValueError(f"q must be prime or 2^e with e <= 16, got {q}")
            poly = DEFAULT_POLYNOMIALS[e] if poly is None else _parse_poly(poly)
            if _poly_degree(poly) != e:
                raise ValueError(f"polynomial {poly:#b} does not have degree {e}")
            if not is_irreducible_gf2(poly):
                raise ValueError(f"polynomial {poly:#b} is reducible")
            self.characteristic = 2
            self.degree = e
            self.poly = poly
        self.q = q
        self._build_tables()
        self._spot_check()

    # -- construction ----------------------------------------------------

    def _scalar_mul(self, a: int, b: int) -> int:
        if self.poly is None:
            return a * b % self.q
        return _clmul_mod(a, b, self.poly, self.degree)

    def _scalar_pow(self, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = self._scalar_mul(r, a)
            a = self._scalar_mul(a, a)
            k >>= 1
        return r

    def _build_tables(self):
        q = self.q
        if q == 2:
            alpha = 1
        else:
            factors = _prime_factors(q - 1)
            for alpha in range(2, q):
                if all(self._scalar_pow(alpha, (q - 1) // f) != 1 for f in factors):
                    break
            else:  # pragma: no cover - every finite field is cyclic
                raise RuntimeError("no primitive element found")
        self.alpha = alpha
        exp = np.zeros(2 * (q - 1), dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._scalar_mul(x, alpha)
        if x != 1 or len(set(exp[: q - 1].tolist())) != q - 1:
            raise RuntimeError(f"alpha={alpha} is not primitive in GF({q})")
        exp[q - 1:] = exp[: q - 1]
        exp.flags.writeable = False
        log.flags.writeable = False
        self._exp = exp
        self._log = log

    def _spot_check(self):
        rng = np.random.default_rng(self.q)
        a = rng.integers(1, self.q, size=256) if self.q > 2 else np.ones(1, dtype=np.int64)
        if not np.all(self.mul(a, self.inv(a)) == 1):
            raise RuntimeError(f"GF({self.q}) failed the inverse spot check")

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.q, self.poly) == (other.q, other.poly)

    def __hash__(self):
        return hash((self.q, self.poly))

    def __repr__(self):
        if self.poly is None:
            return f"GF({self.q})"
        return f"GF({self.q}, poly={self.poly:#b})"

    @property
    def is_prime_field(self) -> bool:
        return self.poly is None

    def to_config(self) -> dict:
        cfg = {"q": self.q}
        if self.poly is not None:
            cfg["poly"] = bin(self.poly)
        return cfg

    @staticmethod
    def from_config(cfg: dict) -> "Field":
        return get_field(int(cfg["q"]), cfg.get("poly"))

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, value)

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    # -- vectorised arithmetic ------------------------------------------

    def check(self, a):
        """Validate that ``a`` holds symbols of this field; returns an int64 array."""
        arr = np.asarray(a, dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= self.q):
            raise ValueError(f"values outside GF({self.q})")
        return arr

    def add(self, a, b):
        if self.poly is None:
            return (np.asarray(a) + b) % self.q if not _scalars(a, b) else (a + b) % self.q
        return np.bitwise_xor(a, b) if not _scalars(a, b) else a ^ b

    def sub(self, a, b):
        if self.poly is None:
            return (np.asarray(a) - b) % self.q if not _scalars(a, b) else (a - b) % self.q
        return np.bitwise_xor(a, b) if not _scalars(a, b) else a ^ b

    def neg(self, a):
        if self.poly is None:
            return (-np.asarray(a)) % self.q if not _scalars(a) else (-a) % self.q
        return a

    def mul(self, a, b):
        if self.poly is None:
            if _scalars(a, b):
                return a * b % self.q
            return (np.asarray(a, dtype=np.int64) * b) % self.q
        if _scalars(a, b):
            if a == 0 or b == 0:
                return 0
            return int(self._exp[self._log[a] + self._log[b]])
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def inv(self, a):
        if _scalars(a):
            if a == 0:
                raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
            return int(self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError(f"0 has no inverse in GF({self.q})")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        """a**k for integer k >= 0 (0**0 == 1)."""
        if _scalars(a):
            if k == 0:
                return 1
            if a == 0:
                return 0
            return int(self._exp[(self._log[a] * k) % (self.q - 1)])
        a = np.asarray(a, dtype=np.int64)
        if k == 0:
            return np.ones_like(a)
        r = self._exp[(self._log[a] * k) % (self.q - 1)]
        return np.where(a == 0, 0, r)

    def alpha_pow(self, i):
        """alpha**i for integer (array) i."""
        return self._exp[np.mod(i, self.q - 1)]

    def matmul(self, a, b):
        """Matrix product of int arrays over this field (no shape checks)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.poly is None:
            return (a @ b) % self.q
        out_shape = a.shape[:-1] + b.shape[1:]
        out = np.zeros(out_shape, dtype=np.int64)
        for j in range(a.shape[-1]):
            out ^= self.mul(a[..., j, None], b[j])
        return out


def _scalars(*xs) -> bool:
    return all(isinstance(x, (int, np.integer)) for x in xs)


@lru_cache(maxsize=None)
def _cached_field(q: int, poly) -> Field:
    return Field(q, poly)


def get_field(q: int, poly=None) -> Field:
    """Return the (cached) field of order ``q``."""
    q = int(q)
    if poly is not None:
        poly = _parse_poly(poly)
        if not is_prime(q) and poly == DEFAULT_POLYNOMIALS.get(q.bit_length() - 1):
            poly = None
    return _cached_field(q, poly)


class FieldElement:
    """A single element of a :class:`Field` with arithmetic operators."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        value = int(value)
        if not 0 <= value < field.q:
            raise ValueError(f"{value} is not an element of {field!r}")
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return FieldElement(self.field, other).value
        return NotImplemented

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, v)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return self._wrap(self.field.pow(self.value, k))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __int__(self):
        return self.value

    __index__ = __int__

    def __repr__(self):
        return f"{self.field!r}({self.value})"


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()
