# Encoding with a shared key and decoding three ways.
import numpy as np

from thresec import build_scheme, decode_generic, decode_rs_fast, decode_sc, encode, get_field, make_rm, make_rs

rng = np.random.default_rng(1)

# RM(4,2): 11 message bits ride with 5 key bits; any 3 inputs stay hidden
s = build_scheme(make_rm(4, 2))
print(f"n={s.n} m={s.m} k={s.k} t={s.t}")
print("message rows A:", s.A)
print("key rows A_c:  ", s.A_c)

msg = rng.integers(0, 2, s.m)
key = rng.integers(0, 2, s.k)
c = encode(s, msg, key)
print("message: ", msg)
print("codeword:", c)

# Gaussian elimination and successive cancellation agree
print("generic:", decode_generic(s, c, key))
print("SC:     ", decode_sc(s, c, key))

# a wrong key silently yields a different message
wrong = key ^ 1
print("wrong key ->", decode_generic(s, c, wrong))

# Reed-Solomon: message on the first m rows, inverse Vandermonde decoder
rs = build_scheme(make_rs(get_field(8), 7, 5))
m8 = rng.integers(0, 8, (4, rs.m))
k8 = rng.integers(0, 8, (4, rs.k))
c8 = encode(rs, m8, k8)
print("RS t =", rs.t, "| fast decode matches:", np.array_equal(decode_rs_fast(rs, c8, k8), m8))
