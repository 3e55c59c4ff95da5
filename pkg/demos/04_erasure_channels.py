# Surviving erasures: concatenation and the unified RM scheme.
import itertools
from collections import Counter

import numpy as np

from thresec import build_concat, build_scheme, build_unified, concat_decode, concat_encode
from thresec import dec_be, from_matrix, get_field, make_rm, unified_encode
from thresec.errors import DecodingFailure
from thresec.linalg import Matrix
from thresec.robust import bec_transmit, erase_positions, inject_errors

rng = np.random.default_rng(4)
F2 = get_field(2)

# outer RM(2,1) scheme, inner [7,3,4] simplex code
simplex = Matrix(F2, [[1, 0, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 1, 1], [0, 0, 1, 0, 1, 1, 1]])
cs = build_concat(build_scheme(make_rm(2, 1)), from_matrix(simplex))
msg, key = np.array([1, 0, 1]), np.array([1])
c = concat_encode(cs, msg, key)
y = erase_positions(c, [0, 4, 6])
print("concat: sent", c, "received", y.symbols, "->", concat_decode(cs, y, key))
z = inject_errors(c, [2], F2, seed=1)
print("one flipped bit ->", concat_decode(cs, z, key))

# unified RM(4,2): c = u G^T G, decoded by one SC pass
us = build_unified(4, 2)
print(f"unified RM(4,2): n={us.n} m={us.m} k={us.k} corrects up to {us.D_min - 1} erasures")
msg = rng.integers(0, 2, us.m)
key = rng.integers(0, 2, us.k)
c = unified_encode(us, msg, key)
ok = 0
for pos in itertools.combinations(range(16), 3):
    u, h = dec_be(key, erase_positions(c, pos), us.A_c, 4, 2)
    ok += np.array_equal(u[list(us.A)], msg)
print("all 560 three-erasure patterns decoded:", ok == 560)

# on a BEC(0.3) the decoder succeeds exactly when rho <= 3
hist, wins = Counter(), Counter()
for trial in range(2000):
    y = bec_transmit(c, 0.3, seed=trial)
    hist[y.rho] += 1
    try:
        u, _ = dec_be(key, y, us.A_c, 4, 2)
        wins[y.rho] += np.array_equal(u[list(us.A)], msg)
    except DecodingFailure:
        pass
for rho in sorted(hist):
    print(f"rho={rho:2d}  trials={hist[rho]:4d}  decoded={wins[rho]:4d}")
