# Finite fields and the codes the schemes are built from.
import numpy as np

from thresec import get_field, make_rm, make_rs, min_distance_bruteforce
from thresec.linalg import Matrix, inverse, rank

# GF(8) uses x^3 + x + 1; alpha = x has order 7
f = get_field(8)
print("GF(8) poly:", bin(f.poly), "alpha:", f.alpha)
print("powers of alpha:", [int(f.alpha_pow(i)) for i in range(7)])
print("x * x^2 =", f.mul(2, 4), " 1/x =", f.inv(2))

# matrices are immutable and use the row-vector convention x @ A
a = Matrix(f, [[1, 2, 3], [0, 1, 4], [5, 0, 1]])
print("rank:", rank(a))
print("A^-1 @ A == I:", inverse(a) @ a == Matrix.identity(f, 3))

# Reed-Muller codes: rows of the Kronecker power kept by weight
for s, r in [(3, 1), (4, 2), (5, 3)]:
    code = make_rm(s, r)
    print(code.describe(), "brute-force d_min:", min_distance_bruteforce(code))

# Reed-Solomon is MDS: d_min = n - m + 1
rs = make_rs(get_field(8), 7, 5)
print(rs.describe(), "brute-force d_min:", min_distance_bruteforce(rs))

msg = np.array([1, 0, 3, 7, 2])
print("RS codeword of", msg, "->", rs.encode(msg))
