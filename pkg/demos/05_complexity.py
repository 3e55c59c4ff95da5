# Counting field operations: SC decoding is n log n, Vandermonde inversion m^2.
import numpy as np

from thresec import get_field, instrument
from thresec.codebook import rm_row_split
from thresec.linalg import vandermonde_inverse
from thresec.rm_sc import rm_transform, sc_decode
from thresec.symbols import ERASURE

print("  n      SC xors   per n log2 n")
for s in range(8, 16):
    _, removed = rm_row_split(s, s // 2)
    u = np.random.default_rng(s).integers(0, 2, 2 ** s)
    z = rm_transform(u)
    z[removed] = ERASURE
    with instrument.count_ops() as ops:
        sc_decode(u[removed], z, removed)
    print(f"{2 ** s:6d} {ops.total:10d}   {ops.total / (2 ** s * s):.2f}")

f = get_field(2 ** 16)
prev = None
print("  m   inverse ops   ratio")
for m in (16, 32, 64, 128, 256):
    with instrument.count_ops() as ops:
        vandermonde_inverse(f, f.alpha_pow(np.arange(m)))
    ratio = "" if prev is None else f"{ops.total / prev:.2f}"
    print(f"{m:4d} {ops.total:12d}   {ratio}")
    prev = ops.total
