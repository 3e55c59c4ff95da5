# Exact audits by enumerating every (message, key) pair.
import math

import numpy as np

from thresec import audit, build_scheme, from_matrix, get_field, make_rm
from thresec.linalg import Matrix

s = build_scheme(make_rm(4, 2))
print("I(key; c)      =", audit.audit_key_security(s))
print("H(m | c)       =", audit.audit_eve_equivocation(s), "bits (k = 5)")
print("H(m | c, key)  =", audit.audit_reliability(s))

res = audit.audit_threshold(s, s.t)
print(f"threshold t={s.t}: {res.subsets_checked} subsets, max deviation {res.max_deviation}")

# a weight-4 codeword pins the threshold: these 4 inputs leak one bit
wit = audit.audit_threshold_maximality(s)
print("witness", wit.witness, "leaks", wit.deviation, "bit")

# one key for two messages still reveals nothing about the key
print("I(key; c1, c2) on RM(2,1) =", audit.audit_key_reuse(build_scheme(make_rm(2, 1)), 2))

# a broken layout: message rows 0 and 1 are parallel over GF(3)
W = np.array([[1, 0], [2, 0], [0, 1], [1, 1]])
bad = build_scheme(from_matrix(Matrix(get_field(3), W.T)), A=[0, 1], strict=False)
print(bad.warnings)
rep = audit.run_audit(bad)
print("failed claims:", rep.failed_claims)
print("key leak:", rep.I_key_codeword, "= log2(3) =", math.log2(3))
