"""Dual Pontryagin classes and what they say about immersions.

Run with ``python3 demos/dual_classes.py``.
"""

from rationalimm import charclasses as cc

# The dual classes invert the total Pontryagin class.
p = cc.universal_pontryagin(4)
dual = cc.dual_total_class(p, 4)
for i in range(1, 5):
    print(f"dual_{i} = {dual[i]}")
print("p * dual =", cc.whitney_sum_total(p, dual, 4))

# For an immersion M^m -> R^{m+k} the normal bundle has rank k, so its
# Pontryagin classes stop at index (k-1)//2.  They equal the dual classes of M.
for m, k in [(4, 3), (8, 3), (8, 5)]:
    nu = cc.normal_bundle_classes(m, k, cc.dual_total_class(cc.universal_pontryagin(m // 4), m // 4))
    print(f"m={m}, k={k}:", nu if isinstance(nu, cc.ObstructionReport) else f"p(normal) = {nu}")

# The relation between the classes a_i, f_i and the dual classes, in both
# forms.  The printed form leaves a residual; the corrected form vanishes.
for variant in ("printed", "corrected"):
    print(cc.verify_ahl_identity(2, 3, 2, variant=variant))
    print(cc.verify_ahl_identity(2, 2, 1, variant=variant))
