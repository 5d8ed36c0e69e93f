"""Rational homotopy ranks of immersion components.

Run with ``python3 demos/immersion_series.py``.
"""

import warnings

from rationalimm.immersion import (
    check_hypotheses,
    imm_component,
    paper_discrepancy,
    series_report,
)
from rationalimm.manifolds import lookup

# Odd codimension: a product of EM spaces depending only on the Betti numbers.
for name, k in [("S2", 3), ("CP2", 3), ("S3", 3)]:
    M = lookup(name)
    print(f"Imm({name}, R^{M.dim + k}):", ", ".join(imm_component(M, k).factor_lines()))

# The printed closed form for odd k disagrees with the expansion; the
# discrepancy is a fixed factor, checked exactly.
for line in series_report(lookup("CP2"), 3, 16, "paper"):
    print(line)
d = paper_discrepancy(lookup("S3xS4"), 5)
print(d.predicted_relation, "->", "holds" if d.relation_holds else "fails")

# Even codimension needs e(tau_M) = 0.
print(check_hypotheses(lookup("CP2"), 2).format(), end="")

# For S3xS3 with k = 4 the sphere-map part R(x) has negative coefficients.
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    print(series_report(lookup("S3xS3"), 4, 20)[0])
for w in caught:
    print("warning:", w.message)
