"""Sullivan models of Stiefel bundles and their fibres.

Run with ``python3 demos/stiefel_fibres.py``.
"""

from rationalimm.cgda import check_d_squared, check_morphism, cohomology_dims
from rationalimm.charclasses import ClassVanishingProfile
from rationalimm.expr import dump
from rationalimm.stiefel import (
    build_stiefel_model,
    build_universal_model,
    check_rational_triviality,
    fiber_model,
    stiefel_manifold_em_type,
)

# The relative model for m = 2, k = 2, with symbolic classes of xi and eta.
spec = build_stiefel_model(2, 2)
print(dump(spec.full_model), end="")
print("d^2 = 0:", bool(check_d_squared(spec.full_model)))

# Over a point the model is one of V_m(R^{m+k}).  Its cohomology matches the
# product of spheres and EM spaces predicted for the Stiefel manifold.
for m, k in [(2, 3), (2, 2), (3, 3), (3, 4)]:
    H = cohomology_dims(fiber_model(m, k), 2 * (m + k))
    t = stiefel_manifold_em_type(m, k)
    parts = ([f"S^{t.sphere_factor}"] if t.sphere_factor else []) + [str(f) for f in t.em_factors]
    print(f"V_{m}(R^{m + k}): H = {H}; type {' x '.join(parts)}")

# Rational triviality once the dual classes (and for even k the Euler class) vanish.
spec = build_stiefel_model(2, 2)
for prof in [ClassVanishingProfile(), ClassVanishingProfile(False, 1), ClassVanishingProfile(True, 1)]:
    print(prof, "->", check_rational_triviality(spec, prof))

# The comparison map between the two universal models commutes with the
# differentials only for the corrected relation.
for variant in ("corrected", "printed"):
    _, _, phi = build_universal_model(2, 3, variant)
    print(f"phi ({variant}):", check_morphism(phi))
