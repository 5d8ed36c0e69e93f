"""Sullivan models of Stiefel bundles and of the universal situation.

For oriented bundles xi (rank m) over X and eta (rank m+k) over Y, the
bundle of fibrewise linear injections xi -> eta has fibre V_m(R^{m+k}).
Its relative model adds to the models of X and Y the generators

* abar_l of degree 4l-1 for integers ceil(k/2) <= l <= floor((m+k-1)/2),
* ek of degree k when k is even,
* ebar of degree m+k-1 when m+k is even,

with D abar_{k/2} = p_{k/2}(eta) - ek^2 - dual_{k/2}(xi),
D abar_l = p_l(eta) - dual_l(xi) for l > k/2 and
D ebar = e(eta) - e(xi) ek (ek read as 0 for odd k).

Characteristic classes are passed in as :class:`BundleClasses`; by default
they are independent closed generators, which is the formal universal case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .cgda import (
    CgdaMorphism,
    Element,
    FreeCGDA,
    FreeGCA,
    Generator,
    _tensor_with_maps,
    apply_differential,
    is_split_trivial,
)
from .charclasses import ClassVanishingProfile, TotalClass, dual_total_class
from .descriptors import ComponentDescriptor, EMFactor, merge_factors
from .errors import InvalidDegrees


def abar_range(m: int, k: int) -> range:
    """Integers l with ceil(k/2) <= l <= floor((m+k-1)/2) and l >= 1."""
    return range(max((k + 1) // 2, 1), (m + k - 1) // 2 + 1)


@dataclass
class BundleClasses:
    """Characteristic classes of a bundle inside a model of its base.

    ``pontryagin`` maps l to the class used in the abar_l differential: the
    dual class for the source bundle xi, the ordinary class for eta.  Missing
    entries are zero.  ``euler`` is None when the Euler class is zero.
    """

    model: FreeCGDA
    pontryagin: dict[int, Element] = field(default_factory=dict)
    euler: Element | None = None

    @classmethod
    def trivial(cls) -> BundleClasses:
        """Classes of a bundle over a point."""
        return cls(FreeCGDA([]))

    def zeroed(self, pontryagin_from: int | None = None, euler: bool = False) -> BundleClasses:
        """Copy with classes of index >= pontryagin_from (and the Euler class) set to 0."""
        pont = {
            l: c for l, c in self.pontryagin.items() if pontryagin_from is None or l < pontryagin_from
        }
        return BundleClasses(self.model, pont, None if euler else self.euler)


def formal_classes(
    role: str,
    m: int,
    k: int,
    *,
    zero_pontryagin_from: int | None = None,
    zero_euler: bool = False,
) -> BundleClasses:
    """Independent closed symbols for the classes entering the model.

    ``role="xi"`` gives dual classes pt{l}_xi of degree 4l and e_xi of degree
    m (m even, m >= 2).  ``role="eta"`` gives p{l}_eta and e_eta of degree m+k
    (m+k even).  Only indices l in the abar range get symbols.
    """
    if role == "xi":
        pname, edeg = "pt{}_xi", m
        ename = "e_xi"
    elif role == "eta":
        pname, edeg = "p{}_eta", m + k
        ename = "e_eta"
    else:
        raise ValueError(f"role must be 'xi' or 'eta', not {role!r}")
    idx = [l for l in abar_range(m, k) if zero_pontryagin_from is None or l < zero_pontryagin_from]
    gens = [(pname.format(l), 4 * l) for l in idx]
    has_euler = edeg >= 2 and edeg % 2 == 0 and not zero_euler
    if has_euler:
        gens.append((ename, edeg))
    model = FreeCGDA(gens)
    pont = {l: model.gen(pname.format(l)) for l in idx}
    return BundleClasses(model, pont, model.gen(ename) if has_euler else None)


@dataclass
class StiefelModelSpec:
    m: int
    k: int
    base_model: FreeCGDA
    target_model: FreeCGDA
    new_generators: tuple[Generator, ...]
    full_model: FreeCGDA
    base_names: tuple[str, ...]
    target_names: tuple[str, ...]
    new_names: tuple[str, ...]
    xi: BundleClasses
    eta: BundleClasses

    def differential_table(self) -> list[tuple[str, int, Element]]:
        """(name, degree, D) for the new generators."""
        A = self.full_model
        return [(n, A.degree(n), A.d(n)) for n in self.new_names]


def _check_degree(what: str, e: Element | None, degree: int, model: FreeCGDA):
    if e is None:
        return
    if e.ring != model.ring:
        raise InvalidDegrees(f"{what} does not live in its model")
    for mono in e.terms:
        if model.ring.mono_degree(mono) != degree:
            raise InvalidDegrees(f"{what} = {e} should have degree {degree}")
    if apply_differential(model, e):
        raise InvalidDegrees(f"{what} = {e} is not closed")


def build_stiefel_model(
    m: int, k: int, xi: BundleClasses | None = None, eta: BundleClasses | None = None
) -> StiefelModelSpec:
    """Relative model of the Stiefel bundle built from the classes of xi and eta."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be non-negative")
    xi = formal_classes("xi", m, k) if xi is None else xi
    eta = formal_classes("eta", m, k) if eta is None else eta
    for l, c in xi.pontryagin.items():
        _check_degree(f"dual class {l} of xi", c, 4 * l, xi.model)
    for l, c in eta.pontryagin.items():
        _check_degree(f"class {l} of eta", c, 4 * l, eta.model)
    _check_degree("Euler class of xi", xi.euler, m, xi.model)
    _check_degree("Euler class of eta", eta.euler, m + k, eta.model)

    both, inc_x, inc_y = _tensor_with_maps(xi.model, eta.model)
    new: list[tuple[str, int]] = [(f"abar{l}", 4 * l - 1) for l in abar_range(m, k)]
    has_ek = k % 2 == 0 and k >= 2
    if has_ek:
        new.append(("ek", k))
    if (m + k) % 2 == 0 and m + k >= 2:
        new.append(("ebar", m + k - 1))
    clash = {n for n, _ in new} & set(both.names)
    if clash:
        raise ValueError(f"base or target uses reserved generator names {sorted(clash)}")

    full = both.extend(new, {})
    R = full.ring

    def lift(e: Element | None) -> Element:
        # both -> full is the inclusion by name
        if e is None:
            return R.zero()
        return Element(R, {_rename(both.ring, R, m_): c for m_, c in e.terms.items()})

    ek = R.gen("ek") if has_ek else (R.one() if k == 0 else R.zero())
    diff: dict[str, Element] = {}
    for l in abar_range(m, k):
        d = lift(inc_y(eta.pontryagin[l]) if l in eta.pontryagin else None)
        d = d - lift(inc_x(xi.pontryagin[l]) if l in xi.pontryagin else None)
        if has_ek and 2 * l == k:
            d = d - ek * ek
        diff[f"abar{l}"] = d
    if "ebar" in R.index:
        e_eta = lift(inc_y(eta.euler) if eta.euler is not None else None)
        # a rank 0 bundle has Euler class 1
        e_xi = R.one() if m == 0 else lift(inc_x(xi.euler) if xi.euler is not None else None)
        diff["ebar"] = e_eta - e_xi * ek
    full = full.with_differential(diff)

    xi_names = tuple(inc_x.image(n).generators_used().pop() for n in xi.model.names)
    eta_names = tuple(inc_y.image(n).generators_used().pop() for n in eta.model.names)
    return StiefelModelSpec(
        m=m,
        k=k,
        base_model=xi.model,
        target_model=eta.model,
        new_generators=tuple(full.ring.generator(n) for n, _ in new),
        full_model=full,
        base_names=xi_names,
        target_names=eta_names,
        new_names=tuple(n for n, _ in new),
        xi=xi,
        eta=eta,
    )


def _rename(src: FreeGCA, dst: FreeGCA, mono):
    return tuple(sorted((dst.index[src.generators[i].name], e) for i, e in mono))


def check_rational_triviality(spec: StiefelModelSpec, profile: ClassVanishingProfile) -> bool:
    """Does the model split over the base once the profile's vanishing is imposed?"""
    zero_from = 1 if profile.p_zero_all else profile.dual_p_zero_from
    xi = spec.xi.zeroed(zero_from, euler=profile.euler_zero and spec.m != 0)
    rebuilt = build_stiefel_model(spec.m, spec.k, xi, spec.eta)
    fiber = set(rebuilt.target_names) | set(rebuilt.new_names)
    return is_split_trivial(rebuilt.full_model, set(rebuilt.base_names), fiber)


def fiber_model(m: int, k: int, eta: BundleClasses | None = None) -> FreeCGDA:
    """Model of V_m(eta) -> Y: the Stiefel model over a point base."""
    eta = BundleClasses.trivial() if eta is None else eta
    return build_stiefel_model(m, k, BundleClasses.trivial(), eta).full_model


def fiber_splits(m: int, k: int, eta: BundleClasses | None = None) -> bool:
    """True when the fibre model is (model of Y) tensor a class-free algebra."""
    eta = BundleClasses.trivial() if eta is None else eta
    spec = build_stiefel_model(m, k, BundleClasses.trivial(), eta)
    return is_split_trivial(spec.full_model, set(spec.target_names), set(spec.new_names))


def build_universal_model(m: int, k: int, variant: str = "corrected"):
    """The pair of models (A1, A1') and the comparison map phi: A1 -> A1'.

    A1 is generated by a_i (deg 4i), emk (deg m+k), abar_l, p_t (deg 4t),
    em (deg m), ek (deg k) and ebar.  A1' has p_t, em, b_j (deg 4j,
    j <= (k-1)/2), ek, x_i (deg 4i-1), ebar, a_i, emk with
    D x_i = a_i - sum_{t+j=i} p_t b_j (b_{k/2} = ek^2) and
    D ebar = emk - em ek in both.  phi(abar_l) = -sum_{j=1}^{l} dual_{l-j} x_j
    and phi is the identity on the shared generators.

    ``variant="corrected"`` uses D abar_l = B_l - sum_{j=0}^{l} dual_{l-j} a_j
    (a_0 = 1, B_l = ek^2 for l = k/2, else 0), which makes phi commute with
    the differentials.  ``variant="printed"`` uses D abar_l = a_l - dual_l
    (+ ek^2 for l = k/2).
    """
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    top_a = (m + k - 1) // 2
    a_gens = [(f"a{i}", 4 * i) for i in range(1, top_a + 1)]
    p_gens = [(f"p{t}", 4 * t) for t in range(1, (m - 1) // 2 + 1)]
    b_gens = [(f"b{j}", 4 * j) for j in range(1, (k - 1) // 2 + 1)]
    x_gens = [(f"x{i}", 4 * i - 1) for i in range(1, top_a + 1)]
    abar = [(f"abar{l}", 4 * l - 1) for l in abar_range(m, k)]
    emk = [("emk", m + k)] if (m + k) % 2 == 0 and m + k >= 2 else []
    em = [("em", m)] if m % 2 == 0 and m >= 2 else []
    ek = [("ek", k)] if k % 2 == 0 and k >= 2 else []
    ebar = [("ebar", m + k - 1)] if emk else []

    ring1 = FreeGCA(a_gens + emk + abar + p_gens + em + ek + ebar)
    ring2 = FreeGCA(p_gens + em + b_gens + ek + x_gens + ebar + a_gens + emk)

    def euler_prod(ring):
        e_m = ring.gen("em") if em else (ring.one() if m == 0 else ring.zero())
        e_k = ring.gen("ek") if ek else (ring.one() if k == 0 else ring.zero())
        return e_m * e_k

    def duals(ring):
        p = TotalClass(ring, {t: ring.gen(f"p{t}") for t in range(1, len(p_gens) + 1)}, max(top_a, 1))
        return dual_total_class(p, max(top_a, 1))

    def square_term(ring, l):
        return ring.gen("ek") ** 2 if ek and 2 * l == k else ring.zero()

    dual1 = duals(ring1)
    d1: dict[str, Element] = {}
    for l in abar_range(m, k):
        if variant == "corrected":
            val = square_term(ring1, l) - dual1[l]
            for j in range(1, l + 1):
                val = val - dual1[l - j] * ring1.gen(f"a{j}")
        else:
            val = ring1.gen(f"a{l}") - dual1[l] + square_term(ring1, l)
        d1[f"abar{l}"] = val
    if ebar:
        d1["ebar"] = ring1.gen("emk") - euler_prod(ring1)
    A1 = FreeCGDA(ring1, d1)

    d2: dict[str, Element] = {}
    p2 = TotalClass(ring2, {t: ring2.gen(f"p{t}") for t in range(1, len(p_gens) + 1)}, max(top_a, 1))
    b_comps = {j: ring2.gen(f"b{j}") for j in range(1, len(b_gens) + 1)}
    if ek and k // 2 <= top_a:
        b_comps[k // 2] = ring2.gen("ek") ** 2
    b2 = TotalClass(ring2, b_comps, max(top_a, 1))
    for i in range(1, top_a + 1):
        val = ring2.gen(f"a{i}")
        for t in range(0, i + 1):
            val = val - p2[t] * b2[i - t]
        d2[f"x{i}"] = val
    if ebar:
        d2["ebar"] = ring2.gen("emk") - euler_prod(ring2)
    A1p = FreeCGDA(ring2, d2)

    dual2 = duals(ring2)
    assignment: dict[str, Element] = {}
    for g in ring1.generators:
        if g.name.startswith("abar"):
            l = int(g.name[4:])
            val = ring2.zero()
            for j in range(1, l + 1):
                val = val - dual2[l - j] * ring2.gen(f"x{j}")
            assignment[g.name] = val
        else:
            assignment[g.name] = ring2.gen(g.name)
    phi = CgdaMorphism(A1, A1p, assignment)
    return A1, A1p, phi


def stiefel_manifold_em_type(m: int, k: int) -> ComponentDescriptor:
    """Rational type of V_m(R^{m+k}) as K(Q^r, d) factors and possibly S^k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if m == 0:
        return ComponentDescriptor(notes=("V_0 is a point",))
    degrees: list[int] = []
    sphere = None
    if k % 2 == 1:
        top = (m + k) // 2 if m % 2 == 0 else (m + k - 1) // 2
        degrees += [4 * l - 1 for l in range((k + 1) // 2, top + 1)]
        if m % 2 == 1:
            degrees.append(m + k - 1)
    else:
        degrees += [4 * l - 1 for l in range(k // 2 + 1, (m + k - 1) // 2 + 1)]
        sphere = k
        if m % 2 == 0:
            degrees.append(m + k - 1)
    return ComponentDescriptor(
        em_factors=merge_factors(EMFactor(1, d) for d in degrees),
        sphere_factor=sphere,
    )


def free_algebra_dims(even_degrees, odd_degrees, top: int) -> dict[int, int]:
    """Graded dimensions of a free graded-commutative algebra through ``top``."""
    dims = [0] * (top + 1)
    dims[0] = 1
    for d in even_degrees:
        for n in range(d, top + 1):
            dims[n] += dims[n - d]
    for d in odd_degrees:
        for n in range(top, d - 1, -1):
            dims[n] += dims[n - d]
    return {n: c for n, c in enumerate(dims) if c}


def em_type_cohomology(m: int, k: int, top: int) -> dict[int, int]:
    """Cohomology dimensions predicted by :func:`stiefel_manifold_em_type`.

    Odd K(Q,d) factors are exterior generators; a sphere factor S^k (k even)
    contributes the truncated algebra Q[x]/x^2.
    """
    desc = stiefel_manifold_em_type(m, k)
    odd = [f.degree for f in desc.em_factors for _ in range(f.rank) if f.degree % 2]
    even = [f.degree for f in desc.em_factors for _ in range(f.rank) if f.degree % 2 == 0]
    dims = free_algebra_dims(even, odd, top)
    if desc.sphere_factor is not None:
        s = desc.sphere_factor
        out: dict[int, int] = {}
        for n, c in dims.items():
            out[n] = out.get(n, 0) + c
            if n + s <= top:
                out[n + s] = out.get(n + s, 0) + c
        dims = out
    return dims
