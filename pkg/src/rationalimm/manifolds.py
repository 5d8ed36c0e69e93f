"""Manifold data: validation, a small JSON file format and a built-in catalog.

A manifold is described by its rational Betti numbers plus explicit flags
about its characteristic classes, since those cannot be read off the Betti
numbers.  File example::

    {"name": "S2", "dim": 2, "betti": [1, 0, 1],
     "simply_connected": true, "closed": true, "euler_zero": false,
     "dual_pontryagin_zero_from": 1, "pontryagin_all_zero": true}
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from .charclasses import ClassVanishingProfile
from .errors import ParseError, ValidationError
from .series import GradedDims


@dataclass(frozen=True)
class ManifoldData:
    name: str
    dim: int
    betti: GradedDims
    simply_connected: bool
    closed: bool
    profile: ClassVanishingProfile = ClassVanishingProfile()

    def __post_init__(self):
        if not isinstance(self.betti, GradedDims):
            object.__setattr__(self, "betti", _betti_from_list(self.betti))
        validate(self)

    @property
    def betti_list(self) -> list[int]:
        return self.betti.as_list(self.dim)

    def b(self, i: int) -> int:
        """Betti number b_i, zero outside 0..dim."""
        return self.betti[i] if 0 <= i <= self.dim else 0

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in self.betti.items)

    @property
    def euler_zero(self) -> bool:
        return self.profile.euler_zero

    def is_rationally_trivial(self) -> bool:
        """Rationally a point: no cohomology above degree 0."""
        return self.betti.total() == 1

    def with_changes(self, **changes) -> ManifoldData:
        fields = dict(
            name=self.name,
            dim=self.dim,
            betti=self.betti,
            simply_connected=self.simply_connected,
            closed=self.closed,
            profile=self.profile,
        )
        fields.update(changes)
        return ManifoldData(**fields)


def _betti_from_list(values: Sequence[int]) -> GradedDims:
    for i, v in enumerate(values):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError("betti", f"b{i} = {v!r} is not an integer")
        if v < 0:
            raise ValidationError("betti", f"b{i} = {v} is negative")
    return GradedDims.from_list(list(values))


def validate(M: ManifoldData) -> None:
    if not isinstance(M.dim, int) or isinstance(M.dim, bool) or M.dim < 0:
        raise ValidationError("dim", f"dimension must be a non-negative integer, got {M.dim!r}")
    if M.betti.max_degree > M.dim:
        raise ValidationError("betti", f"nonzero Betti number above the dimension {M.dim}")
    if M.betti[0] != 1:
        raise ValidationError("betti", f"b0 must be 1 (connected), got {M.betti[0]}")
    if M.simply_connected and M.betti[1] != 0:
        raise ValidationError("betti", f"b1 = {M.betti[1]} but the manifold is declared simply connected")
    if M.closed:
        for i in range(M.dim + 1):
            if M.betti[i] != M.betti[M.dim - i]:
                raise ValidationError(
                    "betti",
                    f"duality fails: b{i} = {M.betti[i]} but b{M.dim - i} = {M.betti[M.dim - i]}",
                )


# -- file format -------------------------------------------------------------

REQUIRED = ("name", "dim", "betti", "simply_connected", "closed", "euler_zero")
OPTIONAL = ("dual_pontryagin_zero_from", "pontryagin_all_zero")


def _expect(obj, key, kind):
    v = obj[key]
    if kind is int:
        ok = isinstance(v, int) and not isinstance(v, bool)
    else:
        ok = isinstance(v, kind)
    if not ok:
        raise ValidationError(key, f"expected {kind.__name__}, got {type(v).__name__}")
    return v


def parse_manifold(text: str) -> ManifoldData:
    """Read and validate a manifold file."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("a manifold file must contain a single JSON object")
    unknown = sorted(set(obj) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise ValidationError(unknown[0], "unknown field")
    for key in REQUIRED:
        if key not in obj:
            raise ValidationError(key, "missing required field")
    name = _expect(obj, "name", str)
    dim = _expect(obj, "dim", int)
    betti = _expect(obj, "betti", list)
    if len(betti) != dim + 1:
        raise ValidationError("betti", f"length {len(betti)} but dim + 1 = {dim + 1}")
    sc = _expect(obj, "simply_connected", bool)
    closed = _expect(obj, "closed", bool)
    euler_zero = _expect(obj, "euler_zero", bool)
    zero_from = None
    if obj.get("dual_pontryagin_zero_from") is not None:
        zero_from = _expect(obj, "dual_pontryagin_zero_from", int)
        if zero_from < 1:
            raise ValidationError("dual_pontryagin_zero_from", "must be >= 1")
    p_zero = _expect(obj, "pontryagin_all_zero", bool) if "pontryagin_all_zero" in obj else False
    if dim < 0:
        raise ValidationError("dim", "must be non-negative")
    return ManifoldData(
        name=name,
        dim=dim,
        betti=_betti_from_list(betti),
        simply_connected=sc,
        closed=closed,
        profile=ClassVanishingProfile(euler_zero, zero_from, p_zero),
    )


def format_manifold(M: ManifoldData) -> str:
    obj = {
        "name": M.name,
        "dim": M.dim,
        "betti": M.betti_list,
        "simply_connected": M.simply_connected,
        "closed": M.closed,
        "euler_zero": M.profile.euler_zero,
    }
    if M.profile.dual_p_zero_from is not None:
        obj["dual_pontryagin_zero_from"] = M.profile.dual_p_zero_from
    obj["pontryagin_all_zero"] = M.profile.p_zero_all
    return json.dumps(obj, indent=2) + "\n"


# -- catalog -----------------------------------------------------------------

_PARALLELIZABLE = dict(dual_p_zero_from=1, p_zero_all=True)


def sphere(n: int) -> ManifoldData:
    if n < 2:
        raise ValueError("catalog spheres start at S2")
    betti = [0] * (n + 1)
    betti[0] = betti[n] = 1
    return ManifoldData(
        f"S{n}", n, betti, True, True, ClassVanishingProfile(euler_zero=n % 2 == 1, **_PARALLELIZABLE)
    )


def projective(n: int) -> ManifoldData:
    """CP^n: total Pontryagin class (1+x^2)^{n+1}, so only degree bounds kill dual classes."""
    if n < 1:
        raise ValueError("CP^n needs n >= 1")
    betti = [1 if i % 2 == 0 else 0 for i in range(2 * n + 1)]
    profile = ClassVanishingProfile(
        euler_zero=False, dual_p_zero_from=n // 2 + 1, p_zero_all=(n == 1)
    )
    return ManifoldData(f"CP{n}", 2 * n, betti, True, True, profile)


def sphere_product(p: int, q: int) -> ManifoldData:
    if p < 2 or q < 2:
        raise ValueError("catalog sphere products need p, q >= 2")
    betti = [0] * (p + q + 1)
    betti[0] += 1
    betti[p] += 1
    betti[q] += 1
    betti[p + q] += 1
    chi = (1 + (-1) ** p) * (1 + (-1) ** q)
    return ManifoldData(
        f"S{p}xS{q}", p + q, betti, True, True, ClassVanishingProfile(euler_zero=chi == 0, **_PARALLELIZABLE)
    )


def point() -> ManifoldData:
    return ManifoldData("point", 0, [1], True, True, ClassVanishingProfile(euler_zero=False, **_PARALLELIZABLE))


def euclidean(n: int) -> ManifoldData:
    """R^n as an immersion target: contractible, open, trivial tangent bundle."""
    if n < 1:
        raise ValueError("R^n needs n >= 1")
    return ManifoldData(
        f"R{n}", n, [1] + [0] * n, True, False, ClassVanishingProfile(euler_zero=True, **_PARALLELIZABLE)
    )


CATALOG_NAMES = (
    "point",
    "S2", "S3", "S4", "S5", "S6", "S7",
    "CP1", "CP2", "CP3", "CP4",
    "S2xS2", "S2xS3", "S2xS4", "S3xS3", "S3xS4", "S4xS4",
)


def catalog() -> list[ManifoldData]:
    """Built-in closed simply connected manifolds, in a fixed order."""
    return [lookup(n) for n in CATALOG_NAMES]


def lookup(name: str) -> ManifoldData:
    """Catalog entry by name: point, S<n>, CP<n>, S<p>xS<q>, R<n>."""
    if name == "point":
        return point()
    m = re.fullmatch(r"S(\d+)", name)
    if m:
        return sphere(int(m.group(1)))
    m = re.fullmatch(r"CP(\d+)", name)
    if m:
        return projective(int(m.group(1)))
    m = re.fullmatch(r"S(\d+)xS(\d+)", name)
    if m:
        return sphere_product(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"R(\d+)", name)
    if m:
        return euclidean(int(m.group(1)))
    raise KeyError(f"no catalog manifold named {name!r}")
