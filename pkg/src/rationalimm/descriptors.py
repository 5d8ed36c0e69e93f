"""Descriptions of rational homotopy types as products of simple factors."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

THEOREMS = ("odd-codim", "even-codim", "general-target", "none")


@dataclass(frozen=True, order=True)
class EMFactor:
    """K(Q^rank, degree).  Ordering is by degree, then rank."""

    degree: int
    rank: int

    def __init__(self, rank: int, degree: int):
        if rank < 1:
            raise ValueError(f"rank must be positive, got {rank}")
        if degree < 1:
            raise ValueError(f"degree must be positive, got {degree}")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "rank", rank)

    def as_pair(self) -> tuple[int, int]:
        return (self.rank, self.degree)

    def __str__(self):
        return f"K(Q^{self.rank}, {self.degree})"

    def __repr__(self):
        return f"EMFactor(rank={self.rank}, degree={self.degree})"


def merge_factors(factors: Iterable[EMFactor]) -> tuple[EMFactor, ...]:
    """Combine factors of equal degree (K(Q^r,d) x K(Q^s,d) = K(Q^{r+s},d))."""
    total: dict[int, int] = defaultdict(int)
    for f in factors:
        total[f.degree] += f.rank
    return tuple(EMFactor(r, d) for d, r in sorted(total.items()))


def factors_from_pairs(pairs: Iterable[tuple[int, int]]) -> tuple[EMFactor, ...]:
    """Build factors from (rank, degree) pairs."""
    return tuple(EMFactor(r, d) for r, d in pairs)


@dataclass(frozen=True)
class ComponentDescriptor:
    """Product of mapping-space factors, an optional Map(M,S^k) and EM factors."""

    em_factors: tuple[EMFactor, ...] = ()
    sphere_factor: int | None = None
    component_independent: bool = True
    applicable_theorem: str = "none"
    notes: tuple[str, ...] = ()
    mapping_factors: tuple[str, ...] = ()

    def __post_init__(self):
        if self.applicable_theorem not in THEOREMS:
            raise ValueError(f"unknown theorem tag {self.applicable_theorem!r}")
        object.__setattr__(self, "em_factors", tuple(sorted(self.em_factors)))
        object.__setattr__(self, "notes", tuple(self.notes))
        object.__setattr__(self, "mapping_factors", tuple(self.mapping_factors))

    def pairs(self) -> list[tuple[int, int]]:
        """EM factors as (rank, degree) pairs."""
        return [f.as_pair() for f in self.em_factors]

    def rank_by_degree(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for f in self.em_factors:
            out[f.degree] += f.rank
        return dict(out)

    def factor_lines(self) -> list[str]:
        lines = list(self.mapping_factors)
        if self.sphere_factor is not None:
            lines.append(f"Map(M,S^{self.sphere_factor})")
        lines += [str(f) for f in self.em_factors]
        return lines

    def format(self) -> str:
        lines = self.factor_lines()
        lines.append(f"theorem: {self.applicable_theorem}")
        lines.append(f"component_independent: {str(self.component_independent).lower()}")
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines) + "\n"

    def __str__(self):
        return self.format()
