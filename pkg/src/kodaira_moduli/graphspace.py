"""Structure of the space of graphs ``P_{delta,c2}``, the base of the
Lagrangian fibration of a rank-2 moduli space.

Everything here is symbolic: ranks, degrees, dimensions and product
decompositions over the base curve ``B``.  ``P_{delta,c2}`` is two points
when ``Delta = 0`` and otherwise the projectivization of a bundle of rank
``4 Delta`` on ``B``, which is stable of degree -2 when ``4 Delta`` is odd
and a sum of two stable bundles of degree -1 when it is even.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .invariants import ChernData, discriminant
from .lattice import NeronSeveriLattice, pairing

__all__ = [
    "GraphKind",
    "BundleKind",
    "BundleDescriptor",
    "GraphSpaceDescriptor",
    "StratumDescriptor",
    "rank2_delta",
    "graph_space",
    "strata",
]


class GraphKind(str, enum.Enum):
    FINITE_POINTS = "FINITE_POINTS"
    PROJ_BUNDLE = "PROJ_BUNDLE"


class BundleKind(str, enum.Enum):
    SINGLE_STABLE = "SINGLE_STABLE"
    SUM_TWO_STABLE = "SUM_TWO_STABLE"


@dataclass(frozen=True)
class BundleDescriptor:
    kind: BundleKind
    ranks: tuple[int, ...]
    degrees: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "ranks": list(self.ranks), "degrees": list(self.degrees)}


@dataclass(frozen=True)
class GraphSpaceDescriptor:
    kind: GraphKind
    total_dim: int
    ambient_bundle_degree: int
    bundle: BundleDescriptor | None = None
    count: int | None = None
    base: str = "B"

    @property
    def label(self) -> str:
        if self.kind is GraphKind.FINITE_POINTS:
            return f"{self.count} points"
        fibre_dim = self.total_dim - 1
        if fibre_dim == 0:
            return "B"
        if fibre_dim == 1:
            return "ruled surface over B"
        return f"P^{fibre_dim}-bundle over B"

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "count": self.count,
            "base": None if self.kind is GraphKind.FINITE_POINTS else self.base,
            "bundle": self.bundle.to_json() if self.bundle else None,
            "ranks": list(self.bundle.ranks) if self.bundle else [],
            "degrees": list(self.bundle.degrees) if self.bundle else [],
            "total_dim": self.total_dim,
            "ambient_bundle_degree": self.ambient_bundle_degree,
            "label": self.label,
        }


@dataclass(frozen=True)
class StratumDescriptor:
    """Locus ``P^k`` of graphs with exactly ``k`` jumps, isomorphic to
    ``P^0_{delta,c2-k} x Sym^k(B)``."""

    k: int
    dim: int
    factor_base: GraphSpaceDescriptor
    sym_factor: str
    sym_dim: int

    @property
    def codim(self) -> int:
        return self.k

    @property
    def product_label(self) -> str:
        if self.k == 0:
            return self.factor_base.label
        sym = "B" if self.k == 1 else self.sym_factor
        return f"{self.factor_base.label} x {sym}"

    @property
    def is_bisection(self) -> bool:
        """Two points times ``B``: a bi-section of ``P_{delta,c2} -> B``."""
        return self.k == 1 and self.factor_base.kind is GraphKind.FINITE_POINTS

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "codim": self.codim,
            "dim": self.dim,
            "factor_base": self.factor_base.to_json(),
            "sym_factor": self.sym_factor,
            "sym_dim": self.sym_dim,
            "product": self.product_label,
            "bisection": self.is_bisection,
        }


def rank2_delta(lat: NeronSeveriLattice, ch: ChernData) -> Fraction:
    """Discriminant of rank-2 data, checked to be a non-negative quarter-integer."""
    if ch.r != 2:
        raise PreconditionError("graph spaces are defined for rank 2")
    delta = discriminant(lat, ch)
    if delta < 0:
        raise PreconditionError(f"negative discriminant {delta}")
    if (4 * delta).denominator != 1:
        raise PreconditionError(f"4*Delta is not integral (Delta = {delta})")
    return delta


def _graph_space_for(delta: Fraction, c1sq: int) -> GraphSpaceDescriptor:
    four_delta = int(4 * delta)
    degree = -c1sq // 2
    if four_delta == 0:
        return GraphSpaceDescriptor(GraphKind.FINITE_POINTS, 0, degree, count=2)
    if four_delta % 2:
        bundle = BundleDescriptor(BundleKind.SINGLE_STABLE, (four_delta,), (-2,))
    else:
        half = four_delta // 2
        bundle = BundleDescriptor(BundleKind.SUM_TWO_STABLE, (half, half), (-1, -1))
    return GraphSpaceDescriptor(GraphKind.PROJ_BUNDLE, four_delta, degree, bundle=bundle)


def graph_space(lat: NeronSeveriLattice, ch: ChernData) -> GraphSpaceDescriptor:
    delta = rank2_delta(lat, ch)
    return _graph_space_for(delta, pairing(lat, ch.c1, ch.c1))


def strata(lat: NeronSeveriLattice, ch: ChernData) -> list[StratumDescriptor]:
    """Jump filtration ``P = P^0 u ... u P^floor(2 Delta)``."""
    delta = rank2_delta(lat, ch)
    c1sq = pairing(lat, ch.c1, ch.c1)
    four_delta = int(4 * delta)
    out = []
    for k in range(math.floor(2 * delta) + 1):
        # lowering c2 by k lowers Delta by k/2
        base = _graph_space_for(delta - Fraction(k, 2), c1sq)
        out.append(StratumDescriptor(k, four_delta - k, base, f"Sym^{k}(B)", k))
    return out
