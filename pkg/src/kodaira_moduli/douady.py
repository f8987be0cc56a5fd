"""Douady spaces of points ``X^[n]`` and their comparison with the moduli
spaces ``M_{2,delta,c2}``.

Betti numbers come from the product formula

    sum_n p(X^[n], t) q^n
        = prod_{k>=1} prod_{j=0..4} (1 - (-t)^(2k-2+j) q^k)^((-1)^(j+1) b_j(X))

evaluated in truncated power series.  Truncating the product at ``k = n``
already gives every ``q^i`` coefficient with ``i <= n`` correctly.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .exactmath import TruncatedSeries2, rat_to_json, series_binomial_pow
from .graphspace import rank2_delta
from .invariants import ChernData
from .lattice import NeronSeveriLattice

__all__ = [
    "SurfaceBetti",
    "KODAIRA",
    "goettsche_series",
    "douady_betti",
    "GroupDescriptor",
    "douady_pi1",
    "BaseComparison",
    "compare_bases",
    "douady2_fibration_census",
]


@dataclass(frozen=True)
class SurfaceBetti:
    """Betti numbers ``b0..b4`` of a compact complex surface."""

    b: tuple[int, int, int, int, int]

    def __post_init__(self):
        b = tuple(int(x) for x in self.b)
        if len(b) != 5:
            raise ValueError("a surface has exactly five Betti numbers b0..b4")
        if b[0] != 1 or b[4] != 1:
            raise ValueError("b0 and b4 must be 1 for a compact connected surface")
        if b[1] != b[3]:
            raise ValueError("Poincare duality requires b1 == b3")
        if any(x < 0 for x in b):
            raise ValueError("Betti numbers are non-negative")
        object.__setattr__(self, "b", b)


KODAIRA = SurfaceBetti((1, 3, 4, 3, 1))


def goettsche_series(sb: SurfaceBetti, max_n: int) -> TruncatedSeries2:
    """Generating series of Poincaré polynomials of ``X^[n]``, ``n <= max_n``."""
    if max_n < 0:
        raise ValueError("max_n must be non-negative")
    max_t = 4 * max_n
    prod = TruncatedSeries2.one(max_n, max_t)
    for k in range(1, max_n + 1):
        for j, bj in enumerate(sb.b):
            if bj == 0:
                continue
            texp = 2 * k - 2 + j
            # (-t)^texp = (-1)^texp * t^texp
            sign = -1 if texp % 2 else 1
            exponent = (-1) ** (j + 1) * bj
            prod = prod * series_binomial_pow(k, texp, sign, exponent, max_n, max_t)
    return prod


def douady_betti(sb: SurfaceBetti, n: int) -> list[int]:
    """Betti numbers ``b_0 .. b_{4n}`` of ``X^[n]``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return goettsche_series(sb, n).q_coefficient(n)


@dataclass(frozen=True)
class GroupDescriptor:
    """Finitely generated abelian group ``Z^free_rank + sum Z/d``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def douady_pi1(d: int, n: int) -> GroupDescriptor:
    """``pi1(X^[n]) = H1(X, Z) = Z^3 + Z/d`` for ``n >= 1``."""
    if n < 1:
        raise PreconditionError("pi1 of X^[n] is only recorded for n >= 1")
    if d < 1:
        raise ValueError("torsion order must be positive")
    return GroupDescriptor(3, (d,) if d > 1 else ())


@dataclass(frozen=True)
class BaseComparison:
    delta: Fraction
    applicable: bool
    iso_to_symB_possible: bool | None
    sym_power: int | None
    statement: str

    def to_json(self) -> dict:
        return {
            "delta": rat_to_json(self.delta),
            "applicable": self.applicable,
            "iso_to_symB_possible": self.iso_to_symB_possible,
            "sym_power": self.sym_power,
            "statement": self.statement,
        }


def compare_bases(lat: NeronSeveriLattice, ch: ChernData) -> BaseComparison:
    """Can ``P_{delta,c2}`` be the base ``Sym^n(B)`` of the Lagrangian
    fibration of ``X^[n]`` with ``n = 4 Delta``?

    ``Sym^n(B)`` is the projectivization of a stable bundle of rank ``n``
    and degree -1, which matches the graph-space bundle only when it is a
    line bundle, i.e. ``Delta = 1/4``.  Whether the two are actually
    isomorphic then is left open (reported as possible).
    """
    delta = rank2_delta(lat, ch)
    n = int(4 * delta)
    if delta == 0:
        return BaseComparison(delta, False, None, None, "not applicable: finite base of 2 points")
    if delta == Fraction(1, 4):
        return BaseComparison(delta, True, True, n, "possible: the only case where the bundle ranks agree; isomorphism not decided")
    return BaseComparison(
        delta, True, False, n, f"never biholomorphic to Sym^{n}(B) for Delta >= 1/2"
    )


_DOUADY2_CENSUS = {
    "surface": "X^[2]",
    "fibration": "X^[2] -> Sym^2(B)",
    "generic": {
        "over": "(b1, b2) with b1 != b2",
        "fibre": "T x T",
        "dim": 2,
        "components": 1,
    },
    "special": {
        "over": "(b, b) on the diagonal",
        "components": [
            {"name": "P(T_X|_{T_b})", "dim": 2},
            {"name": "Sym^2(T)", "dim": 2, "structure": "ruled surface over Pic^2(T) = T"},
        ],
        "intersection": "diagonal of Sym^2(T) glued to the section P(T_{X/B}|_{T_b})",
    },
}


def douady2_fibration_census() -> dict:
    """Fibres of the natural Lagrangian fibration ``X^[2] -> Sym^2(B)``."""
    return copy.deepcopy(_DOUADY2_CENSUS)
