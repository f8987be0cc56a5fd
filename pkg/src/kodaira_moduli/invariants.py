"""Discriminant, t-invariant and the classification of moduli spaces.

For Chern data ``(r, c1, c2)`` on a primary Kodaira surface the moduli
space of stable sheaves with fixed determinant is non-empty of dimension
``2 r^2 Delta`` whenever ``Delta >= 0``, and it is a compact holomorphic
symplectic manifold when ``0 <= Delta < t``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .exactmath import rat_to_json
from .lattice import NeronSeveriLattice, coset_min, min_on_shifted_lattice, pairing

__all__ = [
    "ChernData",
    "ModuliReport",
    "discriminant",
    "t_invariant",
    "classify",
    "normalize_rank2",
    "construct_example",
    "spectral_genus",
    "example_parameter",
]

RANK1_NOTE = "rank 1: the moduli space is the Douady space X^[c2]; t is 0 by convention"


@dataclass(frozen=True)
class ChernData:
    r: int
    c1: tuple[int, ...]
    c2: int
    c1_torsion: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(x) for x in self.c1))
        if int(self.r) < 1:
            raise ValueError("rank must be >= 1")

    def to_json(self) -> dict:
        return {"r": self.r, "c1": list(self.c1), "c2": self.c2, "c1_torsion": self.c1_torsion}

    @classmethod
    def from_json(cls, obj: dict) -> ChernData:
        return cls(obj["r"], tuple(obj["c1"]), obj["c2"], obj.get("c1_torsion", 0))


@dataclass(frozen=True)
class ModuliReport:
    """Numerical data of ``M_{r, delta, c2}``.

    ``dim`` is ``None`` when the moduli space is empty (``Delta < 0``).
    """

    r: int
    delta: Fraction
    t: Fraction
    dim: int | None
    stably_irreducible: bool
    smooth_compact: bool
    normalized: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def empty(self) -> bool:
        return self.dim is None

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "delta": rat_to_json(self.delta),
            "t": rat_to_json(self.t),
            "dim": "EMPTY" if self.dim is None else self.dim,
            "stably_irreducible": self.stably_irreducible,
            "smooth_compact": self.smooth_compact,
            "normalized": self.normalized,
            "notes": list(self.notes),
        }


def _c1_square(lat: NeronSeveriLattice, ch: ChernData) -> int:
    return pairing(lat, ch.c1, ch.c1)


def discriminant(lat: NeronSeveriLattice, ch: ChernData) -> Fraction:
    r = ch.r
    return Fraction(1, r) * (ch.c2 - Fraction(r - 1, 2 * r) * _c1_square(lat, ch))


def t_invariant(lat: NeronSeveriLattice, r: int, c1: Sequence[int]) -> Fraction:
    """Half the minimum over ``0 < k < r`` of ``min_alpha Q(k c1 / r - alpha) / (k (r - k))``.

    Only ``k <= r // 2`` is swept: the summand is unchanged under
    ``k -> r - k``.  Rank 1 returns 0.
    """
    if r < 1:
        raise ValueError("rank must be >= 1")
    c1 = lat.check_vector(c1)
    if r == 1:
        return Fraction(0)
    best = None
    for k in range(1, r // 2 + 1):
        m, _ = min_on_shifted_lattice(lat, [Fraction(k * x, r) for x in c1])
        val = m / (k * (r - k))
        if best is None or val < best:
            best = val
    return best / 2


def classify(lat: NeronSeveriLattice, ch: ChernData) -> ModuliReport:
    r = ch.r
    delta = discriminant(lat, ch)
    t = t_invariant(lat, r, ch.c1)
    c1sq = _c1_square(lat, ch)
    dim = None if delta < 0 else 2 * r * ch.c2 - (r - 1) * c1sq
    notes: tuple[str, ...] = ()
    if r == 1:
        # rank-1 torsion-free sheaves have no subsheaf of lower positive rank
        irreducible = delta >= 0
        notes = (RANK1_NOTE,)
    else:
        irreducible = 0 <= delta < t
    normalized = r == 2 and c1sq == -8 * t
    return ModuliReport(r, delta, t, dim, irreducible, irreducible, normalized, notes)


def normalize_rank2(lat: NeronSeveriLattice, ch: ChernData) -> tuple[ChernData, tuple[int, ...]]:
    """Twist a rank-2 datum into normal form ``c1^2 = -8 t(2, c1)``.

    Tensoring by a line bundle with free class ``beta`` sends ``c1`` to
    ``c1 + 2 beta`` and ``c2`` to ``c2 + beta.c1 + beta^2``.  Returns the
    new datum and ``beta``; data already in normal form come back unchanged
    with ``beta = 0``.
    """
    if ch.r != 2:
        raise PreconditionError("normalization is only defined for rank 2")
    c1_new, best = coset_min(lat, ch.c1, 2)
    if pairing(lat, ch.c1, ch.c1) == best:
        # already minimal: keep c1 rather than jump to the tie-break representative
        return ch, lat.zero()
    beta = tuple((a - b) // 2 for a, b in zip(c1_new, ch.c1))
    c2_new = ch.c2 + pairing(lat, beta, ch.c1) + pairing(lat, beta, beta)
    return ChernData(2, c1_new, c2_new, ch.c1_torsion), beta


def example_parameter(n: int, r: int) -> int:
    """``rn - n + r``: minus half the self-intersection of the generator."""
    return r * n - n + r


def construct_example(n: int, r: int) -> tuple[NeronSeveriLattice, ChernData]:
    """Chern data on a rank-1 Néron-Severi lattice whose moduli space is
    compact holomorphic symplectic of dimension ``2n``.

    The lattice has generator ``a`` with ``a^2 = -2(rn - n + r)`` and
    ``c2 = 2n - rn - r + 1``; then ``Delta = n / r^2`` and
    ``t = n / r^2 + 1 / (r (r - 1))``.
    """
    if n < 0:
        raise PreconditionError("n must be non-negative")
    if r < 2:
        raise PreconditionError("r must be >= 2")
    m = example_parameter(n, r)
    lat = NeronSeveriLattice(((-2 * m,),), m)
    return lat, ChernData(r, (1,), 2 * n - r * n - r + 1)


def spectral_genus(lat: NeronSeveriLattice, ch: ChernData) -> int:
    """Arithmetic genus ``4 Delta + 1`` of the spectral curve of a rank-2 sheaf."""
    if ch.r != 2:
        raise PreconditionError("spectral genus is defined for rank 2")
    delta = discriminant(lat, ch)
    if delta < 0:
        raise PreconditionError(f"negative discriminant {delta}")
    g = 4 * delta + 1
    if g.denominator != 1:
        raise PreconditionError(f"4*Delta is not integral (Delta = {delta})")
    return int(g)
