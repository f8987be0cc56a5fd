"""The torsion-free part of a Néron-Severi group as a small integral lattice.

On a primary Kodaira surface the intersection form on ``NS(X)/Tors`` is
even and negative definite, so ``Q(x) = -x.x`` is a positive definite
quadratic form.  The closest-vector problems needed here (ranks <= 3) are
solved exactly: rounding in rank 1, a proven box enumeration otherwise.

Vectors are plain tuples of ints (or Fractions for rational targets).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "NeronSeveriLattice",
    "pairing",
    "quadratic_norm",
    "min_on_shifted_lattice",
    "coset_min",
]

MAX_RANK = 3


def _det(m: Sequence[Sequence]) -> Fraction | int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * _det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(n)
    )


@dataclass(frozen=True)
class NeronSeveriLattice:
    """Even negative-definite Gram matrix together with the order ``d`` of
    the torsion subgroup (generated by the class of a fibre).

    The torsion is metadata: torsion classes pair to zero with everything
    and never enter the computations.
    """

    gram: tuple[tuple[int, ...], ...]
    torsion_order: int = 1

    def __post_init__(self):
        gram = tuple(tuple(int(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        n = len(gram)
        if n > MAX_RANK:
            raise ValueError(f"lattices of rank > {MAX_RANK} are not supported")
        if any(len(row) != n for row in gram):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
            if gram[i][i] % 2 or gram[i][i] > 0:
                raise ValueError("diagonal entries must be even and non-positive")
        for k in range(1, n + 1):
            minor = _det([row[:k] for row in gram[:k]])
            if (-1) ** k * minor <= 0:
                raise ValueError(
                    "Gram matrix must be negative definite "
                    "(semi-definite forms are not supported)"
                )
        if int(self.torsion_order) < 1:
            raise ValueError("torsion order must be >= 1")
        object.__setattr__(self, "torsion_order", int(self.torsion_order))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def check_vector(self, v: Sequence) -> tuple:
        v = tuple(v)
        if len(v) != self.rank:
            raise ValueError(f"vector {v} has length {len(v)}, lattice rank is {self.rank}")
        return v

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(row) for row in self.gram], "torsion": self.torsion_order}

    @classmethod
    def from_json(cls, obj: dict) -> NeronSeveriLattice:
        lat = cls(tuple(tuple(row) for row in obj["gram"]), obj.get("torsion", 1))
        if "rank" in obj and obj["rank"] != lat.rank:
            raise ValueError(f"declared rank {obj['rank']} does not match the Gram matrix")
        return lat


def pairing(lat: NeronSeveriLattice, v: Sequence, w: Sequence):
    """Intersection product ``v^T G w``."""
    v = lat.check_vector(v)
    w = lat.check_vector(w)
    return sum(v[i] * lat.gram[i][j] * w[j] for i in range(lat.rank) for j in range(lat.rank))


def quadratic_norm(lat: NeronSeveriLattice, x: Sequence) -> Fraction:
    """``Q(x) = -x.x``, positive for non-zero ``x``."""
    return Fraction(-pairing(lat, x, x))


def _ceil_sqrt_bound(b: Fraction) -> int:
    # integer s with s >= sqrt(b)
    return math.isqrt(math.ceil(b)) + 1


def _box_axis(t: Fraction, bound_sq: Fraction) -> range:
    s = _ceil_sqrt_bound(bound_sq)
    return range(math.floor(t) - s, math.ceil(t) + s + 1)


def min_on_shifted_lattice(
    lat: NeronSeveriLattice, target: Sequence
) -> tuple[Fraction, list[tuple[int, ...]]]:
    """Minimum of ``Q(target - alpha)`` over lattice points ``alpha``.

    Returns the minimum and all minimizers, sorted lexicographically.
    For rank 0 the answer is ``(0, [()])``.

    In rank >= 2 the search box comes from the value ``R`` at the rounded
    target: any ``x`` with ``Q(x) <= R`` has ``x_i^2 <= R * (A^-1)_ii``
    where ``A = -G``.
    """
    t = tuple(Fraction(x) for x in lat.check_vector(target))
    n = lat.rank
    if n == 0:
        return Fraction(0), [()]

    if n == 1:
        a = -lat.gram[0][0]
        lo = math.floor(t[0])
        cands = {lo: a * (t[0] - lo) ** 2, lo + 1: a * (t[0] - lo - 1) ** 2}
        best = min(cands.values())
        return best, [(k,) for k in sorted(cands) if cands[k] == best]

    A = [[-g for g in row] for row in lat.gram]
    det_a = _det(A)
    rounded = tuple(math.floor(x + Fraction(1, 2)) for x in t)
    radius = quadratic_norm(lat, [x - y for x, y in zip(t, rounded)])

    axes = []
    for i in range(n):
        sub = [row[:i] + row[i + 1 :] for k, row in enumerate(A) if k != i]
        bound_sq = radius * Fraction(_det(sub), det_a)
        axes.append([a for a in _box_axis(t[i], bound_sq) if (a - t[i]) ** 2 <= bound_sq])

    best = None
    found: list[tuple[int, ...]] = []
    for alpha in itertools.product(*axes):
        val = quadratic_norm(lat, [x - y for x, y in zip(t, alpha)])
        if best is None or val < best:
            best, found = val, [alpha]
        elif val == best:
            found.append(alpha)
    return best, sorted(found)


def coset_min(lat: NeronSeveriLattice, v0: Sequence[int], scale: int) -> tuple[tuple[int, ...], int]:
    """Shortest vector of the coset ``v0 + scale * NS``.

    Returns ``(v0 + scale * beta, (v0 + scale * beta)^2)`` with the largest
    self-intersection; ties go to the lexicographically smallest vector.
    """
    if scale < 1:
        raise ValueError("scale must be a positive integer")
    v0 = tuple(int(x) for x in lat.check_vector(v0))
    if lat.rank == 0:
        return (), 0
    # v0 + scale*beta = scale * (v0/scale - alpha) with alpha = -beta
    _, minimizers = min_on_shifted_lattice(lat, [Fraction(x, scale) for x in v0])
    best = min(tuple(x - scale * a for x, a in zip(v0, alpha)) for alpha in minimizers)
    return best, pairing(lat, best, best)
