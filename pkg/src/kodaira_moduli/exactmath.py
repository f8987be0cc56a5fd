"""Exact rationals and truncated bivariate integer power series.

Rationals are :class:`fractions.Fraction`, which already keeps values
reduced with a positive denominator.  The series type is a small immutable
table of integer coefficients in two variables ``q`` and ``t``, each with
its own truncation degree.
"""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterator, Mapping

Rat = Fraction

__all__ = [
    "Rat",
    "rat_to_json",
    "rat_from_json",
    "TruncatedSeries2",
    "series_mul",
    "series_binomial_pow",
]


def rat_to_json(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rat_from_json(obj) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    if isinstance(obj, bool):
        raise TypeError("boolean is not a rational")
    if isinstance(obj, (int, str)):
        return Fraction(obj)
    raise TypeError(f"cannot read a rational from {obj!r}")


class TruncatedSeries2:
    """Power series in ``q`` and ``t`` with integer coefficients, modulo
    ``q^(max_q+1)`` and ``t^(max_t+1)``.

    Instances are immutable.  Binary operations truncate to the smaller of
    the two bounds in each variable.
    """

    __slots__ = ("_max_q", "_max_t", "_coeffs")

    def __init__(self, max_q: int, max_t: int, coeffs: Mapping[tuple[int, int], int] | None = None):
        if max_q < 0 or max_t < 0:
            raise ValueError("truncation bounds must be non-negative")
        table = {}
        for (i, j), c in (coeffs or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent {(i, j)}")
            if i <= max_q and j <= max_t and c:
                table[(i, j)] = table.get((i, j), 0) + int(c)
        self._max_q = int(max_q)
        self._max_t = int(max_t)
        self._coeffs = MappingProxyType({k: v for k, v in table.items() if v})

    @classmethod
    def one(cls, max_q: int, max_t: int) -> TruncatedSeries2:
        return cls(max_q, max_t, {(0, 0): 1})

    @property
    def max_q(self) -> int:
        return self._max_q

    @property
    def max_t(self) -> int:
        return self._max_t

    @property
    def coefficients(self) -> Mapping[tuple[int, int], int]:
        return self._coeffs

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if i > self._max_q or j > self._max_t:
            raise IndexError(f"{key} is beyond the truncation ({self._max_q}, {self._max_t})")
        return self._coeffs.get((i, j), 0)

    def q_coefficient(self, i: int) -> list[int]:
        """Coefficient of ``q^i`` as a list of ``t``-coefficients ``0..max_t``."""
        return [self[i, j] for j in range(self._max_t + 1)]

    def truncate(self, max_q: int, max_t: int) -> TruncatedSeries2:
        return TruncatedSeries2(min(max_q, self._max_q), min(max_t, self._max_t), self._coeffs)

    def __iter__(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._coeffs.items()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        return (self._max_q, self._max_t) == (other._max_q, other._max_t) and dict(self._coeffs) == dict(
            other._coeffs
        )

    def __hash__(self):
        return hash((self._max_q, self._max_t, frozenset(self._coeffs.items())))

    def _bounds(self, other: TruncatedSeries2) -> tuple[int, int]:
        return min(self._max_q, other._max_q), min(self._max_t, other._max_t)

    def __add__(self, other: TruncatedSeries2) -> TruncatedSeries2:
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return TruncatedSeries2(*self._bounds(other), out)

    def __neg__(self) -> TruncatedSeries2:
        return TruncatedSeries2(self._max_q, self._max_t, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: TruncatedSeries2) -> TruncatedSeries2:
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: TruncatedSeries2) -> TruncatedSeries2:
        if not isinstance(other, TruncatedSeries2):
            return NotImplemented
        return series_mul(self, other)

    def __repr__(self) -> str:
        terms = []
        for (i, j), c in self:
            mono = "".join(
                f"{v}^{e}" if e > 1 else v for v, e in (("q", i), ("t", j)) if e
            )
            terms.append(f"{c}{'*' + mono if mono else ''}")
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries2({body}; max_q={self._max_q}, max_t={self._max_t})"


def series_mul(a: TruncatedSeries2, b: TruncatedSeries2) -> TruncatedSeries2:
    mq, mt = a._bounds(b)
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in a.coefficients.items():
        if i1 > mq or j1 > mt:
            continue
        for (i2, j2), c2 in b.coefficients.items():
            i, j = i1 + i2, j1 + j2
            if i <= mq and j <= mt:
                out[(i, j)] = out.get((i, j), 0) + c1 * c2
    return TruncatedSeries2(mq, mt, out)


def series_binomial_pow(
    qexp: int, texp: int, sign: int, exponent: int, max_q: int, max_t: int
) -> TruncatedSeries2:
    """Expand ``(1 - sign * q^qexp * t^texp) ** exponent`` up to ``(max_q, max_t)``.

    ``exponent`` may be negative; the generalized binomial coefficients are
    produced by ``c[i+1] = c[i] * (exponent - i) / (i + 1)``, which divides
    exactly at every step.
    """
    if qexp < 1:
        raise ValueError("qexp must be >= 1, otherwise the expansion does not truncate")
    if texp < 0:
        raise ValueError("texp must be non-negative")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")

    out = {}
    c = 1  # binom(exponent, i)
    i = 0
    while i * qexp <= max_q and i * texp <= max_t and c != 0:
        out[(i * qexp, i * texp)] = c * (-sign) ** i
        c = c * (exponent - i) // (i + 1)
        i += 1
    return TruncatedSeries2(max_q, max_t, out)
