"""Fibres of the graph map, bookkeeping for elementary modifications, and
the topology flags of rank-2 moduli spaces.

Points of the base curve ``B`` are opaque labels (strings).  Whether a
point is the image of a ramification point of a bisection is supplied by
the caller; no curves are represented.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import InvariantBreach, PreconditionError
from .exactmath import rat_to_json
from .graphspace import rank2_delta
from .invariants import ChernData, classify, discriminant
from .lattice import NeronSeveriLattice

__all__ = [
    "SheafRecord",
    "allowable_modification",
    "positive_modification",
    "double_dual",
    "ComponentKind",
    "ComponentDescriptor",
    "FibreDescriptor",
    "fibre_descriptor",
    "nu_tuples",
    "bisection_genus",
    "TopologyReport",
    "topology_report",
]


@dataclass(frozen=True)
class SheafRecord:
    """Numerical shadow of a rank-2 torsion-free sheaf.

    ``jumps`` holds ``(label, multiplicity)`` pairs, kept sorted by label;
    ``sing_length`` is the length of ``E^vv / E``; ``base_twist`` counts the
    pulled-back points of ``B`` absorbed into the determinant.
    """

    lattice: NeronSeveriLattice
    c1: tuple[int, ...]
    c2: int
    jumps: tuple[tuple[str, int], ...] = ()
    sing_length: int = 0
    base_twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "c1", tuple(int(x) for x in self.lattice.check_vector(self.c1)))
        jumps = tuple(sorted((str(b), int(m)) for b, m in self.jumps))
        object.__setattr__(self, "jumps", jumps)
        labels = [b for b, _ in jumps]
        if len(set(labels)) != len(labels):
            raise ValueError(f"repeated jump labels in {labels}")
        if any(m < 1 for _, m in jumps):
            raise ValueError("jump multiplicities must be positive")
        if self.sing_length < 0:
            raise ValueError("sing_length must be non-negative")
        delta = self.delta
        if delta < 0:
            raise PreconditionError(f"negative discriminant {delta}")
        if self.total_jump > 2 * delta:
            raise PreconditionError(
                f"jump multiplicities sum to {self.total_jump} > 2*Delta = {2 * delta}"
            )

    @property
    def chern(self) -> ChernData:
        return ChernData(2, self.c1, self.c2)

    @property
    def delta(self) -> Fraction:
        return discriminant(self.lattice, self.chern)

    @property
    def locally_free(self) -> bool:
        return self.sing_length == 0

    @property
    def total_jump(self) -> int:
        return sum(m for _, m in self.jumps)

    def multiplicity(self, at: str) -> int:
        return dict(self.jumps).get(at, 0)

    def to_json(self) -> dict:
        return {
            "c1": list(self.c1),
            "c2": self.c2,
            "base_twist": self.base_twist,
            "jumps": [{"at": b, "mult": m} for b, m in self.jumps],
            "sing_length": self.sing_length,
            "locally_free": self.locally_free,
            "delta": rat_to_json(self.delta),
        }

    @classmethod
    def from_json(cls, lat: NeronSeveriLattice, obj: dict) -> SheafRecord:
        rec = cls(
            lat,
            tuple(obj["c1"]),
            obj["c2"],
            tuple((j["at"], j["mult"]) for j in obj.get("jumps", [])),
            obj.get("sing_length", 0),
            obj.get("base_twist", 0),
        )
        if "locally_free" in obj and obj["locally_free"] != rec.locally_free:
            raise ValueError("locally_free must agree with sing_length == 0")
        return rec


def _shift_jump(jumps, at: str, by: int) -> tuple[tuple[str, int], ...]:
    out = []
    seen = False
    for b, m in jumps:
        if b == at:
            seen = True
            m += by
        if m:
            out.append((b, m))
    if not seen and by:
        out.append((at, by))
    return tuple(out)


def allowable_modification(s: SheafRecord, at: str, h: int = 1) -> SheafRecord:
    """Elementary modification at a jump by a line bundle of degree ``-h``.

    Lowers ``c2`` and the multiplicity at ``at`` by ``h``.
    """
    if not s.locally_free:
        raise PreconditionError("allowable modifications need a locally free sheaf")
    if h < 1:
        raise PreconditionError("h must be positive")
    mult = s.multiplicity(at)
    if mult == 0:
        raise PreconditionError(f"no jump at {at!r}")
    if h > mult:
        raise PreconditionError(f"h = {h} exceeds the multiplicity {mult} at {at!r}")
    new_delta = s.delta - Fraction(h, 2)
    if new_delta < 0:
        raise InvariantBreach(f"allowable modification reached Delta = {new_delta}")
    return replace(s, c2=s.c2 - h, jumps=_shift_jump(s.jumps, at, -h), base_twist=s.base_twist - 1)


def positive_modification(
    s: SheafRecord, at: str, deg_lambda: int, creates_jump: bool = True
) -> SheafRecord:
    """Elementary modification along the fibre over ``at`` by a line bundle
    of degree ``deg_lambda >= 1``.

    Whether the result is unstable on that fibre cannot be read off the
    record; ``creates_jump`` says so.
    """
    if not s.locally_free:
        raise PreconditionError("positive modifications need a locally free sheaf")
    if deg_lambda < 1:
        raise PreconditionError("deg_lambda must be >= 1")
    jumps = _shift_jump(s.jumps, at, deg_lambda) if creates_jump else s.jumps
    return replace(s, c2=s.c2 + deg_lambda, jumps=jumps, base_twist=s.base_twist - 1)


def double_dual(s: SheafRecord, supports: str | Sequence[str] | None = None) -> SheafRecord:
    """Pass to ``E^vv``: drops ``sing_length = m`` from ``c2``.

    ``supports`` lists the image in ``B`` of each singular point (a single
    label means all of them); each removes one jump unit there.
    """
    m = s.sing_length
    if m < 1:
        raise PreconditionError("double_dual needs a non-locally-free record")
    jumps = s.jumps
    if supports is not None:
        if isinstance(supports, str):
            supports = [supports] * m
        if len(supports) != m:
            raise PreconditionError(f"expected {m} support labels, got {len(supports)}")
        for b in supports:
            if dict(jumps).get(b, 0) < 1:
                raise PreconditionError(f"no jump left at {b!r} for a singular point")
            jumps = _shift_jump(jumps, b, -1)
    return replace(s, c2=s.c2 - m, jumps=jumps, sing_length=0)


class ComponentKind(str, enum.Enum):
    PRYM = "PRYM"
    P1_BUNDLE_OVER_PRYM_TIMES_T = "P1_BUNDLE_OVER_PRYM_TIMES_T"
    QUOT_RECURSION = "QUOT_RECURSION"


@dataclass(frozen=True)
class ComponentDescriptor:
    kind: ComponentKind
    prym_dim: int
    dim: int | None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        extra = {
            k: [list(v) for v in val] if k == "nu" else val for k, val in self.extra.items()
        }
        return {"kind": self.kind.value, "prym_dim": self.prym_dim, "dim": self.dim, "extra": extra}


@dataclass(frozen=True)
class FibreDescriptor:
    """Fibre of the graph map over a graph with ``stratum_k`` jumps.

    ``intersection_sections`` is an int, the set ``{1, 2}`` when the
    position of the jump is not given, or ``None`` when there is only one
    component.  ``fibre_dim`` is ``None`` for ``k >= 2``.
    """

    stratum_k: int
    components: tuple[ComponentDescriptor, ...]
    intersection_sections: int | frozenset | None
    fibre_dim: int | None

    def to_json(self) -> dict:
        sections = self.intersection_sections
        if isinstance(sections, frozenset):
            sections = sorted(sections)
        return {
            "stratum_k": self.stratum_k,
            "components": [c.to_json() for c in self.components],
            "intersection_sections": sections,
            "fibre_dim": self.fibre_dim,
        }


def bisection_genus(lat: NeronSeveriLattice, ch: ChernData, k: int) -> int:
    """Genus ``4 Delta - 2k + 1`` of the bisection left after removing ``k`` jumps."""
    delta = rank2_delta(lat, ch)
    if not 0 <= k <= math.floor(2 * delta):
        raise PreconditionError(f"k = {k} outside [0, floor(2*Delta)] for Delta = {delta}")
    return int(4 * delta) - 2 * k + 1


def nu_tuples(mults: Sequence[int], ell: int) -> list[tuple[int, ...]]:
    """All ``nu`` with ``0 <= nu_i <= mults_i`` and ``sum(nu) = ell``."""
    return [
        nu
        for nu in itertools.product(*(range(m + 1) for m in mults))
        if sum(nu) == ell
    ]


def fibre_descriptor(
    lat: NeronSeveriLattice,
    ch: ChernData,
    k: int,
    at_branch_point: bool | None = None,
    multiplicities: Sequence[int] | None = None,
) -> FibreDescriptor:
    """Fibre over a graph in the ``k``-th jump stratum.

    ``k = 0``: a Prym variety of dimension ``4 Delta`` (two points when the
    spectral curve has genus 1).  ``k = 1``: two P^1-bundles over
    ``Prym x T`` meeting in 1 or 2 sections.  ``k >= 2``: only the
    recursion skeleton, i.e. the ``Quot(E, l)`` index sets over bundles of
    lower ``c2``; ``multiplicities`` gives the jump profile (default ``k``
    simple jumps).
    """
    delta = rank2_delta(lat, ch)
    g = bisection_genus(lat, ch, k)
    four_delta = int(4 * delta)
    prym_dim = g - 1

    if k == 0:
        comp = ComponentDescriptor(
            ComponentKind.PRYM,
            prym_dim,
            prym_dim,
            {"genus": g, "unramified": g == 1, "connected_components": 2 if g == 1 else None},
        )
        return FibreDescriptor(0, (comp,), None, four_delta)

    if k == 1:
        # Prym(C'/B) x T, then a P^1 on top
        dim = prym_dim + 2
        comps = tuple(
            ComponentDescriptor(
                ComponentKind.P1_BUNDLE_OVER_PRYM_TIMES_T,
                prym_dim,
                dim,
                {
                    "bisection_genus": g,
                    "locally_free": lf,
                    "prym_connected_components": 2 if g == 1 else None,
                },
            )
            for lf in (True, False)
        )
        if g == 1:
            # an unramified double cover meets every vertical line twice
            sections: int | frozenset = 2
        elif at_branch_point is None:
            sections = frozenset({1, 2})
        else:
            sections = 1 if at_branch_point else 2
        return FibreDescriptor(1, comps, sections, dim)

    mults = tuple(multiplicities) if multiplicities is not None else (1,) * k
    if sum(mults) != k or any(m < 1 for m in mults):
        raise PreconditionError(f"multiplicities {mults} do not form {k} jumps")
    comps = tuple(
        ComponentDescriptor(
            ComponentKind.QUOT_RECURSION,
            prym_dim,
            None,
            {
                "ell": ell,
                "sub_c2": ch.c2 - ell,
                "sub_moduli_dim": 2 * four_delta - 4 * ell,
                "nu": nu_tuples(mults, ell),
            },
        )
        for ell in range(1, k + 1)
    )
    return FibreDescriptor(k, comps, None, None)


@dataclass(frozen=True)
class TopologyReport:
    delta: Fraction | None
    in_range: bool
    kaehler: bool | None = None
    pi1_base: str | None = None
    pi1_surjective: bool | None = None
    label: str | None = None
    arapura: dict | None = None
    simply_connected_components: int | None = None
    bogomolov_guan_type: bool | None = None
    warnings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "delta": None if self.delta is None else rat_to_json(self.delta),
            "in_range": self.in_range,
            "kaehler": self.kaehler,
            "pi1_base": self.pi1_base,
            "pi1_surjective": self.pi1_surjective,
            "label": self.label,
            "arapura": self.arapura,
            "simply_connected_components": self.simply_connected_components,
            "bogomolov_guan_type": self.bogomolov_guan_type,
            "warnings": list(self.warnings),
        }


def topology_report(lat: NeronSeveriLattice, ch: ChernData) -> TopologyReport:
    """Topological flags of ``M_{2,delta,c2}`` in the stably irreducible range.

    Outside that range the report carries warnings and no claims.
    """
    if ch.r != 2:
        return TopologyReport(None, False, warnings=("topology flags are only known for rank 2",))
    rep = classify(lat, ch)
    delta = rep.delta
    if not rep.stably_irreducible:
        return TopologyReport(
            delta, False, warnings=(f"outside the stably irreducible range 0 <= {delta} < {rep.t}",)
        )
    if delta == 0:
        return TopologyReport(delta, True, label="four points", simply_connected_components=4)

    label = "primary Kodaira surface" if delta == Fraction(1, 4) else None
    arapura = None
    if delta <= Fraction(3, 4):
        gens = int(8 * delta)
        arapura = {"generators_bound": gens, "sequence": f"Z^{gens} -> pi1(M) -> pi1(P) -> 0"}
    big = delta >= Fraction(1, 2)
    return TopologyReport(
        delta,
        True,
        kaehler=False,
        pi1_base="Z^2" if big else None,
        pi1_surjective=True if big else None,
        label=label,
        arapura=arapura,
        simply_connected_components=0,
        bogomolov_guan_type=False,
    )
