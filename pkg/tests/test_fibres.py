from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kodaira_moduli.errors import PreconditionError
from kodaira_moduli.fibres import (
    ComponentKind,
    SheafRecord,
    allowable_modification,
    bisection_genus,
    double_dual,
    fibre_descriptor,
    nu_tuples,
    positive_modification,
    topology_report,
)
from kodaira_moduli.graphspace import strata
from kodaira_moduli.invariants import ChernData, construct_example, spectral_genus
from kodaira_moduli.lattice import NeronSeveriLattice

L8 = NeronSeveriLattice(((-8,),))


def rec(c2, jumps=(), sing=0):
    # on L8 with c1 = (1): Delta = (c2 + 2) / 2
    return SheafRecord(L8, (1,), c2, tuple(jumps), sing)


def test_allowable_example():
    s = rec(0, [("b", 2)])
    assert s.delta == 1
    s1 = allowable_modification(s, "b", 1)
    assert (s1.c2, s1.jumps, s1.delta, s1.base_twist) == (-1, (("b", 1),), F(1, 2), -1)


def test_allowable_exhausts_jump():
    s1 = allowable_modification(rec(0, [("b", 2)]), "b", 2)
    assert s1.jumps == () and s1.delta == 0


def test_jump_bound_enforced():
    with pytest.raises(PreconditionError):
        rec(0, [("b", 3)])
    with pytest.raises(PreconditionError):
        rec(0, [("a", 1), ("b", 2)])


def test_allowable_errors():
    with pytest.raises(PreconditionError):
        allowable_modification(rec(0, [("b", 1)]), "b", 2)
    with pytest.raises(PreconditionError):
        allowable_modification(rec(0, [("b", 1)]), "c", 1)
    with pytest.raises(PreconditionError):
        allowable_modification(rec(0, [("b", 1)], sing=1), "b", 1)


def test_positive_examples():
    s = rec(-1)
    s1 = positive_modification(s, "b", 1)
    assert s1.delta == 1 and s1.multiplicity("b") == 1
    assert positive_modification(s, "b", 1, creates_jump=False).jumps == ()
    with pytest.raises(PreconditionError):
        positive_modification(s, "b", 0)


def test_positive_then_allowable_restores():
    s = rec(-1, [("a", 1)])
    back = allowable_modification(positive_modification(s, "b", 2), "b", 2)
    assert (back.c1, back.c2, back.jumps) == (s.c1, s.c2, s.jumps)
    assert back.base_twist == s.base_twist - 2


def test_double_dual_examples():
    s = double_dual(rec(-1, sing=1))
    assert s.locally_free and s.c2 == -2 and s.delta == 0
    s = double_dual(rec(0, [("b", 2)], sing=2), "b")
    assert s.delta == 0 and s.jumps == ()
    s = double_dual(rec(0, [("a", 1), ("b", 1)], sing=2), ["a", "b"])
    assert s.jumps == ()
    with pytest.raises(PreconditionError):
        double_dual(rec(0))
    with pytest.raises(PreconditionError):
        double_dual(rec(0, [("b", 1)], sing=2), "b")


def test_record_json_round_trip():
    s = rec(0, [("b2", 1), ("b1", 1)], sing=1)
    assert SheafRecord.from_json(L8, s.to_json()) == s
    bad = dict(s.to_json(), locally_free=True)
    with pytest.raises(ValueError):
        SheafRecord.from_json(L8, bad)


def test_bisection_genus_examples():
    assert bisection_genus(*construct_example(3, 2), 1) == 2
    assert bisection_genus(L8, ChernData(2, (1,), -1), 1) == 1
    lat, ch = construct_example(4, 2)
    assert bisection_genus(lat, ch, 0) == 5 == spectral_genus(lat, ch)
    with pytest.raises(PreconditionError):
        bisection_genus(lat, ch, 3)


@pytest.mark.parametrize("n", range(0, 13))
def test_bisection_genus_steps_by_two(n):
    lat, ch = construct_example(n, 2)
    gs = [bisection_genus(lat, ch, k) for k in range(n // 2 + 1)]
    assert gs[0] == spectral_genus(lat, ch)
    assert all(a - b == 2 for a, b in zip(gs, gs[1:]))


def test_fibre_examples():
    f = fibre_descriptor(L8, ChernData(2, (1,), -1), 0)
    assert f.components[0].kind is ComponentKind.PRYM and f.components[0].prym_dim == 2

    f = fibre_descriptor(*construct_example(3, 2), 1, at_branch_point=True)
    assert len(f.components) == 2 and f.intersection_sections == 1
    assert all(c.kind is ComponentKind.P1_BUNDLE_OVER_PRYM_TIMES_T and c.prym_dim == 1 for c in f.components)
    assert fibre_descriptor(*construct_example(3, 2), 1, at_branch_point=False).intersection_sections == 2
    assert fibre_descriptor(*construct_example(3, 2), 1).intersection_sections == frozenset({1, 2})

    f = fibre_descriptor(*construct_example(0, 2), 0)
    assert f.components[0].extra["connected_components"] == 2 and f.fibre_dim == 0


def test_half_always_two_sections():
    lat, ch = L8, ChernData(2, (1,), -1)
    for flag in (None, True, False):
        assert fibre_descriptor(lat, ch, 1, flag).intersection_sections == 2


def test_quot_recursion():
    lat, ch = construct_example(6, 2)
    f = fibre_descriptor(lat, ch, 3, multiplicities=(2, 1))
    assert [c.extra["ell"] for c in f.components] == [1, 2, 3]
    assert f.components[0].extra["nu"] == [(0, 1), (1, 0)]
    assert f.components[2].extra["nu"] == [(2, 1)]
    assert f.components[1].extra["sub_c2"] == ch.c2 - 2
    assert f.fibre_dim is None
    assert f.to_json()["components"][0]["extra"]["nu"] == [[0, 1], [1, 0]]
    with pytest.raises(PreconditionError):
        fibre_descriptor(lat, ch, 3, multiplicities=(1, 1))
    with pytest.raises(PreconditionError):
        fibre_descriptor(lat, ch, 4)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.integers(0, 12))
def test_nu_tuples_brute(mults, ell):
    got = nu_tuples(mults, ell)
    assert len(set(got)) == len(got)
    assert all(sum(nu) == ell and all(0 <= a <= m for a, m in zip(nu, mults)) for nu in got)
    # count by generating function coefficients
    poly = [1]
    for m in mults:
        new = [0] * (len(poly) + m)
        for i, c in enumerate(poly):
            for j in range(m + 1):
                new[i + j] += c
        poly = new
    assert len(got) == (poly[ell] if ell < len(poly) else 0)


@pytest.mark.parametrize("n", range(0, 13))
def test_dimension_count(n):
    lat, ch = construct_example(n, 2)
    ss = strata(lat, ch)
    for k in range(min(2, len(ss))):
        assert ss[k].dim + fibre_descriptor(lat, ch, k).fibre_dim == 2 * n - k


def test_topology_examples():
    t = topology_report(L8, ChernData(2, (1,), -1))
    assert t.kaehler is False and t.arapura["generators_bound"] == 4
    assert t.pi1_base == "Z^2" and t.pi1_surjective
    assert t.simply_connected_components == 0
    assert topology_report(*construct_example(0, 2)).label == "four points"
    assert topology_report(*construct_example(1, 2)).label == "primary Kodaira surface"


def test_topology_outside_range():
    t = topology_report(NeronSeveriLattice(((-2,),)), ChernData(2, (0,), -1))
    assert not t.in_range and t.warnings and t.kaehler is None
    t = topology_report(*construct_example(2, 3))
    assert not t.in_range and t.warnings
