"""Exact invariants of moduli spaces of rank-2 stably irreducible sheaves on
primary Kodaira surfaces, and of Douady spaces of points for comparison."""

from .douady import KODAIRA, SurfaceBetti, compare_bases, douady2_fibration_census, douady_betti, douady_pi1
from .errors import InvariantBreach, PreconditionError
from .exactmath import Rat, TruncatedSeries2, series_binomial_pow, series_mul
from .fibres import (
    SheafRecord,
    allowable_modification,
    bisection_genus,
    double_dual,
    fibre_descriptor,
    positive_modification,
    topology_report,
)
from .graphspace import graph_space, strata
from .invariants import (
    ChernData,
    ModuliReport,
    classify,
    construct_example,
    discriminant,
    normalize_rank2,
    spectral_genus,
    t_invariant,
)
from .lattice import NeronSeveriLattice, coset_min, min_on_shifted_lattice, pairing

__version__ = "0.1.0"
