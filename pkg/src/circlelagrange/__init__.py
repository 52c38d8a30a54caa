"""Exact Lagrange spectrum of the unit circle below 2, via Romik's dynamical
system, Christoffel words, Cohn matrices and the Markoff tree."""

from .cohn import (SpectrumEntry, cohn_matrix, fixed_point_coordinates, lagrange_of_christoffel,
                   lagrange_periodic, markoff_number)
from .exactnum import INF, SQRT2, QuadTower, ZRoot2, compare
from .markoff import MarkoffTriple, enumerate_markoff, spectrum_below_2, triple_from_christoffel
from .oracle import (admissible_periodic, estimate_by_cylinders, estimate_by_height, lagrange_of_digits,
                     lagrange_of_word, perron_check)
from .romik import (CirclePoint, DigitWord, PythTriple, berggren_triples, cylinder_bounds, delta,
                    digits_norm, expand_rational, romik_map, stereo_norm)
from .words import ChristoffelWord, build_Bw_sections, christoffel, jmath, minimal_period, standard_factorization

__version__ = "0.1.0"

__all__ = [
    "INF", "SQRT2", "ChristoffelWord", "CirclePoint", "DigitWord", "MarkoffTriple", "PythTriple",
    "QuadTower", "SpectrumEntry", "ZRoot2", "admissible_periodic", "berggren_triples",
    "build_Bw_sections", "christoffel", "cohn_matrix", "compare", "cylinder_bounds", "delta",
    "digits_norm", "enumerate_markoff", "estimate_by_cylinders", "estimate_by_height",
    "expand_rational", "fixed_point_coordinates", "jmath", "lagrange_of_christoffel",
    "lagrange_of_digits", "lagrange_of_word", "lagrange_periodic", "markoff_number",
    "minimal_period", "perron_check", "romik_map", "spectrum_below_2", "standard_factorization",
    "stereo_norm", "triple_from_christoffel",
]
