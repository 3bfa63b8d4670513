"""Tangent spaces at the most degenerate point of moduli of affine spherical varieties.

The usual entry point is ``tangent_space(datum, E)``; ``catalog``
provides the families of Knop's list as ready-made inputs.
"""

from .catalog import instantiate, load_catalog, verify_instance
from .chars import character, freudenthal_multiplicity, quotient_character, weyl_dimension
from .criteria import candidate_weights, codim_one, extension_trichotomy, necessary_conditions
from .lattice import LatticeBasis, decompose_over_E, intersect, root_lattice
from .notation import parse_weight, render_simple, render_weight
from .oracle import AmbientSetup, tangent_space
from .rootsys import RootDatum, Weight, build_root_datum, parse_group

__version__ = "0.1.0"

__all__ = [
    "AmbientSetup",
    "LatticeBasis",
    "RootDatum",
    "Weight",
    "build_root_datum",
    "candidate_weights",
    "character",
    "codim_one",
    "decompose_over_E",
    "extension_trichotomy",
    "freudenthal_multiplicity",
    "instantiate",
    "intersect",
    "load_catalog",
    "necessary_conditions",
    "parse_group",
    "parse_weight",
    "quotient_character",
    "render_simple",
    "render_weight",
    "root_lattice",
    "tangent_space",
    "verify_instance",
    "weyl_dimension",
]
