"""Automatic degeneracies of plane curve singularities over prime fields."""
from ._kernel import BACKEND
from .closed_forms import (ChowDegrees, DivisorClass, ad_bounds, chern_invincible,
                           hyperflex_count, known_value, pencil_count, septactic_count,
                           weierstrass_divisor, weight2_inflection_class)
from .colength import ColengthReport, ideal_colength
from .errors import *  # noqa: F401,F403
from .field import PrimeField
from .invariants import (DegeneracyResult, ad_value, bounds_report, delta_binomial,
                         flecnode_colength, hilbert_samuel, limiting_count, milnor_number,
                         node_ad, sd_value, zero_specialized_length)
from .jets import (DualBasis, GermSpec, JetElement, RelationSet, degeneracy_matrix,
                   dual_basis_node, dual_basis_small, dual_basis_specialized_zero,
                   maximal_minors, random_jet_elements, taylor_relations, uv_to_ab)
from .parser import format_germ, parse_germ
from .poly import TruncatedPoly, invert_unit, mul_truncated, partial_derivative

__version__ = "0.1.0"
