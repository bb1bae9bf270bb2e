"""Exact computations in a rank-3 upper cluster algebra that is not finitely generated."""

from .cluster import ExchangePolys, adjacent_variable, exchange_polys
from .field import ParamAssignment, TorsionRatio, ZeroParameter, make_params, torsion_ratio
from .grading import condition_matrix, deg1_table, solution_space_basis, solution_space_dim, u1_growth, verify_deg0
from .membership import lemma1_check, normalize, ring_membership_oracle, upper_membership
from .poly import BinaryForm, LaurentFraction, TernaryForm, parse_form, parse_polynomial

__version__ = "0.1.0"
