"""Exact subspace arithmetic in function fields and checks of the 3k-4 theorem."""

from .additive import freiman_3k4_verify, kneser_mod, monomial_bridge
from .curves import (CurveModel, FFElem, Place, cover_model, hyperelliptic_model,
                     rational_model)
from .fields import QQ, make_field
from .freiman import combinatorial_genus, generates_field, select_pivot, verify_theorem
from .riemann_roch import Divisor, minimal_divisor, rr_basis
from .subspaces import KSubspace, k_product, k_span, kx_span, stabilizer

__version__ = "0.1.0"
