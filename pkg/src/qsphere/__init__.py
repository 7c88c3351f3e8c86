"""Verification workbench for quantum symmetries of the q-deformed two-sphere.

Exact group-algebra arithmetic in Z_2 * Z^infinity, finite-truncation
operator numerics for the deformed sphere, the equivariant adjoint action
with its closed forms, and a CLI that runs the whole check suite.
"""

from .freealg import AlgElem, Character, make_phi, r_elem, y_elem
from .operators import BlockOperator, TruncationConfig, build_pi
from .action import EquivariantRep, GAOperator, ad_U, build_U

__all__ = [
    "AlgElem", "Character", "make_phi", "r_elem", "y_elem",
    "BlockOperator", "TruncationConfig", "build_pi",
    "EquivariantRep", "GAOperator", "ad_U", "build_U",
]

__version__ = "0.1.0"
