"""Exact verification of the pre-Courant structure on adjoint tractor bundles.

Submodules, bottom up: ``linalg`` (rational linear algebra), ``lie``
(structure-constant Lie algebras and gradings), ``patch`` (polynomial fields),
``tractor`` (Weyl structures, tractor connection, curvature), ``courant``
(brackets and identity checkers), then ``checks``/``scenario``/``report``/``cli``.
"""
__version__ = "0.1.0"

from .lie import LieAlgebraSpec, ParabolicGrading, build_sl  # noqa: E402
from .patch import CotangentField, PolyScalar, TractorField  # noqa: E402
from .tractor import CurvatureInconsistency, TractorConnection, WeylStructure  # noqa: E402
from .courant import BracketContext, angle_bracket, courant_bracket  # noqa: E402

__all__ = [
    "LieAlgebraSpec", "ParabolicGrading", "build_sl",
    "PolyScalar", "TractorField", "CotangentField",
    "WeylStructure", "TractorConnection", "CurvatureInconsistency",
    "BracketContext", "angle_bracket", "courant_bracket",
]
