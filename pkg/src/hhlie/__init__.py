"""First Hochschild cohomology of quiver algebras, as exact Lie algebras."""
from .algebra import FdAlgebra, build_algebra, center, ext1_matrix, is_symmetric, quiver_class
from .fields import GF, QQ
from .hh1 import HH1Algebra, hh1, hh1_generic
from .lie import LieSC, recognize_sl2, recognize_witt, series_report
from .quiver import BoundQuiverPresentation, emit_presentation, parse_presentation

__version__ = "0.1.0"

__all__ = [
    "FdAlgebra", "build_algebra", "center", "ext1_matrix", "is_symmetric", "quiver_class", "GF", "QQ",
    "HH1Algebra", "hh1", "hh1_generic", "LieSC", "recognize_sl2", "recognize_witt", "series_report", "BoundQuiverPresentation",
    "emit_presentation", "parse_presentation",
]
