"""Stability conditions on the A_k category D_k^N: the graded algebra, interval
objects and their extensions, Harder-Narasimhan filtrations, wall crossing,
spherical twists and braid group monodromy."""

__version__ = "0.1.0"

from .errors import AkstabError
from .exact import G, GaussianRational
from .objects import Ext, Stable, Sum, stable
from .stability import hn, standard_condition

__all__ = [
    "AkstabError",
    "Ext",
    "G",
    "GaussianRational",
    "Stable",
    "Sum",
    "hn",
    "stable",
    "standard_condition",
    "__version__",
]
