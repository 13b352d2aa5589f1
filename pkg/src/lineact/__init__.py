"""Exact piecewise-linear actions of finitely generated groups on the line."""
from .kernels import BACKEND
from .plmap import Dyadic, FixedSet, PLMap, compose, fixed_set, invert, sup_distance, translate_conjugate
from .rep import MarkedGroup, Representation, Word, conjugate_rep, enumerate_words, orbit

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Dyadic", "FixedSet", "PLMap", "compose", "fixed_set", "invert",
    "sup_distance", "translate_conjugate", "MarkedGroup", "Representation", "Word",
    "conjugate_rep", "enumerate_words", "orbit",
]
