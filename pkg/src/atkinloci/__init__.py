"""Exact Atkin polynomials, partial Hasse polynomials and non-ordinary loci."""

__version__ = "0.1.0"

from .errors import AtkinError, DataError, Refusal
from .exact_arith import FFElem, PrimeContext, QuadElem
from .poly_series import Poly, Series
from .pade_ortho import MomentStream, gram_schmidt, pade_denominator
from .presets import get_preset, moment_stream
from .loci import locus_report

__all__ = [
    "AtkinError", "DataError", "Refusal", "FFElem", "PrimeContext", "QuadElem",
    "Poly", "Series", "MomentStream", "gram_schmidt", "pade_denominator",
    "get_preset", "moment_stream", "locus_report",
]
