"""精确标量与按权截断的级数代数"""
from biaozhun.algebra.inversion import invert_parametrization
from biaozhun.algebra.monomials import HoloMonomial, Monomial
from biaozhun.algebra.scalars import I, ONE, ZERO, GaussianRational, Rational, parse_gaussian
from biaozhun.algebra.series import (HoloSeries, PuSeries, add, bicomponent, conjugate, holo_from_pu,
                                     imag_part, levi_form, mul, pu_from_holo, real_part, substitute,
                                     substitute_holo, substitute_pu)
from biaozhun.algebra.signature import Signature

__all__ = [
    "GaussianRational", "Rational", "I", "ONE", "ZERO", "parse_gaussian",
    "Signature", "Monomial", "HoloMonomial", "PuSeries", "HoloSeries",
    "add", "mul", "conjugate", "bicomponent", "real_part", "imag_part",
    "substitute", "substitute_holo", "substitute_pu", "invert_parametrization",
    "levi_form", "holo_from_pu", "pu_from_holo",
]
