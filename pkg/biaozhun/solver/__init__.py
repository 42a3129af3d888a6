"""标准形求解：调和项消去、逐权线方程、通用线性系统对照"""
from biaozhun.solver.harmonic import HarmonicElimination, eliminate_harmonics
from biaozhun.solver.line_normalizer import LineNormalizer, normalize
from biaozhun.solver.lines import (LineSolution, LineSystem, solve_line, solve_line_k0, solve_line_k1,
                                   solve_line_k_ge2)
from biaozhun.solver.normalizer_factory import NormalizerFactory, certificate_frame
from biaozhun.solver.normalizer_interface import (FreeParameters, NormalizationResult, NormalizerInterface,
                                                  WeightStep)
from biaozhun.solver.oracle_normalizer import OracleNormalizer, normalize_oracle

__all__ = [
    "NormalizerInterface", "NormalizationResult", "FreeParameters", "WeightStep",
    "LineSystem", "LineSolution", "solve_line", "solve_line_k_ge2", "solve_line_k1", "solve_line_k0",
    "LineNormalizer", "OracleNormalizer", "NormalizerFactory", "certificate_frame",
    "normalize", "normalize_oracle", "eliminate_harmonics", "HarmonicElimination",
]
