"""迹算子与迹分解"""
from biaozhun.trace.decomposition import (TraceDecomposition, trace_decompose, trace_decompose_oracle,
                                          with_oracle_fallback)
from biaozhun.trace.operator import euler_weights, trace, trace_power

__all__ = [
    "trace", "trace_power", "euler_weights",
    "TraceDecomposition", "trace_decompose", "trace_decompose_oracle", "with_oracle_fallback",
]
