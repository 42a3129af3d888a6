"""由权 W 的系数组装映射增量 (z + F, w + G)"""
from typing import Iterable

from biaozhun.algebra.series import HoloSeries, PuSeries, holo_from_pu
from biaozhun.hypersurface.mapjet import MapJet, validate_map


def assemble_increment(n: int, max_weight: int, g_terms: Iterable[tuple[int, PuSeries]],
                       f_terms: Iterable[tuple[int, tuple[PuSeries, ...]]]) -> MapJet:
    """
    Args:
        g_terms: (l, g_{kl}(z)) 对，贡献 g_{kl}(z)·w^l
        f_terms: (b, (f_{ab,1}(z), ..., f_{ab,n}(z))) 对，贡献 f_{ab}(z)·w^b
    """
    g = HoloSeries.w(n, max_weight)
    for l, poly in g_terms:
        g = g + holo_from_pu(poly, l)
    f = [HoloSeries.z(n, j, max_weight) for j in range(n)]
    for b, comps in f_terms:
        f = [fj + holo_from_pu(c, b) for fj, c in zip(f, comps)]
    return validate_map(f, g)


def increment_terms(h: MapJet) -> int:
    """增量中除恒等部分以外的项数"""
    return len(h.g) - 1 + sum(len(c) - 1 for c in h.f)
