"""
调和项消去：使 φ′_{k0l} = 0（从而 φ′_{0kl} = 0）

按阶 d = k+l 归纳：限制在 z̄ = 0 上，阶 d 的调和项只受同阶 g_{kl} 的线性影响，
g_{kl} = −2i·φ_{k0l}（k ≥ 1），Im g₀ₗ = −φ₀₀ₗ；f 与 Re g₀ₗ 取零。不需要 Levi 非退化。
"""
import logging
from dataclasses import dataclass
from typing import Optional

from biaozhun.algebra.monomials import HoloMonomial
from biaozhun.algebra.scalars import I
from biaozhun.algebra.series import HoloSeries, PuSeries
from biaozhun.errors import InternalInvariantError
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.hypersurface.mapjet import MapJet, compose, identity_map, validate_map
from biaozhun.hypersurface.transform import apply_map

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HarmonicElimination:
    jet: HypersurfaceJet
    map: MapJet


def harmonic_terms(phi: PuSeries) -> dict:
    """φ 中不含 z̄ 的项 {单项式: 系数}（共轭项不含 z 的部分由实性确定）"""
    return {mono: c for mono, c in phi.items() if not any(mono.beta)}


def eliminate_harmonics(m: HypersurfaceJet, max_iterations: Optional[int] = None) -> HarmonicElimination:
    """
    消去全部调和项 φ_{k0l}

    Returns:
        HarmonicElimination: 像 jet 与所用映射（f = z，g 只含调和修正）

    Raises:
        InternalInvariantError: 消去后仍残留调和项
    """
    n, limit = m.n, m.max_weight
    current, total = m, identity_map(n, limit)
    for order in range(2, limit + 1):
        coeffs = {}
        for mono, c in harmonic_terms(current.phi).items():
            k = sum(mono.alpha)
            if k + mono.l != order:
                continue
            coeffs[HoloMonomial(mono.alpha, mono.l)] = c * (-2 * I) if k else c * (-I)
        if not coeffs:
            continue
        g = HoloSeries.w(n, limit) + HoloSeries(n, limit, coeffs)
        step = validate_map([HoloSeries.z(n, j, limit) for j in range(n)], g)
        current = apply_map(current, step, max_iterations)
        total = compose(step, total)
        logger.debug(f"[HARMONIC] 阶 {order}：消去 {len(coeffs)} 项")

    left = harmonic_terms(current.phi)
    if left:
        mono, c = sorted(left.items())[0]
        raise InternalInvariantError(f"调和项消去后仍残留 {PuSeries._monomial_text(mono)}: {c}")
    return HarmonicElimination(current, total)
