"""
逐权归一化（线方程）

对 W = 2, 3, ..., max_weight：在当前 jet 上为每条权 W 的线建立 LineSystem 并求解，
把全部解组装成一个增量映射，apply_map 得到新 jet，再累积到总映射。
同一权的各条线涉及互不相交的多重次数与未知量，按 (k, l) 字典序依次求解。
"""
import logging
from typing import Optional

from biaozhun.config import NormalizerConfig
from biaozhun.errors import InternalInvariantError, ValidationError
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.hypersurface.mapjet import compose, identity_map, is_fg_normalized
from biaozhun.hypersurface.transform import apply_map
from biaozhun.normalform.check import check
from biaozhun.normalform.spec import NormalFormSpec
from biaozhun.solver.increment import assemble_increment, increment_terms
from biaozhun.solver.lines import LineSystem, solve_line
from biaozhun.solver.normalizer_interface import (FreeParameters, NormalizationResult, NormalizerInterface,
                                                  WeightStep)
from biaozhun.trace.operator import trace_power

logger = logging.getLogger(__name__)


def check_preconditions(m: HypersurfaceJet, spec: NormalFormSpec) -> None:
    if m.sig is None:
        raise ValidationError("归一化需要 Levi 非退化的 jet（Levi 退化时只能做调和项消去）")
    spec.lines(m.max_weight)


def finish(m: HypersurfaceJet, spec: NormalFormSpec, current: HypersurfaceJet, total, steps,
           verify: bool, max_iterations: Optional[int]) -> NormalizationResult:
    """检查证书与映射规范化，可选地重新整体作用一次映射"""
    certificate = check(current, spec)
    if certificate:
        first = certificate[0]
        raise InternalInvariantError(f"标准形证书非空：{first.condition.describe()} 残差 {first.residual.to_text()}")
    if not is_fg_normalized(total):
        raise InternalInvariantError("归一化映射不满足 fg-规范化")
    if verify and apply_map(m, total, max_iterations) != current:
        raise InternalInvariantError("总映射作用于输入后不等于逐步得到的标准形")
    return NormalizationResult(current, total, tuple(certificate), FreeParameters.pinned(m.n), tuple(steps))


def check_weight(current: HypersurfaceJet, spec: NormalFormSpec, weight: int) -> None:
    """权 weight 的全部条件在本步之后必须成立"""
    for choice in spec.lines(weight):
        if choice.weight != weight:
            continue
        for cond in choice.conditions():
            residual = trace_power(current.phi.bicomponent(cond.k, cond.m, cond.l), cond.t, current.sig)
            if residual:
                raise InternalInvariantError(f"权 {weight} 一步之后仍违反 {cond.describe()}")


class LineNormalizer(NormalizerInterface):
    """按线方程与迹分解构造唯一的 fg-规范化映射"""

    name = "lines"

    def __init__(self, config: Optional[NormalizerConfig] = None):
        self.config = config or NormalizerConfig()

    def normalize(self, m: HypersurfaceJet, spec: NormalFormSpec) -> NormalizationResult:
        check_preconditions(m, spec)
        n, limit = m.n, m.max_weight
        iterations = self.config.inversion.iterations_for(limit)
        fallback = self.config.decompose.fallback_to_oracle

        current, total = m, identity_map(n, limit)
        steps = []
        for weight in range(2, limit + 1):
            choices = [c for c in spec.lines(weight) if c.weight == weight]
            g_terms, f_terms = [], []
            for choice in choices:
                system = LineSystem.build(current, choice.k, choice.l, fallback)
                solution = solve_line(system, choice)
                if solution is None or solution.is_zero:
                    continue
                g_terms.append((choice.l, solution.g))
                f_terms.extend((b, comps) for (_a, b), comps in solution.f.items())
            increment = assemble_increment(n, limit, g_terms, f_terms)
            terms = increment_terms(increment)
            steps.append(WeightStep(weight, len(choices), sum(len(c.conditions()) for c in choices), terms))
            logger.info(f"[SOLVER] 权 {weight}：求解 {len(choices)} 条线，增量 {terms} 项")
            if not terms:
                continue
            current = apply_map(current, increment, iterations)
            total = compose(increment, total)
            check_weight(current, spec, weight)

        return finish(m, spec, current, total, steps, self.config.normalize.verify_certificate, iterations)


def normalize(m: HypersurfaceJet, spec: NormalFormSpec, config: Optional[NormalizerConfig] = None) -> NormalizationResult:
    """
    把 jet 化为规格 spec 的标准形

    Args:
        m: Levi 非退化 jet
        spec: 标准形规格
        config: 配置（反演迭代上限、迹分解回退、是否复核）

    Returns:
        NormalizationResult: 标准形、fg-规范化映射、空证书

    Raises:
        ValidationError: jet Levi 退化或规格未覆盖 jet 的截断权
        InternalInvariantError: 线方程奇异或结果不满足条件
    """
    return LineNormalizer(config).normalize(m, spec)
