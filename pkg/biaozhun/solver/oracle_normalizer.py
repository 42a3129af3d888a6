"""
对照归一化：每个权解一个通用精确线性系统

未知量是权 W 的全部映射系数（实部、虚部分开；固定的自由参数与线性部分除外），
方程是规格在权 W 上的全部条件。映射增量对 φ′ 的权 W 部分的影响为

    δ = Im G(z, u+iφ) − Σ_j (φ_{z_j}·F_j + φ_{z̄_j}·F̄_j) − φ_u·Re G

只取权 W 部分，逐个单位未知量计算一次。
"""
import logging
from fractions import Fraction
from typing import Optional

from biaozhun.algebra.linalg import solve_exact
from biaozhun.algebra.monomials import HoloMonomial, Monomial, multi_indices
from biaozhun.algebra.scalars import I, ONE, GaussianRational
from biaozhun.algebra.series import HoloSeries, PuSeries, derivative_u, derivative_z
from biaozhun.config import NormalizerConfig
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.hypersurface.mapjet import compose, identity_map, validate_map
from biaozhun.hypersurface.transform import apply_map
from biaozhun.normalform.conditions import Condition
from biaozhun.normalform.spec import NormalFormSpec
from biaozhun.solver.increment import increment_terms
from biaozhun.solver.line_normalizer import check_preconditions, check_weight, finish
from biaozhun.solver.normalizer_interface import NormalizationResult, NormalizerInterface, WeightStep
from biaozhun.trace.operator import trace_power

logger = logging.getLogger(__name__)

_PARTS = {"re": ONE, "im": I}


def weight_unknowns(n: int, weight: int) -> list[tuple]:
    """
    权 weight 的实未知量

    ("g", alpha, l, part) 对应 g_{|alpha|,l} 中 z^alpha 的实部或虚部；
    ("f", j, alpha, b, part) 对应 f_j 中 z^alpha·w^b 的系数。
    g₀₁、f₁₀ 属于线性部分，f₀₁ 与 Re g₀₂ 为固定为零的自由参数。
    """
    out = []
    for l in range(weight // 2 + 1):
        a = weight - 2 * l
        if (a, l) in ((0, 1), (1, 0)):
            continue
        parts = ("im",) if (a, l) == (0, 2) else ("re", "im")
        for alpha in multi_indices(n, a):
            out.extend(("g", alpha, l, part) for part in parts)
    for b in range((weight - 1) // 2 + 1):
        a = weight - 1 - 2 * b
        if (a, b) in ((1, 0), (0, 1)):
            continue
        for j in range(n):
            for alpha in multi_indices(n, a):
                out.extend(("f", j, alpha, b, part) for part in ("re", "im"))
    return out


class _WeightEffects:
    """当前 jet 上，单位未知量对 φ′ 权 W 部分的线性影响"""

    def __init__(self, jet: HypersurfaceJet, weight: int):
        n, limit = jet.n, jet.max_weight
        self.n, self.limit, self.weight = n, limit, weight
        u = PuSeries.u(n, limit)
        w_arg = u + jet.phi.scale(I)
        self.w_powers = [PuSeries.constant(n, limit, 1)]
        for _ in range(weight // 2):
            self.w_powers.append(self.w_powers[-1] * w_arg)
        self.phi_z = [derivative_z(jet.phi, j) for j in range(n)]
        self.phi_u = derivative_u(jet.phi)
        self._zeros = (0,) * n

    def _evaluated(self, alpha, power: int, weight: int) -> PuSeries:
        """z^alpha·(u+iφ)^power 的纯权 weight 部分"""
        z_alpha = PuSeries._trusted(self.n, self.limit, {Monomial(alpha, self._zeros, 0): ONE})
        return z_alpha.mul_weight_part(self.w_powers[power], weight)

    def effect(self, unknown: tuple) -> PuSeries:
        c = _PARTS[unknown[-1]]
        if unknown[0] == "g":
            _, alpha, l, _part = unknown
            g_w = self._evaluated(alpha, l, self.weight).scale(c)
            return g_w.imag_part() - self.phi_u.mul_weight_part(g_w.real_part(), self.weight)
        _, j, alpha, b, _part = unknown
        f_w = self._evaluated(alpha, b, self.weight - 1).scale(c)
        return -(self.phi_z[j].mul_weight_part(f_w, self.weight).real_part().scale(2))


def _condition_rows(cond: Condition, target: PuSeries, effects: list[PuSeries], sig):
    """条件 tr^t φ′_{kml} = 0 拆成逐单项式的实方程"""
    rhs_poly = -trace_power(target.bicomponent(cond.k, cond.m, cond.l), cond.t, sig)
    columns = [trace_power(e.bicomponent(cond.k, cond.m, cond.l), cond.t, sig) for e in effects]
    monomials = set(rhs_poly.coeffs)
    for col in columns:
        monomials.update(col.coeffs)
    rows, rhs = [], []
    for mono in sorted(monomials):
        values = [col.coefficient(mono) for col in columns]
        target_value = rhs_poly.coefficient(mono)
        rows.append([v.re for v in values])
        rhs.append([target_value.re])
        rows.append([v.im for v in values])
        rhs.append([target_value.im])
    return rows, rhs


def _increment_from_solution(n: int, limit: int, unknowns: list[tuple], values: list[Fraction]):
    g_coeffs: dict = {HoloMonomial((0,) * n, 1): ONE}
    f_coeffs: list[dict] = [{HoloMonomial(tuple(1 if i == j else 0 for i in range(n)), 0): ONE} for j in range(n)]
    for unknown, value in zip(unknowns, values):
        if not value:
            continue
        c = _PARTS[unknown[-1]] * value
        if unknown[0] == "g":
            _, alpha, l, _part = unknown
            key, store = HoloMonomial(alpha, l), g_coeffs
        else:
            _, j, alpha, b, _part = unknown
            key, store = HoloMonomial(alpha, b), f_coeffs[j]
        store[key] = store.get(key, GaussianRational(0)) + c
    return validate_map([HoloSeries(n, limit, fc) for fc in f_coeffs], HoloSeries(n, limit, g_coeffs))


class OracleNormalizer(NormalizerInterface):
    """每个权一次通用线性求解，用于核对线方程归一化器"""

    name = "oracle"

    def __init__(self, config: Optional[NormalizerConfig] = None):
        self.config = config or NormalizerConfig()

    def normalize(self, m: HypersurfaceJet, spec: NormalFormSpec) -> NormalizationResult:
        check_preconditions(m, spec)
        n, limit = m.n, m.max_weight
        iterations = self.config.inversion.iterations_for(limit)

        current, total = m, identity_map(n, limit)
        steps = []
        for weight in range(2, limit + 1):
            choices = [c for c in spec.lines(weight) if c.weight == weight]
            conditions = [cond for c in choices for cond in c.conditions()]
            unknowns = weight_unknowns(n, weight)
            effects_at = _WeightEffects(current, weight)
            effects = [effects_at.effect(u) for u in unknowns]

            rows, rhs = [], []
            for cond in conditions:
                cond_rows, cond_rhs = _condition_rows(cond, current.phi, effects, current.sig)
                rows.extend(cond_rows)
                rhs.extend(cond_rhs)
            solution = solve_exact(rows, rhs, len(unknowns))
            increment = _increment_from_solution(n, limit, unknowns, [row[0] for row in solution])
            terms = increment_terms(increment)
            steps.append(WeightStep(weight, len(choices), len(conditions), terms))
            logger.info(f"[ORACLE] 权 {weight}：{len(unknowns)} 个实未知量，{len(rows)} 个方程，增量 {terms} 项")
            if not terms:
                continue
            current = apply_map(current, increment, iterations)
            total = compose(increment, total)
            check_weight(current, spec, weight)

        return finish(m, spec, current, total, steps, self.config.normalize.verify_certificate, iterations)


def normalize_oracle(m: HypersurfaceJet, spec: NormalFormSpec,
                     config: Optional[NormalizerConfig] = None) -> NormalizationResult:
    """
    与 normalize 契约相同；奇异或不相容的系统抛出 NonUniqueSolutionError
    """
    return OracleNormalizer(config).normalize(m, spec)
