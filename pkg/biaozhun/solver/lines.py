"""
单条线上的线性方程

在权 W 的一步中，映射增量只含权 W 的系数；当前 jet 的权 2 部分恰为 ⟨z,z⟩ 时，
线 (k, l) 上多重次数 (k+j, j, l−j) 的新系数为

    k ≥ 1:  φ′_j = P_j + α_j·g·L^j + β_j·A·L^{j−1} + γ_j·B·L^j
    k = 0:  φ′_j = P_j + Im(C(l,j)·i^j·g₀ₗ)·L^j − 2·Re(C(l−1,j−1)·i^{j−1}·A)·L^{j−1}

其中 L = ⟨z,z⟩，P_j 为当前 φ 的相应分量（去掉 u^{l−j}），
g = g_{kl}(z)，A = ⟨f_{k+1,l−1}(z), z⟩，B = ⟨z, f₀ₗ⟩（只在 k = 1 出现），
α_j = C(l,j)·i^j/(2i)，β_j = −C(l−1,j−1)·i^{j−1}，γ_j = −C(l,j)·(−i)^j。
"""
import logging
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from biaozhun.algebra.monomials import Monomial, unit
from biaozhun.algebra.scalars import I, ONE, ZERO, GaussianRational
from biaozhun.algebra.series import PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.errors import InternalInvariantError, NonUniqueSolutionError
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.normalform.conditions import LineChoice, LineKind
from biaozhun.trace.decomposition import trace_decompose
from biaozhun.trace.operator import trace_power

logger = logging.getLogger(__name__)


def _binomial(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def alpha(l: int, j: int) -> GaussianRational:
    return I ** j * _binomial(l, j) / (2 * I)


def beta(l: int, j: int) -> GaussianRational:
    if j == 0:
        return ZERO
    return -(I ** (j - 1)) * _binomial(l - 1, j - 1)


def gamma(l: int, j: int) -> GaussianRational:
    return -((-I) ** j) * _binomial(l, j)


def sigma(j: int) -> int:
    return -1 if (j // 2) % 2 else 1


# ========== 线系统 ==========
@dataclass(frozen=True)
class LineSystem:
    """
    线 (k, l) 在当前 jet 上的方程组

    rhs[j] 为 P_j；unknowns 列出本线活跃的未知量（固定为零的自由参数不在其中）。
    """

    k: int
    l: int
    sig: Signature
    max_weight: int
    rhs: tuple[PuSeries, ...]
    unknowns: tuple[str, ...]
    fallback: bool = True
    _levi: PuSeries = field(default=None, repr=False, compare=False)

    @classmethod
    def build(cls, jet: HypersurfaceJet, k: int, l: int, fallback: bool = True) -> "LineSystem":
        """
        从当前 jet 读取右端

        Raises:
            InternalInvariantError: 权 ≥ 3 时 jet 的权 2 部分不是 ⟨z,z⟩（φ₂₀₀ 未消去），
                此时右端会引用当前权的未知量
        """
        if jet.sig is None:
            raise InternalInvariantError("线方程需要 Levi 非退化的 jet")
        levi = levi_form(jet.sig, jet.max_weight)
        if k + 2 * l >= 3 and jet.phi.homogeneous_part(2) != levi:
            raise InternalInvariantError(f"求解线 ({k},{l}) 前 jet 的权 2 部分不是 ⟨z,z⟩")
        rhs = tuple(jet.phi.bicomponent(k + j, j, l - j).u_slice(l - j) for j in range(l + 1))
        return cls(k, l, jet.sig, jet.max_weight, rhs, _unknown_slots(k, l), fallback, levi)

    @property
    def kind(self) -> LineKind:
        return LineKind.of(self.k)

    @property
    def weight(self) -> int:
        return self.k + 2 * self.l

    @property
    def n(self) -> int:
        return self.sig.n

    @property
    def levi(self) -> PuSeries:
        return self._levi if self._levi is not None else levi_form(self.sig, self.max_weight)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self.rhs)

    def levi_power(self, j: int) -> PuSeries:
        return self.levi ** j

    def zero(self) -> PuSeries:
        return PuSeries.zero(self.n, self.max_weight)

    def cofactor(self, p: PuSeries, s: int) -> PuSeries:
        """迹分解 p = Q·L^s + R 中的 Q"""
        return trace_decompose(p, s, self.sig, fallback=self.fallback).q

    def phi_prime(self, j: int, g: PuSeries, a: PuSeries, b: Optional[PuSeries] = None) -> PuSeries:
        """代入解后的 φ′_j"""
        l = self.l
        out = self.rhs[j]
        if self.k == 0:
            c = g.coefficient(Monomial.one(self.n)) * (I ** j) * _binomial(l, j)
            out = out + self.levi_power(j).scale(c.im)
            if j >= 1:
                scaled = a.scale(I ** (j - 1) * _binomial(l - 1, j - 1)).real_part()
                out = out - (scaled * self.levi_power(j - 1)).scale(2)
            return out
        out = out + (g * self.levi_power(j)).scale(alpha(l, j))
        if j >= 1:
            out = out + (a * self.levi_power(j - 1)).scale(beta(l, j))
        if b is not None:
            out = out + (b * self.levi_power(j)).scale(gamma(l, j))
        return out

    def verify(self, choice: LineChoice, g: PuSeries, a: PuSeries, b: Optional[PuSeries] = None) -> None:
        for cond in choice.conditions():
            j = cond.m
            residual = trace_power(self.phi_prime(j, g, a, b), cond.t, self.sig)
            if residual:
                raise InternalInvariantError(f"线 ({self.k},{self.l}) 的解不满足 {cond.describe()}: {residual.to_text()}")


def _unknown_slots(k: int, l: int) -> tuple[str, ...]:
    if k >= 2:
        return (f"g_{k}{l}",) if l == 0 else (f"g_{k}{l}", f"f_{k + 1}{l - 1}")
    if k == 1:
        if l == 1:
            return "g_11", "f_20"
        return (f"g_1{l}", f"f_2{l - 1}", f"f_0{l}") if l >= 2 else ()
    if l == 2:
        return "Im g_02", "f_11"
    return (f"Re g_0{l}", f"Im g_0{l}", f"f_1{l - 1}") if l >= 3 else ()


# ========== 解 ==========
@dataclass(frozen=True)
class LineSolution:
    """g 为 g_{kl}(z)（只含 z 的级数，k = 0 时为常数）；f 把 (a, b) 映到 f_{ab} 的 n 个分量"""

    k: int
    l: int
    g: PuSeries
    f: dict = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return self.g.is_zero and all(all(c.is_zero for c in comps) for comps in self.f.values())


def vector_from_pairing(a: PuSeries, sig: Signature) -> tuple[PuSeries, ...]:
    """由 A = Σ_j ε_j f_j(z) z̄_j 读出 f_j(z) = ε_j·(A 中 z̄_j 的系数)"""
    n = sig.n
    zeros = (0,) * n
    comps: list[dict] = [{} for _ in range(n)]
    for mono, c in a.items():
        if sum(mono.beta) != 1 or mono.l:
            raise InternalInvariantError(f"配对式 {a.to_text()} 对 z̄ 不是一次的")
        j = mono.beta.index(1)
        comps[j][Monomial(mono.alpha, zeros, 0)] = c * sig[j]
    return tuple(PuSeries._trusted(n, a.max_weight, terms) for terms in comps)


def constants_from_conjugate_pairing(b: PuSeries, sig: Signature) -> tuple[PuSeries, ...]:
    """由 B = Σ_j ε_j z_j·conj(a_j) 读出常向量 a_j = ε_j·conj(B 中 z_j 的系数)"""
    n = sig.n
    for mono in b.coeffs:
        if sum(mono.alpha) != 1 or any(mono.beta) or mono.l:
            raise InternalInvariantError(f"配对式 {b.to_text()} 不是 z 的线性式")
    return tuple(PuSeries.constant(n, b.max_weight, (b.coefficient(Monomial(unit(n, j), (0,) * n, 0)) * sig[j]).conjugate())
                 for j in range(n))


def _holomorphic(p: PuSeries, label: str) -> PuSeries:
    if any(any(mono.beta) or mono.l for mono in p.coeffs):
        raise InternalInvariantError(f"{label} 含 z̄ 或 u: {p.to_text()}")
    return p


def _solve_pair(system: LineSystem, p: int, pp: int, a, b) -> tuple[PuSeries, PuSeries]:
    """
    φ′_j = P_j + a(j)·X·L^j + b(j)·Y·L^{j−1}，施加 tr^{p−1}φ′_p = 0 与 tr^{p′}φ′_{p′} = 0

    第一个条件给出 Y = −(Q + a(p)·X·L)/b(p)，Q 为 P_p 关于 L^{p−1} 的余因子；
    代入第二个条件后 X 由 S = P_{p′} − (b(p′)/b(p))·Q·L^{p′−1} 关于 L^{p′} 的余因子确定。
    """
    levi = system.levi
    b_p = GaussianRational.coerce(b(p))
    if not b_p:
        raise NonUniqueSolutionError(f"线 ({system.k},{system.l}) 的指标 {p} 没有 A 项")
    q = system.cofactor(system.rhs[p], p - 1)
    ratio = GaussianRational.coerce(b(pp)) / b_p
    s = system.rhs[pp]
    if pp >= 1 and ratio:
        s = s - (q * system.levi_power(pp - 1)).scale(ratio)
    c = GaussianRational.coerce(a(pp)) - ratio * a(p)
    if not c:
        raise NonUniqueSolutionError(f"线 ({system.k},{system.l}) 的指标对 ({p},{pp}) 行列式为零")
    x = system.cofactor(s, pp).scale(-ONE / c)
    y = (q + (x * levi).scale(a(p))).scale(-ONE / b_p)
    return x, y


def solve_line_k_ge2(system: LineSystem, choice: LineChoice, sig: Signature) -> LineSolution:
    """
    k ≥ 2 的线：l = 0 时 φ′_{k00} = 0 给出 g_{k0} = −2i·P_0；
    l ≥ 1 时由 (m, m′) 两个迹条件解出 g_{kl} 与 f_{k+1,l−1}
    """
    k, l = system.k, system.l
    if l == 0:
        g = _holomorphic(system.rhs[0].scale(-2 * I), f"g_{k}0")
        system.verify(choice, g, system.zero())
        return LineSolution(k, l, g)
    m, mp = choice.indices
    g, a = _solve_pair(system, m, mp, lambda j: alpha(l, j), lambda j: beta(l, j))
    _holomorphic(g, f"g_{k}{l}")
    system.verify(choice, g, a)
    return LineSolution(k, l, g, {(k + 1, l - 1): vector_from_pairing(a, sig)})


def solve_line_k1(system: LineSystem, choice: LineChoice, sig: Signature) -> LineSolution:
    """
    k = 1 的线

    l = 1：φ′₁₀₁ = 0 与 φ′₂₁₀ = 0，f₀₁ 固定为 0，得 g₁₁ = −2i·P_0、A = P_1 + g·L/2。
    l ≥ 2：m 条件消去 A，m′、m″ 条件给出 (g₁ₗ, B) 的 2×2 复系数方程组。
    """
    l = system.l
    levi = system.levi
    if l == 1:
        g = system.rhs[0].scale(-2 * I)
        a = system.rhs[1] + (g * levi).scale(alpha(1, 1))
        a = a.scale(-ONE / beta(1, 1))
        system.verify(choice, g, a)
        return LineSolution(1, 1, g, {(2, 0): vector_from_pairing(a, sig)})

    m, mp, mpp = choice.indices
    b_m = beta(l, m)
    q = system.cofactor(system.rhs[m], m - 1)
    rows = []
    rhs = []
    for j in (mp, mpp):
        ratio = beta(l, j) / b_m
        s = system.rhs[j]
        if j >= 1:
            s = s - (q * system.levi_power(j - 1)).scale(ratio)
        rows.append((alpha(l, j) - ratio * alpha(l, m), gamma(l, j) - ratio * gamma(l, m)))
        rhs.append(system.cofactor(s, j))
    (c1, d1), (c2, d2) = rows
    det = c1 * d2 - c2 * d1
    if not det:
        raise NonUniqueSolutionError(f"线 (1,{l}) 的选择 {choice.indices} 行列式为零")
    q1, q2 = rhs
    g = (q2.scale(d1) - q1.scale(d2)).scale(ONE / det)
    b = (q1.scale(c2) - q2.scale(c1)).scale(ONE / det)
    _holomorphic(g, f"g_1{l}")
    a = (q + (g * levi).scale(alpha(l, m)) + (b * levi).scale(gamma(l, m))).scale(-ONE / b_m)
    system.verify(choice, g, a, b)
    return LineSolution(1, l, g, {(2, l - 1): vector_from_pairing(a, sig),
                                  (0, l): constants_from_conjugate_pairing(b, sig)})


def _k0_coefficients(l: int):
    return (lambda j: sigma(j) * _binomial(l, j),
            lambda j: -2 * sigma(j) * _binomial(l - 1, j - 1))


def _real_constant(p: PuSeries, label: str):
    value = p.coefficient(Monomial.one(p.n))
    if not value.is_real or len(p) > (1 if value else 0):
        raise InternalInvariantError(f"{label} 不是实常数: {p.to_text()}")
    return value.re


def solve_line_k0(system: LineSystem, choice: LineChoice, sig: Signature) -> LineSolution:
    """
    k = 0 的线：偶数对确定 Im g₀ₗ 与 K = Im A，奇数对确定 Re g₀ₗ 与 H = Re A，A = H + iK

    l = 2：偶数对 (2, 0) 来自 trφ′₂₂₀ = 0 与 φ′₀₀₂ = 0；Re g₀₂ 固定为 0，φ′₁₁₁ = 0 给出 H = P_1/2。
    """
    l = system.l
    coeff_a, coeff_b = _k0_coefficients(l)
    if l == 2:
        y_series, k_form = _solve_pair(system, 2, 0, coeff_a, coeff_b)
        x = 0
        h_form = system.rhs[1].scale(GaussianRational(1, 0) / 2)
    else:
        m, mp, mt, mtp = choice.indices
        y_series, k_form = _solve_pair(system, m, mp, coeff_a, coeff_b)
        x_series, h_form = _solve_pair(system, mt, mtp, coeff_a, coeff_b)
        x = _real_constant(x_series, f"Re g_0{l}")
    y = _real_constant(y_series, f"Im g_0{l}")
    g = PuSeries.constant(system.n, system.max_weight, GaussianRational(x, y))
    a = h_form + k_form.scale(I)
    system.verify(choice, g, a)
    return LineSolution(0, l, g, {(1, l - 1): vector_from_pairing(a, sig)})


def solve_line(system: LineSystem, choice: LineChoice) -> Optional[LineSolution]:
    """按线的类型分派；没有未知量的线返回 None"""
    if choice.key != (system.k, system.l):
        raise InternalInvariantError(f"线选择 {choice.key} 与线系统 ({system.k},{system.l}) 不匹配")
    if not system.unknowns:
        return None
    if system.is_zero:
        return LineSolution(system.k, system.l, system.zero())
    if choice.kind is LineKind.K_GE2:
        return solve_line_k_ge2(system, choice, system.sig)
    if choice.kind is LineKind.K1:
        return solve_line_k1(system, choice, system.sig)
    return solve_line_k0(system, choice, system.sig)
