"""
映射 jet：(z, w) ↦ (f(z,w), g(z,w))

f、g 都按单项式权 ≤ max_weight 存储。映射系数本身的权约定为
wt(g_ab) = a+2b、wt(f_ab) = a+2b+1，因此 f 在单项式权 max_weight 处的项
属于系数权 max_weight+1，对截断到 max_weight 的 φ 不产生影响。
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from biaozhun.algebra.linalg import gaussian_determinant, invert_gaussian_matrix
from biaozhun.algebra.monomials import HoloMonomial, unit
from biaozhun.algebra.scalars import ONE, ZERO, GaussianRational
from biaozhun.algebra.series import HoloSeries, PuSeries, levi_form, substitute_holo
from biaozhun.algebra.signature import Signature
from biaozhun.errors import InternalInvariantError, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MapJet:
    n: int
    max_weight: int
    f: tuple[HoloSeries, ...]
    g: HoloSeries

    # ========== 系数访问 ==========
    def f_coefficient(self, j: int, alpha: Sequence[int], l: int) -> GaussianRational:
        return self.f[j].coefficient_of(alpha, l)

    def g_coefficient(self, alpha: Sequence[int], l: int) -> GaussianRational:
        return self.g.coefficient_of(alpha, l)

    def linear_matrix(self) -> list[list[GaussianRational]]:
        """f₁₀：M[j][k] = f_j 中 z_k 的系数"""
        return [[self.f_coefficient(j, unit(self.n, k), 0) for k in range(self.n)] for j in range(self.n)]

    @property
    def g01(self) -> GaussianRational:
        return self.g_coefficient((0,) * self.n, 1)

    @property
    def f01(self) -> tuple[GaussianRational, ...]:
        return tuple(self.f_coefficient(j, (0,) * self.n, 1) for j in range(self.n))

    @property
    def g02(self) -> GaussianRational:
        return self.g_coefficient((0,) * self.n, 2)

    @property
    def has_identity_linear_part(self) -> bool:
        identity = [[ONE if j == k else ZERO for k in range(self.n)] for j in range(self.n)]
        return self.g01 == ONE and self.linear_matrix() == identity

    def truncate(self, max_weight: int) -> "MapJet":
        return validate_map(tuple(c.truncate(max_weight) for c in self.f), self.g.truncate(max_weight))


@dataclass(frozen=True)
class NormalizedMapFlags:
    is_linear_normalized: bool
    is_fg_normalized: bool


# ========== 构造与校验 ==========
def validate_map(f: Sequence[HoloSeries], g: HoloSeries) -> MapJet:
    """
    校验映射分量并构造 MapJet

    Raises:
        ValidationError: 含常数项、g₁₀ ≠ 0、Im g₀₁ ≠ 0、线性部分不可逆、分量维数或截断不一致
    """
    n, limit = g.n, g.max_weight
    f = tuple(f)
    if len(f) != n:
        raise ValidationError(f"映射需要 {n} 个 f 分量，实际为 {len(f)}")
    if limit < 2:
        raise ValidationError(f"映射截断权 {limit} < 2")
    for j, component in enumerate(f):
        component._check_compatible(g)
        if component.coefficient(HoloMonomial.one(n)):
            raise ValidationError(f"f_{j + 1} 含常数项，映射必须保持原点")
    if g.coefficient(HoloMonomial.one(n)):
        raise ValidationError("g 含常数项，映射必须保持原点")
    for k in range(n):
        if g.coefficient_of(unit(n, k), 0):
            raise ValidationError(f"g₁₀ ≠ 0：g 中 z_{k + 1} 的系数为 {g.coefficient_of(unit(n, k), 0)}")
    jet = MapJet(n, limit, f, g)
    g01 = jet.g01
    if not g01.is_real:
        raise ValidationError(f"Im g₀₁ ≠ 0：g 中 w 的系数为 {g01}")
    if not g01:
        raise ValidationError("g₀₁ = 0，线性部分不可逆")
    if not gaussian_determinant(jet.linear_matrix()):
        raise ValidationError("f₁₀ 奇异，线性部分不可逆")
    return jet


def identity_map(n: int, max_weight: int) -> MapJet:
    return MapJet(n, max_weight,
                  tuple(HoloSeries.z(n, j, max_weight) for j in range(n)),
                  HoloSeries.w(n, max_weight))


def linear_map(matrix: Sequence[Sequence[GaussianRational]], g01, max_weight: int) -> MapJet:
    """(z, w) ↦ (Mz, g₀₁·w)"""
    n = len(matrix)
    f = []
    for row in matrix:
        f.append(HoloSeries(n, max_weight, {HoloMonomial(unit(n, k), 0): c for k, c in enumerate(row)}))
    return validate_map(f, HoloSeries.w(n, max_weight).scale(g01))


# ========== 复合与求逆 ==========
def _check_pair(h2: MapJet, h1: MapJet) -> None:
    if h2.n != h1.n:
        raise ValidationError(f"映射维数不一致: {h2.n} 与 {h1.n}")
    if h2.max_weight != h1.max_weight:
        raise ValidationError(f"映射截断权不一致: {h2.max_weight} 与 {h1.max_weight}")


def compose(h2: MapJet, h1: MapJet) -> MapJet:
    """h2 ∘ h1，按权截断"""
    _check_pair(h2, h1)
    f = tuple(substitute_holo(component, h1.f, h1.g) for component in h2.f)
    g = substitute_holo(h2.g, h1.f, h1.g)
    return validate_map(f, g)


def invert(h: MapJet, max_iterations: Optional[int] = None) -> MapJet:
    """
    截断复合逆

    记 h = Λ + N（Λ 为线性部分），逆 X 满足 X = Λ⁻¹(id − N∘X)；
    从 X = Λ⁻¹ 出发迭代到不动点。
    """
    n, limit = h.n, h.max_weight
    m_inv = invert_gaussian_matrix(h.linear_matrix())
    r_inv = ONE / h.g01
    z_vars = [HoloSeries.z(n, j, limit) for j in range(n)]
    w_var = HoloSeries.w(n, limit)

    def apply_linear_inverse(ys: list[HoloSeries], y_w: HoloSeries):
        xs = []
        for row in m_inv:
            acc = HoloSeries.zero(n, limit)
            for c, y in zip(row, ys):
                acc = acc + y.scale(c)
            xs.append(acc)
        return xs, y_w.scale(r_inv)

    matrix = h.linear_matrix()
    n_f = []
    for j, component in enumerate(h.f):
        linear = HoloSeries.zero(n, limit)
        for k, z in enumerate(z_vars):
            linear = linear + z.scale(matrix[j][k])
        n_f.append(component - linear)
    n_g = h.g - w_var.scale(h.g01)

    x_f, x_g = apply_linear_inverse(z_vars, w_var)
    cap = 2 * limit + 4 if max_iterations is None else max_iterations
    for step in range(1, cap + 1):
        y_f = [z - substitute_holo(nf, x_f, x_g) for z, nf in zip(z_vars, n_f)]
        y_g = w_var - substitute_holo(n_g, x_f, x_g)
        new_f, new_g = apply_linear_inverse(y_f, y_g)
        if new_f == x_f and new_g == x_g:
            logger.debug(f"[INVERT] 映射求逆 {step} 次迭代收敛")
            return validate_map(new_f, new_g)
        x_f, x_g = new_f, new_g
    raise InternalInvariantError(f"映射求逆在 {cap} 次迭代内未收敛")


# ========== 规范化判定 ==========
def is_linear_normalized(h: MapJet) -> bool:
    """f₁₀ = id 且 g₀₁ = 1"""
    return h.has_identity_linear_part


def is_fg_normalized(h: MapJet) -> bool:
    """f₁₀ = id、f₀₁ = 0、g₁₀ = 0、g₀₁ = 1、Re g₀₂ = 0"""
    if not h.has_identity_linear_part:
        return False
    if any(h.f01):
        return False
    if any(h.g_coefficient(unit(h.n, k), 0) for k in range(h.n)):
        return False
    return h.g02.re == 0


def map_flags(h: MapJet) -> NormalizedMapFlags:
    return NormalizedMapFlags(is_linear_normalized(h), is_fg_normalized(h))


def is_levi_isometry_linear_part(h: MapJet, sig: Signature) -> bool:
    """Re(g₀₁)·⟨z,z⟩ = ⟨f₁₀z, f₁₀z⟩ 且 Im g₀₁ = 0"""
    if sig.n != h.n:
        raise ValidationError(f"签名长度 {sig.n} 与映射维数 {h.n} 不一致")
    g01 = h.g01
    if not g01.is_real:
        return False
    n, limit = h.n, h.max_weight
    matrix = h.linear_matrix()
    image = PuSeries.zero(n, limit)
    for j in range(n):
        mz = PuSeries.zero(n, limit)
        for k in range(n):
            mz = mz + PuSeries.z(n, k, limit).scale(matrix[j][k])
        image = image + (mz * mz.conjugate()).scale(sig[j])
    return image == levi_form(sig, limit).scale(g01.re)
