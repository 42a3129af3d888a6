"""
二次超曲面 Im w = ⟨z,z⟩ 的自同构

a 型与 r 型吸收 fg-规范化中的两个自由参数 f₀₁ 与 Re g₀₂；
线性等距属于线性群 G₀，用于一般线性部分的测试。
"""
from typing import Sequence

from biaozhun.algebra.monomials import HoloMonomial, unit
from biaozhun.algebra.scalars import I, GaussianRational
from biaozhun.algebra.series import HoloSeries
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.mapjet import MapJet, is_levi_isometry_linear_part, linear_map, validate_map


def geometric_inverse(x: HoloSeries) -> HoloSeries:
    """1/(1 − x)，x 无常数项"""
    if x.coefficient(HoloMonomial.one(x.n)):
        raise ValidationError("几何级数要求 x 无常数项")
    result = HoloSeries.constant(x.n, x.max_weight, 1)
    power = result
    for _ in range(x.max_weight):
        power = power * x
        if power.is_zero:
            break
        result = result + power
    return result


def quadric_automorphism_a(sig: Signature, a: Sequence, max_weight: int) -> MapJet:
    """
    (z, w) ↦ (z + a·w, w) / (1 − 2i⟨z,a⟩ − i⟨a,a⟩w)，⟨z,a⟩ = Σ ε_j z_j ā_j

    f₀₁ = a，g₀₂ = i⟨a,a⟩（Re g₀₂ = 0）。
    """
    n = sig.n
    a = [GaussianRational.coerce(v) for v in a]
    if len(a) != n:
        raise ValidationError(f"参数 a 的长度 {len(a)} 与维数 {n} 不一致")
    z_dot_a = HoloSeries(n, max_weight, {HoloMonomial(unit(n, j), 0): a[j].conjugate() * sig[j] for j in range(n)})
    a_dot_a = sum((a[j].norm() * sig[j] for j in range(n)), 0)
    w = HoloSeries.w(n, max_weight)
    inverse = geometric_inverse(z_dot_a.scale(2 * I) + w.scale(I * a_dot_a))
    f = [(HoloSeries.z(n, j, max_weight) + w.scale(a[j])) * inverse for j in range(n)]
    return validate_map(f, w * inverse)


def quadric_automorphism_r(n: int, r, max_weight: int) -> MapJet:
    """(z, w) ↦ (z, w) / (1 − r·w)，r 实；Re g₀₂ = r"""
    r = GaussianRational.coerce(r)
    if not r.is_real:
        raise ValidationError(f"参数 r 必须为实数: {r}")
    w = HoloSeries.w(n, max_weight)
    inverse = geometric_inverse(w.scale(r))
    return validate_map([HoloSeries.z(n, j, max_weight) * inverse for j in range(n)], w * inverse)


def linear_isometry(sig: Signature, matrix: Sequence[Sequence], scale, max_weight: int) -> MapJet:
    """(z, w) ↦ (Mz, scale·w)；M 须满足 ⟨Mz,Mz⟩ = scale·⟨z,z⟩"""
    rows = [[GaussianRational.coerce(c) for c in row] for row in matrix]
    if len(rows) != sig.n or any(len(row) != sig.n for row in rows):
        raise ValidationError(f"矩阵必须是 {sig.n}×{sig.n}")
    h = linear_map(rows, GaussianRational.coerce(scale), max_weight)
    if not is_levi_isometry_linear_part(h, sig):
        raise ValidationError(f"线性映射不是签名 {sig} 的 Levi 等距")
    return h
