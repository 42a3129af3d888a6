"""
变换规则：映射 (f, g) 把 Im w = φ 送到 Im w′ = φ′ 当且仅当
    Im g(z, u+iφ) = φ′(f(z, u+iφ), conj(f), Re g(z, u+iφ))
"""
import logging
from typing import Optional

from biaozhun.algebra.inversion import invert_parametrization
from biaozhun.algebra.linalg import invert_gaussian_matrix
from biaozhun.algebra.scalars import I, ONE
from biaozhun.algebra.series import PuSeries, identity_args, substitute, substitute_pu
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.jet import HypersurfaceJet, validate_hypersurface, validate_real_jet
from biaozhun.hypersurface.mapjet import MapJet, is_levi_isometry_linear_part

logger = logging.getLogger(__name__)


def _check_pair(m: HypersurfaceJet, h: MapJet) -> None:
    if m.n != h.n:
        raise ValidationError(f"jet 维数 {m.n} 与映射维数 {h.n} 不一致")
    if m.max_weight != h.max_weight:
        raise ValidationError(f"jet 截断权 {m.max_weight} 与映射截断权 {h.max_weight} 不一致")


def _parametrize(m: HypersurfaceJet, h: MapJet):
    """在 M 上用 (z, z̄, u) 参数化像点：返回 (f(z, u+iφ), g(z, u+iφ))"""
    z_vars, u_var = identity_args(m.n, m.max_weight)
    w_arg = u_var + m.phi.scale(I)
    zp = [substitute(component, z_vars, w_arg) for component in h.f]
    gp = substitute(h.g, z_vars, w_arg)
    return zp, gp


def _linear_combination(matrix, series: list[PuSeries]) -> list[PuSeries]:
    out = []
    for row in matrix:
        acc = PuSeries.zero(series[0].n, series[0].max_weight)
        for c, s in zip(row, series):
            if c:
                acc = acc + s.scale(c)
        out.append(acc)
    return out


def apply_map(m: HypersurfaceJet, h: MapJet, max_iterations: Optional[int] = None) -> HypersurfaceJet:
    """
    计算像超曲面 φ′

    Args:
        m: 原超曲面 jet（sig 为 None 时按 Levi 退化 jet 处理，只校验实性与低阶项）
        h: 映射 jet；Levi 非退化时其线性部分必须是 Levi 等距
        max_iterations: 参数化反演的迭代上限

    Returns:
        HypersurfaceJet: 像超曲面

    Raises:
        ValidationError: 维数/截断不一致、线性部分不是 Levi 等距、像不满足 jet 不变量
    """
    _check_pair(m, h)
    if m.sig is not None and not is_levi_isometry_linear_part(h, m.sig):
        raise ValidationError(f"映射线性部分不是签名 {m.sig} 的 Levi 等距，像的 Levi 形式将离开对角 ±1 形")

    n, limit = m.n, m.max_weight
    zp, gp = _parametrize(m, h)
    up, vp = gp.real_part(), gp.imag_part()

    identity_linear = h.has_identity_linear_part
    if not identity_linear:
        # 先约去线性部分：z″ = M⁻¹z′，u″ = u′/r
        m_inv = invert_gaussian_matrix(h.linear_matrix())
        r = h.g01.re
        zp = _linear_combination(m_inv, zp)
        up = up.scale(ONE / r)

    big_z, big_u = invert_parametrization(zp, up, max_iterations)
    phi = substitute_pu(vp, big_z, big_u)

    if not identity_linear:
        z_vars, u_var = identity_args(n, limit)
        phi = substitute_pu(phi, _linear_combination(m_inv, z_vars), u_var.scale(ONE / r))

    logger.debug(f"[APPLY] 像超曲面含 {len(phi)} 项 (n={n}, W={limit})")
    try:
        if m.sig is None:
            return validate_real_jet(phi)
        return validate_hypersurface(phi, m.sig)
    except ValidationError as e:
        raise ValidationError(f"apply_map 的像不是合法 jet: {e}") from e


def check_transformation_identity(m: HypersurfaceJet, h: MapJet, m_image: HypersurfaceJet) -> PuSeries:
    """
    变换规则残差 Im g(z,u+iφ) − φ′(f, f̄, Re g)，在 (z, z̄, u) 参数化上求值

    残差为零当且仅当 h 在截断权内把 m 映到 m_image。
    """
    _check_pair(m, h)
    _check_pair(m_image, h)
    zp, gp = _parametrize(m, h)
    return gp.imag_part() - substitute_pu(m_image.phi, zp, gp.real_part())
