"""参数化 (z, z̄, u) ↦ (z′, z̄′, u′) 的形式反演"""
import logging
from typing import Optional, Sequence

from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.series import PuSeries, identity_args, substitute_pu
from biaozhun.errors import InternalInvariantError, ValidationError

logger = logging.getLogger(__name__)


def _check_linear_part(zp: Sequence[PuSeries], up: PuSeries, z_vars) -> None:
    for j, (component, z) in enumerate(zip(zp, z_vars)):
        component._check_compatible(up)
        if component.homogeneous_part(0) or component.homogeneous_part(1) != z:
            raise ValidationError(f"参数化第 {j} 个 z 分量的线性部分不是 z_{j + 1}")
    n = len(zp)
    low = up.homogeneous_part(0) + up.homogeneous_part(1)
    if low or up.coefficient(Monomial((0,) * n, (0,) * n, 1)) != 1:
        raise ValidationError("参数化 u 分量的线性部分不是 u")


def invert_parametrization(zp: Sequence[PuSeries], up: PuSeries,
                           max_iterations: Optional[int] = None) -> tuple[list[PuSeries], PuSeries]:
    """
    反演线性部分为恒等的参数化

    设 z′ = z + a(z, z̄, u)，u′ = u + b(z, z̄, u)，迭代
        Z ← z′ − a(Z, Z̄, U)，U ← u′ − b(Z, Z̄, U)
    每轮至少把正确的权提高一层（z、u 两个分量交替），截断后在有限步内到达不动点。

    Args:
        zp: n 个 PuSeries，z′ 关于 (z, z̄, u) 的表达式
        up: u′ 关于 (z, z̄, u) 的表达式
        max_iterations: 迭代上限，None 表示 2*max_weight+4

    Returns:
        (Z, U)：z、u 关于 (z′, z̄′, u′) 的表达式（变量名沿用 z, z̄, u）

    Raises:
        ValidationError: 线性部分不是恒等
        InternalInvariantError: 迭代上限内未收敛
    """
    n, limit = len(zp), up.max_weight
    z_vars, u_var = identity_args(n, limit)
    _check_linear_part(zp, up, z_vars)

    a = [component - z for component, z in zip(zp, z_vars)]
    b = up - u_var
    cap = 2 * limit + 4 if max_iterations is None else max_iterations

    Z, U = list(z_vars), u_var
    for step in range(1, cap + 1):
        new_Z = [z - substitute_pu(a_j, Z, U) for z, a_j in zip(z_vars, a)]
        new_U = u_var - substitute_pu(b, Z, U)
        if new_Z == Z and new_U == U:
            logger.debug(f"[INVERT] 参数化反演 {step} 次迭代收敛")
            return Z, U
        Z, U = new_Z, new_U
    raise InternalInvariantError(f"参数化反演在 {cap} 次迭代内未收敛")
