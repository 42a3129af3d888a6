"""
精确线性代数（sympy DomainMatrix over QQ 与 QQ_I）

本包内的矩阵条目都是 Fraction 或 GaussianRational；进入 sympy 前转换为 QQ / QQ_I 元素，结果再转换回来。
"""
import logging
from fractions import Fraction
from typing import Sequence

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from biaozhun.algebra.scalars import GaussianRational
from biaozhun.errors import NonUniqueSolutionError, ValidationError

logger = logging.getLogger(__name__)


def _to_qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def to_domain_matrix(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> DomainMatrix:
    nrows = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if nrows else 0
    return DomainMatrix([[_to_qq(v) for v in row] for row in rows], (nrows, ncols), QQ)


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]],
                ncols: int) -> list[list[Fraction]]:
    """
    解 A·X = B，要求解存在且唯一

    Args:
        rows: A 的行，长度 ncols
        rhs: B 的行，每行若干个右端列
        ncols: 未知数个数

    Returns:
        list[list[Fraction]]: X 的行（每个未知数一行，列与 B 的列对应）

    Raises:
        NonUniqueSolutionError: 系统不相容，或秩小于未知数个数
    """
    if len(rows) != len(rhs):
        raise ValidationError(f"系数矩阵行数 {len(rows)} 与右端行数 {len(rhs)} 不一致")
    nrhs = len(rhs[0]) if rhs else 0
    if ncols == 0:
        return []
    augmented = [list(r) + list(b) for r, b in zip(rows, rhs)]
    if not augmented:
        raise NonUniqueSolutionError(f"没有方程约束 {ncols} 个未知数")
    reduced, pivots = to_domain_matrix(augmented, ncols + nrhs).rref()
    if any(p >= ncols for p in pivots):
        raise NonUniqueSolutionError("线性系统不相容")
    if len(pivots) != ncols:
        raise NonUniqueSolutionError(f"线性系统秩为 {len(pivots)}，少于未知数个数 {ncols}")
    table = reduced.to_list()
    return [[_from_qq(table[i][ncols + j]) for j in range(nrhs)] for i in range(ncols)]


def determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _from_qq(to_domain_matrix(rows).det())


def _to_qq_i(x) -> object:
    x = GaussianRational.coerce(x)
    return QQ_I.new(_to_qq(x.re), _to_qq(x.im))


def _from_qq_i(x) -> GaussianRational:
    return GaussianRational._raw(_from_qq(x.x), _from_qq(x.y))


def to_gaussian_domain_matrix(rows: Sequence[Sequence[GaussianRational]]) -> DomainMatrix:
    size = len(rows)
    ncols = len(rows[0]) if size else 0
    return DomainMatrix([[_to_qq_i(v) for v in row] for row in rows], (size, ncols), QQ_I)


def gaussian_determinant(rows: Sequence[Sequence[GaussianRational]]) -> GaussianRational:
    if not rows:
        return GaussianRational(1)
    return _from_qq_i(to_gaussian_domain_matrix(rows).det())


def invert_gaussian_matrix(matrix: Sequence[Sequence[GaussianRational]]) -> list[list[GaussianRational]]:
    """
    高斯有理方阵求逆

    Raises:
        ValidationError: 矩阵奇异
    """
    dm = to_gaussian_domain_matrix(matrix)
    if not _from_qq_i(dm.det()):
        raise ValidationError("矩阵奇异，不可逆")
    return [[_from_qq_i(v) for v in row] for row in dm.inv().to_list()]
