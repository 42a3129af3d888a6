"""Levi 形式诊断：合同对角化与 ±1 缩放可行性"""
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

from biaozhun.algebra.monomials import Monomial, unit
from biaozhun.algebra.scalars import GaussianRational
from biaozhun.algebra.series import PuSeries


def is_sum_of_two_rational_squares(x: Fraction) -> bool:
    """x ≥ 0 是两个有理数平方和 ⟺ 分子·分母中每个 ≡3 (mod 4) 的素因子指数为偶数"""
    if x < 0:
        return False
    if x == 0:
        return True
    product = x.numerator * x.denominator
    return all(exp % 2 == 0 for prime, exp in factorint(product).items() if prime % 4 == 3)


@dataclass(frozen=True)
class LeviDiagnostic:
    hermitian: tuple[tuple[GaussianRational, ...], ...]
    diagonal: tuple[Fraction, ...]
    rescalable: tuple[bool, ...]

    @property
    def nondegenerate(self) -> bool:
        return all(self.diagonal)

    def summary(self) -> str:
        entries = ", ".join(str(d) for d in self.diagonal)
        if not self.nondegenerate:
            return f"合同对角元为 ({entries})，Levi 形式退化。"
        if all(self.rescalable):
            return f"合同对角元为 ({entries})，可在 ℚ(i) 内精确缩放为 ±1。"
        return f"合同对角元为 ({entries})，部分对角元无法在 ℚ(i) 内缩放为 ±1。"


def hermitian_matrix(raw: PuSeries) -> list[list[GaussianRational]]:
    """H[j][k] = z_j z̄_k 在 φ 中的系数"""
    n = raw.n
    return [[raw.coefficient(Monomial(unit(n, j), unit(n, k), 0)) for k in range(n)] for j in range(n)]


def _congruence_diagonal(matrix: list[list[GaussianRational]]) -> list[Fraction]:
    a = [row[:] for row in matrix]
    size = len(a)
    diagonal = []
    for i in range(size):
        pivot = next((p for p in range(i, size) if a[p][p]), None)
        if pivot is None:
            pair = next(((j, k) for j in range(i, size) for k in range(i, size) if a[j][k]), None)
            if pair is None:
                diagonal.extend(Fraction(0) for _ in range(i, size))
                break
            j, k = pair
            t = a[j][k]
            # 行 j += t·行 k，列 j += conj(t)·列 k；新的 a[j][j] = 2|t|²
            a[j] = [x + t * y for x, y in zip(a[j], a[k])]
            for row in a:
                row[j] = row[j] + t.conjugate() * row[k]
            pivot = j
        if pivot != i:
            a[i], a[pivot] = a[pivot], a[i]
            for row in a:
                row[i], row[pivot] = row[pivot], row[i]
        head = a[i][i]
        for r in range(i + 1, size):
            factor = a[r][i] / head
            if not factor:
                continue
            a[r] = [x - factor * y for x, y in zip(a[r], a[i])]
            for row in a:
                row[r] = row[r] - factor.conjugate() * row[i]
        diagonal.append(head.re)
    return diagonal


def levi_diagnostic(raw: PuSeries) -> LeviDiagnostic:
    """
    报告 (1,1) 分量 Hermite 矩阵的合同对角元，以及每个对角元能否经 z_j ↦ c·z_j（c∈ℚ(i)）缩放为 ±1
    """
    matrix = hermitian_matrix(raw)
    diagonal = _congruence_diagonal(matrix)
    rescalable = tuple(bool(d) and is_sum_of_two_rational_squares(1 / abs(d)) for d in diagonal)
    return LeviDiagnostic(tuple(tuple(row) for row in matrix), tuple(diagonal), rescalable)
