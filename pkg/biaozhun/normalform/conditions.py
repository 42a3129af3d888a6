"""
规范化条件与线选择

一条“线”由 (k, l) 标识，包含多重次数 (k+j, j, l−j)，0 ≤ j ≤ l，其权均为 k+2l。
每条线上的条件由 LineChoice 给出的指标决定：
    k ≥ 2, l ≥ 1 : (m, m′)            tr^{m−1}φ_{k+m,m,l−m} = 0, tr^{m′}φ_{k+m′,m′,l−m′} = 0
    k ≥ 2, l = 0 : ()                 φ_{k00} = 0
    k = 1, l ≥ 2 : (m, m′, m″)        同上，第三个指标与 m′ 同样取 tr^{m″}
    k = 0, l ≥ 3 : (m, m′, m̃, m̃′)    偶数对 (m, m′) 与奇数对 (m̃, m̃′)
k ∈ {0, 1} 且 l 较小的线由固定条件处理，不需要选择。
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb

from biaozhun.algebra.linalg import determinant
from biaozhun.errors import ValidationError


class LineKind(str, Enum):
    K_GE2 = "k>=2"
    K1 = "k=1"
    K0 = "k=0"

    @classmethod
    def of(cls, k: int) -> "LineKind":
        if k < 0:
            raise ValidationError(f"线指标 k 必须非负: {k}")
        return cls.K_GE2 if k >= 2 else (cls.K1 if k == 1 else cls.K0)


# 线选择需要的指标个数（按 kind）；l 低于阈值时为固定条件，不需要指标
_ARITY = {LineKind.K_GE2: 2, LineKind.K1: 3, LineKind.K0: 4}
_CHOICE_FROM_L = {LineKind.K_GE2: 1, LineKind.K1: 2, LineKind.K0: 3}

FIXED_CONDITIONS = ((1, 0, 1, 0), (2, 1, 0, 0), (0, 0, 2, 0), (1, 1, 1, 0), (2, 2, 0, 1))


@dataclass(frozen=True, order=True)
class Condition:
    """tr^t φ_{kml} = 0"""

    k: int
    m: int
    l: int
    t: int

    def __post_init__(self):
        if min(self.k, self.m, self.l, self.t) < 0:
            raise ValidationError(f"条件指标必须非负: {self}")
        if self.t > min(self.k, self.m):
            raise ValidationError(f"迹的幂次 {self.t} 超过 min(k,m)={min(self.k, self.m)}")

    @property
    def weight(self) -> int:
        return self.k + self.m + 2 * self.l

    @property
    def line(self) -> tuple[int, int]:
        """所在线 (k−m, m+l)"""
        return self.k - self.m, self.m + self.l

    def describe(self) -> str:
        target = f"φ_{{{self.k},{self.m},{self.l}}}"
        if self.t == 0:
            return f"{target} = 0"
        power = "tr" if self.t == 1 else f"tr^{self.t}"
        return f"{power} {target} = 0"

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class LineChoice:
    kind: LineKind
    k: int
    l: int
    indices: tuple[int, ...] = ()

    @classmethod
    def make(cls, k: int, l: int, indices=()) -> "LineChoice":
        return cls(LineKind.of(k), k, l, tuple(int(i) for i in indices))

    @property
    def key(self) -> tuple[int, int]:
        return self.k, self.l

    @property
    def weight(self) -> int:
        return self.k + 2 * self.l

    @property
    def needs_indices(self) -> bool:
        return self.l >= _CHOICE_FROM_L[self.kind]

    def conditions(self) -> list[Condition]:
        """这条线上施加的全部条件"""
        k, l = self.k, self.l
        if self.kind is LineKind.K_GE2:
            if l == 0:
                return [Condition(k, 0, 0, 0)]
            m, mp = self.indices
            return [Condition(k + m, m, l - m, m - 1), Condition(k + mp, mp, l - mp, mp)]
        if self.kind is LineKind.K1:
            if l == 1:
                return [Condition(1, 0, 1, 0), Condition(2, 1, 0, 0)]
            if l < 1:
                return []
            m, mp, mpp = self.indices
            return [Condition(1 + m, m, l - m, m - 1), Condition(1 + mp, mp, l - mp, mp),
                    Condition(1 + mpp, mpp, l - mpp, mpp)]
        if l == 2:
            return [Condition(0, 0, 2, 0), Condition(1, 1, 1, 0), Condition(2, 2, 0, 1)]
        if l < 2:
            return []
        m, mp, mt, mtp = self.indices
        return [Condition(m, m, l - m, m - 1), Condition(mp, mp, l - mp, mp),
                Condition(mt, mt, l - mt, mt - 1), Condition(mtp, mtp, l - mtp, mtp)]


def line_keys(max_weight: int) -> list[tuple[int, int]]:
    """所有 2 ≤ k+2l ≤ max_weight 的线，按 (k, l) 字典序"""
    return sorted((k, l) for l in range(max_weight // 2 + 1) for k in range(max_weight - 2 * l + 1)
                  if k + 2 * l >= 2)


# ========== 组合规则 ==========
def validate_choice(c: LineChoice) -> bool:
    """线选择是否满足组合规则（范围、互异、m ≥ 1、奇偶性）"""
    if c.k < 0 or c.l < 0 or LineKind.of(c.k) is not c.kind:
        return False
    if not c.needs_indices:
        return c.indices == ()
    if len(c.indices) != _ARITY[c.kind]:
        return False
    l = c.l
    if any(i < 0 or i > l for i in c.indices):
        return False
    if c.kind is LineKind.K_GE2:
        m, mp = c.indices
        return m >= 1 and m != mp
    if c.kind is LineKind.K1:
        m, mp, mpp = c.indices
        if m < 1 or len({m, mp, mpp}) != 3:
            return False
        parities = {i % 2 for i in c.indices if i}
        return len(parities) == 2
    m, mp, mt, mtp = c.indices
    if m < 1 or m == mp or mt == mtp:
        return False
    return m % 2 == 0 and mp % 2 == 0 and mt % 2 == 1 and mtp % 2 == 1


def _binomial(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def pair_determinant(l: int, m: int, mp: int) -> Fraction:
    """
    | C(l,m)   −C(l−1,m−1)  |
    | C(l,m′)  −C(l−1,m′−1) |
    m′ = 0 时 C(l−1,−1) = 0，对应项不出现。
    """
    return determinant([[Fraction(_binomial(l, m)), Fraction(-_binomial(l - 1, m - 1))],
                        [Fraction(_binomial(l, mp)), Fraction(-_binomial(l - 1, mp - 1))]])


def _check_shape(c: LineChoice, l: int) -> None:
    if l != c.l:
        raise ValidationError(f"行列式的 l={l} 与线选择的 l={c.l} 不一致")
    if not c.needs_indices:
        raise ValidationError(f"线 {c.key} 为固定条件，没有选择行列式")
    if len(c.indices) != _ARITY[c.kind]:
        raise ValidationError(f"{c.kind.value} 线需要 {_ARITY[c.kind]} 个指标，实际为 {c.indices}")
    if any(i < 0 or i > l for i in c.indices):
        raise ValidationError(f"指标 {c.indices} 超出 [0, {l}]")
    if c.indices[0] < 1:
        raise ValidationError(f"首个指标 m 必须 ≥ 1: {c.indices}")
    if c.kind is LineKind.K0:
        m, mp, mt, mtp = c.indices
        if m % 2 or mp % 2 or not mt % 2 or not mtp % 2:
            raise ValidationError(f"k=0 线要求 (m, m′) 为偶数、(m̃, m̃′) 为奇数: {c.indices}")


def choice_determinant(c: LineChoice, l: int) -> Fraction:
    """
    线选择的可解性行列式

    k ≥ 2：二项式 2×2 行列式；k = 1：行 (1, j, (−1)^j·j) 组成的 3×3 行列式；
    k = 0：偶数对与奇数对各自的 2×2 行列式（各带因子 2）之积。

    Raises:
        ValidationError: 指标个数、范围或奇偶性不符合该线的形状
    """
    _check_shape(c, l)
    if c.kind is LineKind.K_GE2:
        m, mp = c.indices
        return pair_determinant(l, m, mp)
    if c.kind is LineKind.K1:
        return determinant([[Fraction(1), Fraction(j), Fraction((-1) ** j * j)] for j in c.indices])
    m, mp, mt, mtp = c.indices
    return (2 * pair_determinant(l, m, mp)) * (2 * pair_determinant(l, mt, mtp))
