"""
单项式与权

(z, z̄, u) 中的单项式 z^α z̄^β u^l，权 |α|+|β|+2l；
(z, w) 中的全纯单项式 z^α w^l，权 |α|+2l。
"""
from itertools import combinations_with_replacement
from operator import add
from typing import NamedTuple


class Monomial(NamedTuple):
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    l: int = 0

    @classmethod
    def one(cls, n: int) -> "Monomial":
        zeros = (0,) * n
        return cls(zeros, zeros, 0)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def bidegree(self) -> tuple[int, int]:
        return sum(self.alpha), sum(self.beta)

    @property
    def weight(self) -> int:
        return sum(self.alpha) + sum(self.beta) + 2 * self.l

    def times(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(map(add, self.alpha, other.alpha)),
                        tuple(map(add, self.beta, other.beta)),
                        self.l + other.l)

    def conjugate(self) -> "Monomial":
        return Monomial(self.beta, self.alpha, self.l)

    def exponents(self) -> tuple[int, ...]:
        """展平为 (α, β, l)，与代换参数的顺序 z, z̄, u 对应"""
        return self.alpha + self.beta + (self.l,)

    def is_valid(self, n: int) -> bool:
        return (len(self.alpha) == n and len(self.beta) == n and self.l >= 0
                and all(e >= 0 for e in self.alpha) and all(e >= 0 for e in self.beta))


class HoloMonomial(NamedTuple):
    alpha: tuple[int, ...]
    l: int = 0

    @classmethod
    def one(cls, n: int) -> "HoloMonomial":
        return cls((0,) * n, 0)

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def degree(self) -> int:
        return sum(self.alpha)

    @property
    def weight(self) -> int:
        return sum(self.alpha) + 2 * self.l

    def times(self, other: "HoloMonomial") -> "HoloMonomial":
        return HoloMonomial(tuple(map(add, self.alpha, other.alpha)), self.l + other.l)

    def exponents(self) -> tuple[int, ...]:
        return self.alpha + (self.l,)

    def is_valid(self, n: int) -> bool:
        return len(self.alpha) == n and self.l >= 0 and all(e >= 0 for e in self.alpha)


def unit(n: int, j: int) -> tuple[int, ...]:
    """长度 n、第 j 位为 1 的多重指标"""
    return tuple(1 if i == j else 0 for i in range(n))


def multi_indices(n: int, degree: int):
    """n 个变量、总次数 degree 的全部多重指标（字典序）"""
    found = []
    for combo in combinations_with_replacement(range(n), degree):
        idx = [0] * n
        for j in combo:
            idx[j] += 1
        found.append(tuple(idx))
    return sorted(found)
