"""Levi 形式的符号 ε = (ε_1, ..., ε_n)"""
from dataclasses import dataclass
from typing import Sequence

from biaozhun.errors import ValidationError


@dataclass(frozen=True)
class Signature:
    eps: tuple[int, ...]

    def __post_init__(self):
        if len(self.eps) < 1:
            raise ValidationError("签名长度 n 必须 ≥ 1")
        if any(e not in (1, -1) for e in self.eps):
            raise ValidationError(f"签名元素必须为 ±1: {self.eps}")

    @classmethod
    def of(cls, eps: Sequence[int]) -> "Signature":
        return cls(tuple(int(e) for e in eps))

    @classmethod
    def positive(cls, n: int) -> "Signature":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return len(self.eps)

    def __iter__(self):
        return iter(self.eps)

    def __getitem__(self, j: int) -> int:
        return self.eps[j]

    def __str__(self):
        return "(" + ",".join(f"{e:+d}" for e in self.eps) + ")"
