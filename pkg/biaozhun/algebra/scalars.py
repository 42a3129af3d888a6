"""
精确标量：有理数使用 fractions.Fraction，高斯有理数 a+bi 由本模块提供

系数字符串语法（JSON 文档使用）：
    R          实数，R = [-]digits[/digits]
    R+Ri       例如 "1/2+3i"
    R-Ri       例如 "-1-2/3i"
"""
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

from biaozhun.errors import ParseError

Rational = Fraction

ScalarLike = Union["GaussianRational", Fraction, int]


class GaussianRational:
    """
    高斯有理数 re + im·i，re、im 为约分后的 Fraction

    实例视为不可变值；算术运算总是返回新对象。
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[Fraction, int, str] = 0, im: Union[Fraction, int, str] = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value: ScalarLike) -> "GaussianRational":
        """把 int / Fraction / GaussianRational 统一为 GaussianRational"""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, _RationalABC)):
            return cls._raw(Fraction(value), _ZERO_Q)
        raise TypeError(f"无法转换为高斯有理数: {value!r}")

    # ========== 算术 ==========
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, _RationalABC)):
                return NotImplemented
            return GaussianRational._raw(self.re + other, self.im)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, _RationalABC)):
                return NotImplemented
            return GaussianRational._raw(self.re - other, self.im)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if not isinstance(other, (int, _RationalABC)):
                return NotImplemented
            return GaussianRational._raw(self.re * other, self.im * other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            return GaussianRational._raw(a * c, a * d)
        if not d:
            return GaussianRational._raw(a * c, b * c)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.norm()
        if not norm:
            raise ZeroDivisionError("高斯有理数除以零")
        return self * GaussianRational._raw(other.re / norm, -other.im / norm)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return (ONE / self) ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|²"""
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    # ========== 比较 ==========
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, _RationalABC)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # ========== 文本 ==========
    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self):
        return f"GaussianRational({self})"

    @classmethod
    def from_string(cls, text: str) -> "GaussianRational":
        return parse_gaussian(text)


_ZERO_Q = Fraction(0)
ZERO = GaussianRational._raw(Fraction(0), Fraction(0))
ONE = GaussianRational._raw(Fraction(1), Fraction(0))
I = GaussianRational._raw(Fraction(0), Fraction(1))


def _scan_unsigned(text: str, pos: int) -> tuple[Fraction, int]:
    start = pos
    while pos < len(text) and "0" <= text[pos] <= "9":
        pos += 1
    if pos == start:
        raise ParseError(f"系数 {text!r} 在此处需要数字", where=f"列 {pos}")
    numerator = int(text[start:pos])
    denominator = 1
    if pos < len(text) and text[pos] == "/":
        pos += 1
        dstart = pos
        while pos < len(text) and "0" <= text[pos] <= "9":
            pos += 1
        if pos == dstart:
            raise ParseError(f"系数 {text!r} 的分母缺少数字", where=f"列 {pos}")
        denominator = int(text[dstart:pos])
        if denominator == 0:
            raise ParseError(f"系数 {text!r} 的分母为零", where=f"列 {dstart}")
    return Fraction(numerator, denominator), pos


def parse_gaussian(text: str) -> GaussianRational:
    """
    按 ``R`` / ``R+Ri`` / ``R-Ri`` 语法解析系数字符串

    Raises:
        ParseError: 语法不符，where 给出首个出错列号（从 0 开始）
    """
    if not isinstance(text, str):
        raise ParseError(f"系数必须是字符串，实际为 {type(text).__name__}")
    pos = 0
    negative = text.startswith("-")
    if negative:
        pos = 1
    re, pos = _scan_unsigned(text, pos)
    if negative:
        re = -re
    if pos == len(text):
        return GaussianRational._raw(re, _ZERO_Q)
    if text[pos] not in "+-":
        raise ParseError(f"系数 {text!r} 中出现意外字符 {text[pos]!r}", where=f"列 {pos}")
    sign = -1 if text[pos] == "-" else 1
    im, pos = _scan_unsigned(text, pos + 1)
    if pos >= len(text) or text[pos] != "i":
        raise ParseError(f"系数 {text!r} 的虚部缺少 'i'", where=f"列 {pos}")
    if pos + 1 != len(text):
        raise ParseError(f"系数 {text!r} 末尾有多余字符", where=f"列 {pos + 1}")
    return GaussianRational._raw(re, sign * im)
