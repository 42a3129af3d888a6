"""
截断形式级数

PuSeries   (z, z̄, u) 上的级数，承载定义函数 φ = Σ φ_{kml}(z,z̄) u^l
HoloSeries (z, w) 上的全纯级数，承载映射分量 f_{kl}, g_{kl}

两者都按权截断：z、z̄ 权 1，u、w 权 2；权超过 max_weight 的单项式一律丢弃。
所有运算要求参与的级数 n 与 max_weight 完全一致，不做隐式提升或截断。
"""
import logging
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Union

from biaozhun.algebra.monomials import HoloMonomial, Monomial, unit
from biaozhun.algebra.scalars import I, ONE, ZERO, GaussianRational, ScalarLike
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError

logger = logging.getLogger(__name__)

_HALF = GaussianRational(1, 0) / 2
_MINUS_HALF_I = GaussianRational(0, -1) / 2


class _TruncatedSeries:
    """PuSeries 与 HoloSeries 的公共实现：以单项式为键的稀疏字典"""

    __slots__ = ("n", "max_weight", "_coeffs", "_buckets")
    monomial_type: type = tuple

    def __init__(self, n: int, max_weight: int,
                 coeffs: Union[Mapping, Iterable, None] = None):
        if n < 1:
            raise ValidationError(f"维数 n 必须 ≥ 1，实际为 {n}")
        if max_weight < 0:
            raise ValidationError(f"截断权必须 ≥ 0，实际为 {max_weight}")
        store: dict = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            mtype = self.monomial_type
            for mono, c in items:
                if not isinstance(mono, mtype):
                    mono = mtype(*mono)
                if not mono.is_valid(n):
                    raise ValidationError(f"单项式 {mono} 与维数 n={n} 不符")
                if mono.weight > max_weight:
                    continue
                c = GaussianRational.coerce(c)
                prev = store.get(mono)
                store[mono] = c if prev is None else prev + c
        self.n = n
        self.max_weight = max_weight
        self._coeffs = {m: c for m, c in store.items() if c}
        self._buckets = None

    @classmethod
    def _trusted(cls, n: int, max_weight: int, coeffs: dict):
        """内部构造：coeffs 已经规范（无零系数、无超权单项式）"""
        obj = object.__new__(cls)
        obj.n = n
        obj.max_weight = max_weight
        obj._coeffs = coeffs
        obj._buckets = None
        return obj

    @classmethod
    def zero(cls, n: int, max_weight: int):
        return cls._trusted(n, max_weight, {})

    @classmethod
    def constant(cls, n: int, max_weight: int, c: ScalarLike):
        return cls(n, max_weight, {cls.monomial_type.one(n): c})

    # ========== 访问 ==========
    @property
    def coeffs(self) -> Mapping:
        return MappingProxyType(self._coeffs)

    def items(self):
        return self._coeffs.items()

    def sorted_items(self) -> list:
        """按单项式字典序排列，保证输出确定"""
        return sorted(self._coeffs.items())

    def coefficient(self, mono) -> GaussianRational:
        if not isinstance(mono, self.monomial_type):
            mono = self.monomial_type(*mono)
        return self._coeffs.get(mono, ZERO)

    def __len__(self):
        return len(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return (self.n == other.n and self.max_weight == other.max_weight
                and self._coeffs == other._coeffs)

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, W={self.max_weight}, {self.to_text()})"

    def to_text(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"({c})·{self._monomial_text(m)}" for m, c in self.sorted_items())

    @staticmethod
    def _monomial_text(mono) -> str:
        raise NotImplementedError

    # ========== 权 ==========
    def weight_buckets(self) -> list:
        """[(权, ((单项式, 系数), ...)), ...]，按权升序，缓存"""
        if self._buckets is None:
            groups: dict = {}
            for mono, c in self._coeffs.items():
                groups.setdefault(mono.weight, []).append((mono, c))
            self._buckets = [(w, tuple(groups[w])) for w in sorted(groups)]
        return self._buckets

    def min_weight(self) -> Optional[int]:
        buckets = self.weight_buckets()
        return buckets[0][0] if buckets else None

    def homogeneous_part(self, weight: int):
        return type(self)._trusted(self.n, self.max_weight,
                                   {m: c for m, c in self._coeffs.items() if m.weight == weight})

    def truncate(self, max_weight: int):
        """降低截断权；不允许提升（高权信息已丢失）"""
        if max_weight > self.max_weight:
            raise ValidationError(f"不能把截断权从 {self.max_weight} 提升到 {max_weight}")
        return type(self)._trusted(self.n, max_weight,
                                   {m: c for m, c in self._coeffs.items() if m.weight <= max_weight})

    # ========== 算术 ==========
    def _check_compatible(self, other):
        if not isinstance(other, type(self)):
            raise ValidationError(f"级数类型不一致: {type(self).__name__} 与 {type(other).__name__}")
        if self.n != other.n:
            raise ValidationError(f"维数不一致: {self.n} 与 {other.n}")
        if self.max_weight != other.max_weight:
            raise ValidationError(f"截断权不一致: {self.max_weight} 与 {other.max_weight}")

    def __add__(self, other):
        if not isinstance(other, _TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self._coeffs)
        for mono, c in other._coeffs.items():
            prev = out.get(mono)
            if prev is None:
                out[mono] = c
            else:
                s = prev + c
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return type(self)._trusted(self.n, self.max_weight, out)

    def __neg__(self):
        return type(self)._trusted(self.n, self.max_weight, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, _TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def scale(self, c: ScalarLike):
        c = GaussianRational.coerce(c)
        if not c:
            return type(self).zero(self.n, self.max_weight)
        return type(self)._trusted(self.n, self.max_weight, {m: v * c for m, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, _TruncatedSeries):
            return self._mul(other)
        if isinstance(other, (GaussianRational, int)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _TruncatedSeries):
            return other._mul(self)
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(ONE / GaussianRational.coerce(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValidationError("级数只支持非负整数次幂")
        result = type(self).constant(self.n, self.max_weight, 1)
        base = self
        while k:
            if k & 1:
                result = result._mul(base)
            k >>= 1
            if k:
                base = base._mul(base)
        return result

    def _mul(self, other):
        self._check_compatible(other)
        limit = self.max_weight
        out: dict = {}
        right = other.weight_buckets()
        for wa, terms_a in self.weight_buckets():
            room = limit - wa
            if right and right[0][0] > room:
                break
            for wb, terms_b in right:
                if wb > room:
                    break
                for ma, ca in terms_a:
                    for mb, cb in terms_b:
                        key = ma.times(mb)
                        prev = out.get(key)
                        out[key] = ca * cb if prev is None else prev + ca * cb
        return type(self)._trusted(self.n, self.max_weight, {m: c for m, c in out.items() if c})

    def mul_weight_part(self, other, weight: int):
        """只计算乘积的纯权 weight 部分"""
        self._check_compatible(other)
        right = dict(other.weight_buckets())
        out: dict = {}
        for wa, terms_a in self.weight_buckets():
            terms_b = right.get(weight - wa)
            if not terms_b:
                continue
            for ma, ca in terms_a:
                for mb, cb in terms_b:
                    key = ma.times(mb)
                    prev = out.get(key)
                    out[key] = ca * cb if prev is None else prev + ca * cb
        return type(self)._trusted(self.n, self.max_weight, {m: c for m, c in out.items() if c})


class PuSeries(_TruncatedSeries):
    """(z, z̄, u) 上按权截断的级数"""

    __slots__ = ()
    monomial_type = Monomial

    @classmethod
    def z(cls, n: int, j: int, max_weight: int) -> "PuSeries":
        return cls(n, max_weight, {Monomial(unit(n, j), (0,) * n, 0): 1})

    @classmethod
    def zbar(cls, n: int, j: int, max_weight: int) -> "PuSeries":
        return cls(n, max_weight, {Monomial((0,) * n, unit(n, j), 0): 1})

    @classmethod
    def u(cls, n: int, max_weight: int) -> "PuSeries":
        return cls(n, max_weight, {Monomial((0,) * n, (0,) * n, 1): 1})

    @staticmethod
    def _monomial_text(mono: Monomial) -> str:
        parts = []
        for name, exps in (("z", mono.alpha), ("zb", mono.beta)):
            for j, e in enumerate(exps):
                if e:
                    parts.append(f"{name}{j + 1}" + (f"^{e}" if e > 1 else ""))
        if mono.l:
            parts.append("u" + (f"^{mono.l}" if mono.l > 1 else ""))
        return "*".join(parts) or "1"

    def conjugate(self) -> "PuSeries":
        return PuSeries._trusted(self.n, self.max_weight,
                                 {m.conjugate(): c.conjugate() for m, c in self._coeffs.items()})

    @property
    def is_real(self) -> bool:
        return self == self.conjugate()

    def bicomponent(self, k: int, m: int, l: int) -> "PuSeries":
        return PuSeries._trusted(self.n, self.max_weight, {
            mono: c for mono, c in self._coeffs.items()
            if mono.l == l and sum(mono.alpha) == k and sum(mono.beta) == m
        })

    def bicomponents(self) -> dict:
        """{(k, m, l): φ_{kml} u^l}"""
        groups: dict = {}
        for mono, c in self._coeffs.items():
            a, b = mono.bidegree
            groups.setdefault((a, b, mono.l), {})[mono] = c
        return {key: PuSeries._trusted(self.n, self.max_weight, terms) for key, terms in groups.items()}

    def u_slice(self, l: int) -> "PuSeries":
        """u^l 的系数（不含 u 的多项式）"""
        return PuSeries._trusted(self.n, self.max_weight, {
            Monomial(mono.alpha, mono.beta, 0): c for mono, c in self._coeffs.items() if mono.l == l
        })

    def times_u(self, l: int) -> "PuSeries":
        if l == 0:
            return self
        return PuSeries._trusted(self.n, self.max_weight, {
            Monomial(mono.alpha, mono.beta, mono.l + l): c
            for mono, c in self._coeffs.items() if mono.weight + 2 * l <= self.max_weight
        })

    def real_part(self) -> "PuSeries":
        return (self + self.conjugate()).scale(_HALF)

    def imag_part(self) -> "PuSeries":
        return (self - self.conjugate()).scale(_MINUS_HALF_I)


class HoloSeries(_TruncatedSeries):
    """(z, w) 上按权截断的全纯级数"""

    __slots__ = ()
    monomial_type = HoloMonomial

    @classmethod
    def z(cls, n: int, j: int, max_weight: int) -> "HoloSeries":
        return cls(n, max_weight, {HoloMonomial(unit(n, j), 0): 1})

    @classmethod
    def w(cls, n: int, max_weight: int) -> "HoloSeries":
        return cls(n, max_weight, {HoloMonomial((0,) * n, 1): 1})

    @staticmethod
    def _monomial_text(mono: HoloMonomial) -> str:
        parts = [f"z{j + 1}" + (f"^{e}" if e > 1 else "") for j, e in enumerate(mono.alpha) if e]
        if mono.l:
            parts.append("w" + (f"^{mono.l}" if mono.l > 1 else ""))
        return "*".join(parts) or "1"

    def coefficient_of(self, alpha: Sequence[int], l: int) -> GaussianRational:
        return self._coeffs.get(HoloMonomial(tuple(alpha), l), ZERO)

    def w_slice(self, l: int) -> "HoloSeries":
        """w^l 的系数 g_{·l}(z)（不含 w）"""
        return HoloSeries._trusted(self.n, self.max_weight, {
            HoloMonomial(mono.alpha, 0): c for mono, c in self._coeffs.items() if mono.l == l
        })


# ========== 函数式接口 ==========
def add(a: PuSeries, b: PuSeries) -> PuSeries:
    return a + b


def mul(a: PuSeries, b: PuSeries) -> PuSeries:
    return a * b


def conjugate(a: PuSeries) -> PuSeries:
    return a.conjugate()


def bicomponent(a: PuSeries, k: int, m: int, l: int) -> PuSeries:
    if min(k, m, l) < 0:
        raise ValidationError(f"双次数指标必须非负: ({k},{m},{l})")
    return a.bicomponent(k, m, l)


def real_part(a: PuSeries) -> PuSeries:
    return a.real_part()


def imag_part(a: PuSeries) -> PuSeries:
    return a.imag_part()


def levi_form(sig: Signature, max_weight: int) -> PuSeries:
    """⟨z,z⟩ = Σ ε_j z_j z̄_j"""
    n = sig.n
    return PuSeries(n, max_weight, {Monomial(unit(n, j), unit(n, j), 0): sig[j] for j in range(n)})


def holo_from_pu(p: PuSeries, w_power: int = 0) -> HoloSeries:
    """把只含 z 的 PuSeries 写成 HoloSeries，并乘以 w^w_power"""
    out = {}
    for mono, c in p.items():
        if any(mono.beta) or mono.l:
            raise ValidationError(f"单项式 {mono} 含 z̄ 或 u，不是全纯多项式")
        out[HoloMonomial(mono.alpha, w_power)] = c
    return HoloSeries(p.n, p.max_weight, out)


def pu_from_holo(h: HoloSeries) -> PuSeries:
    """把不含 w 的 HoloSeries 视为 (z, z̄, u) 中的多项式"""
    zeros = (0,) * h.n
    out = {}
    for mono, c in h.items():
        if mono.l:
            raise ValidationError(f"单项式 {mono} 含 w")
        out[Monomial(mono.alpha, zeros, 0)] = c
    return PuSeries._trusted(h.n, h.max_weight, out)


# ========== 代换 ==========
def _evaluate(target: _TruncatedSeries, args: Sequence[_TruncatedSeries], result_cls):
    """
    在参数 args 处求值 target（target 单项式的展平指数与 args 一一对应）

    单项式的值按“去掉最后一个非零指数”递推缓存，乘法按权截断。
    """
    first = args[0]
    n, limit = first.n, first.max_weight
    for a in args:
        if not isinstance(a, result_cls):
            raise ValidationError(f"代换参数必须是 {result_cls.__name__}")
        a._check_compatible(first)
    if target.max_weight != limit:
        raise ValidationError(f"截断权不一致: 目标 {target.max_weight}，参数 {limit}")

    one_mono = result_cls.monomial_type.one(n)
    min_weights = []
    for idx, a in enumerate(args):
        if a.coefficient(one_mono):
            raise ValidationError(f"第 {idx} 个代换参数含非零常数项")
        mw = a.min_weight()
        min_weights.append(limit + 1 if mw is None else mw)

    cache: dict = {(0,) * len(args): result_cls.constant(n, limit, 1)}

    def power_product(exp: tuple):
        value = cache.get(exp)
        if value is None:
            j = max(i for i, e in enumerate(exp) if e)
            prev = exp[:j] + (exp[j] - 1,) + exp[j + 1:]
            value = power_product(prev)._mul(args[j])
            cache[exp] = value
        return value

    out: dict = {}
    for mono, c in target.items():
        exp = mono.exponents()
        if sum(e * w for e, w in zip(exp, min_weights)) > limit:
            continue
        for m2, c2 in power_product(exp).items():
            prev = out.get(m2)
            out[m2] = c * c2 if prev is None else prev + c * c2
    return result_cls._trusted(n, limit, {m: c for m, c in out.items() if c})


def substitute(target: HoloSeries, z_args: Sequence[PuSeries], w_arg: PuSeries) -> PuSeries:
    """
    形式复合 target(z_args, w_arg)，结果在 (z, z̄, u) 中按权截断

    Args:
        target: (z, w) 中的全纯级数
        z_args: n 个 PuSeries，代入 z
        w_arg: 代入 w 的 PuSeries

    Returns:
        PuSeries: 复合结果

    Raises:
        ValidationError: 参数含常数项、个数不符、截断权不一致
    """
    if len(z_args) != target.n:
        raise ValidationError(f"需要 {target.n} 个 z 参数，实际为 {len(z_args)}")
    return _evaluate(target, list(z_args) + [w_arg], PuSeries)


def substitute_holo(target: HoloSeries, z_args: Sequence[HoloSeries], w_arg: HoloSeries) -> HoloSeries:
    """全纯级数之间的复合，用于映射 jet 的复合与求逆"""
    if len(z_args) != target.n:
        raise ValidationError(f"需要 {target.n} 个 z 参数，实际为 {len(z_args)}")
    return _evaluate(target, list(z_args) + [w_arg], HoloSeries)


def substitute_pu(target: PuSeries, z_args: Sequence[PuSeries], u_arg: PuSeries) -> PuSeries:
    """target(Z, conj(Z), U)：z̄ 的参数取 z 参数的共轭"""
    if len(z_args) != target.n:
        raise ValidationError(f"需要 {target.n} 个 z 参数，实际为 {len(z_args)}")
    zs = list(z_args)
    return _evaluate(target, zs + [a.conjugate() for a in zs] + [u_arg], PuSeries)


def identity_args(n: int, max_weight: int) -> tuple[list[PuSeries], PuSeries]:
    """恒等参数化 (z, u)"""
    return [PuSeries.z(n, j, max_weight) for j in range(n)], PuSeries.u(n, max_weight)


# ========== 导数 ==========
def derivative_z(p: PuSeries, j: int) -> PuSeries:
    """∂p/∂z_j"""
    out = {}
    for mono, c in p.items():
        e = mono.alpha[j]
        if e:
            out[Monomial(mono.alpha[:j] + (e - 1,) + mono.alpha[j + 1:], mono.beta, mono.l)] = c * e
    return PuSeries._trusted(p.n, p.max_weight, out)


def derivative_u(p: PuSeries) -> PuSeries:
    out = {}
    for mono, c in p.items():
        if mono.l:
            out[Monomial(mono.alpha, mono.beta, mono.l - 1)] = c * mono.l
    return PuSeries._trusted(p.n, p.max_weight, out)
