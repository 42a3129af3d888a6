"""
超曲面 jet：Im w = φ(z, z̄, Re w)

HypersurfaceJet 只由 validate_hypersurface / validate_real_jet 构造；
sig 为 None 表示不要求 Levi 非退化（只用于调和项消去）。
"""
import logging
from dataclasses import dataclass
from typing import Optional

from biaozhun.algebra.series import PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.levi import levi_diagnostic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HypersurfaceJet:
    n: int
    sig: Optional[Signature]
    max_weight: int
    phi: PuSeries

    def __post_init__(self):
        if self.phi.n != self.n or self.phi.max_weight != self.max_weight:
            raise ValidationError("HypersurfaceJet 的 n / max_weight 与 φ 不一致")
        if self.sig is not None and self.sig.n != self.n:
            raise ValidationError(f"签名长度 {self.sig.n} 与维数 {self.n} 不一致")

    @property
    def is_levi_nondegenerate(self) -> bool:
        return self.sig is not None

    def truncate(self, max_weight: int) -> "HypersurfaceJet":
        if max_weight < 2:
            raise ValidationError("截断权至少为 2，jet 必须包含 Levi 形式")
        return HypersurfaceJet(self.n, self.sig, max_weight, self.phi.truncate(max_weight))


def _check_real_and_low_order(raw: PuSeries) -> None:
    if raw.max_weight < 2:
        raise ValidationError(f"截断权 {raw.max_weight} < 2：jet 至少要包含 Levi 形式")
    conj = raw.conjugate()
    if raw != conj:
        for mono, c in raw.sorted_items():
            if conj.coefficient(mono) != c:
                raise ValidationError(
                    f"实性不成立：{PuSeries._monomial_text(mono)} 的系数为 {c}，"
                    f"其共轭单项式 {PuSeries._monomial_text(mono.conjugate())} 的系数应为 {c.conjugate()}")
    for mono, c in raw.sorted_items():
        if sum(mono.alpha) + sum(mono.beta) + mono.l <= 1:
            raise ValidationError(f"φ 不得含常数项或线性项：{PuSeries._monomial_text(mono)} 的系数为 {c}")


def validate_real_jet(raw: PuSeries) -> HypersurfaceJet:
    """只检查实性与无低阶项，不要求 Levi 形式（允许 Levi 退化）"""
    _check_real_and_low_order(raw)
    return HypersurfaceJet(raw.n, None, raw.max_weight, raw)


def validate_hypersurface(raw: PuSeries, sig: Signature) -> HypersurfaceJet:
    """
    校验 φ 并构造 HypersurfaceJet

    Args:
        raw: 定义函数 φ
        sig: Levi 形式的符号 ε

    Returns:
        HypersurfaceJet: 满足全部不变量的 jet

    Raises:
        ValidationError: 实性不成立、含常数/线性项、Levi 形式不是对角 ±1
    """
    if raw.n != sig.n:
        raise ValidationError(f"签名长度 {sig.n} 与 φ 的维数 {raw.n} 不一致")
    _check_real_and_low_order(raw)
    expected = levi_form(sig, raw.max_weight)
    actual = raw.bicomponent(1, 1, 0)
    if actual != expected:
        diagnostic = levi_diagnostic(raw)
        raise ValidationError(
            f"Levi 形式不是签名 {sig} 的对角形 Σ ε_j z_j z̄_j：实际为 {actual.to_text()}。"
            f"请先做线性变换把 Levi 形式化为对角 ±1。{diagnostic.summary()}")
    return HypersurfaceJet(raw.n, sig, raw.max_weight, raw)


def quadric(sig: Signature, max_weight: int) -> HypersurfaceJet:
    """二次超曲面 Im w = ⟨z,z⟩"""
    return validate_hypersurface(levi_form(sig, max_weight), sig)
