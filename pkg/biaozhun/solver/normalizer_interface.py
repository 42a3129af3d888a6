from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional

from biaozhun.algebra.scalars import ZERO, GaussianRational
from biaozhun.algebra.signature import Signature
from biaozhun.hypersurface.automorphisms import quadric_automorphism_a, quadric_automorphism_r
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.hypersurface.mapjet import MapJet, compose
from biaozhun.normalform.check import Violation
from biaozhun.normalform.spec import NormalFormSpec


@dataclass(frozen=True)
class FreeParameters:
    """fg-规范化中固定下来的自由参数：a = f₀₁，r = Re g₀₂"""

    a: tuple[GaussianRational, ...]
    r: GaussianRational = ZERO

    @classmethod
    def pinned(cls, n: int) -> "FreeParameters":
        return cls(tuple(ZERO for _ in range(n)))

    @property
    def is_pinned(self) -> bool:
        return not any(self.a) and not self.r

    def residual_automorphism(self, sig: Signature, max_weight: int) -> MapJet:
        """吸收这组参数的二次超曲面自同构（全为零时是恒等映射）"""
        return compose(quadric_automorphism_r(sig.n, self.r, max_weight),
                       quadric_automorphism_a(sig, self.a, max_weight))


@dataclass(frozen=True)
class WeightStep:
    weight: int
    lines: int
    conditions: int
    increment_terms: int


@dataclass(frozen=True)
class NormalizationResult:
    normal_form: HypersurfaceJet
    map: MapJet
    certificate: tuple[Violation, ...] = ()
    free_parameters: Optional[FreeParameters] = None
    steps: tuple[WeightStep, ...] = field(default=(), compare=False)


class NormalizerInterface(ABC):
    """归一化器接口，定义统一方法"""

    name: str = "normalizer"

    # ========== 标准形 ==========
    @abstractmethod
    def normalize(self, m: HypersurfaceJet, spec: NormalFormSpec) -> NormalizationResult:
        pass
