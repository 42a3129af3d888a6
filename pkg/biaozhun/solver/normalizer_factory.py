import logging
from typing import Optional

import pandas as pd

from biaozhun.config import NormalizerConfig
from biaozhun.errors import InternalInvariantError, ValidationError
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.normalform.spec import NormalFormSpec
from biaozhun.solver.line_normalizer import LineNormalizer
from biaozhun.solver.normalizer_interface import NormalizationResult, NormalizerInterface
from biaozhun.solver.oracle_normalizer import OracleNormalizer

logger = logging.getLogger(__name__)


class NormalizerFactory:
    def __init__(self, config: Optional[NormalizerConfig] = None):
        self.config = config or NormalizerConfig()
        normalizers = [
            (LineNormalizer(self.config), 1),
            (OracleNormalizer(self.config), 2),
        ]
        self.normalizers = sorted(normalizers, key=lambda x: x[1])  # (实例, 优先级)

    @property
    def primary(self) -> NormalizerInterface:
        return self.normalizers[0][0]

    def get(self, name: str) -> NormalizerInterface:
        for normalizer, _prio in self.normalizers:
            if normalizer.name == name:
                return normalizer
        raise ValidationError(f"未知归一化器 {name!r}")

    def normalize(self, m: HypersurfaceJet, spec: NormalFormSpec, cross_check: Optional[bool] = None) -> NormalizationResult:
        """
        用优先级最高的归一化器求解；cross_check 时其余归一化器逐一复算并要求结果完全一致

        Raises:
            InternalInvariantError: 各归一化器结果不一致（唯一性被破坏）
        """
        if cross_check is None:
            cross_check = self.config.normalize.oracle
        result = self.primary.normalize(m, spec)
        if not cross_check:
            return result
        for normalizer, _prio in self.normalizers[1:]:
            other = normalizer.normalize(m, spec)
            if other.normal_form != result.normal_form or other.map != result.map:
                raise InternalInvariantError(f"[ORACLE] {normalizer.name} 与 {self.primary.name} 的结果不一致")
            logger.info(f"[ORACLE] {normalizer.name} 与 {self.primary.name} 结果一致")
        return result


def certificate_frame(result: NormalizationResult, spec: NormalFormSpec) -> pd.DataFrame:
    """逐权摘要：线数、条件数、映射增量项数"""
    rows = [{"权": s.weight, "线数": s.lines, "条件数": s.conditions, "增量项数": s.increment_terms}
            for s in result.steps]
    frame = pd.DataFrame(rows, columns=["权", "线数", "条件数", "增量项数"])
    frame.attrs["spec"] = spec.name
    frame.attrs["violations"] = len(result.certificate)
    return frame
