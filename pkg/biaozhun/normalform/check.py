"""标准形检查器：逐条件计算 tr^t φ_{kml}"""
from dataclasses import dataclass
from typing import Sequence

import pandas as pd

from biaozhun.algebra.series import PuSeries
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.jet import HypersurfaceJet
from biaozhun.normalform.conditions import Condition
from biaozhun.normalform.spec import NormalFormSpec, conditions_up_to
from biaozhun.trace.operator import trace_power


@dataclass(frozen=True)
class Violation:
    condition: Condition
    residual: PuSeries


def check(m: HypersurfaceJet, spec: NormalFormSpec) -> list[Violation]:
    """
    列出 jet 不满足的全部条件

    Raises:
        ValidationError: jet Levi 退化（迹算子需要签名）
    """
    if m.sig is None:
        raise ValidationError("检查标准形需要 Levi 非退化的 jet")
    violations = []
    for cond in conditions_up_to(spec, m.max_weight):
        residual = trace_power(m.phi.bicomponent(cond.k, cond.m, cond.l), cond.t, m.sig)
        if residual:
            violations.append(Violation(cond, residual))
    return violations


def violations_frame(violations: Sequence[Violation]) -> pd.DataFrame:
    rows = [{"权": v.condition.weight, "条件": v.condition.describe(), "项数": len(v.residual),
             "残差": v.residual.to_text()} for v in violations]
    return pd.DataFrame(rows, columns=["权", "条件", "项数", "残差"])
