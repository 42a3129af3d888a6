"""
标准形规格：每条线的选择表

预设按规则生成任意权的表；自定义规格是有限表，只覆盖声明的 max_weight。
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import pandas as pd

from biaozhun.errors import ValidationError
from biaozhun.normalform.conditions import (Condition, LineChoice, LineKind, choice_determinant, line_keys,
                                            validate_choice)

logger = logging.getLogger(__name__)

PRESETS = ("chern_moser", "nf1", "nf2", "nf12", "min_l", "mixed")


# ========== 预设规则 ==========
def _chern_moser_k0(l: int) -> tuple:
    return 2, 0, 1, 3


def _nf1_k0(l: int) -> tuple:
    return 2, 0, 3, 1


def _min_l_k0(l: int) -> tuple:
    if l % 2 == 0:
        return l, l - 2, l - 1, l - 3
    return l - 1, l - 3, l, l - 2


def _mixed_k0(l: int) -> tuple:
    if l % 2 == 0:
        return l, 0, l - 1, 1
    return l - 1, 0, l, 1


# 每个预设：(k≥2 规则, k=1 规则, k=0 规则)
_RULES: dict[str, tuple[Callable, Callable, Callable]] = {
    "chern_moser": (lambda l: (1, 0), lambda l: (1, 0, 2), _chern_moser_k0),
    "nf1": (lambda l: (1, 0), lambda l: (1, 0, 2), _nf1_k0),
    "nf2": (lambda l: (1, 0), lambda l: (2, 0, 1), _chern_moser_k0),
    "nf12": (lambda l: (1, 0), lambda l: (2, 0, 1), _nf1_k0),
    "min_l": (lambda l: (l, l - 1), lambda l: (l, l - 1, l - 2), _min_l_k0),
    "mixed": (lambda l: (l, 0), lambda l: (l, 0, l - 1), _mixed_k0),
}


def canonical_preset_name(tag: str) -> str:
    """接受 chern-moser / chern_moser / Chern-Moser 等写法"""
    name = tag.strip().lower().replace("-", "_")
    if name not in _RULES:
        raise ValidationError(f"未知预设 {tag!r}，可选: {', '.join(p.replace('_', '-') for p in PRESETS)}")
    return name


def preset_choice(tag: str, k: int, l: int) -> LineChoice:
    rules = _RULES[canonical_preset_name(tag)]
    kind = LineKind.of(k)
    probe = LineChoice(kind, k, l)
    if not probe.needs_indices:
        return probe
    rule = {LineKind.K_GE2: rules[0], LineKind.K1: rules[1], LineKind.K0: rules[2]}[kind]
    return LineChoice(kind, k, l, tuple(rule(l)))


# ========== 规格 ==========
@dataclass(frozen=True)
class NormalFormSpec:
    max_weight: int
    table: Mapping[tuple[int, int], LineChoice] = field(default_factory=dict)
    preset: Optional[str] = None

    @property
    def name(self) -> str:
        return self.preset.replace("_", "-") if self.preset else "custom"

    def choice_for(self, k: int, l: int) -> LineChoice:
        choice = self.table.get((k, l))
        if choice is not None:
            return choice
        if self.preset is not None:
            return preset_choice(self.preset, k, l)
        probe = LineChoice(LineKind.of(k), k, l)
        if not probe.needs_indices:
            return probe
        raise ValidationError(f"自定义规格没有覆盖线 (k={k}, l={l})（声明的 max_weight={self.max_weight}）")

    def lines(self, max_weight: Optional[int] = None) -> list[LineChoice]:
        limit = self.max_weight if max_weight is None else max_weight
        return [self.choice_for(k, l) for k, l in line_keys(limit)]


def preset(tag: str, max_weight: int) -> NormalFormSpec:
    """
    按预设规则生成规格

    Args:
        tag: chern_moser | nf1 | nf2 | nf12 | min_l | mixed（连字符写法亦可）
        max_weight: 覆盖的最大权，≥ 2

    Returns:
        NormalFormSpec: 表覆盖所有 k+2l ≤ max_weight 的线
    """
    if max_weight < 2:
        raise ValidationError(f"规格的 max_weight 必须 ≥ 2，实际为 {max_weight}")
    name = canonical_preset_name(tag)
    table = {(k, l): preset_choice(name, k, l) for k, l in line_keys(max_weight)}
    return NormalFormSpec(max_weight, table, name)


def custom(choices: Sequence[LineChoice], max_weight: int) -> NormalFormSpec:
    """
    由显式线选择构造规格；固定条件的线可省略

    Raises:
        ValidationError: 选择非法、重复，或未覆盖某条需要选择的线
    """
    if max_weight < 2:
        raise ValidationError(f"规格的 max_weight 必须 ≥ 2，实际为 {max_weight}")
    table: dict = {}
    for c in choices:
        if c.key in table:
            raise ValidationError(f"线 {c.key} 重复给出")
        if c.weight > max_weight:
            raise ValidationError(f"线 {c.key} 的权 {c.weight} 超过 max_weight={max_weight}")
        if not validate_choice(c):
            raise ValidationError(f"线 {c.key} 的选择 {c.indices} 不满足组合规则")
        table[c.key] = c
    for k, l in line_keys(max_weight):
        if (k, l) not in table:
            probe = LineChoice(LineKind.of(k), k, l)
            if probe.needs_indices:
                raise ValidationError(f"自定义规格缺少线 (k={k}, l={l}) 的选择")
            table[(k, l)] = probe
    return NormalFormSpec(max_weight, table, None)


def validate_spec(spec: NormalFormSpec) -> list[str]:
    """返回全部问题描述，空列表表示规格合法"""
    problems = []
    for choice in spec.lines():
        if not validate_choice(choice):
            problems.append(f"线 {choice.key}: 选择 {choice.indices} 不满足组合规则")
        elif choice.needs_indices and not choice_determinant(choice, choice.l):
            problems.append(f"线 {choice.key}: 行列式为零")
    return problems


def conditions_up_to(spec: NormalFormSpec, max_weight: int) -> list[Condition]:
    """权 ≤ max_weight 的全部条件（含固定条件），按线的 (k, l) 序"""
    out = []
    for choice in spec.lines(max_weight):
        out.extend(choice.conditions())
    return out


def conditions_frame(conditions: Sequence[Condition]) -> pd.DataFrame:
    rows = [{"权": c.weight, "k": c.k, "m": c.m, "l": c.l, "t": c.t, "条件": c.describe()} for c in conditions]
    return pd.DataFrame(rows, columns=["权", "k", "m", "l", "t", "条件"])
