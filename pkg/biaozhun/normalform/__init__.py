"""规范化条件、预设与标准形检查"""
from biaozhun.normalform.check import Violation, check, violations_frame
from biaozhun.normalform.conditions import (FIXED_CONDITIONS, Condition, LineChoice, LineKind, choice_determinant,
                                            line_keys, pair_determinant, validate_choice)
from biaozhun.normalform.spec import (PRESETS, NormalFormSpec, conditions_frame, conditions_up_to, custom, preset,
                                      validate_spec)

__all__ = [
    "Condition", "LineChoice", "LineKind", "FIXED_CONDITIONS", "NormalFormSpec", "Violation", "PRESETS",
    "validate_choice", "choice_determinant", "pair_determinant", "line_keys",
    "preset", "custom", "validate_spec", "conditions_up_to", "conditions_frame", "check", "violations_frame",
]
