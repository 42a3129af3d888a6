import unittest

from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.series import PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.jet import quadric, validate_hypersurface, validate_real_jet
from biaozhun.normalform.check import check, violations_frame
from biaozhun.normalform.conditions import Condition, LineChoice, line_keys
from biaozhun.normalform.spec import (PRESETS, NormalFormSpec, canonical_preset_name, conditions_frame,
                                      conditions_up_to, custom, preset, validate_spec)


class TestPresets(unittest.TestCase):

    def test_canonical_names(self):
        """测试预设名称的多种写法"""
        self.assertEqual(canonical_preset_name("Chern-Moser"), "chern_moser")
        self.assertEqual(canonical_preset_name(" min-l "), "min_l")
        with self.assertRaises(ValidationError):
            canonical_preset_name("poincare")
        self.assertEqual(preset("chern_moser", 4).name, "chern-moser")

    def test_all_presets_valid(self):
        """测试所有预设在 W ≤ 14 内满足组合规则且行列式非零"""
        for name in PRESETS:
            with self.subTest(preset=name):
                spec = preset(name, 14)
                self.assertEqual(validate_spec(spec), [])
                self.assertEqual(sorted(spec.table), line_keys(14))

    def test_preset_rules(self):
        """测试各预设在代表性线上的指标"""
        cm = preset("chern-moser", 8)
        self.assertEqual(cm.choice_for(2, 1).indices, (1, 0))
        self.assertEqual(cm.choice_for(1, 2).indices, (1, 0, 2))
        self.assertEqual(cm.choice_for(0, 3).indices, (2, 0, 1, 3))
        self.assertEqual(preset("nf1", 8).choice_for(0, 4).indices, (2, 0, 3, 1))
        self.assertEqual(preset("nf2", 8).choice_for(1, 3).indices, (2, 0, 1))
        nf12 = preset("nf12", 8)
        self.assertEqual((nf12.choice_for(1, 2).indices, nf12.choice_for(0, 3).indices), ((2, 0, 1), (2, 0, 3, 1)))
        min_l = preset("min-l", 8)
        self.assertEqual(min_l.choice_for(2, 3).indices, (3, 2))
        self.assertEqual(min_l.choice_for(1, 3).indices, (3, 2, 1))
        self.assertEqual(min_l.choice_for(0, 4).indices, (4, 2, 3, 1))
        self.assertEqual(min_l.choice_for(0, 3).indices, (2, 0, 3, 1))
        mixed = preset("mixed", 8)
        self.assertEqual(mixed.choice_for(2, 3).indices, (3, 0))
        self.assertEqual(mixed.choice_for(1, 3).indices, (3, 0, 2))
        self.assertEqual(mixed.choice_for(0, 4).indices, (4, 0, 3, 1))

    def test_preset_extends_beyond_table(self):
        """测试预设规则覆盖表外的更高权"""
        spec = preset("mixed", 4)
        self.assertEqual(spec.choice_for(2, 5).indices, (5, 0))
        self.assertEqual(len(spec.lines(8)), len(line_keys(8)))

    def test_max_weight_too_low(self):
        """测试 max_weight < 2"""
        with self.assertRaises(ValidationError):
            preset("nf1", 1)
        with self.assertRaises(ValidationError):
            custom([], 1)


class TestCustomSpec(unittest.TestCase):

    def setUp(self):
        """测试前准备"""
        self.reference = preset("nf2", 6)
        self.choices = [c for c in self.reference.lines() if c.needs_indices]

    def test_same_as_preset(self):
        """测试逐线写出预设得到相同的表"""
        spec = custom(self.choices, 6)
        self.assertEqual(spec.table, self.reference.table)
        self.assertEqual(spec.name, "custom")
        self.assertEqual(validate_spec(spec), [])

    def test_missing_line(self):
        """测试缺少需要选择的线"""
        with self.assertRaises(ValidationError) as context:
            custom(self.choices[1:], 6)
        self.assertIn(f"l={self.choices[0].l}", str(context.exception))

    def test_duplicate_line(self):
        """测试重复给出的线"""
        with self.assertRaises(ValidationError):
            custom(self.choices + [self.choices[0]], 6)

    def test_invalid_choice(self):
        """测试不满足组合规则或权过高的选择"""
        bad = [LineChoice.make(2, 1, (1, 1)) if c.key == (2, 1) else c for c in self.choices]
        with self.assertRaises(ValidationError):
            custom(bad, 6)
        with self.assertRaises(ValidationError):
            custom(self.choices + [LineChoice.make(2, 3, (1, 0))], 6)

    def test_lookup_beyond_declared_weight(self):
        """测试自定义规格在声明的权之外没有定义"""
        spec = custom(self.choices, 6)
        with self.assertRaises(ValidationError):
            spec.choice_for(3, 2)
        self.assertEqual(spec.choice_for(7, 0).conditions(), [Condition(7, 0, 0, 0)])

    def test_validate_spec_reports(self):
        """测试 validate_spec 列出问题线"""
        table = dict(self.reference.table)
        table[(2, 1)] = LineChoice.make(2, 1, (1, 1))
        problems = validate_spec(NormalFormSpec(6, table))
        self.assertEqual(len(problems), 1)
        self.assertIn("(2, 1)", problems[0])


class TestConditionsTable(unittest.TestCase):

    def test_conditions_up_to(self):
        """测试条件列表含固定条件且按线排序"""
        spec = preset("chern-moser", 4)
        self.assertEqual(conditions_up_to(spec, 2), [Condition(2, 0, 0, 0)])
        conds = conditions_up_to(spec, 4)
        self.assertIn(Condition(2, 2, 0, 1), conds)
        self.assertIn(Condition(1, 0, 1, 0), conds)
        self.assertTrue(all(c.weight <= 4 for c in conds))

    def test_conditions_frame(self):
        """测试条件表的列"""
        frame = conditions_frame(conditions_up_to(preset("nf1", 5), 5))
        self.assertEqual(list(frame.columns), ["权", "k", "m", "l", "t", "条件"])
        self.assertEqual(frame.iloc[0]["条件"], "φ_{0,0,2} = 0")
        self.assertTrue(conditions_frame([]).empty)


class TestCheck(unittest.TestCase):

    def setUp(self):
        """测试前准备"""
        self.sig = Signature((1,))
        self.spec = preset("chern-moser", 6)

    def test_quadric(self):
        """测试二次超曲面是任何预设的标准形"""
        for name in PRESETS:
            self.assertEqual(check(quadric(Signature((1, -1)), 6), preset(name, 6)), [])

    def test_harmonic_cubic(self):
        """测试 z³ + z̄³ 违反 φ₃₀₀ = 0"""
        phi = levi_form(self.sig, 3) + PuSeries(1, 3, {Monomial((3,), (0,), 0): 1, Monomial((0,), (3,), 0): 1})
        violations = check(validate_hypersurface(phi, self.sig), self.spec)
        self.assertEqual([v.condition for v in violations], [Condition(3, 0, 0, 0)])
        self.assertEqual(violations[0].residual, PuSeries(1, 3, {Monomial((3,), (0,), 0): 1}))
        frame = violations_frame(violations)
        self.assertEqual(frame.iloc[0]["条件"], "φ_{3,0,0} = 0")
        self.assertEqual(frame.iloc[0]["项数"], 1)

    def test_trace_condition(self):
        """测试 |z|⁴ 违反 tr φ₂₂₀ = 0"""
        phi = levi_form(self.sig, 4) + PuSeries(1, 4, {Monomial((2,), (2,), 0): 1})
        violations = check(validate_hypersurface(phi, self.sig), self.spec)
        self.assertEqual([str(v.condition) for v in violations], ["tr φ_{2,2,0} = 0"])

    def test_degenerate_rejected(self):
        """测试 Levi 退化 jet 无法检查"""
        m = validate_real_jet(PuSeries(1, 4, {Monomial((2,), (2,), 0): 1}))
        with self.assertRaises(ValidationError):
            check(m, self.spec)


if __name__ == '__main__':
    unittest.main()
