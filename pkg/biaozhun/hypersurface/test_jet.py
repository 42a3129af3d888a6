import random
import unittest
from fractions import Fraction

from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.scalars import I
from biaozhun.algebra.series import PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.jet import quadric, validate_hypersurface, validate_real_jet
from biaozhun.hypersurface.levi import hermitian_matrix, is_sum_of_two_rational_squares, levi_diagnostic
from biaozhun.samples import random_degenerate_jet, random_jet


class TestValidateHypersurface(unittest.TestCase):

    def setUp(self):
        """测试前准备"""
        self.sig = Signature((1, -1))
        self.levi = levi_form(self.sig, 4)

    def test_quadric(self):
        """测试二次超曲面合法且 Levi 非退化"""
        m = quadric(self.sig, 4)
        self.assertEqual(m.phi, self.levi)
        self.assertTrue(m.is_levi_nondegenerate)
        self.assertEqual(m.truncate(3).max_weight, 3)

    def test_reality_violation(self):
        """测试实性不成立时报错并指出单项式"""
        raw = self.levi + PuSeries(2, 4, {Monomial((2, 1), (0, 0), 0): I})
        with self.assertRaises(ValidationError) as context:
            validate_hypersurface(raw, self.sig)
        self.assertIn("实性", str(context.exception))

    def test_low_order_terms(self):
        """测试常数项、线性项与 u 项被拒绝"""
        for mono in (Monomial((0, 0), (0, 0), 0), Monomial((0, 0), (0, 0), 1)):
            with self.subTest(mono=mono):
                raw = self.levi + PuSeries(2, 4, {mono: 1})
                with self.assertRaises(ValidationError):
                    validate_hypersurface(raw, self.sig)
        linear = self.levi + PuSeries(2, 4, {Monomial((1, 0), (0, 0), 0): 1, Monomial((0, 0), (1, 0), 0): 1})
        with self.assertRaises(ValidationError):
            validate_hypersurface(linear, self.sig)

    def test_wrong_levi_form(self):
        """测试 Levi 形式与签名不符时附带诊断"""
        with self.assertRaises(ValidationError) as context:
            validate_hypersurface(levi_form(Signature((1, 1)), 4), self.sig)
        self.assertIn("Levi", str(context.exception))
        swapped = PuSeries(2, 4, {Monomial((1, 0), (0, 1), 0): 1, Monomial((0, 1), (1, 0), 0): 1})
        with self.assertRaises(ValidationError) as context:
            validate_hypersurface(swapped, self.sig)
        self.assertIn("可在 ℚ(i) 内精确缩放", str(context.exception))

    def test_truncation_too_low(self):
        """测试截断权 < 2"""
        with self.assertRaises(ValidationError):
            validate_hypersurface(levi_form(self.sig, 1), self.sig)

    def test_dimension_mismatch(self):
        """测试签名长度与维数不一致"""
        with self.assertRaises(ValidationError):
            validate_hypersurface(levi_form(Signature((1,)), 4), self.sig)

    def test_degenerate_jet(self):
        """测试 Levi 退化的实 jet 只校验实性"""
        m = validate_real_jet(PuSeries(1, 4, {Monomial((2,), (2,), 0): 1, Monomial((0,), (0,), 2): 3}))
        self.assertIsNone(m.sig)
        self.assertFalse(m.is_levi_nondegenerate)

    def test_random_samples_are_valid(self):
        """测试随机样本满足 jet 不变量"""
        rng = random.Random(7)
        for _ in range(10):
            m = random_jet(rng, Signature((1, -1)), 6)
            self.assertTrue(m.phi.is_real)
            self.assertEqual(m.phi.bicomponent(1, 1, 0), levi_form(m.sig, 6))
            degenerate = random_degenerate_jet(rng, 2, 5)
            self.assertTrue(degenerate.phi.bicomponent(1, 1, 0).is_zero)


class TestLeviDiagnostic(unittest.TestCase):

    def test_sum_of_two_squares(self):
        """测试有理数能否写成两个有理数平方和"""
        self.assertTrue(is_sum_of_two_rational_squares(Fraction(1, 2)))
        self.assertTrue(is_sum_of_two_rational_squares(Fraction(25, 9)))
        self.assertTrue(is_sum_of_two_rational_squares(Fraction(0)))
        self.assertFalse(is_sum_of_two_rational_squares(Fraction(1, 3)))
        self.assertFalse(is_sum_of_two_rational_squares(Fraction(-1)))

    def test_scalar_levi(self):
        """测试 n=1 时的缩放判定"""
        two = levi_diagnostic(PuSeries(1, 2, {Monomial((1,), (1,), 0): 2}))
        self.assertEqual(two.diagonal, (2,))
        self.assertEqual(two.rescalable, (True,))
        three = levi_diagnostic(PuSeries(1, 2, {Monomial((1,), (1,), 0): 3}))
        self.assertEqual(three.rescalable, (False,))
        self.assertIn("无法", three.summary())

    def test_off_diagonal(self):
        """测试 z₁z̄₂ + z₂z̄₁ 合同对角化为 (2, −1/2)"""
        raw = PuSeries(2, 2, {Monomial((1, 0), (0, 1), 0): 1, Monomial((0, 1), (1, 0), 0): 1})
        self.assertEqual(hermitian_matrix(raw)[0][1], 1)
        diagnostic = levi_diagnostic(raw)
        self.assertEqual(diagnostic.diagonal, (2, Fraction(-1, 2)))
        self.assertTrue(diagnostic.nondegenerate)
        self.assertEqual(diagnostic.rescalable, (True, True))

    def test_degenerate(self):
        """测试退化 Levi 形式"""
        raw = PuSeries(2, 2, {Monomial((1, 0), (1, 0), 0): 1})
        diagnostic = levi_diagnostic(raw)
        self.assertFalse(diagnostic.nondegenerate)
        self.assertIn("退化", diagnostic.summary())


if __name__ == '__main__':
    unittest.main()
