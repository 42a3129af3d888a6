import random
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.scalars import I, ONE, ZERO, GaussianRational
from biaozhun.algebra.series import HoloSeries, PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError
from biaozhun.hypersurface.automorphisms import (geometric_inverse, linear_isometry, quadric_automorphism_a,
                                                 quadric_automorphism_r)
from biaozhun.hypersurface.jet import quadric, validate_hypersurface
from biaozhun.hypersurface.mapjet import compose, identity_map, invert, linear_map, validate_map
from biaozhun.hypersurface.transform import apply_map, check_transformation_identity
from biaozhun.samples import random_degenerate_jet, random_fg_map, random_jet, random_signature

seeds = st.integers(min_value=0, max_value=2 ** 32 - 1)


class TestApplyMap(unittest.TestCase):

    def setUp(self):
        """测试前准备"""
        self.sig = Signature((1, -1))
        self.m = random_jet(random.Random(3), self.sig, 5)

    def test_identity_map(self):
        """测试恒等映射原样返回"""
        self.assertEqual(apply_map(self.m, identity_map(2, 5)), self.m)

    def test_harmonic_shift(self):
        """测试 g = w + c·z₁³ 在 φ 中加上 Im(c·z₁³)"""
        m = quadric(Signature((1,)), 4)
        z, w = HoloSeries.z(1, 0, 4), HoloSeries.w(1, 4)
        h = validate_map([z], w + (z ** 3).scale(2 * I))
        expected = levi_form(Signature((1,)), 4) + PuSeries(1, 4, {Monomial((3,), (0,), 0): 1,
                                                                  Monomial((0,), (3,), 0): 1})
        self.assertEqual(apply_map(m, h).phi, expected)

    def test_mismatch(self):
        """测试截断权不一致"""
        with self.assertRaises(ValidationError):
            apply_map(self.m, identity_map(2, 4))

    def test_non_isometry_rejected(self):
        """测试线性部分不是 Levi 等距时报错"""
        stretched = linear_map([[GaussianRational(2), ZERO], [ZERO, ONE]], 1, 5)
        with self.assertRaises(ValidationError):
            apply_map(self.m, stretched)

    def test_transformation_identity(self):
        """测试像满足变换恒等式，错误的像残差非零"""
        h = random_fg_map(random.Random(5), 2, 5)
        image = apply_map(self.m, h)
        self.assertTrue(check_transformation_identity(self.m, h, image).is_zero)
        if image != self.m:
            self.assertFalse(check_transformation_identity(self.m, h, self.m).is_zero)

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_round_trip_with_inverse(self, seed):
        """测试 apply(apply(M, h), h⁻¹) = M"""
        rng = random.Random(seed)
        n, limit = rng.randint(1, 2), rng.randint(3, 6)
        m = random_jet(rng, random_signature(rng, n), limit, terms=4)
        h = random_fg_map(rng, n, limit)
        image = apply_map(m, h)
        self.assertTrue(check_transformation_identity(m, h, image).is_zero)
        self.assertEqual(apply_map(image, invert(h)), m)

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_composition_is_action(self, seed):
        """测试 apply(M, h₂∘h₁) = apply(apply(M, h₁), h₂)"""
        rng = random.Random(seed)
        n, limit = rng.randint(1, 2), rng.randint(3, 5)
        m = random_jet(rng, random_signature(rng, n), limit, terms=4)
        h1, h2 = random_fg_map(rng, n, limit), random_fg_map(rng, n, limit)
        self.assertEqual(apply_map(m, compose(h2, h1)), apply_map(apply_map(m, h1), h2))

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_degenerate_round_trip(self, seed):
        """测试 Levi 退化 jet 上的往返"""
        rng = random.Random(seed)
        m = random_degenerate_jet(rng, rng.randint(1, 2), 5, terms=4)
        h = random_fg_map(rng, m.n, 5)
        self.assertEqual(apply_map(apply_map(m, h), invert(h)), m)

    def test_linear_isometry_round_trip(self):
        """测试一般线性部分（Levi 等距）的往返"""
        rotation = linear_isometry(self.sig, [[I, 0], [0, 1]], 1, 5)
        scaled = linear_isometry(self.sig, [[GaussianRational(1, 1), 0], [0, GaussianRational(1, -1)]], 2, 5)
        for h in (rotation, scaled, compose(random_fg_map(random.Random(11), 2, 5), scaled)):
            with self.subTest(h=h):
                image = apply_map(self.m, h)
                self.assertTrue(check_transformation_identity(self.m, h, image).is_zero)
                self.assertEqual(apply_map(image, invert(h)), self.m)


class TestQuadricAutomorphisms(unittest.TestCase):

    def test_geometric_inverse(self):
        """测试 (1 − x)·1/(1 − x) = 1"""
        w = HoloSeries.w(1, 6)
        x = w.scale(3) + HoloSeries.z(1, 0, 6) ** 2
        one = HoloSeries.constant(1, 6, 1)
        self.assertEqual((one - x) * geometric_inverse(x), one)
        with self.assertRaises(ValidationError):
            geometric_inverse(one)

    def test_a_type(self):
        """测试 a 型自同构保持二次超曲面，f₀₁ = a，Re g₀₂ = 0"""
        for eps, a in (((1,), (Fraction(1, 2),)), ((1, -1), (GaussianRational(1, 1), GaussianRational(0, 2)))):
            sig = Signature(eps)
            with self.subTest(sig=sig):
                h = quadric_automorphism_a(sig, a, 8)
                self.assertEqual(h.f01, tuple(GaussianRational.coerce(v) for v in a))
                self.assertEqual(h.g02.re, 0)
                self.assertEqual(apply_map(quadric(sig, 8), h), quadric(sig, 8))

    def test_r_type(self):
        """测试 r 型自同构保持二次超曲面，Re g₀₂ = r"""
        for eps in ((1,), (1, -1)):
            sig = Signature(eps)
            with self.subTest(sig=sig):
                h = quadric_automorphism_r(sig.n, Fraction(-3, 2), 8)
                self.assertEqual(h.g02, GaussianRational(Fraction(-3, 2)))
                self.assertEqual(apply_map(quadric(sig, 8), h), quadric(sig, 8))
        with self.assertRaises(ValidationError):
            quadric_automorphism_r(1, I, 4)

    def test_a_type_length(self):
        """测试参数 a 的长度"""
        with self.assertRaises(ValidationError):
            quadric_automorphism_a(Signature((1, 1)), (1,), 4)

    def test_linear_isometry_rejects(self):
        """测试非等距矩阵被拒绝"""
        with self.assertRaises(ValidationError):
            linear_isometry(Signature((1, 1)), [[2, 0], [0, 1]], 1, 4)
        with self.assertRaises(ValidationError):
            linear_isometry(Signature((1, 1)), [[1, 0]], 1, 4)

    def test_non_quadric_moves(self):
        """测试自同构一般会移动非二次超曲面"""
        sig = Signature((1,))
        phi = levi_form(sig, 6) + PuSeries(1, 6, {Monomial((2,), (2,), 0): 1})
        m = validate_hypersurface(phi, sig)
        h = quadric_automorphism_r(1, 1, 6)
        self.assertNotEqual(apply_map(m, h), m)


if __name__ == '__main__':
    unittest.main()
