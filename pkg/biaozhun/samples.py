"""
确定性随机样本：测试、验收套件与 CLI 示例共用

所有函数都接受 random.Random 实例，给定种子时结果可复现。
"""
import random
from fractions import Fraction
from typing import Optional

from biaozhun.algebra.monomials import HoloMonomial, Monomial, multi_indices, unit
from biaozhun.algebra.scalars import GaussianRational
from biaozhun.algebra.series import HoloSeries, PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.hypersurface.jet import HypersurfaceJet, quadric, validate_hypersurface, validate_real_jet
from biaozhun.hypersurface.mapjet import MapJet, validate_map

__all__ = ["quadric", "random_gaussian", "random_signature", "random_real_series", "random_jet",
           "random_degenerate_jet", "random_fg_map", "random_bihomogeneous"]


def random_gaussian(rng: random.Random, bound: int = 3, real: bool = False) -> GaussianRational:
    """分子 ∈ [−bound, bound]、分母 ∈ [1, bound] 的非零高斯有理数"""
    while True:
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        im = 0 if real else Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        value = GaussianRational(re, im)
        if value:
            return value


def random_signature(rng: random.Random, n: int) -> Signature:
    return Signature(tuple(rng.choice((1, -1)) for _ in range(n)))


def _random_monomial(rng: random.Random, n: int, weight: int) -> Monomial:
    l = rng.randint(0, weight // 2)
    degree = weight - 2 * l
    a = rng.randint(0, degree)
    return Monomial(rng.choice(multi_indices(n, a)), rng.choice(multi_indices(n, degree - a)), l)


def random_real_series(rng: random.Random, n: int, max_weight: int, terms: int, min_weight: int = 3,
                       bound: int = 3) -> PuSeries:
    """
    随机实级数：每个单项式与其共轭成对出现，自共轭单项式取实系数；
    不含总次数 ≤ 1 的项与 Levi 分量
    """
    coeffs: dict = {}
    for _ in range(terms):
        mono = _random_monomial(rng, n, rng.randint(min_weight, max_weight))
        if sum(mono.alpha) + sum(mono.beta) + mono.l <= 1 or mono.bidegree == (1, 1) and mono.l == 0:
            continue
        conj = mono.conjugate()
        c = random_gaussian(rng, bound, real=(conj == mono))
        coeffs[mono] = coeffs.get(mono, 0) + c
        if conj != mono:
            coeffs[conj] = coeffs.get(conj, 0) + c.conjugate()
    return PuSeries(n, max_weight, coeffs)


def random_jet(rng: random.Random, sig: Signature, max_weight: int, terms: int = 6,
               min_weight: int = 2) -> HypersurfaceJet:
    """⟨z,z⟩ 加稀疏的随机实扰动（默认含权 2 的调和项）"""
    perturbation = random_real_series(rng, sig.n, max_weight, terms, min_weight)
    return validate_hypersurface(levi_form(sig, max_weight) + perturbation, sig)


def random_degenerate_jet(rng: random.Random, n: int, max_weight: int, terms: int = 6) -> HypersurfaceJet:
    """Levi 形式为零的随机实 jet"""
    return validate_real_jet(random_real_series(rng, n, max_weight, terms, min_weight=2))


def random_fg_map(rng: random.Random, n: int, max_weight: int, terms: int = 3,
                  bound: int = 2) -> MapJet:
    """
    随机 fg-规范化映射：f = z + …，g = w + …，
    不含 f₀₁、g₁₀、g₀₁ 的修正，g₀₂ 取纯虚系数
    """
    zeros = (0,) * n
    w = HoloMonomial(zeros, 1)
    g: dict = {w: 1}
    f: list[dict] = [{HoloMonomial(unit(n, j), 0): 1} for j in range(n)]
    for _ in range(terms):
        weight = rng.randint(2, max_weight)
        l = rng.randint(0, weight // 2)
        mono = HoloMonomial(rng.choice(multi_indices(n, weight - 2 * l)), l)
        if mono == w:
            continue
        if rng.random() < 0.5:
            c = random_gaussian(rng, bound)
            if mono == HoloMonomial(zeros, 2):
                c = GaussianRational(0, c.im or 1)
            g[mono] = g.get(mono, 0) + c
        else:
            j = rng.randrange(n)
            f[j][mono] = f[j].get(mono, 0) + random_gaussian(rng, bound)
    return validate_map([HoloSeries(n, max_weight, fj) for fj in f], HoloSeries(n, max_weight, g))


def random_bihomogeneous(rng: random.Random, n: int, p: int, q: int, max_weight: Optional[int] = None,
                         terms: int = 4, bound: int = 3) -> PuSeries:
    """双次数 (p, q)、不含 u 的随机多项式"""
    limit = p + q if max_weight is None else max_weight
    alphas, betas = multi_indices(n, p), multi_indices(n, q)
    coeffs = {Monomial(rng.choice(alphas), rng.choice(betas), 0): random_gaussian(rng, bound) for _ in range(terms)}
    return PuSeries(n, limit, coeffs)
