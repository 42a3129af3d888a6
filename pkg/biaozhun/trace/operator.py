"""
迹算子 tr = Σ_j ε_j ∂²/∂z_j∂z̄_j 与 Euler 权

n=1 时 tr(c·z^k z̄^m) = km·c·z^{k-1} z̄^{m-1}。
"""
from biaozhun.algebra.monomials import Monomial
from biaozhun.algebra.series import PuSeries
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ValidationError


def _check_dimension(p: PuSeries, sig: Signature) -> None:
    if p.n != sig.n:
        raise ValidationError(f"签名长度 {sig.n} 与级数维数 {p.n} 不一致")


def trace(p: PuSeries, sig: Signature) -> PuSeries:
    """逐项计算 Σ_j ε_j ∂²p/∂z_j∂z̄_j，双次数 (k,m) 降为 (k-1,m-1)"""
    _check_dimension(p, sig)
    out: dict = {}
    for mono, c in p.items():
        for j, eps in enumerate(sig.eps):
            a, b = mono.alpha[j], mono.beta[j]
            if not (a and b):
                continue
            key = Monomial(mono.alpha[:j] + (a - 1,) + mono.alpha[j + 1:],
                           mono.beta[:j] + (b - 1,) + mono.beta[j + 1:],
                           mono.l)
            term = c * (a * b * eps)
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return PuSeries._trusted(p.n, p.max_weight, {m: c for m, c in out.items() if c})


def trace_power(p: PuSeries, t: int, sig: Signature) -> PuSeries:
    """tr^t p，t = 0 时返回 p 本身"""
    if t < 0:
        raise ValidationError(f"迹的幂次必须非负: {t}")
    for _ in range(t):
        if p.is_zero:
            break
        p = trace(p, sig)
    return p


def euler_weights(p: PuSeries) -> tuple[PuSeries, PuSeries]:
    """(Σ_j z_j ∂p/∂z_j, Σ_j z̄_j ∂p/∂z̄_j)：双次数 (a,b) 的单项式分别乘 a 与 b"""
    holo = {}
    anti = {}
    for mono, c in p.items():
        a, b = mono.bidegree
        if a:
            holo[mono] = c * a
        if b:
            anti[mono] = c * b
    return (PuSeries._trusted(p.n, p.max_weight, holo),
            PuSeries._trusted(p.n, p.max_weight, anti))
