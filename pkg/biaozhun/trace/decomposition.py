"""
迹分解：P = Q·⟨z,z⟩^s + R，tr^s R = 0

主路径是构造性递推（s=1 时从 k₀ = min(p,q) 倒推 Q_k 链，s>1 时逐次分解 Q）；
线性代数对照解在单项式系数基上直接解同一个系统，用于测试与 c_k = 0 时的回退。
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import wraps

from biaozhun.algebra.linalg import solve_exact
from biaozhun.algebra.monomials import Monomial, multi_indices
from biaozhun.algebra.scalars import GaussianRational
from biaozhun.algebra.series import PuSeries, levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.errors import DegenerateRecursionError, ValidationError
from biaozhun.trace.operator import trace, trace_power

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TraceDecomposition:
    q: PuSeries
    r: PuSeries
    s: int


# ========== 装饰器 ==========
def with_oracle_fallback(oracle):
    """
    装饰器：递推遇到 c_k = 0 时改用对照解

    被装饰函数签名为 (p, s, sig, *, fallback=True)；fallback=False 时异常照常抛出。
    """

    def decorator(method):
        @wraps(method)
        def wrapper(p, s, sig, *, fallback: bool = True):
            try:
                return method(p, s, sig)
            except DegenerateRecursionError as e:
                if not fallback:
                    raise
                logger.warning(f"[TRACE] {e}，回退到线性代数求解")
                return oracle(p, s, sig)

        return wrapper

    return decorator


def _check(p: PuSeries, s: int, sig: Signature) -> None:
    if s < 0:
        raise ValidationError(f"Levi 形式的幂次必须非负: {s}")
    if p.n != sig.n:
        raise ValidationError(f"签名长度 {sig.n} 与级数维数 {p.n} 不一致")


# ========== 递推 ==========
def _decompose_once(P: PuSeries, p: int, q: int, sig: Signature, levi: PuSeries):
    """双齐次 P（双次数 (p,q)）的 s=1 分解"""
    k0 = min(p, q)
    if k0 == 0 or P.is_zero:
        return PuSeries.zero(P.n, P.max_weight), P

    traces = [P]
    for _ in range(k0):
        traces.append(trace(traces[-1], sig))

    base = sig.n + p + q
    c = [0] * (k0 + 1)
    c[1] = base - 2
    for k in range(1, k0):
        c[k + 1] = c[k] + base - 2 * k - 2

    # Q_{k0} = 0；Q_{k-1} = (tr^k P - Q_k⟨z,z⟩) / c_k
    q_k = PuSeries.zero(P.n, P.max_weight)
    for k in range(k0, 0, -1):
        if c[k] == 0:
            raise DegenerateRecursionError(f"c_{k}=0 (n={sig.n}, 双次数=({p},{q}))")
        q_k = (traces[k] - q_k * levi).scale(Fraction(1, c[k]))
    return q_k, P - q_k * levi


def _decompose_bihomogeneous(P: PuSeries, p: int, q: int, s: int, sig: Signature, levi: PuSeries):
    if s == 0:
        return P, PuSeries.zero(P.n, P.max_weight)
    q_part, r_part = _decompose_once(P, p, q, sig, levi)
    levi_power = levi
    # P = Q⟨⟩^j + R 且 tr^j R = 0；再分解 Q = Q'⟨⟩ + R'，R'⟨⟩^j 并入余项
    for j in range(1, s):
        q_next, r_next = _decompose_once(q_part, p - j, q - j, sig, levi)
        r_part = r_part + r_next * levi_power
        q_part = q_next
        levi_power = levi_power * levi
    return q_part, r_part


def _recursive_decompose(p: PuSeries, s: int, sig: Signature) -> TraceDecomposition:
    _check(p, s, sig)
    levi = levi_form(sig, p.max_weight)
    q_total = PuSeries.zero(p.n, p.max_weight)
    r_total = PuSeries.zero(p.n, p.max_weight)
    for (a, b, _l), component in sorted(p.bicomponents().items()):
        q_part, r_part = _decompose_bihomogeneous(component, a, b, s, sig, levi)
        q_total = q_total + q_part
        r_total = r_total + r_part
    return TraceDecomposition(q=q_total, r=r_total, s=s)


# ========== 对照解 ==========
def _oracle_bihomogeneous(P: PuSeries, p: int, q: int, l: int, s: int, sig: Signature,
                          levi_power: PuSeries):
    n, limit = P.n, P.max_weight
    r_basis = [Monomial(a, b, l) for a in multi_indices(n, p) for b in multi_indices(n, q)]
    q_basis = []
    if s <= min(p, q):
        q_basis = [Monomial(a, b, l) for a in multi_indices(n, p - s) for b in multi_indices(n, q - s)]
    trace_rows = list(q_basis)  # tr^s R 与 Q 同在双次数 (p-s, q-s)

    row_index = {m: i for i, m in enumerate(r_basis)}
    trace_index = {m: len(r_basis) + i for i, m in enumerate(trace_rows)}
    nrows = len(r_basis) + len(trace_rows)
    ncols = len(q_basis) + len(r_basis)
    rows = [[Fraction(0)] * ncols for _ in range(nrows)]

    for col, mono in enumerate(q_basis):
        image = PuSeries._trusted(n, limit, {mono: GaussianRational(1)}) * levi_power
        for m2, c2 in image.items():
            rows[row_index[m2]][col] += c2.re
    for offset, mono in enumerate(r_basis):
        col = len(q_basis) + offset
        rows[row_index[mono]][col] += 1
        if trace_rows:
            image = trace_power(PuSeries._trusted(n, limit, {mono: GaussianRational(1)}), s, sig)
            for m2, c2 in image.items():
                rows[trace_index[m2]][col] += c2.re

    rhs = [[Fraction(0), Fraction(0)] for _ in range(nrows)]
    for mono, c in P.items():
        rhs[row_index[mono]] = [c.re, c.im]

    solution = solve_exact(rows, rhs, ncols)
    values = [GaussianRational._raw(re, im) for re, im in solution]
    q_part = PuSeries(n, limit, {m: v for m, v in zip(q_basis, values[:len(q_basis)])})
    r_part = PuSeries(n, limit, {m: v for m, v in zip(r_basis, values[len(q_basis):])})
    return q_part, r_part


def trace_decompose_oracle(p: PuSeries, s: int, sig: Signature) -> TraceDecomposition:
    """
    在单项式系数基上解 “p = Q⟨z,z⟩^s + R, tr^s R = 0”

    Raises:
        NonUniqueSolutionError: 系统奇异或不相容
    """
    _check(p, s, sig)
    levi_power = levi_form(sig, p.max_weight) ** s
    q_total = PuSeries.zero(p.n, p.max_weight)
    r_total = PuSeries.zero(p.n, p.max_weight)
    for (a, b, l), component in sorted(p.bicomponents().items()):
        q_part, r_part = _oracle_bihomogeneous(component, a, b, l, s, sig, levi_power)
        q_total = q_total + q_part
        r_total = r_total + r_part
    return TraceDecomposition(q=q_total, r=r_total, s=s)


@with_oracle_fallback(trace_decompose_oracle)
def trace_decompose(p: PuSeries, s: int, sig: Signature) -> TraceDecomposition:
    """
    迹分解 p = Q·⟨z,z⟩^s + R，tr^s R = 0

    非双齐次输入按双齐次分量逐一分解后相加；s = 0 时 Q = p，R = 0。

    Args:
        p: 待分解级数
        s: Levi 形式的幂次
        sig: Levi 形式的符号

    Returns:
        TraceDecomposition: (q, r, s)
    """
    return _recursive_decompose(p, s, sig)
