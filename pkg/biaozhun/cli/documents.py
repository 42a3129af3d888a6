"""
JSON 文档编解码

    jet 文档      {"n", "eps", "max_weight", "terms": [{"z", "zbar", "u", "coeff"}, ...]}
    映射文档      {"n", "max_weight", "f": [[{"z", "w", "coeff"}, ...], ...], "g": [...]}
    规格文档      {"preset": "chern-moser"} 或 {"max_weight": W, "custom": [{"kind", "k", "l", "m", ...}, ...]}
    多项式文档    与 jet 文档同形，不做实性/Levi 校验（decompose 的输入输出）

系数一律写成字符串（见 biaozhun.algebra.scalars 的语法）；输出按单项式字典序排列。
解析错误抛 ParseError，where 给出 JSON 路径，如 ``$.terms[3].coeff``。
"""
import json
import sys
from pathlib import Path
from typing import Any, Optional

from biaozhun.algebra.monomials import HoloMonomial, Monomial
from biaozhun.algebra.scalars import parse_gaussian
from biaozhun.algebra.series import HoloSeries, PuSeries
from biaozhun.algebra.signature import Signature
from biaozhun.errors import ParseError
from biaozhun.hypersurface.jet import HypersurfaceJet, validate_hypersurface, validate_real_jet
from biaozhun.hypersurface.mapjet import MapJet, validate_map
from biaozhun.normalform.conditions import LineChoice, LineKind
from biaozhun.normalform.spec import PRESETS, NormalFormSpec, custom, preset

# 自定义线选择中各 kind 的指标字段名
INDEX_FIELDS = {
    LineKind.K_GE2: ("m", "mp"),
    LineKind.K1: ("m", "mp", "mpp"),
    LineKind.K0: ("m", "mp", "mt", "mtp"),
}


# ========== 读写 ==========
def loads(text: str, source: str = "<document>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source} 不是合法 JSON: {e.msg}", where=f"行 {e.lineno} 列 {e.colno}") from e


def dumps(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def read_document(path: str) -> Any:
    """读取 JSON 文档，``-`` 表示标准输入"""
    if path == "-":
        return loads(sys.stdin.read(), "<stdin>")
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def write_document(doc: Any, path: Optional[str]) -> None:
    """写出 JSON 文档，``-`` 或 None 表示标准输出"""
    text = dumps(doc)
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


# ========== 字段校验 ==========
def _field(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"应为 JSON 对象，实际为 {type(obj).__name__}", where=path)
    if key not in obj:
        raise ParseError(f"缺少字段 {key!r}", where=path)
    return obj[key]


def _int(value: Any, path: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"应为整数，实际为 {value!r}", where=path)
    if value < minimum:
        raise ParseError(f"应 ≥ {minimum}，实际为 {value}", where=path)
    return value


def _list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"应为 JSON 数组，实际为 {type(value).__name__}", where=path)
    return value


def _multi_index(value: Any, n: int, path: str) -> tuple[int, ...]:
    items = _list(value, path)
    if len(items) != n:
        raise ParseError(f"多重指标长度应为 n={n}，实际为 {len(items)}", where=path)
    return tuple(_int(e, f"{path}[{i}]") for i, e in enumerate(items))


def _coeff(value: Any, path: str):
    try:
        return parse_gaussian(value)
    except ParseError as e:
        where = f"{path} {e.where}" if e.where else path
        raise ParseError(e.message, where=where) from e


def _header(doc: Any, path: str = "$") -> tuple[int, int]:
    n = _int(_field(doc, "n", path), f"{path}.n", minimum=1)
    limit = _int(_field(doc, "max_weight", path), f"{path}.max_weight")
    return n, limit


def _signature(doc: Any, n: int) -> Signature:
    eps = _list(_field(doc, "eps", "$"), "$.eps")
    if len(eps) != n:
        raise ParseError(f"eps 长度应为 n={n}，实际为 {len(eps)}", where="$.eps")
    for i, e in enumerate(eps):
        if e not in (1, -1) or isinstance(e, bool):
            raise ParseError(f"eps 元素必须为 1 或 -1，实际为 {e!r}", where=f"$.eps[{i}]")
    return Signature.of(eps)


# ========== 多项式 / jet ==========
def _pu_terms(terms: Any, n: int, limit: int, path: str) -> PuSeries:
    coeffs: dict = {}
    for i, term in enumerate(_list(terms, path)):
        where = f"{path}[{i}]"
        mono = Monomial(_multi_index(_field(term, "z", where), n, f"{where}.z"),
                        _multi_index(_field(term, "zbar", where), n, f"{where}.zbar"),
                        _int(term.get("u", 0), f"{where}.u"))
        c = _coeff(_field(term, "coeff", where), f"{where}.coeff")
        coeffs[mono] = coeffs[mono] + c if mono in coeffs else c
    return PuSeries(n, limit, coeffs)


def _pu_terms_document(p: PuSeries) -> list[dict]:
    return [{"z": list(m.alpha), "zbar": list(m.beta), "u": m.l, "coeff": str(c)} for m, c in p.sorted_items()]


def polynomial_from_document(doc: Any) -> tuple[PuSeries, Optional[Signature]]:
    """多项式文档 -> (级数, 签名)；eps 缺省时签名为 None"""
    n, limit = _header(doc)
    sig = _signature(doc, n) if "eps" in doc else None
    return _pu_terms(_field(doc, "terms", "$"), n, limit, "$.terms"), sig


def polynomial_to_document(p: PuSeries, sig: Optional[Signature] = None) -> dict:
    doc: dict = {"n": p.n}
    if sig is not None:
        doc["eps"] = list(sig.eps)
    doc["max_weight"] = p.max_weight
    doc["terms"] = _pu_terms_document(p)
    return doc


def jet_from_document(doc: Any, require_eps: bool = True) -> HypersurfaceJet:
    """
    jet 文档 -> HypersurfaceJet

    Args:
        doc: 已解析的 JSON 对象
        require_eps: False 时允许省略 eps，得到 Levi 形式不作要求的实 jet

    Raises:
        ParseError: 结构或系数语法错误
        ValidationError: 不满足 jet 不变量
    """
    if require_eps:
        _field(doc, "eps", "$")
    phi, sig = polynomial_from_document(doc)
    if sig is None:
        return validate_real_jet(phi)
    return validate_hypersurface(phi, sig)


def jet_to_document(m: HypersurfaceJet) -> dict:
    return polynomial_to_document(m.phi, m.sig)


# ========== 映射 ==========
def _holo_terms(terms: Any, n: int, limit: int, path: str) -> HoloSeries:
    coeffs: dict = {}
    for i, term in enumerate(_list(terms, path)):
        where = f"{path}[{i}]"
        mono = HoloMonomial(_multi_index(_field(term, "z", where), n, f"{where}.z"),
                            _int(term.get("w", 0), f"{where}.w"))
        c = _coeff(_field(term, "coeff", where), f"{where}.coeff")
        coeffs[mono] = coeffs[mono] + c if mono in coeffs else c
    return HoloSeries(n, limit, coeffs)


def _holo_terms_document(h: HoloSeries) -> list[dict]:
    return [{"z": list(m.alpha), "w": m.l, "coeff": str(c)} for m, c in h.sorted_items()]


def map_from_document(doc: Any) -> MapJet:
    n, limit = _header(doc)
    f_docs = _list(_field(doc, "f", "$"), "$.f")
    if len(f_docs) != n:
        raise ParseError(f"f 应有 n={n} 个分量，实际为 {len(f_docs)}", where="$.f")
    f = [_holo_terms(fj, n, limit, f"$.f[{j}]") for j, fj in enumerate(f_docs)]
    g = _holo_terms(_field(doc, "g", "$"), n, limit, "$.g")
    return validate_map(f, g)


def map_to_document(h: MapJet) -> dict:
    return {
        "n": h.n,
        "max_weight": h.max_weight,
        "f": [_holo_terms_document(fj) for fj in h.f],
        "g": _holo_terms_document(h.g),
    }


# ========== 规格 ==========
def _line_choice(entry: Any, path: str) -> LineChoice:
    kind_text = _field(entry, "kind", path)
    try:
        kind = LineKind(kind_text)
    except ValueError:
        raise ParseError(f"未知的线类型 {kind_text!r}，可选: {', '.join(k.value for k in LineKind)}",
                         where=f"{path}.kind") from None
    k = _int(_field(entry, "k", path), f"{path}.k")
    l = _int(_field(entry, "l", path), f"{path}.l")
    if LineKind.of(k) is not kind:
        raise ParseError(f"kind={kind.value} 与 k={k} 不符", where=f"{path}.kind")
    probe = LineChoice(kind, k, l)
    if not probe.needs_indices:
        return probe
    indices = tuple(_int(_field(entry, name, path), f"{path}.{name}") for name in INDEX_FIELDS[kind])
    return LineChoice(kind, k, l, indices)


def spec_from_document(doc: Any, max_weight: Optional[int] = None) -> NormalFormSpec:
    """
    规格文档 -> NormalFormSpec

    预设按 max_weight 展开（文档中的 max_weight 优先）；自定义规格必须给出 max_weight。
    """
    if not isinstance(doc, dict):
        raise ParseError(f"规格文档应为 JSON 对象，实际为 {type(doc).__name__}", where="$")
    if ("preset" in doc) == ("custom" in doc):
        raise ParseError("规格文档必须恰好包含 preset 或 custom 之一", where="$")
    if "max_weight" in doc:
        max_weight = _int(doc["max_weight"], "$.max_weight")
    if "preset" in doc:
        tag = doc["preset"]
        if not isinstance(tag, str):
            raise ParseError(f"preset 应为字符串，实际为 {tag!r}", where="$.preset")
        if max_weight is None:
            raise ParseError("预设规格需要 max_weight（文档或命令行给出）", where="$")
        return preset(tag, max_weight)
    if max_weight is None:
        raise ParseError("自定义规格需要 max_weight", where="$")
    entries = _list(doc["custom"], "$.custom")
    return custom([_line_choice(e, f"$.custom[{i}]") for i, e in enumerate(entries)], max_weight)


def spec_to_document(spec: NormalFormSpec) -> dict:
    if spec.preset is not None:
        return {"preset": spec.name, "max_weight": spec.max_weight}
    entries = []
    for choice in spec.lines():
        if not choice.needs_indices:
            continue
        entry: dict = {"kind": choice.kind.value, "k": choice.k, "l": choice.l}
        entry.update(zip(INDEX_FIELDS[choice.kind], choice.indices))
        entries.append(entry)
    return {"max_weight": spec.max_weight, "custom": entries}


def spec_argument(text: str, max_weight: Optional[int] = None) -> NormalFormSpec:
    """命令行的规格参数：预设名，或规格文档路径"""
    candidate = text.strip().lower().replace("-", "_")
    if candidate in PRESETS:
        return spec_from_document({"preset": text}, max_weight)
    return spec_from_document(read_document(text), max_weight)
