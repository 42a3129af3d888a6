"""
命令行入口

    biaozhun normalize JET [--spec S] [--max-weight W] [--out-nf P] [--out-map P] [--oracle]
    biaozhun check JET [--spec S]
    biaozhun apply JET MAP [--out P] [--verify]
    biaozhun decompose POLY --s S [--eps 1,-1] [--out P] [--verify]
    biaozhun spec validate|show SPEC [--max-weight W]
    biaozhun harmonics JET [--out-nf P] [--out-map P]

路径 ``-`` 表示标准输入/输出。退出码：0 成功，1 校验失败，2 内部不变量被破坏，3 解析错误。
"""
import argparse
import logging
import sys
from functools import wraps
from typing import Optional, Sequence

import pandas as pd

from biaozhun import __version__
from biaozhun.algebra.series import levi_form
from biaozhun.algebra.signature import Signature
from biaozhun.cli.documents import (jet_from_document, jet_to_document, map_from_document, map_to_document,
                                    polynomial_from_document, polynomial_to_document, read_document,
                                    spec_argument, write_document)
from biaozhun.config import NormalizerConfig, load_config
from biaozhun.errors import InternalInvariantError, ParseError, ValidationError
from biaozhun.hypersurface.transform import apply_map, check_transformation_identity
from biaozhun.log import setup_logging
from biaozhun.normalform.check import check, violations_frame
from biaozhun.normalform.spec import conditions_frame, conditions_up_to, validate_spec
from biaozhun.solver.harmonic import eliminate_harmonics
from biaozhun.solver.normalizer_factory import NormalizerFactory, certificate_frame
from biaozhun.trace.decomposition import trace_decompose
from biaozhun.trace.operator import trace_power

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INTERNAL = 2
EXIT_PARSE = 3


# ========== 装饰器 ==========
def exit_code_guard(command):
    """
    装饰器：把异常映射为退出码

    ParseError 须先于其父类 ValidationError 判断；其余未预期的异常一律按内部错误处理。
    """

    @wraps(command)
    def wrapper(args: argparse.Namespace, config: NormalizerConfig) -> int:
        try:
            return command(args, config)
        except ParseError as e:
            code, err = EXIT_PARSE, e
        except (ValidationError, OSError) as e:
            code, err = EXIT_VALIDATION, e
        except InternalInvariantError as e:
            code, err = EXIT_INTERNAL, e
        except Exception as e:
            logger.error(f"[ERROR] {command.__name__} 意外异常 {type(e).__name__}", exc_info=e)
            print(f"[ERROR] 内部错误 {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_INTERNAL
        logger.debug(f"[ERROR] {command.__name__} 失败", exc_info=err)
        print(f"[ERROR] {err}", file=sys.stderr)
        return code

    return wrapper


# ========== 输出 ==========
def _report(frame: pd.DataFrame, stream, empty: str = "（无）") -> None:
    print(empty if frame.empty else frame.to_string(index=False), file=stream)


def _report_stream(*targets: Optional[str]):
    """文档写到标准输出时，报告改写到标准错误"""
    return sys.stderr if "-" in targets else sys.stdout


def _signature_option(text: str) -> Signature:
    try:
        eps = [int(e) for e in text.split(",")]
    except ValueError as e:
        raise ParseError(f"--eps 应为逗号分隔的整数，实际为 {text!r}", where="--eps") from e
    return Signature.of(eps)


def _resolve_max_weight(args: argparse.Namespace, config: NormalizerConfig, fallback: int) -> int:
    if args.max_weight is not None:
        return args.max_weight
    if config.normalize.max_weight is not None:
        return config.normalize.max_weight
    return fallback


# ========== 命令 ==========
@exit_code_guard
def cmd_normalize(args: argparse.Namespace, config: NormalizerConfig) -> int:
    m = jet_from_document(read_document(args.jet))
    limit = _resolve_max_weight(args, config, m.max_weight)
    if limit > m.max_weight:
        raise ValidationError(f"--max-weight={limit} 超过 jet 的截断权 {m.max_weight}")
    if limit < m.max_weight:
        m = m.truncate(limit)
    spec = spec_argument(args.spec or config.normalize.preset, limit)

    factory = NormalizerFactory(config)
    result = factory.normalize(m, spec, cross_check=args.oracle or config.normalize.oracle)

    write_document(jet_to_document(result.normal_form), args.out_nf)
    logger.info(f"[CLI] 写出标准形 -> {args.out_nf}")
    if args.out_map:
        write_document(map_to_document(result.map), args.out_map)
        logger.info(f"[CLI] 写出映射 -> {args.out_map}")

    stream = _report_stream(args.out_nf, args.out_map)
    print(f"规格 {spec.name}，截断权 {limit}，违例 {len(result.certificate)}", file=stream)
    _report(certificate_frame(result, spec), stream)
    return EXIT_OK


@exit_code_guard
def cmd_check(args: argparse.Namespace, config: NormalizerConfig) -> int:
    m = jet_from_document(read_document(args.jet))
    spec = spec_argument(args.spec or config.normalize.preset, m.max_weight)
    violations = check(m, spec)
    if not violations:
        print(f"满足 {spec.name} 标准形（截断权 {m.max_weight}）")
        return EXIT_OK
    print(f"违反 {len(violations)} 个条件：")
    _report(violations_frame(violations), sys.stdout)
    return EXIT_VALIDATION


@exit_code_guard
def cmd_apply(args: argparse.Namespace, config: NormalizerConfig) -> int:
    m = jet_from_document(read_document(args.jet))
    h = map_from_document(read_document(args.map))
    image = apply_map(m, h, config.inversion.iterations_for(m.max_weight))
    if args.verify:
        residual = check_transformation_identity(m, h, image)
        if residual:
            raise InternalInvariantError(f"变换恒等式残差非零: {residual.to_text()}")
        logger.info("[CLI] 变换恒等式残差为零")
    write_document(jet_to_document(image), args.out)
    return EXIT_OK


@exit_code_guard
def cmd_decompose(args: argparse.Namespace, config: NormalizerConfig) -> int:
    p, sig = polynomial_from_document(read_document(args.poly))
    if args.eps is not None:
        sig = _signature_option(args.eps)
    if sig is None:
        raise ValidationError("迹分解需要签名：在文档中给出 eps 或使用 --eps")
    result = trace_decompose(p, args.s, sig, fallback=config.decompose.fallback_to_oracle)
    if args.verify:
        if result.q * levi_form(sig, p.max_weight) ** args.s + result.r != p:
            raise InternalInvariantError("迹分解复核失败：Q·⟨z,z⟩^s + R ≠ P")
        if trace_power(result.r, args.s, sig):
            raise InternalInvariantError("迹分解复核失败：tr^s R ≠ 0")
        logger.info("[CLI] 迹分解复核通过")
    write_document({"s": args.s, "q": polynomial_to_document(result.q, sig),
                    "r": polynomial_to_document(result.r, sig)}, args.out)
    return EXIT_OK


@exit_code_guard
def cmd_spec_validate(args: argparse.Namespace, config: NormalizerConfig) -> int:
    spec = spec_argument(args.spec, _resolve_max_weight(args, config, 2))
    problems = validate_spec(spec)
    if problems:
        for problem in problems:
            print(problem)
        return EXIT_VALIDATION
    print(f"规格 {spec.name} 合法（max_weight={spec.max_weight}）")
    return EXIT_OK


@exit_code_guard
def cmd_spec_show(args: argparse.Namespace, config: NormalizerConfig) -> int:
    spec = spec_argument(args.spec, _resolve_max_weight(args, config, 2))
    print(f"规格 {spec.name}，max_weight={spec.max_weight}")
    _report(conditions_frame(conditions_up_to(spec, spec.max_weight)), sys.stdout)
    return EXIT_OK


@exit_code_guard
def cmd_harmonics(args: argparse.Namespace, config: NormalizerConfig) -> int:
    m = jet_from_document(read_document(args.jet), require_eps=False)
    result = eliminate_harmonics(m, config.inversion.iterations_for(m.max_weight))
    write_document(jet_to_document(result.jet), args.out_nf)
    if args.out_map:
        write_document(map_to_document(result.map), args.out_map)
    return EXIT_OK


# ========== 参数 ==========
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biaozhun", description="实超曲面形式标准形计算")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", help="配置文件路径（默认 config/normalizer_config.yaml）")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper,
                        help="覆盖配置中的日志级别")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="计算标准形与规范化映射")
    p.add_argument("jet", help="jet 文档路径")
    p.add_argument("--spec", help="预设名或规格文档路径（默认取配置）")
    p.add_argument("--max-weight", type=int, help="截断到更低的权")
    p.add_argument("--out-nf", default="-", help="标准形输出路径")
    p.add_argument("--out-map", help="映射输出路径")
    p.add_argument("--oracle", action="store_true", help="同时用通用线性系统求解并核对")
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("check", help="列出违反的标准形条件")
    p.add_argument("jet")
    p.add_argument("--spec")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("apply", help="对 jet 施加映射")
    p.add_argument("jet")
    p.add_argument("map")
    p.add_argument("--out", default="-")
    p.add_argument("--verify", action="store_true", help="复核变换恒等式")
    p.set_defaults(handler=cmd_apply)

    p = sub.add_parser("decompose", help="迹分解 P = Q·⟨z,z⟩^s + R")
    p.add_argument("poly", help="多项式文档路径")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--eps", help="逗号分隔的签名，覆盖文档中的 eps")
    p.add_argument("--out", default="-")
    p.add_argument("--verify", action="store_true", help="重新相乘并求迹复核")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("spec", help="规格工具")
    spec_sub = p.add_subparsers(dest="spec_command", required=True)
    for name, handler, text in (("validate", cmd_spec_validate, "检查组合规则与行列式"),
                                ("show", cmd_spec_show, "列出全部条件")):
        q = spec_sub.add_parser(name, help=text)
        q.add_argument("spec", help="预设名或规格文档路径")
        q.add_argument("--max-weight", type=int)
        q.set_defaults(handler=handler)

    p = sub.add_parser("harmonics", help="消去调和项（允许 Levi 退化）")
    p.add_argument("jet")
    p.add_argument("--out-nf", default="-")
    p.add_argument("--out-map")
    p.set_defaults(handler=cmd_harmonics)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
    except ValidationError as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_VALIDATION
    setup_logging(config.logging, args.log_level)
    return args.handler(args, config)


if __name__ == "__main__":
    sys.exit(main())
