"""
配置加载

配置文件按节组织（见 config/normalizer_config.yaml），每节对应一个 dataclass。
文件缺失时使用内置默认值；未知的节或键只记录警告。
"""
import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Optional

import yaml

from biaozhun.errors import ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "normalizer_config.yaml"


@dataclass
class NormalizeConfig:
    preset: str = "chern-moser"
    max_weight: Optional[int] = None
    oracle: bool = False
    verify_certificate: bool = True


@dataclass
class InversionConfig:
    max_iterations: Optional[int] = None

    def iterations_for(self, max_weight: int) -> int:
        """不动点迭代上限：未配置时为 2*max_weight+4"""
        if self.max_iterations is not None:
            return self.max_iterations
        return 2 * max_weight + 4


@dataclass
class DecomposeConfig:
    fallback_to_oracle: bool = True


@dataclass
class LoggingConfig:
    level: str = "INFO"
    console: bool = True
    file: Optional[str] = None
    max_size_mb: int = 100
    backup_count: int = 5


@dataclass
class AcceptanceConfig:
    seed: int = 20240917
    invariance_trials: int = 100
    oracle_trials: int = 25
    trace_identity_trials: int = 200
    n1_structure_trials: int = 20
    harmonic_trials: int = 20
    distinctness_trials: int = 10


@dataclass
class NormalizerConfig:
    normalize: NormalizeConfig = field(default_factory=NormalizeConfig)
    inversion: InversionConfig = field(default_factory=InversionConfig)
    decompose: DecomposeConfig = field(default_factory=DecomposeConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)
    acceptance: AcceptanceConfig = field(default_factory=AcceptanceConfig)


def _build_section(cls, raw: Any, section: str):
    if raw is None:
        return cls()
    if not isinstance(raw, dict):
        raise ValidationError(f"配置节 {section} 必须是映射，实际为 {type(raw).__name__}")
    known = {f.name for f in fields(cls)}
    for key in raw:
        if key not in known:
            logger.warning(f"[CONFIG] 忽略未知配置项 {section}.{key}")
    return cls(**{k: v for k, v in raw.items() if k in known})


def load_config(path: Optional[Path | str] = None) -> NormalizerConfig:
    """
    读取 YAML 配置

    Args:
        path: 配置文件路径，None 表示默认路径

    Returns:
        NormalizerConfig: 配置对象；默认路径不存在时返回内置默认值

    Raises:
        ValidationError: 显式给出的路径不存在，或内容结构非法
    """
    explicit = path is not None
    path = Path(path) if explicit else DEFAULT_CONFIG_PATH
    if not path.exists():
        if explicit:
            raise ValidationError(f"配置文件不存在: {path}")
        logger.debug(f"[CONFIG] 未找到 {path}，使用内置默认值")
        return NormalizerConfig()

    with open(path, encoding="utf-8") as fh:
        raw = yaml.safe_load(fh) or {}
    if not isinstance(raw, dict):
        raise ValidationError(f"配置文件顶层必须是映射: {path}")

    sections = {f.name: f.type for f in fields(NormalizerConfig)}
    for key in raw:
        if key not in sections:
            logger.warning(f"[CONFIG] 忽略未知配置节 {key}")
    return NormalizerConfig(
        normalize=_build_section(NormalizeConfig, raw.get("normalize"), "normalize"),
        inversion=_build_section(InversionConfig, raw.get("inversion"), "inversion"),
        decompose=_build_section(DecomposeConfig, raw.get("decompose"), "decompose"),
        logging=_build_section(LoggingConfig, raw.get("logging"), "logging"),
        acceptance=_build_section(AcceptanceConfig, raw.get("acceptance"), "acceptance"),
    )
