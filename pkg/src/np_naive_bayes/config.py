"""
Configuration management for np-naive-bayes

Handles loading configuration from environment variables, YAML/TOML
config files and command-line overrides.
"""

import os
import tomllib
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .errors import ConfigError


class Variant(Enum):
    """The four NP naive Bayes classifiers"""
    NSN2 = "nsn2"
    PSN2 = "psn2"
    NN2 = "nn2"
    PN2 = "pn2"


class ScreeningMethod(Enum):
    """Marginal screening statistic"""
    NONE = "none"
    DSTAT = "dstat"
    TSTAT = "tstat"


class EstimatorKind(Enum):
    """Density-ratio estimator family"""
    PARAMETRIC = "parametric"
    NONPARAMETRIC = "nonparametric"


class KernelKind(Enum):
    GAUSSIAN = "gaussian"
    EPANECHNIKOV = "epanechnikov"


class BandwidthRule(Enum):
    RATE_BETA2 = "rate_beta2"
    SILVERMAN = "silverman"


class TTestKind(Enum):
    WELCH = "welch"
    POOLED = "pooled"


class ThresholdRule(Enum):
    """Which order statistic of the left-out class-0 scores becomes the threshold"""
    KMIN = "kmin"
    KCHERN = "kchern"
    EXACT_BETA = "exact_beta"


_VARIANT_PARTS = {
    Variant.NSN2: (ScreeningMethod.DSTAT, EstimatorKind.NONPARAMETRIC),
    Variant.PSN2: (ScreeningMethod.TSTAT, EstimatorKind.PARAMETRIC),
    Variant.NN2: (ScreeningMethod.NONE, EstimatorKind.NONPARAMETRIC),
    Variant.PN2: (ScreeningMethod.NONE, EstimatorKind.PARAMETRIC),
}


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() in ["true", "1", "yes"]


def _open_unit(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ConfigError(f"{name} must lie in (0, 1), got {value}")


@dataclass(frozen=True)
class NPConfig:
    """Configuration for training an NP classifier"""
    alpha: float = 0.05
    delta1: float = 0.05
    delta3: float = 0.05
    q_quantile: float = 0.95
    screening: ScreeningMethod = ScreeningMethod.NONE
    estimator: EstimatorKind = EstimatorKind.PARAMETRIC
    seed: int = 0
    kernel: KernelKind = KernelKind.GAUSSIAN
    bandwidth_rule: BandwidthRule = BandwidthRule.RATE_BETA2
    t_test: TTestKind = TTestKind.WELCH
    permutations: int = 1
    threshold_rule: ThresholdRule = ThresholdRule.KMIN
    swap_classes: bool = False

    def __post_init__(self) -> None:
        _open_unit("alpha", self.alpha)
        _open_unit("delta1", self.delta1)
        _open_unit("delta3", self.delta3)
        if not 0.0 <= self.q_quantile <= 1.0:
            raise ConfigError(f"q_quantile must lie in [0, 1], got {self.q_quantile}")
        if self.permutations < 1:
            raise ConfigError(f"permutations must be >= 1, got {self.permutations}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def variant(self) -> Variant:
        """The variant named by the (screening, estimator) pair"""
        screened = self.screening is not ScreeningMethod.NONE
        if self.estimator is EstimatorKind.NONPARAMETRIC:
            return Variant.NSN2 if screened else Variant.NN2
        return Variant.PSN2 if screened else Variant.PN2

    def with_variant(self, variant: Variant) -> "NPConfig":
        """Copy of this config with screening and estimator set by a variant"""
        screening, estimator = _VARIANT_PARTS[variant]
        return replace(self, screening=screening, estimator=estimator)

    def with_overrides(self, **overrides: Any) -> "NPConfig":
        """Copy with every non-None override applied"""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        return {k: (v.value if isinstance(v, Enum) else v) for k, v in data.items()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "NPConfig":
        kwargs = dict(data)
        enum_fields = {
            "screening": ScreeningMethod,
            "estimator": EstimatorKind,
            "kernel": KernelKind,
            "bandwidth_rule": BandwidthRule,
            "t_test": TTestKind,
            "threshold_rule": ThresholdRule,
        }
        for key, enum_cls in enum_fields.items():
            if key in kwargs:
                kwargs[key] = enum_cls(kwargs[key])
        variant = kwargs.pop("variant", None)
        try:
            config = cls(**kwargs)
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid np configuration: {e}") from e
        return config.with_variant(Variant(variant)) if variant else config

    @classmethod
    def from_env(cls) -> "NPConfig":
        """Create NP config from environment variables"""
        load_dotenv()

        config = cls(
            alpha=float(os.getenv("NP_ALPHA", "0.05")),
            delta1=float(os.getenv("NP_DELTA1", "0.05")),
            delta3=float(os.getenv("NP_DELTA3", "0.05")),
            q_quantile=float(os.getenv("NP_Q", "0.95")),
            seed=int(os.getenv("NP_SEED", "0")),
            kernel=KernelKind(os.getenv("NP_KERNEL", "gaussian")),
            bandwidth_rule=BandwidthRule(os.getenv("NP_BANDWIDTH", "rate_beta2")),
            t_test=TTestKind(os.getenv("NP_TTEST", "welch")),
            permutations=int(os.getenv("NP_PERMUTATIONS", "1")),
            threshold_rule=ThresholdRule(os.getenv("NP_THRESHOLD_RULE", "kmin")),
            swap_classes=_env_bool("NP_SWAP_CLASSES", "false"),
        )
        variant = os.getenv("NP_VARIANT")
        return config.with_variant(Variant(variant)) if variant else config


@dataclass
class SimSettings:
    """Configuration for the Monte Carlo harness"""
    reps: int = 1000
    test_per_class: int = 1000
    threads: int = 1
    kde_type1_draws: int = 100_000

    def __post_init__(self) -> None:
        if self.reps < 1 or self.test_per_class < 1 or self.kde_type1_draws < 1:
            raise ConfigError("reps, test_per_class and kde_type1_draws must be positive")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1, got {self.threads}")

    @classmethod
    def from_env(cls) -> "SimSettings":
        """Create simulation settings from environment variables"""
        load_dotenv()

        return cls(
            reps=int(os.getenv("NP_REPS", "1000")),
            test_per_class=int(os.getenv("NP_TEST_PER_CLASS", "1000")),
            threads=int(os.getenv("NP_THREADS", str(os.cpu_count() or 1))),
            kde_type1_draws=int(os.getenv("NP_KDE_DRAWS", "100000")),
        )


@dataclass
class AppConfig:
    """Main application configuration"""
    np: NPConfig = field(default_factory=NPConfig.from_env)
    sim: SimSettings = field(default_factory=SimSettings.from_env)
    log_level: str = "INFO"
    config_file: Optional[Path] = None

    @classmethod
    def load(cls, config_file: Optional[Path] = None) -> "AppConfig":
        """Load configuration from file and environment variables"""
        load_dotenv()

        if config_file and config_file.exists():
            config = cls._load_from_file(config_file)
        else:
            config = cls()

        config.config_file = config_file

        if os.getenv("LOG_LEVEL"):
            config.log_level = os.getenv("LOG_LEVEL", "INFO")

        return config

    @classmethod
    def _load_from_file(cls, config_file: Path) -> "AppConfig":
        """Load configuration from a YAML or TOML file"""
        try:
            if config_file.suffix == ".toml":
                with open(config_file, "rb") as f:
                    data = tomllib.load(f)
            else:
                with open(config_file, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError, tomllib.TOMLDecodeError) as e:
            raise ConfigError(f"Failed to load config file {config_file}: {e}") from e

        env_np = NPConfig.from_env()
        np_data = {**env_np.to_dict(), **data.get("np", {})}

        sim_defaults = asdict(SimSettings.from_env())
        try:
            sim = SimSettings(**{**sim_defaults, **data.get("sim", {})})
        except TypeError as e:
            raise ConfigError(f"Invalid sim configuration: {e}") from e

        return cls(
            np=NPConfig.from_dict(np_data),
            sim=sim,
            log_level=data.get("log_level", "INFO"),
            config_file=config_file,
        )

    def save(self, config_file: Optional[Path] = None) -> None:
        """Save configuration to YAML file"""
        file_path = config_file or self.config_file
        if not file_path:
            raise ConfigError("No config file specified")

        data = {
            "np": self.np.to_dict(),
            "sim": asdict(self.sim),
            "log_level": self.log_level,
        }

        file_path.parent.mkdir(parents=True, exist_ok=True)

        with open(file_path, "w", encoding="utf-8") as f:
            yaml.dump(data, f, default_flow_style=False, indent=2, sort_keys=False)
