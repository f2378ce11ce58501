"""
Verification Configuration
Run parameters for the certification suites: the collar width eps, the
group parameters to enumerate, sample counts, seed and output settings.

Defaults are loaded from the external JSON file: data/certifier_config.json
Precedence, lowest first: defaults file, environment (CERTIFIER_* variables,
read from .env when present), an explicit --config file, command-line flags.
"""

import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path

from dotenv import load_dotenv
from sympy import isprime

LOGGER = logging.getLogger(__name__)

# Determine paths correctly whether running from src/ or project root
_current_file = Path(__file__)
_src_dir = _current_file.parent
_project_root = _src_dir.parent

_json_paths = [
    _project_root / "data" / "certifier_config.json",
    _src_dir.parent / "data" / "certifier_config.json",
    Path("data/certifier_config.json"),
]

_defaults = None

ENV_OVERRIDES = {
    "CERTIFIER_EPSILON": "epsilon",
    "CERTIFIER_SEED": "seed",
    "CERTIFIER_N_JOBS": "n_jobs",
    "CERTIFIER_OUTPUT": "output",
}

FORMATS = ("json", "markdown")
EPSILON_BOUND = Fraction(1, 9)


class ConfigError(ValueError):
    """Malformed or out-of-range configuration."""


def _load_defaults():
    """Load the defaults file (cached)."""
    global _defaults
    if _defaults is not None:
        return dict(_defaults)

    for json_path in _json_paths:
        if json_path.exists():
            with open(json_path, 'r', encoding='utf-8') as f:
                _defaults = json.load(f)
            return dict(_defaults)

    raise FileNotFoundError(
        f"Could not find certifier_config.json. Searched: {[str(p) for p in _json_paths]}"
    )


def parse_rational(value, name="epsilon"):
    """'p/q' (or an int / Fraction) -> Fraction; floats are refused."""
    if isinstance(value, float):
        raise ConfigError(f"{name} must be an exact rational string like '49/625', got float {value}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{name} {value!r} is not a rational 'p/q'") from exc


def _parse_epsilon(value, name="epsilon"):
    eps = parse_rational(value, name)
    if not 0 < eps < EPSILON_BOUND:
        raise ConfigError(f"{name} must lie in (0, 1/9), got {eps}")
    return eps


@dataclass
class VerificationConfig:
    epsilon: Fraction = Fraction(49, 625)
    disjointness_epsilons: tuple = (Fraction(49, 625), Fraction(1, 16))
    k_values: tuple = (3, 4, 5)
    primes: tuple = (3, 5, 7, 11, 13)
    b_family: tuple = ((4, -1), (4, 1), (5, -1), (5, 1), (6, -1), (6, 1))
    disjointness_samples: int = 10_000
    invariance_samples: int = 200
    gluing_samples: int = 100
    seed: int = 0
    k_max: int = 5
    closure_bound: int = 5000
    associativity_exhaustive_limit: int = 200
    associativity_samples: int = 10_000
    embed_exhaustive_pairs: int = 1_000
    embed_samples: int = 2_000
    n_jobs: int = 1
    record_timing: bool = False
    output: str = None
    format: str = "json"

    @classmethod
    def from_mapping(cls, data):
        """Build and validate a config from plain JSON-style values."""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"Unknown configuration keys: {unknown}")
        values = dict(data)
        try:
            if "epsilon" in values:
                values["epsilon"] = _parse_epsilon(values["epsilon"])
            if "disjointness_epsilons" in values:
                values["disjointness_epsilons"] = tuple(
                    _parse_epsilon(v, "disjointness_epsilons") for v in values["disjointness_epsilons"]
                )
            for key in ("k_values", "primes"):
                if key in values:
                    values[key] = tuple(int(v) for v in values[key])
            if "b_family" in values:
                values["b_family"] = tuple((int(k), int(s)) for k, s in values["b_family"])
            for key in ("disjointness_samples", "invariance_samples", "gluing_samples", "seed",
                        "k_max", "closure_bound", "associativity_exhaustive_limit",
                        "associativity_samples", "embed_exhaustive_pairs", "embed_samples",
                        "n_jobs"):
                if key in values:
                    values[key] = int(values[key])
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"Malformed configuration: {exc}") from exc
        if "record_timing" in values:
            values["record_timing"] = _parse_bool(values["record_timing"])
        return cls(**values).validate()

    def validate(self):
        _parse_epsilon(self.epsilon)
        for eps in self.disjointness_epsilons:
            _parse_epsilon(eps, "disjointness_epsilons")
        if not self.k_values or any(k < 3 for k in self.k_values):
            raise ConfigError(f"k_values must be integers >= 3, got {list(self.k_values)}")
        if any(k > self.k_max for k in self.k_values):
            raise ConfigError(f"k_values {list(self.k_values)} exceed k_max={self.k_max}")
        bad_primes = [p for p in self.primes if p == 2 or not isprime(p)]
        if bad_primes:
            raise ConfigError(f"primes must be odd primes, got {bad_primes}")
        for k, sign in self.b_family:
            if k < 4 or sign not in (1, -1):
                raise ConfigError(f"b_family entries need k >= 4 and sign +-1, got ({k}, {sign})")
        for name in ("disjointness_samples", "invariance_samples", "gluing_samples",
                     "associativity_samples", "embed_exhaustive_pairs", "embed_samples"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be >= 0")
        if self.closure_bound < 1:
            raise ConfigError("closure_bound must be positive")
        if self.n_jobs == 0:
            raise ConfigError("n_jobs must be non-zero (joblib convention)")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}, got {self.format!r}")
        return self

    def to_dict(self):
        """JSON-safe snapshot for reports; rationals are written as strings."""
        data = asdict(self)
        data["epsilon"] = str(self.epsilon)
        data["disjointness_epsilons"] = [str(e) for e in self.disjointness_epsilons]
        data["k_values"] = list(self.k_values)
        data["primes"] = list(self.primes)
        data["b_family"] = [list(pair) for pair in self.b_family]
        return data

    def report_snapshot(self):
        """The settings that determine a report's content (no output or timing switches)."""
        data = self.to_dict()
        for key in ("output", "format", "n_jobs", "record_timing"):
            data.pop(key)
        return data


def _parse_bool(value):
    if isinstance(value, bool):
        return value
    if str(value).lower() in ("1", "true", "yes", "on"):
        return True
    if str(value).lower() in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"Expected a boolean, got {value!r}")


def _env_values():
    load_dotenv()
    values = {}
    for variable, key in ENV_OVERRIDES.items():
        raw = os.getenv(variable)
        if raw is not None and raw != "":
            values[key] = raw
    return values


def _read_config_file(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError as exc:
        raise ConfigError(f"Config file {path} does not exist") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a JSON object")
    return data


def load_config(path=None, overrides=None, use_env=True):
    """
    Assemble the run configuration.

    Args:
        path: Optional JSON config file (wins over defaults and environment)
        overrides: dict of flag values; None entries are ignored
        use_env: Read CERTIFIER_* variables (and .env)

    Returns:
        Validated VerificationConfig
    """
    data = _load_defaults()
    if use_env:
        data.update(_env_values())
    if path is not None:
        data.update(_read_config_file(path))
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    config = VerificationConfig.from_mapping(data)
    LOGGER.debug("Configuration: %s", config.to_dict())
    return config
