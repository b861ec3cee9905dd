"""
Suite configuration with environment overrides
"""
from dataclasses import dataclass, asdict, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional
import logging
import os

logger = logging.getLogger(__name__)

ENV_PREFIX = "DSPACE_"
DEFAULT_FIXTURES_DIR = Path(__file__).resolve().parent.parent / 'fixtures'

# flag name -> (environment suffix, parser)
_ENV_FIELDS = {
    'max_degree': ('MAX_DEGREE', int),
    'dim_cap': ('DIM', int),
    'arity_cap': ('ARITY_CAP', int),
    'p_max': ('P_MAX', int),
    'seed': ('SEED', int),
    'fixtures_dir': ('FIXTURES', str),
    'output_format': ('FORMAT', str),
    'out_path': ('OUT', str),
}


@dataclass(frozen=True)
class SuiteConfig:
    """Caps and I/O settings for one suite run; None means use the suite default"""
    suite: str
    max_degree: Optional[int] = None
    dim_cap: Optional[int] = None
    arity_cap: Optional[int] = None
    p_max: Optional[int] = None
    seed: int = 0
    fixtures_dir: Optional[str] = None
    output_format: str = 'text'
    out_path: Optional[str] = None
    use_color: bool = True

    def validate(self) -> 'SuiteConfig':
        for name in ('max_degree', 'dim_cap', 'arity_cap', 'p_max'):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.output_format not in ('text', 'json'):
            raise ValueError(f"Unknown output format: {self.output_format}")
        return self

    def with_defaults(self, defaults: Mapping[str, Any]) -> 'SuiteConfig':
        """Fill unset caps from a suite's defaults"""
        updates = {k: v for k, v in defaults.items() if getattr(self, k, None) is None}
        return replace(self, **updates)

    @property
    def fixtures_path(self) -> Path:
        return Path(self.fixtures_dir) if self.fixtures_dir else DEFAULT_FIXTURES_DIR

    def report_fields(self) -> Dict[str, Any]:
        """The fields that determine a report (paths and colors excluded)"""
        data = asdict(self)
        for key in ('out_path', 'use_color', 'output_format', 'fixtures_dir'):
            data.pop(key)
        return data

    @classmethod
    def from_env(cls, base: 'SuiteConfig', environ: Optional[Mapping[str, str]] = None,
                 explicit: Optional[set] = None) -> 'SuiteConfig':
        """
        Apply DSPACE_* environment overrides to fields not given explicitly.

        Args:
            base: Configuration built from command-line flags
            environ: Mapping to read from (defaults to os.environ)
            explicit: Field names set on the command line; these are never overridden
        """
        environ = os.environ if environ is None else environ
        explicit = explicit or set()
        updates = {}
        for name, (suffix, parse) in _ENV_FIELDS.items():
            raw = environ.get(ENV_PREFIX + suffix)
            if raw is None or name in explicit:
                continue
            try:
                updates[name] = parse(raw)
            except ValueError:
                raise ValueError(f"Invalid value for {ENV_PREFIX + suffix}: {raw!r}")
            logger.debug(f"Environment override {ENV_PREFIX + suffix}={raw}")
        return replace(base, **updates)
