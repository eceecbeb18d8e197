"""Energy-aware multi-robot foraging simulator."""

from ._core import (
    ConfigError,
    config_hash,
    default_config,
    energy_tick,
    load_config,
    parse_seeds,
    recharge_tick,
    run,
    summary,
    validate,
)

__all__ = [
    "ConfigError",
    "config_hash",
    "default_config",
    "energy_tick",
    "load_config",
    "parse_seeds",
    "recharge_tick",
    "run",
    "summary",
    "validate",
]
