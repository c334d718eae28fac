"""Python access to the pbloch scattering solver."""

from ._core import (
    ConfigError,
    ConvergenceError,
    DomainError,
    GeometryError,
    WavenumberClass,
    beta,
    build_g,
    exact_flat_total,
    exceptional_set,
    herglotz_density,
    parse_config_text,
    preset,
    run_sweep,
)

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "GeometryError",
    "WavenumberClass",
    "beta",
    "build_g",
    "exact_flat_total",
    "exceptional_set",
    "herglotz_density",
    "parse_config_text",
    "preset",
    "run_sweep",
]
