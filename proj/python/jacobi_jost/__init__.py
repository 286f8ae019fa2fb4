"""Jost solutions and spectral data for Jacobi matrices with rapidly growing coefficients."""

from ._core import (
    ConfigError,
    JacobiError,
    Model,
    ModelError,
    NotConverged,
    PoleAtZ,
    RegimeMismatch,
    TailUnbounded,
    classify,
    find_eigenvalues,
    finite_section_eigs,
    identity,
    jost_function,
    load_model,
    model_hash,
    parse_model,
    spectral_density,
    spectral_mass,
)

__all__ = [
    "ConfigError",
    "JacobiError",
    "Model",
    "ModelError",
    "NotConverged",
    "PoleAtZ",
    "RegimeMismatch",
    "TailUnbounded",
    "classify",
    "find_eigenvalues",
    "finite_section_eigs",
    "identity",
    "jost_function",
    "load_model",
    "model_hash",
    "parse_model",
    "spectral_density",
    "spectral_mass",
]
