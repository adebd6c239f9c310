"""Riemann solutions for two-phase flow with an adsorbing chemical."""

from ._core import (
    CompatibilityError,
    ConnectionNotFound,
    DegenerateError,
    DomainError,
    Error,
    Model,
    NumericalError,
    PreconditionError,
    RhError,
    Solution,
    StructureError,
    UnsupportedCase,
    ValidationError,
    ZeroFlowError,
    check_solution,
    classify,
    connect_undercompressive,
    evaluate,
    find_saddle,
    key_points,
    simulate,
    solve,
    validate_assumptions,
    verify_lagrange,
    viscous_l1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
