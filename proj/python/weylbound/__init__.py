"""Permissible exponents for Vinogradov's mean value, minor-arc exponents and G~(k) bounds."""

from ._core import (
    ENGINE_VERSION,
    ExponentTable,
    TableFormatError,
    check_table_invariants,
    converge,
    gtilde_bound,
    init_table,
    oracles,
    phi_theta,
    refine_pass,
    reproduce,
    sigma,
    differencing_candidate,
    verify,
)

__all__ = [
    "ENGINE_VERSION",
    "ExponentTable",
    "TableFormatError",
    "check_table_invariants",
    "converge",
    "gtilde_bound",
    "init_table",
    "oracles",
    "phi_theta",
    "refine_pass",
    "reproduce",
    "sigma",
    "differencing_candidate",
    "verify",
]
