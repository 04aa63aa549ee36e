from .instance import (
    PerturbedInstance,
    Residual,
    eta,
    eta_oracle,
    eta_table,
    instantiate,
    instantiate_unperturbed,
    residual_of,
)
from .scheme import (
    DEFAULT_PROBES,
    PerturbationScheme,
    SchemeViolation,
    dumps_scheme,
    load_scheme,
    miltersen_scheme,
    parse_scheme,
    require_valid_scheme,
    scheme_fingerprint,
    unperturbed_scheme,
    validate_scheme,
)

__all__ = [
    "DEFAULT_PROBES",
    "PerturbationScheme",
    "PerturbedInstance",
    "Residual",
    "SchemeViolation",
    "dumps_scheme",
    "eta",
    "eta_oracle",
    "eta_table",
    "instantiate",
    "instantiate_unperturbed",
    "load_scheme",
    "miltersen_scheme",
    "parse_scheme",
    "require_valid_scheme",
    "residual_of",
    "scheme_fingerprint",
    "unperturbed_scheme",
    "validate_scheme",
]
