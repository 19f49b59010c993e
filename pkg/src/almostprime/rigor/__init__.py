"""Rigorous numerics: enclosures, jets, quadrature and special functions."""

from __future__ import annotations

from .constants import (
    FundamentalConstants,
    e_gamma,
    euler_gamma,
    fundamental_constants,
    mertens_constant,
    pi,
)
from .enclosure import (
    DEFAULT_PRECISION,
    DomainError,
    Enclosure,
    PrecisionExhausted,
    enc,
    get_precision,
    hull,
    working_precision,
)
from .functions import dilog, exp, log, log_integral, log_log, sqrt
from .jet import Jet
from .magnitude import Magnitude
from .quadrature import integrate
from .ray import RaySup, RayTerm, monotone_term, power_exp_tail, ray_sup

__all__ = [
    "DEFAULT_PRECISION",
    "DomainError",
    "Enclosure",
    "FundamentalConstants",
    "Jet",
    "Magnitude",
    "PrecisionExhausted",
    "RaySup",
    "RayTerm",
    "dilog",
    "e_gamma",
    "enc",
    "euler_gamma",
    "exp",
    "fundamental_constants",
    "get_precision",
    "hull",
    "integrate",
    "log",
    "log_integral",
    "log_log",
    "mertens_constant",
    "monotone_term",
    "pi",
    "power_exp_tail",
    "ray_sup",
    "sqrt",
    "working_precision",
]
