"""Bare (undressed) quantities of the repulsive 1D delta Bose gas.

Everything here is closed form.  The gas is parametrized by the coupling
c > 0 and the chemical potential h > 0; all quantities are dimensionless.

    theta(lam) = i*log((ic + lam)/(ic - lam))   bare two-body phase
    K(lam)     = 2c/(lam^2 + c^2)               kernel, K = theta'
    p0(lam)    = lam                            bare momentum
    eps0(lam)  = lam^2 - h                      bare energy
    u0(lam)    = p0(lam) - (t/x)*eps0(lam)

For real lam the phase reduces to 2*arctan(lam/c), which is what we
evaluate there (no branch issues); the logarithm form is kept for complex
arguments inside the strip |Im lam| < c.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class StripError(ValueError):
    """Argument left the analyticity strip |Im lam| < c."""


@dataclass(frozen=True)
class ModelParams:
    """Coupling c and chemical potential h, both > 0."""

    c: float
    h: float

    def __post_init__(self) -> None:
        if not (self.c > 0):
            raise ValueError(f"coupling must be positive, got c={self.c}")
        if not (self.h > 0):
            raise ValueError(f"chemical potential must be positive, got h={self.h}")


def _check_strip(lam, c: float, margin: float = 1.0) -> None:
    im = np.max(np.abs(np.imag(np.asarray(lam, dtype=complex))))
    if im >= margin * c:
        raise StripError(f"|Im lam| = {im} >= {margin}*c = {margin * c}")


def bare_phase(lam, params: ModelParams):
    """theta(lam) = i*log((ic + lam)/(ic - lam)); equals 2*arctan(lam/c) on the real line.

    Odd in lam; domain is the strip |Im lam| < c.
    """
    c = params.c
    lam = np.asarray(lam)
    if np.isrealobj(lam):
        out = 2.0 * np.arctan(lam / c)
    else:
        _check_strip(lam, c)
        out = 1j * np.log((1j * c + lam) / (1j * c - lam))
    if out.ndim == 0:
        return out[()]
    return out


def lieb_kernel(lam, params: ModelParams):
    """K(lam) = 2c/(lam^2 + c^2) = theta'(lam); even; poles at lam = +-ic."""
    c = params.c
    lam = np.asarray(lam)
    if not np.isrealobj(lam):
        _check_strip(lam, c)
    out = 2.0 * c / (lam * lam + c * c)
    if out.ndim == 0:
        return out[()]
    return out


def lieb_kernel_d1(lam, params: ModelParams):
    """K'(lam) = -4c*lam/(lam^2 + c^2)^2."""
    c = params.c
    lam = np.asarray(lam)
    den = lam * lam + c * c
    out = -4.0 * c * lam / (den * den)
    if out.ndim == 0:
        return out[()]
    return out


def lieb_kernel_d2(lam, params: ModelParams):
    """K''(lam) = 4c*(3 lam^2 - c^2)/(lam^2 + c^2)^3."""
    c = params.c
    lam = np.asarray(lam)
    den = lam * lam + c * c
    out = 4.0 * c * (3.0 * lam * lam - c * c) / (den * den * den)
    if out.ndim == 0:
        return out[()]
    return out


def bare_p0(lam):
    """Bare momentum p0(lam) = lam."""
    return lam


def bare_eps0(lam, params: ModelParams):
    """Bare energy eps0(lam) = lam^2 - h."""
    return lam * lam - params.h


def bare_u0(lam, ratio_t_over_x: float, params: ModelParams):
    """u0(lam) = p0(lam) - (t/x) * eps0(lam) = lam - (t/x)(lam^2 - h)."""
    return lam - ratio_t_over_x * (lam * lam - params.h)


def bare_u0_d1(lam, ratio_t_over_x: float):
    """u0'(lam) = 1 - 2 (t/x) lam; single real zero at lam = x/(2t)."""
    return 1.0 - 2.0 * ratio_t_over_x * lam
