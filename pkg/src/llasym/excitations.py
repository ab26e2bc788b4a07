"""Shift functions, the combination u = p - (t/x) eps and its saddle point,
critical exponents, and the ledger of subleading harmonics.

A shift function for an excitation with particles {z+} and holes {z-} is the
finite combination

    nu(lam) = -Z(lam)/2 - sum_{z in {z+}} phi(lam, z) + sum_{z in {z-}} phi(lam, z).

The three combinations entering the explicit asymptotic terms are built by
`special_shift`:

    empty   : -Z/2 - phi(., q)        (N -> N+1 ground state)
    minus_q : -Z/2 - phi(., -q)       (particle at -q, hole at q)
    saddle  : -Z/2 - phi(., lam0)     (particle at lam0, hole at q)

(the hole at q implicit in these combinations is *not* added by
`shift_function`; callers build custom excitations from the literal sets).

Critical exponents are squares of boundary values of these functions; the
harmonic ledger carries, for each pair of integers (l+, l-) subject to
eta (l+ + l-) >= 0, the frequency l+ u(q) + l- u(-q) - (l+ + l-) u(lam0)
and the exponent (1 + l+ + D+)^2 + (D- - l-)^2 + |l+ + l-|/2 with

    D(+-) = -Z(+-q)/2 - l- phi(+-q, -q) - (l+ + 1) phi(+-q, q)
            + (l+ + l-) phi(+-q, lam0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .dressing import DressedSet
from .model import bare_u0


class NoSaddleError(RuntimeError):
    """u' has no sign change on the scan range."""


class MultipleSaddlesError(RuntimeError):
    """u' changes sign more than once (working hypothesis of a unique saddle violated)."""


class DegenerateSaddleError(RuntimeError):
    """The saddle point collides with a Fermi boundary (|lam0 -+ q| < 1e-6)."""


SPACE_LIKE = "space-like"
TIME_LIKE = "time-like"


@dataclass(frozen=True)
class Excitation:
    """Particle rapidities (anywhere in the strip) and hole rapidities (in [-q, q])."""

    particles: tuple
    holes: tuple

    @staticmethod
    def make(particles=(), holes=()) -> "Excitation":
        return Excitation(tuple(float(z) for z in particles), tuple(float(z) for z in holes))


@dataclass
class ShiftFn:
    """nu(lam) = -Z/2 - sum phi(lam, z+) + sum phi(lam, z-), with derivatives."""

    excitation: Excitation
    dressed: DressedSet

    def __post_init__(self) -> None:
        q = self.dressed.q
        for z in self.excitation.holes:
            if not (-q - 1e-12 <= z <= q + 1e-12):
                raise ValueError(f"hole rapidity {z} outside [-q, q] = [{-q}, {q}]")

    def __call__(self, lam):
        d = self.dressed
        out = -0.5 * d.Z(lam)
        for z in self.excitation.particles:
            out = out - d.phi(lam, z)
        for z in self.excitation.holes:
            out = out + d.phi(lam, z)
        return out

    def d1(self, lam):
        d = self.dressed
        out = -0.5 * d.Z_d1(lam)
        for z in self.excitation.particles:
            out = out - d.phi_d1(lam, z)
        for z in self.excitation.holes:
            out = out + d.phi_d1(lam, z)
        return out

    @cached_property
    def at_q(self) -> float:
        return float(self(self.dressed.q))

    @cached_property
    def at_minus_q(self) -> float:
        return float(self(-self.dressed.q))


def shift_function(excitation: Excitation, dressed: DressedSet) -> ShiftFn:
    """Shift function for the literal particle/hole sets (no implicit q-hole)."""
    return ShiftFn(excitation=excitation, dressed=dressed)


def special_shift(kind: str, dressed: DressedSet, lambda0: float | None = None) -> ShiftFn:
    """The three shift functions of the explicit asymptotic terms."""
    if kind == "empty":
        zp = (dressed.q,)
    elif kind == "minus_q":
        zp = (-dressed.q,)
    elif kind == "saddle":
        if lambda0 is None:
            raise ValueError("saddle kind needs lambda0")
        zp = (float(lambda0),)
    else:
        raise ValueError(f"unknown shift kind {kind!r}")
    return ShiftFn(excitation=Excitation(zp, ()), dressed=dressed)


# ----------------------------------------------------------------------
# u(lam) = p(lam) - (t/x) eps(lam) and its saddle point
# ----------------------------------------------------------------------

def u_combination(lam, ratio_t_over_x: float, dressed: DressedSet, method: str = "direct"):
    """u(lam) = p(lam) - (t/x) eps(lam).

    method="direct" evaluates the dressed solves; method="integral" uses the
    equivalent representation u(lam) = u0(lam) - int_{-q}^{q} u0'(mu) phi(mu, lam) dmu
    (first argument of phi integrated).  The two must agree.
    """
    if method == "direct":
        return dressed.p(lam) - ratio_t_over_x * dressed.eps(lam)
    if method == "integral":
        g = dressed.grid
        lam_arr = np.atleast_1d(np.asarray(lam, dtype=float))
        u0p = 1.0 - 2.0 * ratio_t_over_x * g.nodes
        out = np.empty_like(lam_arr)
        for i, z in enumerate(lam_arr):
            phi_col = dressed.phi(g.nodes, z)
            out[i] = bare_u0(z, ratio_t_over_x, dressed.params) - np.dot(g.weights * u0p, phi_col)
        return out[0] if np.ndim(lam) == 0 else out
    raise ValueError(f"unknown method {method!r}")


def u_d1(lam, ratio_t_over_x: float, dressed: DressedSet):
    """u'(lam) = p'(lam) - (t/x) eps'(lam)."""
    return dressed.p_d1(lam) - ratio_t_over_x * dressed.eps_d1(lam)


def u_d2(lam, ratio_t_over_x: float, dressed: DressedSet):
    """u''(lam) = p''(lam) - (t/x) eps''(lam)."""
    return dressed.p_d2(lam) - ratio_t_over_x * dressed.eps_d2(lam)


def find_saddle(
    ratio_t_over_x: float,
    dressed: DressedSet,
    scan_range: float | None = None,
    n_scan: int = 4001,
):
    """Unique lam0 with u'(lam0) = 0, u''(lam0) < 0; returns (lam0, regime).

    Sign-change scan on [-scan_range, scan_range] (default max(5q, x/t),
    bracketing the bare saddle x/(2t)) followed by Newton polish to
    |u'(lam0)| < 1e-10.  Errors: NoSaddleError / MultipleSaddlesError /
    DegenerateSaddleError (|lam0 -+ q| < 1e-6).
    """
    if not (ratio_t_over_x > 0):
        raise ValueError("saddle search needs t/x > 0")
    q = dressed.q
    if scan_range is None:
        scan_range = max(5.0 * q, 1.0 / ratio_t_over_x)
    grid = np.linspace(-scan_range, scan_range, n_scan)
    vals = u_d1(grid, ratio_t_over_x, dressed)
    sign_flips = np.nonzero(np.diff(np.sign(vals)) != 0)[0]
    if len(sign_flips) == 0:
        raise NoSaddleError(f"u' has no zero on [-{scan_range}, {scan_range}]")
    if len(sign_flips) > 1:
        raise MultipleSaddlesError(f"u' changes sign {len(sign_flips)} times")
    i = sign_flips[0]
    lo, hi = grid[i], grid[i + 1]
    lam0 = 0.5 * (lo + hi)
    for _ in range(100):
        f = float(u_d1(lam0, ratio_t_over_x, dressed))
        if abs(f) < 1e-14:
            break
        fp = float(u_d2(lam0, ratio_t_over_x, dressed))
        step = f / fp
        nxt = lam0 - step
        if not (lo - (hi - lo) <= nxt <= hi + (hi - lo)):
            # bisection fallback keeps the bracket
            flo = float(u_d1(lo, ratio_t_over_x, dressed))
            if flo * f <= 0:
                hi = lam0
            else:
                lo = lam0
            nxt = 0.5 * (lo + hi)
        lam0 = nxt
    if abs(float(u_d1(lam0, ratio_t_over_x, dressed))) > 1e-10:
        raise NoSaddleError(f"Newton failed to reach |u'| < 1e-10 at lam0={lam0}")
    if float(u_d2(lam0, ratio_t_over_x, dressed)) >= 0:
        raise NoSaddleError(f"u''(lam0) >= 0 at lam0={lam0}: not a maximum of u")
    if min(abs(lam0 - q), abs(lam0 + q)) < 1e-6:
        raise DegenerateSaddleError(f"lam0 = {lam0} within 1e-6 of a Fermi boundary +-{q}")
    regime = SPACE_LIKE if lam0 > q else TIME_LIKE
    return float(lam0), regime


def critical_exponent_pair(nu: ShiftFn, plus_offset: float, minus_offset: float):
    """([nu(q) + plus_offset]^2, [nu(-q) + minus_offset]^2).

    First element is the power of (x - vF t), second the power of (x + vF t);
    offsets are (0, 0) for the saddle term, (0, -1) for the -q term and
    (+1, 0) for the empty term.
    """
    return (nu.at_q + plus_offset) ** 2, (nu.at_minus_q + minus_offset) ** 2


# ----------------------------------------------------------------------
# harmonic ledger
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class HarmonicEntry:
    ell_plus: int
    ell_minus: int
    frequency: float
    exponent: float
    amplitude_known: bool = False


def harmonic_table(
    max_abs_ell: int,
    dressed: DressedSet,
    lambda0: float,
    regime: str,
    ratio_t_over_x: float,
) -> list[HarmonicEntry]:
    """All harmonics with |l+-| <= max_abs_ell and eta (l+ + l-) >= 0, excluding
    the pairs that reproduce the explicit terms' frequencies: (0,0) and (-1,1)
    always, and (-1,0) in the space-like regime (there the saddle term is
    explicit; in the time-like regime the (-1,0) harmonic carries the
    saddle-vicinity physics and stays in the ledger)."""
    eta = 1 if regime == SPACE_LIKE else -1
    q = dressed.q
    uq = float(u_combination(q, ratio_t_over_x, dressed))
    umq = float(u_combination(-q, ratio_t_over_x, dressed))
    ul0 = float(u_combination(lambda0, ratio_t_over_x, dressed))
    Zq, Zmq = float(dressed.Z(q)), float(dressed.Z(-q))
    phi_q = {m: float(dressed.phi(q, m)) for m in (-q, q, lambda0)}
    phi_mq = {m: float(dressed.phi(-q, m)) for m in (-q, q, lambda0)}

    excluded = {(0, 0), (-1, 1)}
    if regime == SPACE_LIKE:
        excluded.add((-1, 0))

    out: list[HarmonicEntry] = []
    for lp in range(-max_abs_ell, max_abs_ell + 1):
        for lm in range(-max_abs_ell, max_abs_ell + 1):
            if eta * (lp + lm) < 0:
                continue
            if (lp, lm) in excluded:
                continue
            dp = -0.5 * Zq - lm * phi_q[-q] - (lp + 1) * phi_q[q] + (lp + lm) * phi_q[lambda0]
            dm = -0.5 * Zmq - lm * phi_mq[-q] - (lp + 1) * phi_mq[q] + (lp + lm) * phi_mq[lambda0]
            delta = (1.0 + lp + dp) ** 2 + (dm - lm) ** 2 + 0.5 * abs(lp + lm)
            freq = lp * uq + lm * umq - (lp + lm) * ul0
            out.append(HarmonicEntry(lp, lm, freq, delta))
    return out
