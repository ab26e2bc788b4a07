"""Shift functions, saddle point, critical exponents, harmonic ladder."""

import numpy as np
import pytest

from llasym import ModelParams, dress_all, special_shift
from llasym.excitations import (
    SPACE_LIKE,
    TIME_LIKE,
    DegenerateSaddleError,
    Excitation,
    critical_exponent_pair,
    find_saddle,
    harmonic_table,
    shift_function,
    u_combination,
    u_d1,
    u_d2,
)


def test_phase_antisymmetry(dressed_11):
    q = dressed_11.q
    lam = np.array([0.1, 0.35 * q, 0.8 * q])
    for mu in (0.2, -0.6 * q, q):
        a = dressed_11.phi(lam, mu)
        b = dressed_11.phi(-lam, -mu)
        assert np.max(np.abs(a + b)) < 1e-10


def test_shift_boundary_identities(dressed_11, dressed_41):
    # the boundary values of the three special shifts collapse to
    # combinations of Z(q) and 1/Z(q) alone
    for d in (dressed_11, dressed_41):
        q = d.q
        zq = float(d.Z(q))
        zinv = 1.0 / zq
        f_ee = special_shift("empty", d)
        assert f_ee.at_q + 1.0 == pytest.approx(0.5 * zinv, abs=1e-9)
        assert f_ee.at_minus_q == pytest.approx(-0.5 * zinv, abs=1e-9)
        f_mq = special_shift("minus_q", d)
        assert f_mq.at_q == pytest.approx(0.5 * zinv - zq, abs=1e-9)
        assert f_mq.at_minus_q - 1.0 == pytest.approx(-0.5 * zinv - zq, abs=1e-9)


def test_shift_function_literal_combination(dressed_11):
    d = dressed_11
    q = d.q
    lam = 0.3
    exc = Excitation(particles=(1.7 * q,), holes=(0.4 * q,))
    f = shift_function(exc, d)
    direct = -0.5 * float(d.Z(lam)) - float(d.phi(lam, 1.7 * q)) + float(d.phi(lam, 0.4 * q))
    assert float(f(lam)) == pytest.approx(direct, abs=1e-14)
    with pytest.raises(ValueError):
        shift_function(Excitation(particles=(), holes=(2.0 * q,)), d)  # hole outside


def test_special_shift_needs_lambda0(dressed_11):
    with pytest.raises(ValueError):
        special_shift("saddle", dressed_11)
    with pytest.raises(ValueError):
        special_shift("nonsense", dressed_11)


@pytest.mark.parametrize("ratio", [0.1, 0.2, 1.0 / 3.0])
def test_saddle_newton_vs_grid_scan(dressed_11, ratio):
    lam0, regime = find_saddle(ratio, dressed_11)
    assert abs(float(u_d1(lam0, ratio, dressed_11))) < 1e-10
    assert float(u_d2(lam0, ratio, dressed_11)) < 0.0
    # independent 10^4-point scan
    s = max(5.0 * dressed_11.q, 1.0 / ratio)
    grid = np.linspace(-s, s, 10_000)
    vals = np.abs(u_d1(grid, ratio, dressed_11))
    lam_scan = grid[np.argmin(vals)]
    assert abs(lam0 - lam_scan) < max(1e-6, 1.5 * s / 10_000)


def test_saddle_regimes(dressed_11):
    lam0_s, reg_s = find_saddle(0.2, dressed_11)
    assert reg_s == SPACE_LIKE and lam0_s > dressed_11.q
    lam0_t, reg_t = find_saddle(2.0, dressed_11)
    assert reg_t == TIME_LIKE and abs(lam0_t) < dressed_11.q


def test_saddle_degenerate_at_light_cone_ratio(dressed_11):
    # at t/x = 1/vF the stationary point sits exactly on the Fermi boundary
    with pytest.raises(DegenerateSaddleError):
        find_saddle(1.0 / dressed_11.vF, dressed_11)


def test_saddle_requires_positive_ratio(dressed_11):
    with pytest.raises(ValueError):
        find_saddle(-0.5, dressed_11)


def test_u_combination_definition(dressed_11):
    lam = np.array([0.2, 1.1, 2.5])
    r = 0.37
    direct = dressed_11.p(lam) - r * dressed_11.eps(lam)
    assert np.allclose(u_combination(lam, r, dressed_11), direct, atol=1e-13)
    eps = 1e-6
    fd = (u_combination(lam + eps, r, dressed_11) - u_combination(lam - eps, r, dressed_11)) / (
        2.0 * eps
    )
    assert np.allclose(u_d1(lam, r, dressed_11), fd, atol=1e-7)


def test_critical_exponent_pair_formula(dressed_11):
    nu = special_shift("empty", dressed_11)
    ep, em = critical_exponent_pair(nu, 1.0, 0.0)
    assert ep == pytest.approx((nu.at_q + 1.0) ** 2, rel=1e-14)
    assert em == pytest.approx(nu.at_minus_q**2, rel=1e-14)


def _pairs(entries):
    return {(e.ell_plus, e.ell_minus) for e in entries}


def test_harmonic_exclusions_space_like(dressed_11):
    lam0, regime = find_saddle(0.2, dressed_11)
    entries = harmonic_table(2, dressed_11, lam0, regime, 0.2)
    pairs = _pairs(entries)
    assert (0, 0) not in pairs
    assert (-1, 1) not in pairs
    assert (-1, 0) not in pairs  # explicit saddle term covers it in this regime
    assert all(ep + em >= 0 for ep, em in pairs)  # eta = +1 admissibility
    assert all(not e.amplitude_known for e in entries)


def test_harmonic_exclusions_time_like(dressed_11):
    lam0, regime = find_saddle(2.0, dressed_11)
    entries = harmonic_table(2, dressed_11, lam0, regime, 2.0)
    pairs = _pairs(entries)
    assert (0, 0) not in pairs
    assert (-1, 1) not in pairs
    assert (-1, 0) in pairs  # saddle-vicinity harmonic stays listed here
    assert all(ep + em <= 0 for ep, em in pairs)  # eta = -1 admissibility


def test_harmonic_exponent_hand_check(dressed_11):
    # Delta = (1 + l+ + D+)^2 + (D- - l-)^2 + |l+ + l-|/2 with the shifts
    # D+- built from Z, phi at the boundaries and the saddle
    d = dressed_11
    ratio = 0.2
    lam0, regime = find_saddle(ratio, d)
    q = d.q
    lp, lm = 1, -1
    entry = next(
        e
        for e in harmonic_table(2, d, lam0, regime, ratio)
        if (e.ell_plus, e.ell_minus) == (lp, lm)
    )

    def delta_pm(sign):
        lam = sign * q
        return (
            -0.5 * float(d.Z(lam))
            - lm * float(d.phi(lam, -q))
            - (lp + 1) * float(d.phi(lam, q))
            + (lp + lm) * float(d.phi(lam, lam0))
        )

    expected = (
        (1.0 + lp + delta_pm(+1)) ** 2
        + (delta_pm(-1) - lm) ** 2
        + abs(lp + lm) / 2.0
    )
    assert entry.exponent == pytest.approx(expected, rel=1e-12)
    # frequency: l+ u(q) + l- u(-q) - (l+ + l-) u(lam0)
    uq = float(u_combination(q, ratio, d))
    umq = float(u_combination(-q, ratio, d))
    ul0 = float(u_combination(lam0, ratio, d))
    assert entry.frequency == pytest.approx(lp * uq + lm * umq - (lp + lm) * ul0, rel=1e-12)


def test_scale_covariance_of_saddle():
    # the model has the scaling (lam, c, h) -> (s lam, s c, s^2 h) under which
    # q -> s q and the saddle at ratio r/s maps to s lam0
    base = dress_all(ModelParams(c=1.0, h=1.0), n_nodes=64)
    r = 0.2
    lam0, _ = find_saddle(r, base)
    for s in (0.5, 2.0):
        scaled = dress_all(ModelParams(c=s * 1.0, h=s**2 * 1.0), n_nodes=64)
        assert scaled.q == pytest.approx(s * base.q, rel=1e-9)
        lam0_s, _ = find_saddle(r / s, scaled)
        assert lam0_s == pytest.approx(s * lam0, rel=1e-8)
