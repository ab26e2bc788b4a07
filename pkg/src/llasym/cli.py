"""Command-line front end.

Subcommands
-----------
dress        dressed thermodynamics table on the quadrature grid
saddle       saddle point of u = p - (t/x) eps at the configured ratio
exponents    shift-function boundary values and critical exponent pairs
amplitudes   assembled term amplitudes with phase residuals
asymptotics  term table plus rho(x, t) evaluation table
harmonics    subleading harmonic ladder (exponents only, no amplitudes)
verify       self-check suite (identities and exact oracles)

Configuration is a flat key=value file (``--config``) with command-line
overrides.  Output is CSV with a '#'-prefixed metadata header block,
17 significant digits, no timestamps: re-runs are byte-identical.

Exit codes: 0 success, 1 verification failure, 2 config/solver error,
3 saddle/regime error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import fflab
from .amplitudes import ResonanceError, amplitude, default_contour
from .asymptote import (
    LightConeError,
    RatioMismatchError,
    assemble_expansion,
    evaluate_rho,
)
from .dressing import BracketFailureError, SingularSystemError, dress_all
from .excitations import (
    SPACE_LIKE,
    DegenerateSaddleError,
    MultipleSaddlesError,
    NoSaddleError,
    critical_exponent_pair,
    find_saddle,
    harmonic_table,
    special_shift,
    u_combination,
    u_d1,
    u_d2,
)
from .model import ModelParams, StripError
from .specfun import barnes_g_log

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_CONFIG = 2
EXIT_SADDLE = 3

SADDLE_ERRORS = (NoSaddleError, MultipleSaddlesError, DegenerateSaddleError)
SOLVER_ERRORS = (
    BracketFailureError,
    SingularSystemError,
    StripError,
    ResonanceError,
    LightConeError,
    RatioMismatchError,
    np.linalg.LinAlgError,
    ValueError,
)


class ConfigError(ValueError):
    """Malformed configuration file or inconsistent option set."""


# ----------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------

@dataclass
class RunConfig:
    c: float = 1.0
    h: float = 1.0
    ratio_t_over_x: float = 0.2
    n_nodes: int = 96
    contour_nodes: int = 256
    max_abs_ell: int = 2
    eval_points: tuple = ()
    output_path: str = ""
    perturb: float = 0.0

    def validate(self) -> None:
        if not (self.c > 0):
            raise ConfigError(f"need c > 0, got c = {self.c}")
        if not (self.h > 0):
            raise ConfigError(f"need h > 0, got h = {self.h}")
        if not (self.ratio_t_over_x > 0):
            raise ConfigError(
                f"need ratio_t_over_x > 0, got {self.ratio_t_over_x}"
            )
        if self.n_nodes < 8:
            raise ConfigError(f"need n_nodes >= 8, got {self.n_nodes}")
        if self.contour_nodes < 16:
            raise ConfigError(f"need contour_nodes >= 16, got {self.contour_nodes}")
        if self.max_abs_ell < 0:
            raise ConfigError(f"need max_abs_ell >= 0, got {self.max_abs_ell}")
        tol = 1e-12 * max(1.0, abs(self.ratio_t_over_x))
        for x, t in self.eval_points:
            if not (x > 0):
                raise ConfigError(f"eval point needs x > 0, got ({x}, {t})")
            if abs(t / x - self.ratio_t_over_x) > tol:
                raise ConfigError(
                    f"eval point ({x}, {t}) has t/x = {t / x}, inconsistent "
                    f"with ratio_t_over_x = {self.ratio_t_over_x} (tol 1e-12)"
                )

    def points(self) -> list:
        """Configured eval points, or a default triple on the configured ray."""
        if self.eval_points:
            return [tuple(pt) for pt in self.eval_points]
        r = self.ratio_t_over_x
        return [(x, r * x) for x in (20.0, 40.0, 80.0)]


_FLOAT_KEYS = ("c", "h", "ratio_t_over_x", "perturb")
_INT_KEYS = ("n_nodes", "contour_nodes", "max_abs_ell")


def _as_float(key: str, val: str) -> float:
    try:
        return float(val)
    except ValueError:
        raise ConfigError(f"config key {key} needs a real number, got {val!r}") from None


def _as_int(key: str, val: str) -> int:
    try:
        return int(val)
    except ValueError:
        raise ConfigError(f"config key {key} needs an integer, got {val!r}") from None


def _parse_eval_points(text: str) -> tuple:
    """Parse 'x1:t1, x2:t2, ...' (';' also accepted between pairs)."""
    pts = []
    for chunk in text.replace(";", ",").split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(":")
        if len(parts) != 2:
            raise ConfigError(f"bad eval point {chunk!r}, expected x:t")
        pts.append((_as_float("eval_points", parts[0]), _as_float("eval_points", parts[1])))
    return tuple(pts)


def load_config_file(path: str) -> dict:
    """Flat key=value lines; '#' starts a comment; blank lines ignored."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    raw: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, val = (s.strip() for s in stripped.split("=", 1))
        raw[key] = val
    return raw


def build_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    raw = load_config_file(args.config) if args.config else {}
    for key, val in raw.items():
        if key in _FLOAT_KEYS:
            cfg = replace(cfg, **{key: _as_float(key, val)})
        elif key in _INT_KEYS:
            cfg = replace(cfg, **{key: _as_int(key, val)})
        elif key == "eval_points":
            cfg = replace(cfg, eval_points=_parse_eval_points(val))
        elif key == "output_path":
            cfg = replace(cfg, output_path=val)
        else:
            raise ConfigError(f"unknown config key {key!r}")
    if args.nodes is not None:
        cfg = replace(cfg, n_nodes=args.nodes)
    if args.contour_nodes is not None:
        cfg = replace(cfg, contour_nodes=args.contour_nodes)
    if args.max_ell is not None:
        cfg = replace(cfg, max_abs_ell=args.max_ell)
    if getattr(args, "perturb", None) is not None:
        cfg = replace(cfg, perturb=args.perturb)
    if args.out is not None:
        cfg = replace(cfg, output_path=args.out)
    cfg.validate()
    return cfg


def _thread_count() -> int:
    raw = os.environ.get("LLASYM_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"LLASYM_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


# ----------------------------------------------------------------------
# output helpers
# ----------------------------------------------------------------------

def _g(v) -> str:
    return format(float(v), ".17g")


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _header(title: str, cfg: RunConfig, keys: tuple, extra: dict | None = None) -> list:
    lines = [f"# llasym {title}"]
    for key in keys:
        val = getattr(cfg, key)
        lines.append(f"# {key} = {val if isinstance(val, int) else _g(val)}")
    for key, val in (extra or {}).items():
        lines.append(f"# {key} = {val if isinstance(val, str) else _g(val)}")
    return lines


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_dress(cfg: RunConfig) -> str:
    dressed = dress_all(ModelParams(c=cfg.c, h=cfg.h), n_nodes=cfg.n_nodes)
    nodes = dressed.grid.nodes
    p_vals = dressed.p(nodes)
    pd1_vals = dressed.p_d1(nodes)
    eps_vals = dressed.eps(nodes)
    z_vals = dressed.Z(nodes)
    lines = _header(
        "dress",
        cfg,
        ("c", "h", "n_nodes"),
        {
            "q": dressed.q,
            "D": dressed.D,
            "pF": dressed.pF,
            "vF": dressed.vF,
            "det_IK": dressed.det_IK,
        },
    )
    lines.append("lambda,p,p_prime,eps,Z")
    for i in range(len(nodes)):
        lines.append(
            ",".join(_g(v) for v in (nodes[i], p_vals[i], pd1_vals[i], eps_vals[i], z_vals[i]))
        )
    return "\n".join(lines) + "\n"


def cmd_saddle(cfg: RunConfig) -> str:
    dressed = dress_all(ModelParams(c=cfg.c, h=cfg.h), n_nodes=cfg.n_nodes)
    lam0, regime = find_saddle(cfg.ratio_t_over_x, dressed)
    r = cfg.ratio_t_over_x
    u0 = float(u_combination(lam0, r, dressed))
    lines = _header(
        "saddle",
        cfg,
        ("c", "h", "ratio_t_over_x", "n_nodes"),
        {"q": dressed.q, "vF": dressed.vF},
    )
    lines.append("lambda0,regime,u_lambda0,u_d1_residual,u_d2_lambda0,frequency")
    lines.append(
        ",".join(
            (
                _g(lam0),
                regime,
                _g(u0),
                _g(abs(float(u_d1(lam0, r, dressed)))),
                _g(float(u_d2(lam0, r, dressed))),
                _g(u0 - dressed.pF),
            )
        )
    )
    return "\n".join(lines) + "\n"


def cmd_exponents(cfg: RunConfig) -> str:
    dressed = dress_all(ModelParams(c=cfg.c, h=cfg.h), n_nodes=cfg.n_nodes)
    lam0, regime = find_saddle(cfg.ratio_t_over_x, dressed)
    nu_sad = special_shift("saddle", dressed, lam0)
    nu_mq = special_shift("minus_q", dressed)
    nu_ee = special_shift("empty", dressed)
    rows = [
        ("saddle", nu_sad, critical_exponent_pair(nu_sad, 0.0, 0.0)),
        ("two_pF", nu_mq, critical_exponent_pair(nu_mq, 0.0, -1.0)),
        ("zero_freq", nu_ee, critical_exponent_pair(nu_ee, 1.0, 0.0)),
    ]
    lines = _header(
        "exponents",
        cfg,
        ("c", "h", "ratio_t_over_x", "n_nodes"),
        {"q": dressed.q, "lambda0": lam0, "regime": regime},
    )
    lines.append("label,nu_at_q,nu_at_minus_q,exponent_plus,exponent_minus")
    for label, nu, (ep, em) in rows:
        lines.append(
            ",".join((label, _g(nu.at_q), _g(nu.at_minus_q), _g(ep), _g(em)))
        )
    return "\n".join(lines) + "\n"


def cmd_amplitudes(cfg: RunConfig) -> str:
    dressed = dress_all(ModelParams(c=cfg.c, h=cfg.h), n_nodes=cfg.n_nodes)
    lam0, regime = find_saddle(cfg.ratio_t_over_x, dressed)
    contour = default_contour(dressed, cfg.contour_nodes)
    lines = _header(
        "amplitudes",
        cfg,
        ("c", "h", "ratio_t_over_x", "n_nodes", "contour_nodes"),
        {"q": dressed.q, "lambda0": lam0, "regime": regime},
    )
    lines.append("label,amplitude,phase_residual,active")
    for label, kind in (("zero_freq", "empty"), ("two_pF", "minus_q")):
        res = amplitude(kind, dressed, contour=contour)
        lines.append(",".join((label, _g(res.value), _g(res.phase_residual), "yes")))
    if regime == SPACE_LIKE:
        res = amplitude("saddle", dressed, lambda0=lam0, regime=regime, contour=contour)
        lines.append(",".join(("saddle", _g(res.value), _g(res.phase_residual), "yes")))
    else:
        lines.append("saddle,UNKNOWN,UNKNOWN,no")
    return "\n".join(lines) + "\n"


def cmd_harmonics(cfg: RunConfig) -> str:
    dressed = dress_all(ModelParams(c=cfg.c, h=cfg.h), n_nodes=cfg.n_nodes)
    lam0, regime = find_saddle(cfg.ratio_t_over_x, dressed)
    entries = harmonic_table(cfg.max_abs_ell, dressed, lam0, regime, cfg.ratio_t_over_x)
    lines = _header(
        "harmonics",
        cfg,
        ("c", "h", "ratio_t_over_x", "n_nodes", "max_abs_ell"),
        {"q": dressed.q, "lambda0": lam0, "regime": regime},
    )
    lines.append("ell_plus,ell_minus,frequency,exponent,amplitude")
    for e in entries:
        lines.append(
            ",".join(
                (str(e.ell_plus), str(e.ell_minus), _g(e.frequency), _g(e.exponent), "UNKNOWN")
            )
        )
    return "\n".join(lines) + "\n"


def cmd_asymptotics(cfg: RunConfig) -> str:
    dressed = dress_all(ModelParams(c=cfg.c, h=cfg.h), n_nodes=cfg.n_nodes)
    contour = default_contour(dressed, cfg.contour_nodes)
    report = assemble_expansion(
        dressed, cfg.ratio_t_over_x, max_abs_ell=cfg.max_abs_ell, contour=contour
    )
    pts = cfg.points()
    n_threads = _thread_count()
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            values = list(pool.map(lambda pt: evaluate_rho(report, pt[0], pt[1]), pts))
    else:
        values = [evaluate_rho(report, x, t) for x, t in pts]

    lines = _header(
        "asymptotics",
        cfg,
        ("c", "h", "ratio_t_over_x", "n_nodes", "contour_nodes", "max_abs_ell"),
        {
            "q": report.q,
            "pF": report.pF,
            "vF": report.vF,
            "lambda0": report.lambda0,
            "regime": report.regime,
        },
    )
    lines.append("# terms")
    lines.append("label,frequency,exponent_plus,exponent_minus,amplitude,active")
    for term in list(report.terms) + list(report.harmonics):
        amp = "UNKNOWN" if term.amplitude is None else _g(term.amplitude)
        lines.append(
            ",".join(
                (
                    term.label,
                    _g(term.frequency),
                    _g(term.exponent_plus),
                    _g(term.exponent_minus),
                    amp,
                    _yesno(term.active),
                )
            )
        )
    lines.append("")
    lines.append("# evaluations")
    lines.append("x,t,re_rho,im_rho,mod_saddle,mod_two_pF,mod_zero_freq")
    for rho in values:
        lines.append(
            ",".join(
                (
                    _g(rho.x),
                    _g(rho.t),
                    _g(rho.value.real),
                    _g(rho.value.imag),
                    _g(rho.term_moduli.get("saddle", 0.0)),
                    _g(rho.term_moduli.get("two_pF", 0.0)),
                    _g(rho.term_moduli.get("zero_freq", 0.0)),
                )
            )
        )
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def _singsum_instance(w: int) -> "fflab.FFLabInstance":
    # quadratic phase with x small enough that e^{ixu} stays box-bounded
    # relative to the window growth (x * 2 tau * b_right < L)
    return fflab.FFLabInstance(
        N=2,
        L=20.0,
        w=w,
        xi=fflab.AffineCounting(1.0 / (2.0 * np.pi), 0.5),
        nu=fflab.NuFunction("const", 0.0),
        phase=fflab.QuadraticPhase(2.0, 0.1),
    )


def _lagrange_cases() -> list:
    """(name, phis, f, order-8 tolerance) triples for the verify suite."""
    return [
        (
            "constant_map",
            [lambda a: 0.4 + 0.0 * a],
            lambda a: 1.0 + 2.0 * a,
            1e-12,
        ),
        (
            "geometric_map",
            [lambda a: 0.1 * a],
            np.exp,
            1e-8,
        ),
        (
            "coupled_pair",
            [lambda a, b: 0.1 + 0.05 * b, lambda a, b: 0.2 + 0.05 * a],
            lambda a, b: np.exp(0.5 * (a + b)),
            1e-8,
        ),
    ]


def _verify_checks(cfg: RunConfig) -> list:
    """Run the suite; returns (name, passed, detail) triples."""
    checks = []
    d11 = None

    # dressed-charge <-> dressed-phase identities (perturbable)
    for cc, hh in ((1.0, 1.0), (4.0, 1.0), (16.0, 2.0)):
        d = dress_all(ModelParams(c=cc, h=hh), n_nodes=cfg.n_nodes)
        q = d.q
        nodes = d.grid.nodes
        z_vals = d.Z(nodes) + cfg.perturb
        resid = float(np.max(np.abs(z_vals - 1.0 - d.phi(nodes, -q) + d.phi(nodes, q))))
        checks.append(
            (
                f"Z_phi_identity(c={cc:g},h={hh:g})",
                resid < 1e-7,
                f"max node residual {resid:.3e} (tol 1e-07)",
            )
        )
        if (cc, hh) == (1.0, 1.0):
            d11 = d
            zq = float(d.Z(q)) + cfg.perturb
            resid_b = abs(1.0 / zq - 1.0 - float(d.phi(-q, q)) + float(d.phi(q, q)))
            checks.append(
                (
                    "Z_boundary_inverse(c=1,h=1)",
                    resid_b < 1e-7,
                    f"residual {resid_b:.3e} (tol 1e-07)",
                )
            )

    # impenetrable-limit reductions
    d6 = dress_all(ModelParams(c=1e6, h=1.0), n_nodes=cfg.n_nodes)
    dev_q = abs(d6.q - 1.0)
    checks.append(
        ("tonks_fermi_boundary", dev_q < 1e-5, f"|q - 1| = {dev_q:.3e} (tol 1e-05)")
    )
    dev_z = float(np.max(np.abs(d6.Z(d6.grid.nodes) - 1.0)))
    checks.append(
        ("tonks_dressed_charge", dev_z < 1e-5, f"max |Z - 1| = {dev_z:.3e} (tol 1e-05)")
    )
    dev_v = abs(d6.vF - 2.0)
    checks.append(
        ("tonks_fermi_velocity", dev_v < 1e-4, f"|vF - 2| = {dev_v:.3e} (tol 1e-04)")
    )
    ep, em = critical_exponent_pair(special_shift("empty", d6), 1.0, 0.0)
    dev_e = max(abs(ep - 0.25), abs(em - 0.25))
    checks.append(
        (
            "tonks_exponents_zero_freq",
            dev_e < 1e-5,
            f"({ep:.6f}, {em:.6f}) vs (0.25, 0.25), worst dev {dev_e:.3e} (tol 1e-05)",
        )
    )
    ep2, em2 = critical_exponent_pair(special_shift("minus_q", d6), 0.0, -1.0)
    dev_e2 = max(abs(ep2 - 0.25), abs(em2 - 2.25))
    checks.append(
        (
            "tonks_exponents_two_pF",
            dev_e2 < 1e-4,
            f"({ep2:.6f}, {em2:.6f}) vs (0.25, 2.25), worst dev {dev_e2:.3e} (tol 1e-04)",
        )
    )

    # exhaustive particle-hole sum vs finite determinant
    worst_xn = 0.0
    for inst in fflab.standard_matrix():
        brute = fflab.xn_bruteforce(inst)
        det = fflab.xn_determinant(inst)
        worst_xn = max(worst_xn, abs(brute - det) / max(abs(brute), 1e-300))
    checks.append(
        (
            "xn_sum_vs_determinant",
            worst_xn < 1e-10,
            f"12 instances, worst rel err {worst_xn:.3e} (tol 1e-10)",
        )
    )

    # singular-sum residue closure and tail scaling
    inst40 = _singsum_instance(40)
    inst80 = _singsum_instance(80)
    lams = [np.pi * (a + 0.5) / 10.0 for a in (-7, -2, 0, 3, 9)]
    worst_ss = max(
        fflab.singular_sum(inst40, r, lam).residual for r in (0, 1, 2) for lam in lams
    )
    checks.append(
        (
            "singular_sum_closure",
            worst_ss < 1e-8,
            f"r in {{0,1,2}} at 5 points, worst residual {worst_ss:.3e} (tol 1e-08)",
        )
    )
    lam_t = lams[2]
    i40 = abs(fflab.singular_sum(inst40, 1, lam_t).remainder_quadrature)
    i80 = abs(fflab.singular_sum(inst80, 1, lam_t).remainder_quadrature)
    ratio = i40 / i80
    predicted = (80.0 / 40.0) ** 2  # (w2/w1)^(k+r-1), quadratic phase k=2, r=1
    ok_ss = predicted / 2.0 <= ratio <= predicted * 2.0
    checks.append(
        (
            "singular_sum_tail_scaling",
            ok_ss,
            f"|I1(w=40)|/|I1(w=80)| = {ratio:.3f}, predicted {predicted:.1f} within x2",
        )
    )

    # Lagrange series vs fixed-point closed form
    worst_lag = 0.0
    for name, phis, f, tol in _lagrange_cases():
        sums = fflab.lagrange_series(phis, f, max_order=8)
        closed = fflab.lagrange_closed_form(phis, f)
        worst_lag = max(worst_lag, abs(sums[-1] - closed) / max(abs(closed), 1e-300))
    checks.append(
        (
            "lagrange_order8",
            worst_lag < 1e-8,
            f"three maps, worst |S_8 - closed|/|closed| = {worst_lag:.3e} (tol 1e-08)",
        )
    )

    # amplitude assembly sanity at c=1
    lam0, regime = find_saddle(cfg.ratio_t_over_x, d11)
    contour = default_contour(d11, cfg.contour_nodes)
    worst_ph = 0.0
    for kind in ("empty", "minus_q", "saddle"):
        res = amplitude(
            kind,
            d11,
            lambda0=lam0 if kind == "saddle" else None,
            regime=regime if kind == "saddle" else None,
            contour=contour,
        )
        worst_ph = max(worst_ph, res.phase_residual / abs(res.value))
    checks.append(
        (
            "amplitude_phase_residual(c=1,h=1)",
            worst_ph < 1e-6,
            f"three kinds, worst residual/value = {worst_ph:.3e} (tol 1e-06)",
        )
    )

    # impenetrable-limit closed form for the non-oscillating amplitude
    c6 = default_contour(d6, cfg.contour_nodes)
    a_empty = amplitude("empty", d6, contour=c6).value
    closed6 = float(np.pi * np.exp(4.0 * barnes_g_log(0.5)) * np.sqrt(d6.q / 2.0))
    rel6 = abs(a_empty - closed6) / closed6
    checks.append(
        (
            "tonks_amplitude_closed_form",
            rel6 < 1e-4,
            f"rel err {rel6:.3e} vs pi G(1/2)^4 sqrt(q/2) (tol 1e-04)",
        )
    )
    return checks


def cmd_verify(cfg: RunConfig) -> tuple:
    checks = _verify_checks(cfg)
    lines = ["# llasym verify"]
    if cfg.perturb != 0.0:
        lines.append(f"# perturb = {_g(cfg.perturb)} (added to Z before identity checks)")
    for name, ok, detail in checks:
        lines.append(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    n_fail = sum(1 for _, ok, _ in checks if not ok)
    lines.append(f"# checks = {len(checks)}, failures = {n_fail}")
    return "\n".join(lines) + "\n", (EXIT_OK if n_fail == 0 else EXIT_VERIFY)


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

_COMMANDS = {
    "dress": cmd_dress,
    "saddle": cmd_saddle,
    "exponents": cmd_exponents,
    "amplitudes": cmd_amplitudes,
    "asymptotics": cmd_asymptotics,
    "harmonics": cmd_harmonics,
}

_HELP = {
    "dress": "dressed momentum/energy/charge table and scalar summary",
    "saddle": "saddle point of u = p - (t/x) eps",
    "exponents": "critical exponent pairs of the explicit terms",
    "amplitudes": "term amplitudes with phase residuals",
    "asymptotics": "full term table and rho(x,t) evaluations",
    "harmonics": "subleading harmonic frequencies and exponents",
    "verify": "run the self-check suite (exit 1 on any FAIL)",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="llasym",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*_COMMANDS, "verify"):
        p = sub.add_parser(name, help=_HELP[name])
        p.add_argument("--config", metavar="PATH", default=None, help="key=value config file")
        p.add_argument("--out", metavar="PATH", default=None, help="output file (default stdout)")
        p.add_argument("--nodes", metavar="N", type=int, default=None, help="quadrature nodes")
        p.add_argument(
            "--contour-nodes", metavar="N", type=int, default=None, help="contour quadrature nodes"
        )
        p.add_argument(
            "--max-ell", metavar="K", type=int, default=None, help="harmonic ladder bound"
        )
        if name == "verify":
            p.add_argument(
                "--perturb",
                metavar="EPS",
                type=float,
                default=None,
                help="inject EPS into Z to demonstrate identity sensitivity",
            )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "verify":
            text, code = cmd_verify(cfg)
        else:
            text, code = _COMMANDS[args.command](cfg), EXIT_OK
    except SADDLE_ERRORS as exc:
        print(f"saddle error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_SADDLE
    except SOLVER_ERRORS as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
