"""Command-line interface: coefficient atlases, spectra, figure-eight traces,
instability thresholds, residual sweeps and the self-validation suite.

Exit codes: 0 success, 1 validation failure, 2 domain error (region/kappa),
3 I/O error, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import closed_form as cf
from . import operators, spectral, stokes, validation
from .errors import (BfError, NotUnstable, ResonantKappa, SingularKappa)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_NUMERIC = 4

_DOMAIN_ERRORS = (SingularKappa, ResonantKappa, NotUnstable)

DEFAULTS = {
    "K": 32,
    "format": "csv",
    "out": None,
    "n_samples": 48,
    "guard": cf.DEFAULT_GUARD,
}

SCHEMA_VERSION = "bf-output/1"


def schema_path() -> str:
    return os.path.join(os.path.dirname(__file__), "schema",
                        "bf_output.schema.json")


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BF_THREADS", "1")))
    except ValueError:
        return 1


# -- formatting -------------------------------------------------------------

def _fmt(x) -> str:
    return "%.17g" % float(x)


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="ascii", newline=""), True


def _write_csv(path, header, rows):
    stream, close = _open_out(path)
    try:
        stream.write(",".join(header) + "\n")
        for row in rows:
            cells = [c if isinstance(c, str) else _fmt(c) for c in row]
            stream.write(",".join(cells) + "\n")
    finally:
        if close:
            stream.close()


def _finite(obj):
    """Recursively replace non-finite numbers by strings so the JSON payload
    never carries NaN/Infinity tokens."""
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, complex):
        return {"re": _finite(obj.real), "im": _finite(obj.imag)}
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def _write_json(path, command, parameters, data, errors=()):
    payload = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "parameters": _finite(parameters),
        "data": _finite(data),
    }
    if errors:
        payload["errors"] = list(errors)
    stream, close = _open_out(path)
    try:
        json.dump(payload, stream, indent=2, allow_nan=False)
        stream.write("\n")
    finally:
        if close:
            stream.close()


# -- config handling --------------------------------------------------------

def _parse_grid(text: str) -> list[float]:
    """Either colon syntax a:b:n (n points, inclusive) or a comma list."""
    if ":" in text:
        a, b, n = text.split(":")
        n = int(n)
        if n < 1:
            raise ValueError("grid needs at least one point")
        return [float(v) for v in np.linspace(float(a), float(b), n)]
    return [float(v) for v in text.split(",")]


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    path = getattr(args, "config", None)
    if path is not None:
        with open(path, "r", encoding="ascii") as fh:
            file_cfg = json.load(fh)
        if not isinstance(file_cfg, dict):
            raise ValueError("config file must hold a JSON object")
        cfg.update(file_cfg)
    for key, value in vars(args).items():
        if key in ("config", "func") or value is None:
            continue
        cfg[key] = value
    _check_bounds(cfg)
    return cfg


def _check_bounds(cfg: dict):
    K = cfg.get("K", DEFAULTS["K"])
    if not 8 <= int(K) <= 512:
        raise ValueError(f"K={K} outside the supported range [8, 512]")
    eps = cfg.get("eps")
    if eps is not None and not 0.0 <= float(eps) <= 0.05:
        raise ValueError(f"eps={eps} outside the supported range [0, 0.05]")


def _wave_setup(kappa: float, eps: float, K: int):
    expansion = stokes.expand(kappa)
    eta, _, _ = stokes.wave_profiles(expansion, eps, K)
    frakp = stokes.solve_frakp(eta)
    return expansion, frakp


# -- subcommands ------------------------------------------------------------

_COEFF_HEADER = ("kappa", "c", "e11", "e22", "e12", "e_wb", "breve_c",
                 "region", "error")


def _coeff_row(kappa: float):
    region = cf.classify(kappa)
    try:
        e11, e22, e12 = cf.coeffs_e(kappa)
        row = (kappa, cf.phase_speed(kappa), e11, e22, e12,
               cf.whitham_benjamin(kappa), cf.breve_c(kappa),
               region.value, "")
    except BfError as exc:
        row = (kappa, cf.phase_speed(kappa), "", "", "", "", "",
               region.value, type(exc).__name__)
    return row


def cmd_coeffs(cfg: dict) -> int:
    kappas = sorted(_parse_grid(cfg["kappa_grid"]))
    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        rows = list(pool.map(_coeff_row, kappas))
    if cfg["format"] == "json":
        data = [dict(zip(_COEFF_HEADER, row)) for row in rows]
        _write_json(cfg["out"], "coeffs", {"kappa_grid": cfg["kappa_grid"]},
                    data)
    else:
        _write_csv(cfg["out"], _COEFF_HEADER, rows)
    return EXIT_OK


def cmd_figure8(cfg: dict) -> int:
    kappa, eps, K = float(cfg["kappa"]), float(cfg["eps"]), int(cfg["K"])
    branch = spectral.trace_figure_eight(kappa, eps, K=K,
                                         n_samples=int(cfg["n_samples"]))
    rows = []
    for i, mu in enumerate(branch.mu_grid):
        pred = cf.lambda1_leading(kappa, float(mu), eps).value_plus
        rows.append((mu,
                     branch.lambda1_plus[i].real, branch.lambda1_plus[i].imag,
                     branch.lambda1_minus[i].real, branch.lambda1_minus[i].imag,
                     pred.real, pred.imag))
    header = ("mu", "re_lambda1p", "im_lambda1p", "re_lambda1m",
              "im_lambda1m", "re_pred", "im_pred")
    _write_csv(cfg["out"], header, rows)
    return EXIT_OK


def _quadruple_report(kappa, eps, mu, K):
    if eps == 0.0:
        op = operators.assemble_flat(kappa, mu, K)
    else:
        expansion, frakp = _wave_setup(kappa, eps, K)
        op = operators.assemble(expansion, frakp, mu, eps, K)
    spec = spectral.eig(op)
    quad = spectral.quadruple_by_prediction(
        spec, spectral._leading_predictions(kappa, mu, eps))
    return op, spec, quad


def cmd_spectrum(cfg: dict) -> int:
    kappa, eps = float(cfg["kappa"]), float(cfg["eps"])
    mu, K = float(cfg["mu"]), int(cfg["K"])
    op, spec, quad = _quadruple_report(kappa, eps, mu, K)
    scale = float(np.linalg.norm(op.matrix, 2))
    mirrored = -np.conj(spec.eigenvalues)
    pairing = max(float(np.min(np.abs(mirrored - lam)))
                  for lam in spec.eigenvalues) / scale
    _, _, quad2 = _quadruple_report(kappa, eps, mu, 2 * K)
    deltas = {k: abs(quad.as_dict()[k] - quad2.as_dict()[k])
              for k in quad.as_dict()}
    data = {
        "eigenvalues": [complex(v) for v in spec.eigenvalues],
        "quadruple": {k: complex(v) for k, v in quad.as_dict().items()},
        "pairing_check": "pass" if pairing <= 1e-8 else "fail",
        "pairing_defect": pairing,
        "max_residual": float(np.max(spec.residuals)),
        "doubling_delta": deltas,
        "operator_norm": scale,
    }
    _write_json(cfg["out"], "spectrum",
                {"kappa": kappa, "eps": eps, "mu": mu, "K": K}, data)
    return EXIT_OK


def cmd_mu_bar(cfg: dict) -> int:
    kappa, eps, K = float(cfg["kappa"]), float(cfg["eps"]), int(cfg["K"])
    branch = spectral.trace_figure_eight(kappa, eps, K=K,
                                         n_samples=int(cfg["n_samples"]))
    data = {
        "mu_bar_numeric": branch.mu_bar_numeric,
        "mu_bar_leading": cf.mu_bar_leading(kappa, eps),
    }
    _write_json(cfg["out"], "mu-bar",
                {"kappa": kappa, "eps": eps, "K": K}, data)
    return EXIT_OK


def cmd_stokes_residual(cfg: dict) -> int:
    kappa = float(cfg["kappa"])
    eps_grid = sorted(_parse_grid(cfg["eps_grid"]))
    rows = []
    for eps in eps_grid:
        r_dyn, r_kin = stokes.stokes_residual(kappa, eps)
        rows.append((eps, r_dyn, r_kin))
    header = ("eps", "residual_dynamic", "residual_kinematic")
    if cfg["format"] == "json":
        data = [dict(zip(header, row)) for row in rows]
        _write_json(cfg["out"], "stokes-residual", {"kappa": kappa}, data)
    else:
        _write_csv(cfg["out"], header, rows)
    return EXIT_OK


def cmd_validate(cfg: dict) -> int:
    e22_sign = -1.0 if cfg.get("mutate_e22") else 1.0
    only = set(cfg["only"].split(",")) if cfg.get("only") else None
    results = validation.run_all(e22_sign=e22_sign, only=only)
    stream, close = _open_out(cfg["out"])
    try:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            stream.write(f"{status}  {r.name:50s} {r.seconds:7.2f}s  "
                         f"{r.detail}\n")
        n_fail = sum(not r.passed for r in results)
        stream.write(f"{len(results) - n_fail}/{len(results)} checks passed\n")
    finally:
        if close:
            stream.close()
    return EXIT_OK if n_fail == 0 else EXIT_VALIDATION


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bf",
        description="Benjamin-Feir spectral tables for gravity-capillary "
                    "Stokes waves in deep water.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument("--config", help="JSON config file; CLI flags take "
                        "precedence over its entries")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, mu=False, eps=True):
        p.add_argument("--kappa", type=float, required=True,
                       help="surface-tension coefficient")
        if eps:
            p.add_argument("--eps", type=float, required=True,
                           help="wave amplitude in [0, 0.05]")
        if mu:
            p.add_argument("--mu", type=float, required=True,
                           help="Floquet exponent")
        p.add_argument("--K", type=int, default=None,
                       help=f"Fourier truncation (default {DEFAULTS['K']})")
        p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("coeffs", help="closed-form coefficient table")
    p.add_argument("--kappa-grid", dest="kappa_grid", required=True,
                   help="grid a:b:n or comma list")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("figure8", help="trace the unstable eigenvalue curve")
    common(p)
    p.add_argument("--n-samples", dest="n_samples", type=int, default=None)
    p.set_defaults(func=cmd_figure8)

    p = sub.add_parser("spectrum", help="full spectrum plus labeled quadruple")
    common(p, mu=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("mu-bar", help="numeric instability threshold")
    common(p)
    p.add_argument("--n-samples", dest="n_samples", type=int, default=None)
    p.set_defaults(func=cmd_mu_bar)

    p = sub.add_parser("stokes-residual", help="traveling-wave residual sweep")
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--eps-grid", dest="eps_grid", required=True,
                   help="grid a:b:n or comma list")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stokes_residual)

    p = sub.add_parser("validate", help="run the acceptance suite")
    p.add_argument("--only", help="comma list of criterion numbers")
    p.add_argument("--mutate-e22", dest="mutate_e22", action="store_true",
                   default=None, help=argparse.SUPPRESS)
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _merge_config(args)
        return args.func(cfg)
    except _DOMAIN_ERRORS as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (BfError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
