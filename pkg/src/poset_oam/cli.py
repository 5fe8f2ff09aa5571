"""Command-line front end: ``poset-oam <subcommand> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import statistics
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import crossed_product as cp
from . import gauge, poset, spectra, triple, verify

log = logging.getLogger("poset_oam")

# the crossed product is meaningful from Z_2 upwards, the lattice from N = 3
MIN_N = {"algebra": 2}


@dataclass
class RunConfig:
    subcommand: str
    N: int = 8
    epsilon: float | None = None
    theta: float = 0.0
    phi: float = 0.0
    m_phase: float = 0.0
    output_format: str | None = None
    output_path: str | None = None
    seed: int = 0
    tolerance: float = 1e-10
    tolerance_given: bool = False
    # subcommand specific
    mode: str = "lattice"
    fast: bool = False
    hbar: float | None = None
    scan: tuple[float, float, float, float] | None = None
    steps: int = 11
    minimize: bool = False
    init: complex = 0j
    dim: int = 1
    max_iters: int = 10_000
    checks: list[str] = field(default_factory=list)
    reps: int = 5

    @property
    def eps(self) -> float:
        return triple.default_epsilon(self.N) if self.epsilon is None else self.epsilon

    @property
    def M(self) -> complex:
        if self.m_phase == 0:
            return 1.0 + 0j
        return complex(np.exp(1j * self.m_phase))


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("csv", "json"))
    common.add_argument("--out", dest="output_path", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", dest="tolerance", type=float)

    lattice = argparse.ArgumentParser(add_help=False)
    lattice.add_argument("--n", dest="N", type=int, default=8)
    lattice.add_argument("--eps", dest="epsilon", type=float)
    lattice.add_argument("--m-phase", dest="m_phase", type=float, default=0.0)
    lattice.add_argument("--theta", type=float, default=0.0)
    lattice.add_argument("--phi", type=float, default=0.0)

    parser = argparse.ArgumentParser(
        prog="poset-oam",
        description="Circle-poset model of the theta-quantized angular momentum operator.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sub.add_parser("poset", parents=[common, lattice], help="export the 2N-point poset")
    sub.add_parser("algebra", parents=[common, lattice], help="clock/shift relation report")
    sub.add_parser("triple", parents=[common, lattice], help="dump D and rho")

    p = sub.add_parser("ym", parents=[common, lattice], help="Yang-Mills scan or descent")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--scan", nargs=4, type=float, metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"))
    g.add_argument("--minimize", action="store_true")
    p.add_argument("--steps", type=int, default=11)
    p.add_argument("--init", type=_complex_arg, default=0j, help="start point, e.g. 2+1i")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--max-iters", dest="max_iters", type=int, default=10_000)

    p = sub.add_parser("spectrum", parents=[common, lattice], help="eigenvalue table")
    p.add_argument("--mode", choices=("continuum", "lattice", "dirac"), default="lattice")
    p.add_argument("--fast", action="store_true", help="closed-form Dirac spectrum")
    p.add_argument("--hbar", type=float, help="multiply eigenvalues by this value of hbar")

    p = sub.add_parser("verify", parents=[common], help="run the property suite")
    p.add_argument("--all", action="store_true", help="run every check (the default)")
    p.add_argument("--check", dest="checks", action="append", default=[],
                   choices=sorted(verify.CHECKS), metavar="NAME")

    p = sub.add_parser("bench", parents=[common], help="time dense vs circulant spectra")
    p.add_argument("--n", dest="N", type=int, default=2048)
    p.add_argument("--reps", type=int, default=5)
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    opts = {k: v for k, v in vars(ns).items() if k != "all" and v is not None}
    cfg = RunConfig(**opts)
    cfg.tolerance_given = "tolerance" in opts
    if cfg.scan is not None:
        cfg.scan = tuple(cfg.scan)

    if cfg.subcommand != "verify":
        lo = MIN_N.get(cfg.subcommand, poset.MIN_SITES)
        if cfg.N < lo:
            parser.error(f"--n must be >= {lo} (got {cfg.N})")
    if cfg.epsilon is not None and not cfg.epsilon > 0:
        parser.error("--eps must be positive")
    if not cfg.tolerance > 0:
        parser.error("--tol must be positive")
    if not 0.0 <= cfg.theta < 1.0:
        wrapped = cfg.theta % 1.0
        log.warning("theta=%r outside [0, 1); using %r", cfg.theta, wrapped)
        cfg.theta = wrapped
    if cfg.subcommand == "ym":
        if cfg.steps < 1:
            parser.error("--steps must be >= 1")
        if cfg.dim < 1:
            parser.error("--dim must be >= 1")
    if cfg.subcommand == "bench" and cfg.reps < 1:
        parser.error("--reps must be >= 1")
    return cfg


# ---------------------------------------------------------------- emitters


def _cplx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _config_json(cfg: RunConfig, *keys: str) -> dict:
    out = {"subcommand": cfg.subcommand}
    for k in keys:
        v = getattr(cfg, k)
        out[k] = _cplx(v) if isinstance(v, complex) else (list(v) if isinstance(v, tuple) else v)
    return out


def _emit_poset(cfg: RunConfig) -> tuple[str, int]:
    P = poset.build_poset(cfg.N)
    doc = P.to_json()
    if cfg.output_format == "csv":
        return _csv(["lower", "upper"], doc["covers"]), 0
    return _json(doc), 0


def _emit_algebra(cfg: RunConfig) -> tuple[str, int]:
    alg = cp.build_algebra(cfg.N)
    rep = cp.verify_relations(alg, cfg.tolerance)
    ok = rep.passed(cfg.tolerance)
    doc = {
        "version": __version__,
        "config": _config_json(cfg, "N", "tolerance"),
        "lambda": _cplx(alg.lam),
        "residuals": rep.to_json(),
        "pass": ok,
    }
    if cfg.output_format == "csv":
        rows = [[k, v, cfg.tolerance, v < cfg.tolerance] for k, v in rep.to_json().items()]
        return _csv(["relation", "residual", "tolerance", "pass"], rows), 0 if ok else 1
    return _json(doc), 0 if ok else 1


def _emit_triple(cfg: RunConfig) -> tuple[str, int]:
    T = triple.build_dirac(cfg.N, cfg.eps, cfg.M)
    conn = triple.build_connection(T, cfg.theta, cfg.phi)
    if cfg.output_format == "csv":
        header = ["matrix", "row"]
        for j in range(1, cfg.N + 1):
            header += [f"re_{j}", f"im_{j}"]
        rows = []
        for name, A in (("D", T.D), ("rho", conn.rho)):
            for i, row in enumerate(A, start=1):
                rows.append([name, i] + [x for z in row for x in _cplx(z)])
        return _csv(header, rows), 0
    doc = {
        "N": T.N,
        "epsilon": T.epsilon,
        "M": _cplx(T.M),
        "theta": conn.theta,
        "phi": conn.phi,
        "sigma": _cplx(conn.sigma),
        "D": [[_cplx(z) for z in row] for row in T.D],
        "rho": [[_cplx(z) for z in row] for row in conn.rho],
    }
    return _json(doc), 0


def _emit_ym(cfg: RunConfig) -> tuple[str, int]:
    calc = gauge.TwoPointCalculus(cfg.M, cfg.dim)
    if cfg.scan is not None:
        re_min, re_max, im_min, im_max = cfg.scan
        rows = []
        for re in np.linspace(re_min, re_max, cfg.steps):
            for im in np.linspace(im_min, im_max, cfg.steps):
                z = complex(re, im)
                rows.append([float(re), float(im), gauge.ym_action(z, calc),
                             gauge.curvature_coefficient(z)])
        if cfg.output_format == "json":
            keys = ("re_phi", "im_phi", "ym", "curvature")
            return _json([dict(zip(keys, r)) for r in rows]), 0
        return _csv(["re_phi", "im_phi", "ym", "curvature"], rows), 0

    try:
        res = gauge.minimize_ym(calc, cfg.init, tol=cfg.tolerance, max_iters=cfg.max_iters)
    except gauge.ConvergenceError as exc:
        doc = {"config": _config_json(cfg, "init", "tolerance", "max_iters", "dim"),
               "converged": False, "failures": [str(exc)]}
        return _json(doc), 1
    doc = {"config": _config_json(cfg, "init", "tolerance", "max_iters", "dim")}
    doc.update(res.to_json())
    return _json(doc), 0


def _emit_spectrum(cfg: RunConfig) -> tuple[str, int]:
    label = "eigenvalue_hbar"
    if cfg.mode == "lattice":
        idx = list(range(1, cfg.N + 1))
        vals = spectra.lattice_spectrum(cfg.theta, cfg.N).values
    elif cfg.mode == "continuum":
        idx = list(range(-cfg.N, cfg.N + 1))
        vals = spectra.continuum_spectrum(cfg.theta, cfg.N).values
    else:
        T = triple.build_dirac(cfg.N, cfg.eps, cfg.M)
        solve = spectra.dirac_spectrum_circulant if cfg.fast else spectra.dirac_spectrum_dense
        vals = solve(T).values
        idx = list(range(1, cfg.N + 1))
        label = "eigenvalue"
    if cfg.hbar is not None and cfg.mode != "dirac":
        vals = vals * cfg.hbar
        label = "eigenvalue"
    rows = [[i, float(v)] for i, v in zip(idx, vals)]
    if cfg.output_format == "json":
        doc = {"config": _config_json(cfg, "mode", "N", "theta"),
               "values": [{"index": i, label: v} for i, v in rows]}
        return _json(doc), 0
    return _csv(["index", label], rows), 0


def _emit_verify(cfg: RunConfig) -> tuple[str, int]:
    tol = cfg.tolerance if cfg.tolerance_given else None
    results = verify.run_checks(cfg.checks or None, seed=cfg.seed, tolerance=tol)
    ok = all(r.passed for r in results)
    config = {"subcommand": "verify", "seed": cfg.seed,
              "tolerance": tol, "checks": [r.name for r in results]}
    if cfg.output_format == "csv":
        rows = [[r.name, r.residual, r.tolerance, r.passed] for r in results]
        return _csv(["name", "residual", "tolerance", "pass"], rows), 0 if ok else 1
    doc = {
        "version": __version__,
        "config": config,
        "checks": [r.to_json() for r in results],
        "pass": ok,
    }
    if not ok:
        doc["failures"] = [r.name for r in results if not r.passed]
    return _json(doc), 0 if ok else 1


def bench_timings(N: int, reps: int) -> dict[str, list[float]]:
    T = triple.build_dirac(N)
    out = {}
    for name, fn in (("dense", spectra.dirac_spectrum_dense),
                     ("circulant", spectra.dirac_spectrum_circulant)):
        times = []
        for _ in range(reps):
            t0 = time.perf_counter()
            fn(T)
            times.append(time.perf_counter() - t0)
        out[name] = times
    return out


def _emit_bench(cfg: RunConfig) -> tuple[str, int]:
    timings = bench_timings(cfg.N, cfg.reps)
    med = {k: statistics.median(v) for k, v in timings.items()}
    speedup = med["dense"] / med["circulant"] if med["circulant"] > 0 else math.inf
    if cfg.output_format == "json":
        return _json({"N": cfg.N, "reps": cfg.reps, "median_s": med, "speedup": speedup}), 0
    if cfg.output_format == "csv":
        rows = [[k, med[k], min(v)] for k, v in timings.items()]
        return _csv(["path", "median_s", "min_s"], rows), 0
    lines = [f"N={cfg.N} reps={cfg.reps}",
             f"{'path':<10} {'median_s':>12} {'min_s':>12}"]
    for k, v in timings.items():
        lines.append(f"{k:<10} {med[k]:>12.6f} {min(v):>12.6f}")
    lines.append(f"speedup    {speedup:>12.1f}x")
    return "\n".join(lines) + "\n", 0


EMITTERS = {
    "poset": _emit_poset,
    "algebra": _emit_algebra,
    "triple": _emit_triple,
    "ym": _emit_ym,
    "spectrum": _emit_spectrum,
    "verify": _emit_verify,
    "bench": _emit_bench,
}


def run(cfg: RunConfig, stdout=None) -> int:
    text, status = EMITTERS[cfg.subcommand](cfg)
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"poset-oam: cannot write {cfg.output_path}: {exc.strerror or exc}",
                  file=sys.stderr)
            return 2
    else:
        (stdout or sys.stdout).write(text)
    return status


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="poset-oam: %(levelname)s: %(message)s", level=logging.WARNING)
    return run(parse_args(argv))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
