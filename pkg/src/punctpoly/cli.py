"""Command-line entry point wiring all modules together.

Every subcommand that writes artifacts also writes a run manifest
(<first output>.manifest.json) recording the command line, parameters,
sha256 digests of the input files, the list of output files, wall time
and the working precision, so that exact outputs are reproducible from
their manifest alone.  Series travel in the shared text format of
series.write_series; structured results are JSON, tables are CSV.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

import mpmath as mp

from . import acceptance
from .amplitudes import (
    PiPower,
    airy_scaling,
    amplitude_chain,
    punctured_amplitudes,
    universal_ratios,
)
from .closedform import closed_form_amplitudes, reconstruct
from .diffapprox import build_biased_da, exponent_scan, indicial_exponents
from .oracle import oracle_punctured_sap, oracle_punctured_staircase, oracle_staircase
from .qfunc import minimal_puncture_qfe
from .seqfit import AsymptoticForm, Term, fit_scan
from .series import RationalPolynomial, read_series, write_series
from .transfer import tm_enumerate

PRECISION_ENV = "PUNCTPOLY_DPS"


def _digest(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _write_manifest(command, params, inputs, outputs, t0):
    manifest = {
        "command": command,
        "parameters": {k: v for k, v in params.items() if k not in ("func", "command")},
        "inputs": {p: _digest(p) for p in inputs},
        "outputs": outputs,
        "wall_time_seconds": round(time.time() - t0, 3),
        "precision_dps": mp.mp.dps,
    }
    path = outputs[0] + ".manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return path


def _display(value):
    """JSON-friendly rendering of exact and numeric amplitude values."""
    if value is None:
        return None
    if isinstance(value, PiPower):
        return {"rational": str(value.q), "pi_half_power": value.p,
                "numeric": mp.nstr(value.value(), 17)}
    if isinstance(value, Fraction):
        return {"rational": str(value), "numeric": mp.nstr(mp.mpf(value.numerator) / value.denominator, 17)}
    return mp.nstr(mp.mpf(value), 17)


def _parse_xc(text):
    return Fraction(text) if "/" in text or "." not in text else mp.mpf(text)


def cmd_oracle(args):
    t0 = time.time()
    if args.model == "staircase":
        series = (
            oracle_staircase(args.mmax)
            if args.r == 0
            else oracle_punctured_staircase(args.mmax, args.r, args.kind, s=args.s)
        )
        name = f"oracle staircase r={args.r} kind={args.kind}"
    else:
        series = oracle_punctured_sap(2 * args.mmax, args.r)
        name = f"oracle sap r={args.r}"
    write_series(args.out, series, name)
    _write_manifest("oracle", vars(args), [], [args.out], t0)
    return 0


def cmd_tm(args):
    t0 = time.time()
    res = tm_enumerate(args.mmax, args.rmax, k_max=args.kmax, bivariate=args.bivariate)
    outputs = []
    base, ext = os.path.splitext(args.out)
    for r in range(args.rmax + 1):
        if args.bivariate:
            path = f"{base}_r{r}{ext or '.txt'}"
            write_series(path, res.bivariate(r), f"tm bivariate r={r}")
            outputs.append(path)
        else:
            for k in range(args.kmax + 1):
                path = f"{base}_r{r}_k{k}{ext or '.txt'}"
                write_series(path, res.moment(r, k), f"tm moment r={r} k={k}")
                outputs.append(path)
    _write_manifest("tm", vars(args), [], outputs, t0)
    return 0


def cmd_qfe(args):
    t0 = time.time()
    series = minimal_puncture_qfe(args.mmax)
    write_series(args.out, series, "qfe minimal-puncture bivariate")
    _write_manifest("qfe", vars(args), [], [args.out], t0)
    return 0


def cmd_reconstruct(args):
    t0 = time.time()
    series, _ = read_series(args.infile)
    gamma = Fraction(args.gamma) if args.gamma else Fraction(3 * (args.r + args.k) - 1, 2)
    deg = args.degree if args.degree is not None else 5 * args.r + 2 * args.k
    cf = reconstruct(series, gamma, deg, args.min_degree)
    amp = closed_form_amplitudes(cf)
    result = {
        "gamma": str(cf.gamma),
        "A": [str(c) for c in cf.A.coefficients],
        "B": [str(c) for c in cf.B.coefficients],
        "A_at_xc": str(cf.a_at_xc()),
        "B_at_xc": str(cf.b_at_xc()),
        "leading_amplitude": _display(amp.leading),
        "correction_amplitude": _display(amp.correction),
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")
    _write_manifest("reconstruct", vars(args), [args.infile], [args.out], t0)
    return 0


def cmd_amplitudes(args):
    t0 = time.time()
    table = amplitude_chain(k_max=args.kmax + args.r)
    P = None
    inputs = []
    if args.p_series:
        series, _ = read_series(args.p_series)
        P = list(series.coefficients)
        inputs.append(args.p_series)
    P_at_xc = Fraction(args.p_at_xc) if args.p_at_xc else None
    amps = punctured_amplitudes(
        table, args.r, args.kind, args.kmax, s=args.s, P=P, P_at_xc=P_at_xc
    )
    result = {
        "r": args.r,
        "kind": args.kind,
        "amplitudes": [_display(a) for a in amps],
    }
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")
    _write_manifest("amplitudes", vars(args), inputs, [args.out], t0)
    return 0


def cmd_ratios(args):
    t0 = time.time()
    ratios = universal_ratios(args.r, args.kmax)
    rows = [
        (k, mp.nstr(v.value() if isinstance(v, PiPower) else mp.mpf(v), 12))
        for k, v in enumerate(ratios)
        if k >= 2
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["k", f"ratio_r{args.r}"])
            w.writerows(rows)
        _write_manifest("ratios", vars(args), [], [args.out], t0)
    else:
        for k, v in rows:
            print(f"{k} {v}")
    return 0


def cmd_scaling(args):
    t0 = time.time()
    grid = []
    s = mp.mpf(args.smin)
    while s <= mp.mpf(args.smax) + mp.mpf("1e-12"):
        grid.append(+s)
        s += mp.mpf(args.step)
    ev = airy_scaling(grid, args.prec)
    rows = [
        (
            mp.nstr(ev.grid[i], 12),
            mp.nstr(ev.F[i], 15),
            mp.nstr(ev.Fp[i], 15),
            mp.nstr(ev.F1[i], 15),
            mp.nstr(ev.riccati_residual(i), 3),
        )
        for i in range(len(grid))
    ]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["s", "F", "F_prime", "F1", "riccati_residual"])
            w.writerows(rows)
        _write_manifest("scaling", vars(args), [], [args.out], t0)
    else:
        for row in rows:
            print(" ".join(row))
    return 0


def _load_form(path):
    with open(path, encoding="utf-8") as fh:
        descriptor = json.load(fh)
    terms = []
    for t in descriptor["terms"]:
        poly = (
            RationalPolynomial([Fraction(c) for c in t["poly"]])
            if "poly" in t
            else None
        )
        alpha = Fraction(t["alpha"]) if "alpha" in t else None
        terms.append(
            Term(Fraction(t["exponent"]), t.get("modifier"), poly, alpha)
        )
    return AsymptoticForm(descriptor.get("growth_base", 4), terms)


def cmd_fit(args):
    t0 = time.time()
    series, _ = read_series(args.infile)
    form = _load_form(args.form)
    m_values = [int(v) for v in args.M.split(",")]
    fits = fit_scan(series.coefficients, form, m_values, prec=args.prec)
    result = [
        {
            "M": f.M,
            "amplitudes": [mp.nstr(a, 17) for a in f.amplitudes],
            "condition": mp.nstr(f.condition, 5),
        }
        for f in fits
    ]
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(result, fh, indent=2)
        fh.write("\n")
    _write_manifest("fit", vars(args), [args.infile, args.form], [args.out], t0)
    return 0


def cmd_da(args):
    t0 = time.time()
    series, _ = read_series(args.infile)
    xc = _parse_xc(args.xc)
    grids = [[int(d) for d in v.split(",")] for v in args.degrees.split(";")]
    if args.scan or len(grids) > 1:
        rows = exponent_scan(series.coefficients, args.K, grids, xc, args.prec)
    else:
        da = build_biased_da(series.coefficients, args.K, grids[0], xc, args.prec)
        rows = [{"degrees": grids[0], "exponents": indicial_exponents(da)}]
    out_rows = []
    for row in rows:
        if "error" in row:
            out_rows.append([" ".join(map(str, row["degrees"])), "error", row["error"]])
        else:
            out_rows.append(
                [" ".join(map(str, row["degrees"]))]
                + [mp.nstr(e, 10) for e in row["exponents"]]
            )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["degrees"] + [f"lambda_{i}" for i in range(args.K)])
            w.writerows(out_rows)
        _write_manifest("da", vars(args), [args.infile], [args.out], t0)
    else:
        for row in out_rows:
            print(" | ".join(map(str, row)))
    return 0


def cmd_verify(args):
    checks = acceptance.QUICK_CHECKS if args.quick else acceptance.ALL_CHECKS
    results = acceptance.run_checks(checks)
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.status:4s}  {r.ident:>2d}  {r.name:<{width}s}  "
              f"{r.seconds:7.1f}s  {r.detail}")
    failed = [r for r in results if r.passed is False]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="punctpoly",
        description="Exact enumeration and series analysis of punctured lattice polygons.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("oracle", help="exhaustive reference enumeration")
    p.add_argument("--model", choices=["staircase", "sap"], default="staircase")
    p.add_argument("--mmax", type=int, required=True, help="maximum half-perimeter")
    p.add_argument("--r", type=int, default=0, help="number of punctures")
    p.add_argument(
        "--kind",
        choices=["minimal", "fixed_total_s", "arbitrary"],
        default="minimal",
    )
    p.add_argument("--s", type=int, default=None, help="total hole half-perimeter")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("tm", help="transfer-matrix enumeration")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--rmax", type=int, default=0)
    p.add_argument("--kmax", type=int, default=0)
    p.add_argument("--bivariate", action="store_true")
    p.add_argument("--out", required=True, help="output path stem")
    p.set_defaults(func=cmd_tm)

    p = sub.add_parser("qfe", help="q-functional-equation series")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_qfe)

    p = sub.add_parser("reconstruct", help="closed form from an exact series")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--gamma", default=None, help="override exponent (rational)")
    p.add_argument("--degree", type=int, default=None, help="override degree bound")
    p.add_argument("--min-degree", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("amplitudes", help="exact punctured amplitudes")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--kind", choices=["minimal", "fixed", "arbitrary"], required=True)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--p-series", default=None, help="series file for kind=fixed")
    p.add_argument("--p-at-xc", default=None, help="P(x_c) for kind=arbitrary")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_amplitudes)

    p = sub.add_parser("ratios", help="universal amplitude ratio column")
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--out", default=None, help="CSV output (default: stdout)")
    p.set_defaults(func=cmd_ratios)

    p = sub.add_parser("scaling", help="Airy scaling function on a grid")
    p.add_argument("--smin", default="0.2")
    p.add_argument("--smax", default="5.0")
    p.add_argument("--step", default="0.1")
    p.add_argument("--prec", type=int, default=50)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("fit", help="window fit of an asymptotic form")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--form", required=True, help="form descriptor JSON")
    p.add_argument("--M", required=True, help="window end(s), comma separated")
    p.add_argument("--prec", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("da", help="biased differential approximants")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument(
        "--degrees",
        required=True,
        help="comma list N_K..N_0; semicolon-separated lists for a scan",
    )
    p.add_argument("--xc", required=True, help="critical point (rational or decimal)")
    p.add_argument("--scan", action="store_true")
    p.add_argument("--prec", type=int, default=50)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_da)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--quick", action="store_true", help="fast subset only")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    dps = os.environ.get(PRECISION_ENV)
    if dps:
        mp.mp.dps = int(dps)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
