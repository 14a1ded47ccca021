"""Command-line front end.

::

    lpsep check state.json [--json out.json]
    lpsep sweep --family werner|gisin|rho0 --criteria sep1,sep2 --out results.csv
    lpsep verify bounds|lp|spin-overlap [--seed S] [--count N] [--dmax D]

Exit status: 0 success, 1 verification failure, 2 input error.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import criteria, families, measures, oracle
from . import quantum as q
from .errors import InvalidParams, InvalidState, LPSepError, NoDetection, NotMonotone, ParseError

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

SEP_FUNCS = {"sep1": criteria.sep1, "sep2": criteria.sep2,
             "sep3": criteria.sep3, "sep4": criteria.sep4}
BOUND_TARGETS = {"sep1": 1.5, "sep2": 2.0, "sep3": 2.0, "sep4": 0.5}
BOUND_TOL = 1e-6
SPIN_TOL = 1e-8
LP_TOL = 1e-9


# -- state files ---------------------------------------------------------------

def read_state_file(path, tol=1e-8):
    """Parse a ``{"dims": [...], "matrix": [[[re, im], ...], ...]}`` document."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return state_from_doc(doc, tol=tol)


def state_from_doc(doc, tol=1e-8):
    if not isinstance(doc, dict) or "dims" not in doc or "matrix" not in doc:
        raise ParseError("state file needs 'dims' and 'matrix' keys")
    try:
        dims = tuple(int(d) for d in doc["dims"])
        arr = np.array(doc["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed dims or matrix: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ParseError(f"matrix must be an n x n array of [re, im] pairs, got shape {arr.shape}")
    return q.DensityMatrix(arr[..., 0] + 1j * arr[..., 1], dims, tol=tol)


def state_to_doc(rho):
    m = rho.matrix
    return {"dims": list(rho.dims),
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m]}


def write_state_file(rho, path):
    with open(path, "w") as fh:
        json.dump(state_to_doc(rho), fh, indent=1)


# -- check ---------------------------------------------------------------------

def _local_pair(d, partner=False):
    """Computational/Fourier pair for one party.

    With ``partner=True`` the labels are reciprocals matched so that every
    outcome of ``sum_k |kk>`` has product label 1 in both bases.
    """
    if d == 2:
        return q.pauli_observable("z"), q.pauli_observable("x")
    if not partner:
        return q.computational_observable(d), q.fourier_observable(d)
    lab = np.arange(1, d + 1, dtype=float)
    # sum_k |kk> = sum_m |f_m>|f_{-m}>
    return (q.computational_observable(d, tuple(1 / lab)),
            q.fourier_observable(d, tuple(1 / lab[(-np.arange(d)) % d])))


def _entropy_row(name, rho, obs):
    dist = q.outcome_distribution(rho, obs)
    return {"observable": name, "m_inf": measures.m_inf(dist),
            "shannon": measures.shannon(dist),
            "renyi_2": measures.renyi(dist, 2.0),
            "tsallis_2": measures.tsallis(dist, 2.0)}


def build_report(rho, tol=None):
    """Evaluate every applicable criterion on ``rho``."""
    report = {"dims": list(rho.dims), "criteria": [], "witnesses": None,
              "ppt_min_eigenvalue": None, "entropy": []}
    if rho.dims == (2, 2):
        rows = [f(rho, tol=tol) for f in SEP_FUNCS.values()]
        report["witnesses"] = criteria.witness_values(rho).as_dict()
        panel = [(f"{a.upper()}{a.upper()}", q.correlation_observable(a)) for a in "xyz"]
        panel += [(f"S_{a}", q.total_spin(a)) for a in "xyz"]
        panel.append(("B", q.bell_observable()))
    else:
        pairs = [_local_pair(d, partner=(k == 1 and rho.n_parties == 2))
                 for k, d in enumerate(rho.dims)]
        obs1 = [p[0] for p in pairs]
        obs2 = [p[1] for p in pairs]
        if rho.n_parties == 2:
            res = criteria.gl_bound(rho, obs1, obs2, tol=tol)
            rows = [replace(res, criterion_id=criteria.CriterionId.QUDIT_COMPLEMENTARY)]
        elif rho.n_parties > 2:
            rows = [criteria.multipartite_bisep_value(rho, obs1, obs2, tol=tol)]
        else:
            rows = []
        panel = []
        if rho.n_parties >= 2:
            panel = [("C1", q.tensor_observable(obs1)), ("C2", q.tensor_observable(obs2))]
    if rho.n_parties == 2:
        report["ppt_min_eigenvalue"] = oracle.ppt_min_eigenvalue(rho)
    report["criteria"] = [r.as_dict() for r in rows]
    report["entropy"] = [_entropy_row(name, rho, obs) for name, obs in panel]
    return report


def format_report(report):
    lines = [f"dims: {report['dims']}", "",
             f"{'criterion':<20}{'value':>14}{'bound':>14}  verdict"]
    for r in report["criteria"]:
        lines.append(f"{r['criterion_id']:<20}{r['value']:>14.9f}{r['bound']:>14.9f}  {r['verdict']}")
    if report["witnesses"] is not None:
        lines.append("")
        lines.append("witness values Tr(W rho):")
        for k, v in report["witnesses"].items():
            lines.append(f"  W_{k:<6}{v:>14.9f}")
    if report["ppt_min_eigenvalue"] is not None:
        lines.append("")
        lines.append(f"PPT minimum eigenvalue: {report['ppt_min_eigenvalue']:.9g}")
    if report["entropy"]:
        lines.append("")
        lines.append(f"{'observable':<12}{'M_inf':>12}{'Shannon':>12}{'Renyi_2':>12}{'Tsallis_2':>12}")
        for e in report["entropy"]:
            lines.append(f"{e['observable']:<12}{e['m_inf']:>12.6f}{e['shannon']:>12.6f}"
                         f"{e['renyi_2']:>12.6f}{e['tsallis_2']:>12.6f}")
    return "\n".join(lines)


def cmd_check(args):
    rho = read_state_file(args.state, tol=args.state_tol)
    report = build_report(rho)
    print(format_report(report))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return EXIT_OK


# -- sweep ---------------------------------------------------------------------

SWEEP_COLUMNS = ["family", "alpha", "beta", "criterion", "threshold", "known_boundary", "ppt_boundary"]


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{x:.12g}"


def _threshold_or_nan(params, evaluator):
    try:
        return oracle.detection_threshold(params, evaluator).threshold
    except (NoDetection, NotMonotone):
        return float("nan")


def sweep_rows(family, crit_names, alpha_steps=9, beta=0.0):
    family = families.Family(family)
    if family is families.Family.GISIN:
        points = [(float(a), float(beta)) for a in np.linspace(0.0, np.pi / 2, alpha_steps)]
    else:
        points = [(None, None)]
    rows = []
    for alpha, b in points:
        params = families.FamilyParams(family, 0.0, alpha or 0.0, b or 0.0)
        known = families.known_separability_boundary(family, alpha or 0.0)
        ppt = _threshold_or_nan(params, oracle.ppt_sign_change)
        for name in crit_names:
            thr = _threshold_or_nan(params, SEP_FUNCS[name])
            rows.append({"family": family.value,
                         "alpha": "" if alpha is None else _fmt(alpha),
                         "beta": "" if b is None else _fmt(b),
                         "criterion": name, "threshold": _fmt(thr),
                         "known_boundary": _fmt(float(known)), "ppt_boundary": _fmt(ppt)})
    rows.sort(key=lambda r: (r["family"], float(r["alpha"] or 0), float(r["beta"] or 0), r["criterion"]))
    return rows


def cmd_sweep(args):
    names = [c.strip().lower() for c in args.criteria.split(",") if c.strip()]
    unknown = [c for c in names if c not in SEP_FUNCS]
    if unknown:
        raise InvalidParams(f"unknown criteria: {', '.join(unknown)}")
    rows = sweep_rows(args.family, names, args.alpha_steps, args.beta)
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


# -- verify --------------------------------------------------------------------

def verify_bounds(grid=oracle.GridSpec()):
    objectives = {
        "sep1": [q.correlation_observable("z"), q.correlation_observable("x")],
        "sep2": [q.correlation_observable(a) for a in "xyz"],
        "sep3": [q.total_spin(a) for a in "xyz"],
        "sep4": [q.bell_observable()],
    }
    out = {}
    for name, objs in objectives.items():
        val, arg = oracle.max_over_product_states(objs, grid)
        out[name] = (val, arg, abs(val - BOUND_TARGETS[name]) <= BOUND_TOL)
    return out


def verify_spin_overlap(dmax=6, n_angles=25):
    worst = 0.0
    for d in range(2, dmax + 1):
        for k in range(n_angles):
            theta = k * np.pi / (n_angles - 1)
            diff = abs(oracle.numeric_spin_overlap(d, theta) - criteria.spin_overlap_formula(d, theta))
            worst = max(worst, diff)
    return worst


def cmd_verify(args):
    if args.what == "bounds":
        res = verify_bounds()
        ok = True
        for name, (val, arg, passed) in res.items():
            ok &= passed
            print(f"{'PASS' if passed else 'FAIL'}  {name}: max {val:.12f} "
                  f"(expected {BOUND_TARGETS[name]}) at alpha={arg.alpha:.6f} beta={arg.beta:.6f}")
    elif args.what == "lp":
        if args.seed is None:
            print("error: verify lp requires --seed", file=sys.stderr)
            return EXIT_INPUT
        worst = oracle.lp_slack_fuzz(args.count, args.seed)
        ok = worst >= -LP_TOL
        print(f"{'PASS' if ok else 'FAIL'}  lp: min slack {worst:.3e} over {args.count} samples (seed {args.seed})")
    else:
        worst = verify_spin_overlap(args.dmax)
        ok = worst <= SPIN_TOL
        print(f"{'PASS' if ok else 'FAIL'}  spin-overlap: max |numeric - formula| = {worst:.3e} for D <= {args.dmax}")
    return EXIT_OK if ok else EXIT_FAIL


# -- entry point ---------------------------------------------------------------

def make_parser():
    parser = argparse.ArgumentParser(prog="lpsep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate all applicable criteria on a state file")
    p.add_argument("state")
    p.add_argument("--json", metavar="OUT", help="also write the report as JSON")
    p.add_argument("--state-tol", type=float, default=1e-8,
                   help="tolerance for the density-matrix invariants (default 1e-8)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="detection thresholds along a benchmark family")
    p.add_argument("--family", required=True, choices=[f.value for f in families.Family])
    p.add_argument("--criteria", default="sep1,sep2,sep3,sep4")
    p.add_argument("--alpha-steps", type=int, default=9)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check closed-form results against oracles")
    p.add_argument("what", choices=["bounds", "lp", "spin-overlap"])
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--dmax", type=int, default=6)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (LPSepError, InvalidState, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
