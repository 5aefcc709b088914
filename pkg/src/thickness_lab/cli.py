"""Batch experiment runner: witness construction, thickness trials, spectrum
diagnostics, disc-lemma suites, and certificate verification.

Non-interactive by design; every randomized command requires --seed and all
outputs (JSON reports, certificates, CSV curves) are written atomically.
Exit codes: 0 success, 1 target missed, 2 configuration error, 3 internal
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time

from . import __version__
from .certify import certificate_to_dict, verify_certificate, write_json_atomic
from .constants import TAU_EXACT
from .discgeom import run_all_suites, run_cluster_suite, run_net_suite, run_rotation_suite
from .errors import (
    ConstructionError,
    GroupSpecError,
    SchemaError,
    SpectrumWindowError,
    ThicknessLabError,
)
from .groups import FiniteAbelianGroup, parse_group_spec
from .spectra import (
    SpectrumWindow,
    daugavet_defect,
    ell1_lower_constant,
    growth_curve,
    lacunarity,
    lambda_ratio,
    sidon_lower,
)
from .trigpoly import TrigPolynomial, random_unit_polynomial
from .witness import (
    GroupSpace,
    LpSpace,
    thickness_lower_bound,
    witness_block_basis,
    witness_fresh_coordinate,
    witness_general,
    witness_high_frequency,
)

import numpy as np

_METHOD_MAP = {
    "auto": witness_general,
    "high-frequency": witness_high_frequency,
    "fresh-coordinate": witness_fresh_coordinate,
    "block-basis": witness_block_basis,
    "tower": witness_general,
}


def parse_window(group: FiniteAbelianGroup, text: str, seed: int | None) -> SpectrumWindow:
    """Window spec: rademacher | interval:a:b | lacunary:base:count |
    random:size | explicit:a,b;c,d"""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "rademacher":
        return SpectrumWindow.rademacher(group)
    if kind == "interval":
        lo, hi = (int(v) for v in rest.split(":"))
        return SpectrumWindow.interval(group, lo, hi)
    if kind == "lacunary":
        base, count = (int(v) for v in rest.split(":"))
        return SpectrumWindow.lacunary(group, base, count)
    if kind == "random":
        if seed is None:
            raise SpectrumWindowError("random window requires --seed")
        return SpectrumWindow.random_window(group, int(rest), seed)
    if kind == "explicit":
        exps = [tuple(int(v) for v in part.split(",")) for part in rest.split(";") if part]
        return SpectrumWindow.explicit(group, exps)
    raise SpectrumWindowError(f"unknown window spec {text!r}")


def _family_window(group: FiniteAbelianGroup, coords: int, degree: int) -> SpectrumWindow:
    """Default family spectrum: a degree band on a circle stand-in, or all
    characters supported on the leading coordinates of a finite group."""
    if group.has_torus_factor:
        axis = next(j for j, d in enumerate(group.torus_degrees) if d is not None)
        degree = min(degree, group.torus_degrees[axis])
        chars = []
        for a in range(-degree, degree + 1):
            exps = [0] * group.rank
            exps[axis] = a % group.factors[axis]
            chars.append(group.character(exps))
        return SpectrumWindow(group, f"degree<= {degree}", tuple(chars))
    coords = min(coords, group.rank)
    span = 1
    for j in range(coords):
        span *= group.factors[j]
    if span > 4096:
        raise SpectrumWindowError(
            f"family support spans {span} characters; lower --family-coords"
        )
    import itertools

    chars = []
    for head in itertools.product(*(range(group.factors[j]) for j in range(coords))):
        chars.append(group.character(tuple(head) + (0,) * (group.rank - coords)))
    return SpectrumWindow(group, f"coords<{coords}", tuple(chars))


def write_text_atomic(text: str, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _report(command: str, config: dict, results: dict, verification: dict | None, t0: float) -> dict:
    return {
        "schema": "report/1",
        "command": command,
        "config": config,
        "version": __version__,
        "results": results,
        "verification": verification,
        "meta": {"wall_time_s": time.time() - t0},
    }


# ---------------------------------------------------------------------------
# subcommands


def _cmd_witness(args) -> int:
    t0 = time.time()
    group = parse_group_spec(args.group)
    window = parse_window(group, getattr(args, "lambda"), args.seed)
    fam_window = (
        parse_window(group, args.family_spectrum, args.seed)
        if args.family_spectrum
        else _family_window(group, args.family_coords, args.family_degree)
    )
    seeds = np.random.SeedSequence([args.seed]).spawn(args.n)
    family = [random_unit_polynomial(fam_window.chars, s, args.profile) for s in seeds]
    ctor = _METHOD_MAP[args.method]
    cert = ctor(family, list(window.chars), args.eps, seed=args.seed)
    cert_dict = certificate_to_dict(cert)
    verification = verify_certificate(cert_dict)

    os.makedirs(args.out, exist_ok=True)
    cert_path = os.path.join(args.out, "certificate.json")
    write_json_atomic(cert_dict, cert_path)
    report = _report(
        "witness",
        {
            "group": args.group,
            "lambda": getattr(args, "lambda"),
            "n": args.n,
            "eps": args.eps,
            "seed": args.seed,
            "method": args.method,
            "profile": args.profile,
            "family": fam_window.kind,
        },
        {
            "method": cert.method,
            "min_achieved": cert.min_achieved,
            "target": 2.0 - args.eps,
            "certificate": "certificate.json",
        },
        {"passed": verification.passed, "failures": list(verification.failures)},
        t0,
    )
    write_json_atomic(report, os.path.join(args.out, "report.json"))
    ok = verification.passed and cert.min_achieved >= 2.0 - args.eps - TAU_EXACT
    print(
        f"witness {cert.method}: min achieved {cert.min_achieved:.6f} "
        f"(target {2.0 - args.eps:.6f}) -> {'ok' if ok else 'MISSED'}"
    )
    print(f"wrote {cert_path}")
    return 0 if ok else 1


def _cmd_thickness(args) -> int:
    t0 = time.time()
    if args.space == "lp":
        space = LpSpace(p=args.p, family_size=args.n, max_support=args.support)
        eps = args.eps if args.eps is not None else 0.0
        config = {"space": "lp", "p": args.p, "trials": args.trials, "seed": args.seed, "n": args.n}
    else:
        if not args.group or not getattr(args, "lambda"):
            raise GroupSpecError("--space group requires --group and --lambda")
        group = parse_group_spec(args.group)
        window = parse_window(group, getattr(args, "lambda"), args.seed)
        fam_window = (
            parse_window(group, args.family_spectrum, args.seed)
            if args.family_spectrum
            else _family_window(group, args.family_coords, args.family_degree)
        )
        space = GroupSpace(
            group=group,
            window=window.chars,
            family_chars=fam_window.chars,
            family_size=args.n,
            profile=args.profile,
            method=args.method,
        )
        eps = args.eps if args.eps is not None else 0.1
        config = {
            "space": "group",
            "group": args.group,
            "lambda": getattr(args, "lambda"),
            "eps": eps,
            "trials": args.trials,
            "seed": args.seed,
            "n": args.n,
            "method": args.method,
        }
    report = thickness_lower_bound(space, eps, args.trials, args.seed)

    os.makedirs(args.out, exist_ok=True)
    cert_dicts = [certificate_to_dict(c) for c in report.certificates]
    verifications = [verify_certificate(d) for d in cert_dicts]
    all_verified = all(v.passed for v in verifications)
    out = _report(
        "thickness",
        config,
        {
            "trials": report.trials,
            "completed": len(report.certificates),
            "min_achieved": report.min_achieved,
            "target": report.target,
            "errors": list(report.errors),
            "certificates": cert_dicts,
        },
        {"all_passed": all_verified},
        t0,
    )
    write_json_atomic(out, os.path.join(args.out, "report.json"))
    ok = report.ok and all_verified
    print(
        f"thickness: {len(report.certificates)}/{report.trials} trials, "
        f"min achieved {report.min_achieved:.9f} (target {report.target:.9f}) "
        f"-> {'ok' if ok else 'MISSED'}"
    )
    return 0 if ok else 1


def _cmd_lemmas(args) -> int:
    t0 = time.time()
    which = args.which
    runners = {
        "cluster": run_cluster_suite,
        "rotations": run_rotation_suite,
        "net": run_net_suite,
    }
    if which == "all":
        results = run_all_suites(args.trials, args.seed)
    else:
        results = (runners[which](args.trials, args.seed),)
    os.makedirs(args.out, exist_ok=True)
    payload = [
        {
            "suite": r.name,
            "trials": r.trials,
            "violations": r.violations,
            "seed": r.seed,
            "notes": list(r.notes),
        }
        for r in results
    ]
    report = _report(
        "lemmas",
        {"trials": args.trials, "seed": args.seed, "which": which},
        {"suites": payload},
        None,
        t0,
    )
    write_json_atomic(report, os.path.join(args.out, "report.json"))
    ok = all(r.ok for r in results)
    for r in results:
        print(f"{r.name}: {r.trials} trials, {r.violations} violations")
    return 0 if ok else 1


def _cmd_spectra(args) -> int:
    t0 = time.time()
    group = parse_group_spec(args.group)
    window = parse_window(group, args.window, args.seed)
    os.makedirs(args.out, exist_ok=True)
    results: dict = {"diagnostic": args.diagnostic}

    if args.diagnostic in ("sidon", "lambda-ratio"):
        sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else [len(window)]
        windows = [window.head(s) for s in sizes]
        if args.diagnostic == "sidon":
            evaluate = lambda w: sidon_lower(w, args.budget, args.seed)
        else:
            evaluate = lambda w: lambda_ratio(w, args.r, args.p, args.budget, args.seed)
        curve = growth_curve(args.diagnostic, windows, evaluate, args.budget, args.seed)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["N", "ratio", "witness_id"])
        for pt in curve.points:
            writer.writerow([pt.window_size, repr(pt.value), pt.witness_id])
        write_text_atomic(buf.getvalue(), os.path.join(args.out, "curve.csv"))
        results["curve"] = [
            {"N": pt.window_size, "ratio": pt.value, "witness_id": pt.witness_id}
            for pt in curve.points
        ]
        print("\n".join(f"N={p.window_size}: {p.value:.6f}" for p in curve.points))
    elif args.diagnostic == "ell1":
        polys = [TrigPolynomial.from_character(c) for c in window.chars]
        res = ell1_lower_constant(polys, args.norm, args.budget, args.seed)
        results.update(
            {
                "constant": res.constant,
                "coefficients": [[a.real, a.imag] for a in res.coefficients],
                "candidates": res.candidates_tested,
            }
        )
        print(f"ell1 lower constant (searched): {res.constant:.6f}")
    elif args.diagnostic == "lacunarity":
        value = lacunarity(window)
        results["lacunarity"] = value
        print(f"lacunarity: {value:.6f}")
    elif args.diagnostic == "daugavet":
        x = random_unit_polynomial(window.chars, np.random.SeedSequence([args.seed, 1]))
        res = daugavet_defect(
            x, {(0,) * group.rank: args.point_mass}, args.budget, args.seed,
            window=window.chars,
        )
        results.update(
            {
                "lower_bound": res.lower_bound,
                "operator_norm": res.operator_norm,
                "defect": res.defect,
            }
        )
        print(
            f"||Id + T|| >= {res.lower_bound:.6f}, 1 + ||T|| = {1 + res.operator_norm:.6f}, "
            f"defect {res.defect:.6f}"
        )
    else:
        raise SpectrumWindowError(f"unknown diagnostic {args.diagnostic!r}")

    report = _report(
        "spectra",
        {
            "group": args.group,
            "window": args.window,
            "budget": args.budget,
            "seed": args.seed,
            "r": args.r,
            "p": args.p,
        },
        results,
        None,
        t0,
    )
    write_json_atomic(report, os.path.join(args.out, "report.json"))
    return 0


def _cmd_verify(args) -> int:
    with open(args.certificate) as fh:
        data = json.load(fh)
    report = verify_certificate(data)
    print(report)
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thickness-lab",
        description="Witness certificates for unit-sphere thickness on finite abelian groups.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_family_flags(p):
        p.add_argument("--family-coords", type=int, default=4,
                       help="family spectrum: all characters on this many leading coordinates")
        p.add_argument("--family-degree", type=int, default=8,
                       help="family spectrum band width on a circle stand-in factor")
        p.add_argument("--family-spectrum", default=None,
                       help="explicit family window spec (overrides the defaults)")
        p.add_argument("--profile", default="gaussian",
                       choices=["gaussian", "flat"], help="family coefficient profile")

    w = sub.add_parser("witness", help="construct and verify one witness certificate")
    w.add_argument("--group", required=True)
    w.add_argument("--lambda", required=True, help="witness character window spec")
    w.add_argument("--n", type=int, default=4, help="family size")
    w.add_argument("--eps", type=float, required=True)
    w.add_argument("--seed", type=int, required=True)
    w.add_argument("--method", default="auto", choices=sorted(_METHOD_MAP))
    add_family_flags(w)
    w.add_argument("--out", default=".")
    w.set_defaults(func=_cmd_witness)

    t = sub.add_parser("thickness", help="seeded witness trials against random families")
    t.add_argument("--space", required=True, choices=["lp", "group"])
    t.add_argument("--p", type=float, default=1.0)
    t.add_argument("--support", type=int, default=10, help="largest support size (lp)")
    t.add_argument("--group")
    t.add_argument("--lambda")
    t.add_argument("--eps", type=float, default=None)
    t.add_argument("--n", type=int, default=4, help="family size per trial")
    t.add_argument("--trials", type=int, required=True)
    t.add_argument("--seed", type=int, required=True)
    t.add_argument("--method", default="auto", choices=sorted(_METHOD_MAP))
    add_family_flags(t)
    t.add_argument("--out", default=".")
    t.set_defaults(func=_cmd_thickness)

    l = sub.add_parser("lemmas", help="randomized soundness suites for the disc lemmas")
    l.add_argument("--trials", type=int, required=True)
    l.add_argument("--seed", type=int, required=True)
    l.add_argument("--which", default="all", choices=["all", "cluster", "rotations", "net"])
    l.add_argument("--out", default=".")
    l.set_defaults(func=_cmd_lemmas)

    s = sub.add_parser("spectra", help="spectrum diagnostics and growth curves")
    s.add_argument("--diagnostic", required=True,
                   choices=["sidon", "lambda-ratio", "ell1", "lacunarity", "daugavet"])
    s.add_argument("--group", required=True)
    s.add_argument("--window", required=True)
    s.add_argument("--sizes", default=None, help="comma-separated window prefix sizes")
    s.add_argument("--r", type=float, default=1.0)
    s.add_argument("--p", type=float, default=2.0)
    s.add_argument("--norm", default="sup", choices=["sup", "L1"])
    s.add_argument("--point-mass", type=float, default=1.0)
    s.add_argument("--budget", type=int, default=128)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", default=".")
    s.set_defaults(func=_cmd_spectra)

    v = sub.add_parser("verify", help="re-check a stored certificate from scratch")
    v.add_argument("certificate")
    v.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"target missed: {exc}", file=sys.stderr)
        return 1
    except (GroupSpecError, SpectrumWindowError, SchemaError, FileNotFoundError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except ThicknessLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
