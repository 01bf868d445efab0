"""Command-line runner: binds the verification checks into reproducible
suites with JSON reports.

Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration or
arguments, 3 internal error.
"""

import argparse
import json
import random
import sys

from . import __version__, checks, cusps, example7, moduli, catalog

SUITES = {
    "algebra": ["algebra_relations", "involution_axioms",
                "decomposition_dims"],
    "unitary": ["unitary_membership", "sl2_su_isomorphism",
                "integral_completion"],
    "cusps": ["cusp_counts"],
    "domains": ["signatures", "domain_actions"],
    "example7": ["example_certificate"],
    "moduli": ["moduli"],
}
SUITES["all"] = sum((SUITES[k] for k in
                     ("algebra", "unitary", "cusps", "domains", "example7",
                      "moduli")), [])


def _check_registry():
    return {
        "algebra_relations": lambda rng, tol, n: checks.check_algebra_relations(
            rng, **({"pairs": n} if n else {})),
        "involution_axioms": lambda rng, tol, n: checks.check_involution_axioms(
            rng, **({"samples": n} if n else {})),
        "decomposition_dims": lambda rng, tol, n: checks.check_decomposition_dims(),
        "unitary_membership": lambda rng, tol, n: checks.check_unitary_membership(rng),
        "sl2_su_isomorphism": lambda rng, tol, n: checks.check_sl2_iso(
            rng, **({"pairs": n} if n else {})),
        "integral_completion": lambda rng, tol, n: checks.check_integral_completion(
            rng, **({"samples": n} if n else {})),
        "cusp_counts": lambda rng, tol, n: checks.check_cusp_counts(),
        "example_certificate": lambda rng, tol, n: checks.check_example_certificate(),
        "signatures": lambda rng, tol, n: checks.check_signatures(tolerance=tol),
        "domain_actions": lambda rng, tol, n: checks.check_domain_actions(
            rng, tolerance=tol, **({"samples": n} if n else {})),
        "moduli": lambda rng, tol, n: checks.check_moduli(
            rng, tolerance=tol, **({"samples": n} if n else {})),
    }


def _seeded_rng(seed, name):
    # a string seed hashes deterministically (no PYTHONHASHSEED dependence)
    return random.Random("%d:%s" % (seed, name))


def run_suite(suite, seed, tolerance, sample_counts=None):
    registry = _check_registry()
    records = []
    overall = True
    for name in SUITES[suite]:
        count = (sample_counts or {}).get(name)
        rng = _seeded_rng(seed, name)
        rec = registry[name](rng, tolerance, count)
        if rec["status"] != "pass":
            overall = False
        records.append(rec)
    return {
        "command": "run",
        "suite": suite,
        "seed": seed,
        "tolerance": tolerance,
        "library_version": __version__,
        "checks": records,
        "pass": overall,
    }


def _write_report(report, out_path):
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_config(path):
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config must be a JSON object")
    if "tolerance" in cfg and not float(cfg["tolerance"]) > 0:
        raise ValueError("tolerance must be positive")
    return cfg


def _add_common(parser):
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--tolerance", type=float, default=1e-9)
    parser.add_argument("--out", help="write the JSON report here")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="divherm",
        description="verification suites for hyperbolic planes over"
        " division algebras",
    )
    parser.add_argument("--suite", choices=sorted(SUITES),
                        help="run this suite (alternative to a subcommand)")
    _add_common(parser)
    sub = parser.add_subparsers(dest="command")

    for name in sorted(SUITES):
        p = sub.add_parser(name, help="run the %s suite" % name)
        _add_common(p)
        if name == "example7":
            p.add_argument("action", nargs="?", default="verify",
                           choices=["verify", "probe"])
        if name == "cusps":
            p.add_argument("--disc", type=int,
                           help="print the class number of this discriminant")
        if name == "moduli":
            p.add_argument("action", nargs="?", choices=["gram", "split"])
            p.add_argument("--case", choices=["d1", "d2", "d3"], default="d1")
            p.add_argument("--disc", type=int, default=-7)
    return parser


def _moduli_command(args):
    if args.case == "d1":
        if args.disc != -7:
            raise ValueError("only disc -7 is catalogued for the d1 case")
        plane = catalog.field_plane_disc_minus7()
    elif args.case == "d2":
        plane = catalog.quaternion_plane()
    else:
        plane = catalog.example_plane()
    if args.action == "gram":
        T = moduli.make_T(plane, "d1" if args.case == "d1" else
                          ("d2a" if args.case == "d2" else "d_ge3"))
        rep = moduli.polarization_type(moduli.LatticeSpec(plane), T)
        return {"command": "moduli gram", "case": args.case,
                "disc": args.disc,
                "gram": [[str(v) for v in row] for row in rep["gram"]],
                "scale": str(rep["scale"]),
                "elementary_divisors": rep["elementary_divisors"],
                "principal": rep["principal"], "pass": True}
    alg = plane.algebra
    x = ((alg.one(), alg.zero()), (alg.zero(), alg.one()))
    rep = moduli.lattice_splitting(plane, x)
    ok = rep["direct_sum"] and rep["spans_lambda_prime"] and rep["ol_stable"]
    return {"command": "moduli split", "case": args.case,
            "summands": rep["summands"], "ranks": rep["ranks"],
            "direct_sum": rep["direct_sum"],
            "spans_lambda_prime": rep["spans_lambda_prime"],
            "ol_stable": rep["ol_stable"], "pass": ok}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        seed, tolerance, out = args.seed, args.tolerance, args.out
        sample_counts = None
        if args.config:
            try:
                cfg = _load_config(args.config)
            except (OSError, ValueError, json.JSONDecodeError) as exc:
                sys.stderr.write("config error: %s\n" % exc)
                return 2
            seed = int(cfg.get("seed", seed))
            tolerance = float(cfg.get("tolerance", tolerance))
            out = cfg.get("output_path", out)
            sample_counts = cfg.get("sample_counts")
        if tolerance <= 0:
            sys.stderr.write("config error: tolerance must be positive\n")
            return 2

        command = getattr(args, "command", None)
        if command == "cusps" and args.disc is not None:
            report = {"command": "cusps", "disc": args.disc,
                      "class_number": cusps.class_number(args.disc),
                      "pass": True}
        elif command == "example7" and getattr(args, "action", None) == "probe":
            report = {"command": "example7 probe",
                      "probe": example7.norm_equation_probe(), "pass": True}
        elif command == "moduli" and getattr(args, "action", None):
            report = _moduli_command(args)
        else:
            suite = command or args.suite
            if suite is None:
                parser.print_usage(sys.stderr)
                return 2
            report = run_suite(suite, seed, tolerance, sample_counts)
        _write_report(report, out)
        return 0 if report["pass"] else 1
    except (ValueError, KeyError) as exc:
        sys.stderr.write("config error: %s\n" % exc)
        return 2
    except Exception as exc:  # anything unexpected is an internal error
        sys.stderr.write("internal error: %r\n" % exc)
        return 3


if __name__ == "__main__":
    sys.exit(main())
