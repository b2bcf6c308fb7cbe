"""Command-line front end: JSON in, JSON out, diagnostics on stderr.

Exit codes: 0 success, 1 usage or I/O error, 2 hypothesis violation.
"""
import argparse
import json
import sys
from fractions import Fraction

from .duality import bezout_witness
from .errors import HypothesisViolation
from .fiber import GeometricResolution, validate_resolution
from .liouville import ApproximationQuery, build_separating_polynomial, certified_denominator_bound
from .slp import SlpError, parse_system
from .solver import decide_consistency, solve_system


class UsageError(Exception):
    pass


def load_system_file(path):
    """(program, seed, retries) from a system file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError("cannot read %s: %s" % (path, e)) from None
    if not isinstance(doc, dict) or "variables" not in doc or "equations" not in doc:
        raise UsageError("system file needs 'variables' and 'equations'")
    names, eqs = doc["variables"], doc["equations"]
    if not eqs:
        raise UsageError("equations must be non-empty")
    try:
        system = parse_system(eqs, names)
    except SlpError as e:
        raise UsageError("cannot parse system: %s" % e) from None
    return system, doc.get("seed"), doc.get("retries")


def load_resolution(path):
    """Resolution from a file holding either solve output or a bare resolution."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
        return GeometricResolution.from_dict(doc.get("resolution", doc))
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        raise UsageError("cannot read resolution %s: %s" % (path, e)) from None


def _settings(args, seed, retries):
    s = args.seed if args.seed is not None else (seed if seed is not None else 0)
    r = args.retries if args.retries is not None else (retries if retries is not None else 25)
    return int(s), int(r)


def _note(msg):
    print(msg, file=sys.stderr)


def _first_n(system, args, seed, retries):
    """Resolution of the first n equations, from --resolution if given."""
    n = system.nvars
    if args.resolution:
        res = load_resolution(args.resolution)
        if res.n != n:
            raise UsageError("resolution has %d coordinates, system has %d" % (res.n, n))
        _note("using resolution from %s" % args.resolution)
        return res
    sol = solve_system(system.select(range(n)), seed, retries)
    _note("solved first %d equations: degree %d" % (n, sol.resolution.degree))
    return sol.resolution


def cmd_solve(args):
    system, seed, retries = load_system_file(args.system)
    seed, retries = _settings(args, seed, retries)
    if len(system.outputs) != system.nvars:
        raise UsageError("solve needs as many equations as variables")
    sol = solve_system(system, seed, retries)
    for rec in sol.log:
        _note("level %d: degree %d" % (rec.level, rec.degree))
    out = {"resolution": sol.resolution.to_dict(),
           "levels": [rec.to_dict() for rec in sol.log],
           "attempts": sol.attempts,
           "failures": sol.failures}
    if args.validate:
        rep = validate_resolution(sol.resolution, system)
        out["validation"] = rep.to_dict()
        if not rep.ok:
            _note("validation failed: %s" % "; ".join(rep.details))
    return out, 0


def cmd_consistency(args):
    system, seed, retries = load_system_file(args.system)
    seed, retries = _settings(args, seed, retries)
    if len(system.outputs) != system.nvars + 1:
        raise UsageError("consistency needs n+1 equations in n variables")
    verdict = decide_consistency(system, seed, retries)
    _note("consistent" if verdict.consistent else "inconsistent")
    return verdict.to_dict(), 0


def cmd_witness(args):
    system, seed, retries = load_system_file(args.system)
    seed, retries = _settings(args, seed, retries)
    n = system.nvars
    if len(system.outputs) != n + 1:
        raise UsageError("witness needs n+1 equations in n variables")
    res = _first_n(system, args, seed, retries)
    w = bezout_witness(res, system.select([n]), system.select(range(n)))
    _note("witness a = %d" % w.a)
    return w.to_dict(), 0


def _parse_p(text):
    """Gaussian integer from 'a', 'a,b' or 'a+bi'."""
    text = text.replace(" ", "")
    try:
        if "," in text:
            re, im = text.split(",")
            return int(re), int(im)
        if text.endswith(("i", "j")):
            z = complex(text[:-1] + "j")
            return int(z.real), int(z.imag)
        return int(text)
    except ValueError:
        raise UsageError("--p must be an integer or Gaussian integer") from None


def cmd_liouville(args):
    system, seed, retries = load_system_file(args.system)
    seed, retries = _settings(args, seed, retries)
    n = system.nvars
    if len(system.outputs) != n:
        raise UsageError("liouville needs as many equations as variables")
    if args.p is None or args.q is None or args.epsilon is None:
        raise UsageError("liouville needs --p, --q and --epsilon")
    p = _parse_p(args.p)
    try:
        q = int(args.q)
        eps = Fraction(args.epsilon)
    except (ValueError, ZeroDivisionError):
        raise UsageError("--q must be an integer and --epsilon a rational") from None
    if q < 1:
        raise UsageError("--q must be positive")
    if not 0 < eps <= 1:
        raise UsageError("--epsilon must lie in (0, 1]")
    res = _first_n(system, args, seed, retries)
    witness = bezout_witness(res, build_separating_polynomial(p, q, n), system)
    report = certified_denominator_bound(ApproximationQuery(res, system, p, q, eps), witness)
    for line in report.trace:
        _note(line)
    return report.to_dict(), 0


def cmd_validate(args):
    system, _, _ = load_system_file(args.system)
    if not args.resolution:
        raise UsageError("validate needs --resolution FILE")
    rep = validate_resolution(load_resolution(args.resolution), system)
    for line in rep.details:
        _note(line)
    return rep.to_dict(), 0 if rep.ok else 2


COMMANDS = {"solve": cmd_solve, "consistency": cmd_consistency, "witness": cmd_witness,
            "liouville": cmd_liouville, "validate": cmd_validate}


def build_parser():
    ap = argparse.ArgumentParser(prog="geosolve",
                                 description="Exact geometric solving of polynomial systems.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("system", help="JSON system file")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--retries", type=int, default=None)
    ap.add_argument("--validate", action="store_true", help="validate the resolution (solve)")
    ap.add_argument("--resolution", help="reuse a resolution from an earlier solve")
    ap.add_argument("--p", help="numerator, an integer or Gaussian integer (liouville)")
    ap.add_argument("--q", help="positive denominator (liouville)")
    ap.add_argument("--epsilon", help="approximation level in (0, 1], exact rational (liouville)")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        out, code = COMMANDS[args.command](args)
    except UsageError as e:
        _note("error: %s" % e)
        return 1
    except HypothesisViolation as e:
        _note("hypothesis violation: %s" % e)
        return 2
    text = json.dumps(out, indent=2, default=str)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        except OSError as e:
            _note("error: cannot write %s: %s" % (args.out, e))
            return 1
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
