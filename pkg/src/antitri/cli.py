"""``antitri`` command line: build matrices, run checks, classify, reproduce.

Exit codes: 0 verdict produced, 1 golden failure, 2 parse error,
3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import repro
from .eigenprop import en_membership, property_report, uniqueness_rank_check
from .errors import AntitriError, PreconditionViolated
from .exact import (
    Matrix,
    all_roots_real,
    char_poly,
    count_roots_below,
    sturm_count,
    to_fraction,
)
from .moments import (
    Measure,
    a_mu_matrix,
    b_symmetric_matrix,
    bernstein_matrix,
    cm_violation,
    d_violation,
)
from .particle import (
    SiteDistribution,
    nu_classification,
    rn_matrix,
    rtilde_from_nu,
    spectral_conditions,
)
from .pascal import anti_identity, from_lower_anti, from_upper_anti, phi_map, pi_map, vp_membership
from .serialize import (
    dumps,
    load_json_arg,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    parse_rational_list,
    records_to_csv,
)

DEFAULT_DEPTH = 8
EXIT_OK, EXIT_GOLDEN, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class ParseError(Exception):
    pass


def _env_depth() -> int:
    raw = os.environ.get("ANTITRI_DEPTH")
    if raw is None:
        return DEFAULT_DEPTH
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"ANTITRI_DEPTH={raw!r} is not an integer") from None


def _depth(args) -> int:
    d = args.depth if args.depth is not None else _env_depth()
    if d < 1:
        raise ParseError(f"depth must be >= 1, got {d}")
    return d


def parse_measure(text: str) -> Measure:
    """``lebesgue``, ``dirac:1/2``, ``beta:2``, ``discrete:0@1/2,1@1/2`` or JSON."""
    text = text.strip()
    if text.startswith("{") or text.endswith(".json"):
        return Measure.from_json(load_json_arg(text))
    kind, _, rest = text.partition(":")
    if kind == "lebesgue":
        return Measure.lebesgue()
    if kind == "dirac":
        return Measure.dirac(to_fraction(rest))
    if kind == "beta":
        return Measure.beta(to_fraction(rest))
    if kind == "discrete":
        atoms = []
        for item in rest.split(","):
            u, _, w = item.partition("@")
            atoms.append((to_fraction(u), to_fraction(w)))
        return Measure.discrete(atoms)
    raise ParseError(f"unknown measure {text!r}")


def parse_site_law(args, depth: int) -> SiteDistribution:
    if args.weights is not None:
        return SiteDistribution(parse_rational_list(args.weights))
    kind, _, rest = args.family.partition(":")
    vals = parse_rational_list(rest)
    if kind == "geometric" and len(vals) == 1:
        return SiteDistribution.geometric(vals[0], depth)
    if kind == "poisson" and len(vals) == 1:
        return SiteDistribution.poisson(vals[0], depth)
    if kind == "negbin" and len(vals) == 2:
        return SiteDistribution.negative_binomial(vals[0], vals[1], depth)
    raise ParseError(f"unknown family {args.family!r}")


def read_matrix(value: str, form: str) -> Matrix:
    """Load a matrix and reduce it to the lower triangular ``X`` being tested."""
    data = load_json_arg(value)
    m = matrix_from_json(data) if isinstance(data, dict) else Matrix(data)
    if form == "lower-anti":
        return from_lower_anti(m)
    if form == "upper-anti":
        return from_upper_anti(m)
    return m


def _require_triangular(x: Matrix):
    if not x.is_lower_triangular():
        raise PreconditionViolated("matrix is not lower triangular in the chosen form")


def _fracs(seq) -> list[str]:
    return [str(v) for v in seq]


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, exit code)
# ---------------------------------------------------------------------------


def cmd_build(args):
    kind = args.kind
    if kind == "pi":
        if args.lam is None:
            raise ParseError("build pi needs --lambda")
        m = pi_map(parse_rational_list(args.lam))
    else:
        n = args.n if args.n is not None else _depth(args)
        if n < 0:
            raise ParseError("n must be >= 0")
        if kind in ("bernstein", "b_sym"):
            if args.u is None:
                raise ParseError(f"build {kind} needs --u")
            u = to_fraction(args.u)
            if not 0 <= u <= 1:
                raise PreconditionViolated("u must lie in [0, 1]")
            m = bernstein_matrix(u, n) if kind == "bernstein" else b_symmetric_matrix(u, n)
        elif kind == "a_mu":
            if args.measure is None:
                raise ParseError("build a_mu needs --measure")
            m = a_mu_matrix(parse_measure(args.measure), n)
        else:
            if args.weights is None:
                raise ParseError(f"build {kind} needs --weights")
            nu = SiteDistribution(parse_rational_list(args.weights))
            if n > nu.depth:
                raise PreconditionViolated(f"n={n} needs weights up to index {n}, have {nu.depth}")
            m = rtilde_from_nu(nu, n) if kind == "rtilde" else rn_matrix(nu, n)
    if args.format == "csv":
        return matrix_to_csv(m), EXIT_OK
    return matrix_to_json(m), EXIT_OK


def _lambda_or_diagonal(args) -> list[Fraction]:
    if args.lam is not None:
        return parse_rational_list(args.lam)
    if args.matrix is not None:
        return list(phi_map(read_matrix(args.matrix, args.form)))
    raise ParseError("need --lambda or --matrix")


def _matrix_or_pi(args) -> Matrix:
    if args.matrix is not None:
        x = read_matrix(args.matrix, args.form)
    elif args.lam is not None:
        x = pi_map(parse_rational_list(args.lam))
    else:
        raise ParseError("need --matrix or --lambda")
    _require_triangular(x)
    return x


def cmd_check(args):
    which = args.which
    report: dict = {"check": which}
    if which in ("weak", "full"):
        pr = property_report(_matrix_or_pi(args))
        report.update(verdict=pr.weak if which == "weak" else pr.full, **pr.to_json())
    elif which == "vp":
        x = _matrix_or_pi(args)
        report.update(verdict=vp_membership(x), diagonal=_fracs(phi_map(x)))
    elif which == "cm":
        lam = _lambda_or_diagonal(args)
        depth = args.depth if args.depth is not None else len(lam) - 1
        bad = cm_violation(lam, depth)
        report.update(verdict=bad is None, depth=depth, violation=None if bad is None else list(bad))
    elif which == "dcond":
        bad = d_violation(_lambda_or_diagonal(args))
        report.update(verdict=bad is None, first_failure=bad)
    else:
        lam = _lambda_or_diagonal(args)
        cert = en_membership(lam)
        report.update(verdict=cert.in_e, **cert.to_json(), unique_last_row=uniqueness_rank_check(lam))
    if args.format == "csv":
        if which == "en":
            return records_to_csv(report["rows"]), EXIT_OK
        return records_to_csv([{k: v for k, v in report.items()}]), EXIT_OK
    return report, EXIT_OK


def cmd_spectrum(args):
    x = read_matrix(args.matrix, args.form)
    cp = char_poly(x @ anti_identity(x.n))
    half = Fraction(-1, 2)
    report = {
        "n": x.n,
        "char_poly": _fracs(cp.coeffs),
        "all_real": all_roots_real(cp),
        "distinct_real_roots": sturm_count(cp),
        "below_minus_half": count_roots_below(cp, half, inclusive=False),
        "at_or_below_minus_half": count_roots_below(cp, half, inclusive=True),
    }
    if x.is_lower_triangular():
        pr = property_report(x)
        report.update(weak=pr.weak, full=pr.full, spectrum=pr.to_json()["spectrum"])
    if args.format == "csv":
        return records_to_csv([report]), EXIT_OK
    return report, EXIT_OK


def cmd_classify(args):
    depth = _depth(args)
    if (args.weights is None) == (args.family is None):
        raise ParseError("give exactly one of --weights or --family")
    nu = parse_site_law(args, depth)
    c = nu_classification(nu)
    if not c.in_vp:
        report = {"classification": c.to_json(), "horizon": None, "spectral": None}
        return report, EXIT_PRECONDITION
    horizon = min(depth, nu.depth)
    spectral = spectral_conditions(nu, horizon).to_json()
    report = {"classification": spectral.pop("classification"), "horizon": horizon, "spectral": spectral}
    if args.format == "csv":
        return records_to_csv(spectral["per_n"]), EXIT_OK
    return report, EXIT_OK


def _load_fixtures(path: Optional[str]) -> Optional[dict]:
    if path is None:
        return None
    data = load_json_arg(path)
    return {k: matrix_from_json(v) if isinstance(v, dict) else Matrix(v) for k, v in data.items()}


def cmd_repro(args):
    outcomes = repro.run_golden(_depth(args), _load_fixtures(args.fixtures))
    bad = [o for o in outcomes if o.status in ("fail", "error")]
    for o in bad:
        print(f"golden failure: {o.id} ({o.title})" + (f": {o.detail}" if o.detail else ""), file=sys.stderr)
    code = EXIT_GOLDEN if bad else EXIT_OK
    if args.format == "json":
        return [o.to_json() for o in outcomes], code
    if args.format == "csv":
        return records_to_csv(o.to_json() for o in outcomes), code
    width = max(len(o.id) for o in outcomes)
    lines = [f"{o.status.upper():5} {o.id:{width}}  {o.title}" for o in outcomes]
    counts = {s: sum(o.status == s for o in outcomes) for s in ("pass", "fail", "error", "skip")}
    lines.append(", ".join(f"{v} {k}" for k, v in counts.items()))
    return "\n".join(lines) + "\n", code


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="antitri", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format="json"):
        sp.add_argument("--format", choices=["json", "csv"] + (["table"] if default_format == "table" else []),
                        default=default_format)
        sp.add_argument("--depth", type=int, help="truncation N (default $ANTITRI_DEPTH or 8)")

    b = sub.add_parser("build", help="construct an exact matrix")
    b.add_argument("kind", choices=["pi", "bernstein", "a_mu", "b_sym", "rtilde", "rn"])
    b.add_argument("--n", type=int, help="largest index; size is n+1")
    b.add_argument("--lambda", dest="lam", help='diagonal, e.g. "1,1/2,1/4"')
    b.add_argument("--u", help="Bernstein parameter in [0, 1]")
    b.add_argument("--measure", help="lebesgue | dirac:U | beta:T | discrete:U@W,... | JSON")
    b.add_argument("--weights", help="site weights w(0), w(1), ...")
    common(b)
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run a property check")
    c.add_argument("which", choices=["weak", "full", "vp", "cm", "dcond", "en"])
    c.add_argument("--matrix", help="inline JSON, path, or - for stdin")
    c.add_argument("--form", choices=["triangular", "lower-anti", "upper-anti"], default="triangular")
    c.add_argument("--lambda", dest="lam")
    common(c)
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("spectrum", help="spectral summary of XG")
    s.add_argument("--matrix", required=True)
    s.add_argument("--form", choices=["triangular", "lower-anti", "upper-anti"], default="triangular")
    common(s)
    s.set_defaults(func=cmd_spectrum)

    k = sub.add_parser("classify", help="classify a site distribution")
    k.add_argument("--weights")
    k.add_argument("--family", help="geometric:Q | poisson:L | negbin:T,P (generated to depth)")
    common(k)
    k.set_defaults(func=cmd_classify)

    r = sub.add_parser("repro", help="run the golden suite")
    r.add_argument("--fixtures", help="JSON object overriding fixtures such as T or S")
    common(r, "table")
    r.set_defaults(func=cmd_repro)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        payload, code = args.func(args)
    except AntitriError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ParseError, ValueError, TypeError, KeyError, ZeroDivisionError, json.JSONDecodeError, OSError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(payload if isinstance(payload, str) else dumps(payload) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
