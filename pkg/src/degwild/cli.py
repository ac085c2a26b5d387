"""Command-line front end.

Every subcommand builds a JSON report ``{command, params, ..., verdict}``;
a plain-text table goes to stdout first unless ``--json-only`` is given.
Exit codes: 0 ok, 1 verdict failed, 2 parse error, 3 precondition or
construction error, 4 precision cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .degfun import (
    GradedDegree,
    LndDegree,
    LocalizedDegree,
    LocalizedElem,
    check_axioms,
    deg_of_derivation_graded,
    deg_of_derivation_laurent_sandwich,
    deg_of_derivation_lnd,
    tame_oracle,
)
from .errors import ConstructionError, ParseError, PrecisionExhausted, PreconditionError, StructuralError
from .fields import RatFunc
from .groupvalue import GroupValue
from .laurent import DEFAULT_WINDOW_CAP
from .parsing import parse_derivation, parse_poly, parse_poly_list
from .poly import Poly, Weighting
from .sampling import PRNG_NAME, random_poly, random_ratfunc
from .wild import (
    DEFAULT_WINDOW,
    ConstructionA,
    constructA_generic_check,
    constructA_witness,
    constructB_axioms,
    constructB_build,
    constructB_cross_check,
    constructB_monoid_check,
    constructB_negative_degree_element,
    constructB_witness,
    expand,
)

EXIT_OK, EXIT_VERDICT, EXIT_PARSE, EXIT_PRECONDITION, EXIT_PRECISION = 0, 1, 2, 3, 4


class UsageError(Exception):
    """Malformed option value; reported like a parse error."""


def _names(text: str) -> list[str]:
    names = [n.strip() for n in text.split(",") if n.strip()]
    if not names:
        raise UsageError("empty variable list")
    return names


def _weights(text: str) -> list[GroupValue]:
    out = []
    for piece in text.split(";" if ";" in text else ","):
        piece = piece.strip().strip("()")
        try:
            parts = [int(v) for v in piece.replace(" ", ",").split(",") if v]
        except ValueError:
            raise UsageError(f"bad weight {piece!r}") from None
        if not parts:
            raise UsageError("empty weight")
        out.append(GroupValue(tuple(parts)))
    return out


def _table(headers: Sequence[str], rows: Sequence[Sequence]) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _coeff_sampler(field: str):
    return random_ratfunc if field == "QQ(s)" else None


def _poly_sampler(nvars: int, field: str, max_degree: int = 4, zero_rate: float = 0.0):
    coeff = _coeff_sampler(field)

    def draw(rng):
        return random_poly(rng, nvars, max_degree=max_degree, coeff=coeff, zero_rate=zero_rate)

    return draw


def _one(field: str):
    return RatFunc(1) if field == "QQ(s)" else 1


# ---------------------------------------------------------------------------
# subcommands: each returns (report, text)
# ---------------------------------------------------------------------------


def _tame_report(command, params, cert, oracle) -> tuple[dict, str]:
    ok = oracle["ok"]
    report = {
        "command": command,
        "params": params,
        "certificate": cert.to_json(),
        "oracle": oracle,
        "verdict": "pass" if ok else "fail",
    }
    rows = [(g, d) for g, d in cert.deltas]
    text = _table(["generator", "delta"], rows)
    text += f"\ndeg(D) = {cert.value}   attained at {cert.argmax}"
    text += f"\noracle: {oracle['samples']} samples, max sampled delta {oracle['maxSampledDelta']}, "
    text += "ok" if ok else f"{len(oracle['violations'])} violations"
    return report, text


def cmd_tame_eval(args) -> tuple[dict, str]:
    names = _names(args.vars)
    w = Weighting(_weights(args.weights))
    if w.nvars != len(names):
        raise UsageError("one weight per variable is required")
    D = parse_derivation(args.derivation, names, args.field)
    zs = parse_poly_list(args.zs, names, args.field)
    xs = parse_poly_list(args.xs, names, args.field) if args.xs else [
        Poly.var(i, len(names), _one(args.field)) for i in range(len(names))
    ]
    cert = deg_of_derivation_graded(w, zs, xs, D, names)
    oracle = tame_oracle(GradedDegree(w), D, cert.value,
                         _poly_sampler(len(names), args.field), args.samples, args.seed)
    params = {"vars": names, "weights": [v.to_json() for v in w.weights], "derivation": args.derivation,
              "zs": args.zs, "xs": args.xs, "field": args.field, "samples": args.samples,
              "seed": args.seed, "prng": PRNG_NAME}
    return _tame_report("tame-eval", params, cert, oracle)


def cmd_lnd_eval(args) -> tuple[dict, str]:
    names = _names(args.vars)
    Delta = parse_derivation(args.delta, names, args.field)
    t = parse_poly(args.slice, names, args.field)
    zs = parse_poly_list(args.zs, names, args.field)
    D = parse_derivation(args.derivation, names, args.field)
    cert = deg_of_derivation_lnd(Delta, t, zs, D, names, cap=args.cap)
    oracle = tame_oracle(LndDegree(Delta, args.cap), D, cert.value,
                         _poly_sampler(len(names), args.field), args.samples, args.seed)
    params = {"vars": names, "delta": args.delta, "slice": args.slice, "zs": args.zs,
              "derivation": args.derivation, "field": args.field, "samples": args.samples,
              "seed": args.seed, "prng": PRNG_NAME, "cap": args.cap}
    report, text = _tame_report("lnd-eval", params, cert, oracle)
    text += f"\nkernel generators alone give {cert.extra['kernelOnlyValue']}"
    return report, text


def cmd_sandwich_eval(args) -> tuple[dict, str]:
    names = _names(args.vars)
    w = Weighting(_weights(args.weights))
    if w.nvars != len(names):
        raise UsageError("one weight per variable is required")
    D = parse_derivation(args.derivation, names, args.field)
    cert = deg_of_derivation_laurent_sandwich(w, D, names)
    oracle = tame_oracle(GradedDegree(w), D, cert.value,
                         _poly_sampler(len(names), args.field), args.samples, args.seed)
    params = {"vars": names, "weights": [v.to_json() for v in w.weights],
              "derivation": args.derivation, "field": args.field, "samples": args.samples,
              "seed": args.seed, "prng": PRNG_NAME}
    return _tame_report("sandwich-eval", params, cert, oracle)


def _witness_text(rows) -> str:
    return _table(
        ["p_or_n", "deg", "degD", "delta", "ok"],
        [(r.index, "-" if r.skipped else r.deg, "-" if r.skipped else r.degD,
          "-" if r.skipped else r.delta, "skip" if r.skipped else r.expected) for r in rows],
    )


def cmd_wild_a(args) -> tuple[dict, str]:
    if args.coeffs:
        coeffs = [c for c, _ in _fractions(args.coeffs)]
        cfg = ConstructionA(coeffs, window=args.precision)
    elif args.random_coeffs:
        cfg = ConstructionA.random(args.seed, args.n_max + 1, window=args.precision)
    else:
        cfg = ConstructionA(window=args.precision)
    for n in range(args.n_max + 1):
        cfg.coeff(n)
    rows = constructA_witness(cfg, args.n_max)
    generic = [constructA_generic_check(cfg, n) for n in range(args.generic + 1)] if args.generic >= 0 else []
    ok = all(r.expected for r in rows) and all(g["matches"] for g in generic)
    deltas = [r.delta for r in rows if not r.skipped]
    ok = ok and all(a < b for a, b in zip(deltas, deltas[1:]))
    report = {
        "command": "wild-a",
        "params": {"nMax": args.n_max, "seed": args.seed, **cfg.params()},
        "rows": [r.to_json() for r in rows],
        "verdict": "pass" if ok else "fail",
    }
    if generic:
        report["genericCheck"] = generic
    text = _witness_text(rows)
    for g in generic:
        text += f"\nn={g['n']}: t^n D(g_n) = ({g['uCoefficient']}) u - ({g['vCoefficient']}) v  " \
                f"{'matches' if g['matches'] else 'MISMATCH'}"
    return report, text


def _fractions(text: str):
    from fractions import Fraction

    out = []
    for piece in text.split(","):
        try:
            out.append((Fraction(piece.strip()), piece))
        except ValueError:
            raise UsageError(f"bad rational {piece.strip()!r}") from None
    return out


def cmd_wild_b(args) -> tuple[dict, str]:
    cb = constructB_build(args.steps, window=args.precision, level=args.level)
    rows = constructB_witness(cb)
    deltas = [r.delta for r in rows]
    ok = all(r.expected for r in rows) and all(a < b for a, b in zip(deltas, deltas[1:]))
    report = {
        "command": "wild-b",
        "params": {"seed": args.seed, **cb.params()},
        "rows": [r.to_json() for r in rows],
        "a": [str(v) for v in cb.a],
    }
    text = _witness_text(rows)
    if len(cb.a) >= 4:
        neg = constructB_negative_degree_element(cb)
        report["negativeDegreeElement"] = neg.to_json()
        ok = ok and neg.deg == -3 and neg.leading == neg.expected_leading
        text += f"\nw = {neg.to_json()['w']}\ndeg(w) = {neg.deg}, leading coefficient is 2*a0*a3: " \
                f"{neg.leading == neg.expected_leading}"
    if args.cross_check:
        cc = constructB_cross_check(cb)
        report["crossCheck"] = cc
        ok = ok and cc["tableAgrees"] and all(r["agrees"] for r in cc["substitution"])
        text += f"\ncross-check: {cc}"
    if args.samples:
        mono = constructB_monoid_check(cb, args.samples, args.seed)
        report["monoidCheck"] = mono
        ok = ok and mono["verdict"] == "pass"
        text += f"\nvalue monoid: {args.samples} samples, degree counts {mono['degreeCounts']}, " \
                f"{len(mono['failures'])} failures"
    report["verdict"] = "pass" if ok else "fail"
    return report, text


def cmd_expand(args) -> tuple[dict, str]:
    names = _names(args.vars)
    if args.y not in names:
        raise UsageError(f"expansion variable {args.y!r} is not declared")
    y = names.index(args.y)
    f = parse_poly(args.poly, names, args.field)
    a = parse_poly_list(args.a, names, args.field)
    exp = expand(f, a, y)
    back = exp.reconstruct()
    stable = expand(back, a, y).terms == exp.terms
    ok = back == f and stable
    report = {
        "command": "expand",
        "params": {"vars": names, "y": args.y, "poly": args.poly, "a": args.a, "field": args.field},
        "terms": exp.to_json(names),
        "reconstructs": back == f,
        "reexpansionStable": stable,
        "verdict": "pass" if ok else "fail",
    }
    text = _table(["set", "coeff"], [("{" + ",".join(map(str, t["set"])) + "}", t["coeff"]) for t in report["terms"]])
    text += f"\nreconstruction: {back == f}, re-expansion stable: {stable}"
    return report, text


def cmd_axioms(args) -> tuple[dict, str]:
    kind = args.kind
    if kind == "graded":
        names = _names(args.vars) if args.vars else None
        w = Weighting(_weights(args.weights))
        df = GradedDegree(w)
        D = parse_derivation(args.derivation, names, args.field) if args.derivation else None
        report = check_axioms(df, _poly_sampler(w.nvars, args.field, zero_rate=0.05),
                              args.samples, args.seed, D=D)
    elif kind == "lnd":
        names = _names(args.vars or "z,t")
        Delta = parse_derivation(args.delta or "0,1", names, args.field)
        df = LndDegree(Delta)
        D = parse_derivation(args.derivation, names, args.field) if args.derivation else None
        report = check_axioms(df, _poly_sampler(len(names), args.field, zero_rate=0.05),
                              args.samples, args.seed, D=D)
    elif kind == "localized":
        names = _names(args.vars) if args.vars else None
        w = Weighting(_weights(args.weights))
        df = LocalizedDegree(GradedDegree(w))
        num = _poly_sampler(w.nvars, args.field, max_degree=3, zero_rate=0.05)
        den = _poly_sampler(w.nvars, args.field, max_degree=2)

        def draw(rng):
            n = num(rng)
            d = den(rng)
            while not d:
                d = den(rng)
            return LocalizedElem(n, d)

        D = parse_derivation(args.derivation, names, args.field) if args.derivation else None
        report = check_axioms(df, draw, args.samples, args.seed, D=D)
    elif kind == "laurentA":
        cfg = ConstructionA(window=args.precision)
        df = cfg.degree_function()
        report = check_axioms(df, _poly_sampler(2, "QQ", max_degree=4, zero_rate=0.05),
                              args.samples, args.seed)
    elif kind == "laurentB":
        cb = constructB_build(args.steps, window=args.precision)
        report = constructB_axioms(cb, args.samples, args.seed)
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown kind {kind}")
    report = {"command": "axioms", "params": {"kind": kind, "samples": args.samples, "seed": args.seed},
              **report}
    text = f"kind {kind}: {args.samples} samples, {len(report['failures'])} failures, " \
           f"{len(report['precisionErrors'])} precision errors"
    if report.get("valuesSeen") is not None:
        text += f"\ndegrees seen: {report['valuesSeen']}"
    return report, text


COMMANDS = {
    "tame-eval": cmd_tame_eval,
    "lnd-eval": cmd_lnd_eval,
    "sandwich-eval": cmd_sandwich_eval,
    "wild-a": cmd_wild_a,
    "wild-b": cmd_wild_b,
    "expand": cmd_expand,
    "axioms": cmd_axioms,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--precision", type=int, default=DEFAULT_WINDOW,
                        help="exponent window for series computations")
    common.add_argument("--json-only", action="store_true")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--field", default="QQ", choices=["QQ", "QQ(s)"])

    p = argparse.ArgumentParser(prog="degwild", description="Degree functions and derivations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tame-eval", parents=[common], help="deg(D) for a graded ring")
    s.add_argument("--vars", default="x,y")
    s.add_argument("--weights", required=True)
    s.add_argument("--derivation", required=True, help="images of the variables, comma separated")
    s.add_argument("--zs", default="", help="degree-0 generators")
    s.add_argument("--xs", default="", help="homogeneous generators (default: the variables)")

    s = sub.add_parser("lnd-eval", parents=[common], help="deg_Delta(D) for a locally nilpotent Delta")
    s.add_argument("--vars", default="z,t")
    s.add_argument("--delta", default="0,1")
    s.add_argument("--slice", default="t", help="t with Delta(t) != 0 = Delta^2(t)")
    s.add_argument("--zs", default="z", help="generators of ker Delta")
    s.add_argument("--derivation", required=True)
    s.add_argument("--cap", type=int, default=64)

    s = sub.add_parser("sandwich-eval", parents=[common], help="deg(D) on k[X] inside a graded Laurent ring")
    s.add_argument("--vars", default="x,y")
    s.add_argument("--weights", required=True)
    s.add_argument("--derivation", required=True)

    s = sub.add_parser("wild-a", parents=[common], help="divergence witness for x = 1/t, y = f(t)")
    s.add_argument("--n-max", type=int, default=10)
    s.add_argument("--coeffs", default="", help="a_0,a_1,... (default all ones)")
    s.add_argument("--random-coeffs", action="store_true", help="seeded coefficients with some zeros")
    s.add_argument("--generic", type=int, default=-1, metavar="N",
                   help="also check t^n D(g_n) for D = u d/dx - v d/dy, n <= N")

    s = sub.add_parser("wild-b", parents=[common], help="divergence witness for the N-valued construction")
    s.add_argument("--steps", type=int, default=5)
    s.add_argument("--level", type=int, default=8)
    s.add_argument("--cross-check", action="store_true")

    s = sub.add_parser("expand", parents=[common], help="expansion in products of F_i")
    s.add_argument("--vars", default="X,Y")
    s.add_argument("--y", default=None, help="expansion variable (default: last)")
    s.add_argument("--poly", required=True)
    s.add_argument("--a", required=True, help="a_0,a_1,... (polynomials not involving Y)")

    s = sub.add_parser("axioms", parents=[common], help="sampled degree-function axioms")
    s.add_argument("--kind", required=True, choices=["graded", "lnd", "localized", "laurentA", "laurentB"])
    s.add_argument("--vars", default=None)
    s.add_argument("--weights", default="2,3")
    s.add_argument("--delta", default=None)
    s.add_argument("--derivation", default=None, help="also check delta(xy) <= max(delta x, delta y)")
    s.add_argument("--steps", type=int, default=5)
    return p


_DEFAULT_SAMPLES = {"tame-eval": 500, "lnd-eval": 500, "sandwich-eval": 500, "axioms": 500,
                    "wild-a": 0, "wild-b": 0, "expand": 0}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples is None:
        args.samples = _DEFAULT_SAMPLES[args.command]
    if args.command == "expand" and args.y is None:
        args.y = _names(args.vars)[-1]
    if args.precision < 1 or args.precision > DEFAULT_WINDOW_CAP:
        print(f"error: --precision must lie in 1..{DEFAULT_WINDOW_CAP}", file=sys.stderr)
        return EXIT_PRECISION
    try:
        report, text = COMMANDS[args.command](args)
    except (ParseError, UsageError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ConstructionError, StructuralError) as exc:
        print(f"precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    blob = json.dumps(report, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(blob + "\n")
    if not args.json_only:
        print(text)
        print()
    print(blob)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_VERDICT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
