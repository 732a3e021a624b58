"""Command-line surface: one subcommand per engine operation plus the
bundled corpus runner.

Every integer in JSON output is serialized as a decimal string so that
arbitrary-precision values survive any consumer.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .config import DEFAULT
from .errors import EngineError
from .hilbert import coefficients, relative_coefficients, series
from .problemfile import load_problem
from .reduction import (
    explore_asymptotic,
    hm_sums,
    is_reduction,
    minimal_reduction,
    sequence_from_elements,
    vv_depth_probe,
)
from .ring import local_length
from .rr import rr_closure
from .verify import VERIFIERS, verify
from . import corpus as corpus_mod


def jsonify(value):
    """Arbitrary-precision integers become decimal strings (bools stay)."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    return value


def _emit(payload, text_lines, fmt):
    if fmt == "json":
        print(json.dumps(jsonify(payload), indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _config_from(args):
    return DEFAULT.with_overrides(
        nmax=args.nmax,
        window=args.window,
        seed=args.seed,
        length_cap=args.length_cap,
        chain_cap=args.chain_cap,
    )


def _series_payload(hs, e):
    return {
        "numerator": list(hs.numerator),
        "dim": hs.denominator_exponent,
        "e": list(e.e),
        "postulation": hs.postulation,
    }


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--nmax", type=int, default=None)
    common.add_argument("--window", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--length-cap", type=int, default=None)
    common.add_argument("--chain-cap", type=int, default=None)
    parser = argparse.ArgumentParser(
        prog="relcoeff",
        description=(
            "Exact Hilbert coefficients, reductions, Ratliff-Rush closures, "
            "and graded-depth diagnostics for m-primary ideals in presented "
            "local rings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, *positional, help=None):
        p = sub.add_parser(name, help=help, parents=[common])
        for pos in positional:
            if pos.endswith("?"):
                p.add_argument(pos[:-1], nargs="?", default=None)
            else:
                p.add_argument(pos)
        return p

    cmd("length", "file", "ideal", help="local colength of an ideal")
    cmd("hilbert", "file", "ideal", help="Hilbert series of the ideal filtration")
    cmd("coeffs", "file", "ideal", help="Hilbert coefficients e_0..e_d")
    cmd("relcoeffs", "file", "inner", "outer",
        help="relative coefficients of a reduction pair")
    cmd("reduction", "file", "inner", "outer",
        help="reduction certificate and reduction number")
    cmd("rr", "file", "ideal", "n", help="Ratliff-Rush closure of a power")
    cmd("cmtest", "file", "ideal", "k?",
        help="Valabrega-Valla depth probe (default full depth)")
    cmd("hmsums", "file", "ideal", "q", help="Huckaba-Marley partial sums")
    explore_p = cmd("explore", "file", "ideal",
                    help="asymptotic CM explorer over powers")
    explore_p.add_argument("--range", default=None, metavar="a..b")
    cmd("verify", "file", "theorem", "inner", "outer",
        help=f"verify one of: {', '.join(sorted(VERIFIERS))}")
    corpus_p = sub.add_parser("corpus", help="bundled corpus operations")
    corpus_sub = corpus_p.add_subparsers(dest="corpus_command", required=True)
    run_p = corpus_sub.add_parser("run", parents=[common])
    run_p.add_argument("--filter", default=None)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from(args)
    fmt = args.format
    try:
        return _run(args, config, fmt)
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _run(args, config, fmt):
    if args.command == "corpus":
        report = corpus_mod.corpus_run(args.filter, config)
        lines = []
        for entry in report.entries:
            status = "pass" if entry.passed else "FAIL"
            lines.append(f"[{status}] {entry.label} ({entry.tag})")
            for r in entry.results:
                mark = "ok" if r.passed else "MISMATCH"
                lines.append(f"    {r.check_id:<14} {mark}")
                if not r.passed:
                    lines.append(f"        expected: {r.expected}")
                    lines.append(f"        got:      {r.got}")
        lines.append(
            f"{sum(e.passed for e in report.entries)}/{len(report.entries)} "
            f"entries passed; {report.violations} violation(s)"
        )
        _emit(report.to_dict(), lines, fmt)
        return 0 if (report.passed and report.violations == 0) else 1

    problem = load_problem(args.file)
    seed = config.seed

    if args.command == "length":
        ll = local_length(problem.ideal_named(args.ideal), config)
        _emit(
            {"length": ll.value, "stabilized_at": ll.stabilized_at},
            [f"lambda(A/{args.ideal}) = {ll.value}"],
            fmt,
        )
        return 0

    if args.command == "hilbert":
        _, hs = series(problem.ideal_named(args.ideal), config)
        e = coefficients(hs, validate_ring=problem.ring, config=config)
        _emit(
            _series_payload(hs, e),
            [f"P_{args.ideal}(t) = {hs.display()}"],
            fmt,
        )
        return 0

    if args.command == "coeffs":
        _, hs = series(problem.ideal_named(args.ideal), config)
        e = coefficients(hs, validate_ring=problem.ring, config=config)
        _emit(
            _series_payload(hs, e),
            ["e = (" + ", ".join(str(v) for v in e.e) + ")"],
            fmt,
        )
        return 0

    if args.command == "relcoeffs":
        rc = relative_coefficients(
            problem.ideal_named(args.inner), problem.ideal_named(args.outer), config
        )
        payload = {
            "c": list(rc.c),
            "r": list(rc.r),
            "e_inner": list(rc.e_inner.e),
            "e_outer": list(rc.e_outer.e),
        }
        _emit(
            payload,
            [
                "c = (" + ", ".join(str(v) for v in rc.c) + ")",
                "r(z) coefficients: " + str(list(rc.r)),
            ],
            fmt,
        )
        return 0

    if args.command == "reduction":
        cert = is_reduction(
            problem.ideal_named(args.inner), problem.ideal_named(args.outer),
            config=config,
        )
        _emit(
            {"is_reduction": cert.is_reduction,
             "reduction_number": cert.reduction_number, "note": cert.note},
            [
                f"reduction: {cert.is_reduction}"
                + (f", reduction number {cert.reduction_number}"
                   if cert.is_reduction else f" ({cert.note})")
            ],
            fmt,
        )
        return 0

    if args.command == "rr":
        K = problem.ideal_named(args.ideal)
        res = rr_closure(K, int(args.n), config)
        show = K.ring.show
        payload = {
            "closure": [show(g) for g in res.closure.generators],
            "stabilized_k": res.stabilized_k,
            "new_generators": [show(g) for g in res.new_generators],
        }
        _emit(
            payload,
            [
                f"closure of {args.ideal}^{args.n} stabilized at k = "
                f"{res.stabilized_k}",
                "new generators: "
                + (", ".join(show(g) for g in res.new_generators) or "(none)"),
            ],
            fmt,
        )
        return 0

    if args.command == "cmtest":
        K = problem.ideal_named(args.ideal)
        k = int(args.k) if args.k else K.ring.dim
        _, seq, _ = minimal_reduction(K, seed, config)
        probe = vv_depth_probe(K, k, seq, config=config)
        _emit(
            {"k": probe.k, "verdict": probe.verdict, "witness": probe.witness,
             "checked_range": list(probe.checked_range)},
            [f"depth probe k={k}: {probe.verdict}"
             + (f" (witness n={probe.witness})" if probe.witness else "")],
            fmt,
        )
        return 0

    if args.command == "hmsums":
        sums = hm_sums(
            problem.ideal_named(args.ideal), problem.ideal_named(args.q), config
        )
        _emit(
            {
                "terms_lower": list(sums.terms_lower),
                "terms_upper": list(sums.terms_upper),
                "s_lower": sums.s_lower,
                "s_upper": sums.s_upper,
                "e1": sums.e1,
                "verdicts": list(sums.verdicts),
            },
            [
                f"lower terms {list(sums.terms_lower)} -> {sums.s_lower}",
                f"upper terms {list(sums.terms_upper)} -> {sums.s_upper}",
                f"e1 = {sums.e1}; verdicts: {', '.join(sums.verdicts)}",
            ],
            fmt,
        )
        return 0

    if args.command == "explore":
        n_range = None
        if args.range:
            lo, _, hi = args.range.partition("..")
            n_range = (int(lo), int(hi))
        report = explore_asymptotic(
            problem.ideal_named(args.ideal), n_range=n_range, seed=seed,
            config=config,
        )
        payload = {
            "steps": [
                {
                    "n": s.n,
                    "reduction_number": s.reduction_number,
                    "verdict": s.probe.verdict,
                    "rr_closed": list(s.rr_closed),
                }
                for s in report.steps
            ],
            "first_certified": report.first_certified,
            "persists": report.persists,
        }
        lines = [
            f"n={s.n}: {s.probe.verdict} (reduction number "
            f"{s.reduction_number}, closed powers {list(s.rr_closed)})"
            for s in report.steps
        ]
        lines.append(
            f"first certified power: {report.first_certified}; "
            f"persists through range: {report.persists}"
        )
        _emit(payload, lines, fmt)
        return 0

    if args.command == "verify":
        rep = verify(
            args.theorem,
            problem.ideal_named(args.inner),
            problem.ideal_named(args.outer),
            seed=seed,
            config=config,
        )
        lines = [f"{rep.theorem_id}: {rep.verdict}"]
        for h in rep.hypotheses:
            lines.append(f"  hypothesis {h.name}: {h.status}"
                         + (f" ({h.detail})" if h.detail else ""))
        for note in rep.notes:
            lines.append(f"  note: {note}")
        _emit(rep.to_dict(), lines, fmt)
        return 0 if rep.verdict != "VIOLATION" else 1

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
