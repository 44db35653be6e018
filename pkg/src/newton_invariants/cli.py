"""Command line: invariants, check, member, facets, covolume."""

from __future__ import annotations

import argparse
import io
import json
import sys
from collections import Counter

from .core import IdealError, InfiniteColengthError, ParseError, UnsupportedDimensionError, parse_ideal
from .harness import HarnessConfig, failures, run_harness, write_csv, write_jsonl
from .newton import MAX_COVOLUME_DIM, MAX_FACET_DIM, closure_witness, covolume, facet_list
from .report import invariant_report, partial_report, pretty, rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INFINITE, EXIT_DIMENSION = 0, 1, 2, 3, 4

GRAMMAR = """ideal syntax:
  monomials  "x^2, y^3"  or  "x1^14, x2^7, x1*x2^6, x3^4"
             variables x1..xn, aliases x y z w for the first four; '^' power, '*' product, ',' separator
  exponents  "[[14,0,0],[0,7,0],[1,6,0],[0,0,4]]"
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(f"{self.prog}: error: {message}")


class _Usage(Exception):
    pass


def _n_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension list {text!r}") from None
    if not vals or not set(vals) <= {2, 3, 4}:
        raise argparse.ArgumentTypeError("dimensions must be drawn from 2, 3, 4")
    return vals


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="newton-invariants",
        description="Exact invariants of monomial ideals.",
        epilog=GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    inv = sub.add_parser("invariants", help="full invariant panel as JSON", epilog=GRAMMAR,
                         formatter_class=argparse.RawDescriptionHelpFormatter)
    inv.add_argument("ideal")
    inv.add_argument("--dim", type=_positive)
    inv.add_argument("--pretty", action="store_true", help="plain table instead of JSON")
    inv.add_argument("--partial", action="store_true", help="allow infinite colength (order and support only)")
    inv.add_argument("--facets", action="store_true", help=f"include bounded facets (n <= {MAX_FACET_DIM})")
    inv.add_argument("--covolume", action="store_true", help=f"include the covolume (n <= {MAX_COVOLUME_DIM})")
    inv.add_argument("--no-checks", action="store_true", help="skip the per-ideal check summary")

    chk = sub.add_parser("check", help="randomized checks of all inequalities")
    chk.add_argument("--n", type=_n_list, default=(2, 3))
    chk.add_argument("--count", type=_positive, default=20)
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--max-degree", type=int, default=8)
    chk.add_argument("--extra", type=int, default=4, help="maximum extra generators per ideal")
    chk.add_argument("--s-cap", type=_positive, default=2)
    chk.add_argument("--slow", action="store_true", help="enable the slow checks")
    chk.add_argument("--out", help="result file; .csv gives CSV, anything else JSON lines (default stdout)")
    chk.add_argument("--workers", type=_positive)

    mem = sub.add_parser("member", help="integral-closure membership with a convex witness")
    mem.add_argument("monomial")
    mem.add_argument("ideal")
    mem.add_argument("--dim", type=_positive)

    fac = sub.add_parser("facets", help="bounded facets of the Newton polyhedron")
    fac.add_argument("ideal")
    fac.add_argument("--dim", type=_positive)

    cov = sub.add_parser("covolume", help="volume below the Newton polyhedron")
    cov.add_argument("ideal")
    cov.add_argument("--dim", type=_positive)
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _invariants(a) -> tuple[int, str]:
    ideal = parse_ideal(a.ideal, a.dim)
    if not ideal.finite_colength:
        if not a.partial:
            return EXIT_INFINITE, f"ideal {ideal} has infinite colength (use --partial)\n"
        rep = partial_report(ideal, a.ideal)
    else:
        if a.facets and ideal.dim > MAX_FACET_DIM:
            return EXIT_DIMENSION, f"facets need dimension <= {MAX_FACET_DIM}\n"
        if a.covolume and ideal.dim > MAX_COVOLUME_DIM:
            return EXIT_DIMENSION, f"covolume needs dimension <= {MAX_COVOLUME_DIM}\n"
        rep = invariant_report(ideal, a.ideal, a.facets, a.covolume, not a.no_checks)
    return EXIT_OK, pretty(rep) if a.pretty else _dump(rep)


def _check(a) -> tuple[int, str]:
    try:
        cfg = HarnessConfig(a.n, a.max_degree, a.extra, a.count, a.seed, a.s_cap, a.slow)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    results = run_harness(cfg, a.workers)
    buf = io.StringIO()
    if a.out and a.out.endswith(".csv"):
        write_csv(results, buf)
    else:
        write_jsonl(results, buf)
    counts = Counter(r.verdict for r in results)
    summary = (f"{cfg.instance_count} instances: {counts.get('pass', 0)} pass, {counts.get('fail', 0)} fail, "
               f"{counts.get('skipped', 0)} skipped, {sum(r.tight for r in results)} tight\n")
    if a.out:
        with open(a.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
        text = summary
    else:
        text = buf.getvalue()
        sys.stderr.write(summary)
    return (EXIT_FAIL if failures(results) else EXIT_OK), text


def _member(a) -> tuple[int, str]:
    ideal = parse_ideal(a.ideal, a.dim)
    mono = parse_ideal(a.monomial, ideal.dim)
    if len(mono.gens) != 1:
        raise _Usage("member expects a single monomial")
    k = mono.gens[0]
    w = closure_witness(k, ideal)
    out = {
        "monomial": list(k),
        "ideal": [list(g) for g in ideal.gens],
        "member": w is not None,
        "witness": None if w is None else [rational(x) for x in w],
    }
    return EXIT_OK, _dump(out)


def _facets(a) -> tuple[int, str]:
    ideal = parse_ideal(a.ideal, a.dim)
    return EXIT_OK, _dump([{"normal": list(n), "offset": b} for n, b in facet_list(ideal)])


def _covolume(a) -> tuple[int, str]:
    ideal = parse_ideal(a.ideal, a.dim)
    return EXIT_OK, _dump(rational(covolume(ideal)))


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
        code, text = {"invariants": _invariants, "check": _check, "member": _member,
                      "facets": _facets, "covolume": _covolume}[a.command](a)
    except _Usage as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except InfiniteColengthError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_INFINITE
    except UnsupportedDimensionError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_DIMENSION
    except IdealError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    # output is written once, at the end
    stream = sys.stdout if code in (EXIT_OK, EXIT_FAIL) else sys.stderr
    stream.write(text)
    stream.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
