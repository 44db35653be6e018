"""The invariant panel of one ideal as a JSON-ready dictionary, plus a plain-text rendering."""

from __future__ import annotations

import math
import time
from collections import Counter
from fractions import Fraction

from . import __version__
from .core import MonomialIdeal, parse_ideal, principal_diag, render
from .harness import HarnessConfig, run_checks
from .lct import arnold_index, lct, lct_sequence
from .lojasiewicz import loj_sequence, loj_wrt, ord
from .multiplicity import e_sequence
from .newton import covolume, facet_list, support_value

SCHEMA_VERSION = 1
DECIMAL_PLACES = 12

# closure of the Jacobian ideal in the Briancon-Speder family; its last entries are often quoted as 5
_BRIANCON_SPEDER = parse_ideal("x^14, y^7, x*y^6, z^4")


def decimal_string(q: Fraction, places: int = DECIMAL_PLACES) -> str:
    """Exact truncation of q to ``places`` digits; advisory only."""
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, rem = divmod(q.numerator, q.denominator)
    digits = (rem * 10**places) // q.denominator
    frac = str(digits).rjust(places, "0").rstrip("0")
    return f"{sign}{whole}" + (f".{frac}" if frac else "")


def rational(q) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator, "decimal": decimal_string(q)}


def from_rational(d: dict) -> Fraction:
    return Fraction(d["num"], d["den"])


def _ideal_block(ideal: MonomialIdeal, text: str | None) -> dict:
    return {
        "input": text if text is not None else render(ideal),
        "dim": ideal.dim,
        "generators": [list(g) for g in ideal.gens],
        "rendered": render(ideal),
        "finite_colength": ideal.finite_colength,
    }


def partial_report(ideal: MonomialIdeal, text: str | None = None) -> dict:
    """Order and diagonal support value only; valid for ideals of infinite colength."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "newton-invariants", "version": __version__},
        "partial": True,
        "ideal": _ideal_block(ideal, text),
        "ord": ord(ideal),
        "support_diag": rational(support_value((1,) * ideal.dim, ideal)),
        "notes": ["infinite colength: multiplicities, exponents and thresholds are not defined"],
    }


def invariant_report(
    ideal: MonomialIdeal,
    text: str | None = None,
    facets: bool = False,
    with_covolume: bool = False,
    checks: bool = True,
) -> dict:
    """Full panel; ``facets`` and ``with_covolume`` add dimension-gated diagnostics."""
    start = time.perf_counter()
    n = ideal.dim
    L = loj_sequence(ideal)
    lseq = lct_sequence(ideal)
    l_diag = loj_wrt(ideal, principal_diag(n))
    t = lct(ideal)
    out: dict = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "newton-invariants", "version": __version__},
        "partial": False,
        "ideal": _ideal_block(ideal, text),
        "ord": ord(ideal),
        "e_sequence": list(e_sequence(ideal)),
        "loj_sequence": {
            "order": "L^(n), ..., L^(1)",
            "values": [rational(v) for v in L.values],
            "witnesses": [w.one_based() for w in L.witnesses],
        },
        "loj_wrt_diag": rational(l_diag),
        "lct": rational(t),
        "lct_sequence": {
            "order": "lct^(n), ..., lct^(1)",
            "values": [rational(v) for v in lseq.values],
            "witnesses": [
                {
                    "k": n - j,
                    "pinned": w.pinned.one_based(),
                    "weights": [rational(a) for a in w.weights],
                    "binding": [list(g) for g in w.binding],
                }
                for j, w in enumerate(lseq.witnesses)
            ],
        },
        "arnold_index": rational(arnold_index(ideal)),
        "duality_product": rational(t * l_diag),
    }
    if facets:
        out["facets"] = [{"normal": list(a), "offset": b} for a, b in facet_list(ideal)]
    if with_covolume:
        vol = covolume(ideal)
        out["covolume"] = rational(vol)
        out["covolume_times_factorial"] = rational(math.factorial(n) * vol)
    notes = []
    if ideal == _BRIANCON_SPEDER:
        notes.append(
            "the values (14, 7, 5) and a multiplicity sequence ending in 5 quoted for this ideal disagree with "
            f"the restriction formula, which gives L^(1) = ord = {L.entry(1)}; suspected typo, computed value reported"
        )
    if checks:
        results = run_checks(ideal, HarnessConfig(n_range=(n,) if n in (2, 3, 4) else (2,)))
        counts = Counter(r.verdict for r in results)
        out["checks"] = {
            "pass": counts.get("pass", 0),
            "fail": counts.get("fail", 0),
            "skipped": counts.get("skipped", 0),
            "failed": sorted({r.check_name for r in results if r.verdict == "fail"}),
        }
        notes.append("lct_k_loj_bound uses the surrogate exponent with J^r added to every entry and m padding")
    out["notes"] = notes
    out["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    return out


def _fmt(v) -> str:
    if isinstance(v, dict) and "num" in v:
        return str(Fraction(v["num"], v["den"]))
    if isinstance(v, list):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def pretty(report: dict) -> str:
    """Plain table with the same exact values as the JSON form."""
    rows = [("ideal", report["ideal"]["rendered"]), ("dim", report["ideal"]["dim"]),
            ("finite colength", report["ideal"]["finite_colength"]), ("ord", report["ord"])]
    if report.get("partial"):
        rows.append(("support (1,...,1)", _fmt(report["support_diag"])))
    else:
        rows += [
            ("e_0..e_n", _fmt(report["e_sequence"])),
            ("L* = L^(n)..L^(1)", _fmt(report["loj_sequence"]["values"])),
            ("L* witnesses", _fmt(report["loj_sequence"]["witnesses"])),
            ("L wrt x1...xn", _fmt(report["loj_wrt_diag"])),
            ("lct", _fmt(report["lct"])),
            ("lct* = lct^(n)..lct^(1)", _fmt(report["lct_sequence"]["values"])),
            ("arnold index", _fmt(report["arnold_index"])),
            ("lct * L wrt x1...xn", _fmt(report["duality_product"])),
        ]
        for w in report["lct_sequence"]["witnesses"]:
            rows.append((f"lct^({w['k']}) witness", f"pinned {w['pinned']} a={_fmt(w['weights'])}"))
        if "facets" in report:
            rows.append(("facets", "; ".join(f"{f['normal']} >= {f['offset']}" for f in report["facets"])))
        if "covolume" in report:
            rows.append(("covolume", _fmt(report["covolume"])))
        if "checks" in report:
            c = report["checks"]
            rows.append(("checks", f"{c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped"))
    for note in report.get("notes", []):
        rows.append(("note", note))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"
