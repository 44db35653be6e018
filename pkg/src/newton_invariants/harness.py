"""Randomized finite-colength monomial ideals and checks of every inequality and equality on them."""

from __future__ import annotations

import csv
import json
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import (
    IdealError,
    MonomialIdeal,
    ideal_power,
    ideal_sum,
    maximal_ideal,
    principal_diag,
    render,
)
from .lct import lct, lct_compare, lct_k, lct_sequence
from .lojasiewicz import loj_oracle_L0, loj_relative_oracle, loj_relative_wrt, loj_sequence, loj_wrt, ord
from .multiplicity import mixed_value, relative_multiplicity, samuel_multiplicity
from .newton import closure_member, covolume

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
TIGHT_RATIO = Fraction(1, 20)
THREADS_ENV = "NEWTON_INVARIANTS_THREADS"

CHECK_NAMES = (
    "chain_loj",
    "chain_lct",
    "hickel_ratio",
    "hickel_equality",
    "mult_bound",
    "hickel_product",
    "lct_ord_bounds",
    "lct_loj_duality",
    "lct_k_loj_bound",
    "lct_comparison",
    "mono_mixed",
    "chain_lemma",
    "oracle_loj",
    "oracle_mult",
)

CSV_COLUMNS = ("seed", "index", "check", "verdict", "tight", "lhs", "rhs", "ideals", "witness")


@dataclass(frozen=True)
class HarnessConfig:
    n_range: tuple[int, ...] = (2, 3)
    max_degree: int = 8
    extra_generators: int = 4
    instance_count: int = 10
    seed: int = 0
    s_cap: int = 2
    enable_slow_checks: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_range", tuple(self.n_range))
        if not self.n_range or not set(self.n_range) <= {2, 3, 4}:
            raise ValueError("n_range must be a nonempty subset of {2, 3, 4}")
        if self.max_degree < 2:
            raise ValueError("max_degree must be at least 2")
        if self.instance_count < 1:
            raise ValueError("instance_count must be at least 1")
        if self.extra_generators < 0 or self.s_cap < 1:
            raise ValueError("extra_generators must be >= 0 and s_cap >= 1")


@dataclass(frozen=True)
class CheckResult:
    check_name: str
    ideals: tuple[str, ...]
    lhs: Fraction | None
    rhs: Fraction | None
    verdict: str
    witness: str = ""
    seed: int | None = None
    index: int | None = None
    tight: bool = False

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "index": self.index,
            "check": self.check_name,
            "verdict": self.verdict,
            "tight": self.tight,
            "lhs": None if self.lhs is None else str(self.lhs),
            "rhs": None if self.rhs is None else str(self.rhs),
            "ideals": list(self.ideals),
            "witness": self.witness,
        }


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def random_ideal(cfg: HarnessConfig, rng: random.Random, n: int | None = None) -> MonomialIdeal:
    """Pure powers x_i^{d_i} with d_i in [2, max_degree] plus up to ``extra_generators`` points below the box."""
    if n is None:
        n = rng.choice(cfg.n_range)
    degs = [rng.randint(2, cfg.max_degree) for _ in range(n)]
    gens = [tuple(d * int(i == j) for j in range(n)) for i, d in enumerate(degs)]
    for _ in range(rng.randint(0, cfg.extra_generators)):
        g = tuple(rng.randrange(d) for d in degs)
        if any(g):
            gens.append(g)
    return MonomialIdeal.from_gens(gens, n)


def _superset(ideal: MonomialIdeal, rng: random.Random, cfg: HarnessConfig) -> MonomialIdeal:
    """I plus one extra monomial; half the time it is taken from the integral closure of I."""
    n = ideal.dim
    degs = ideal.pure_powers()
    want_closure = rng.random() < 0.5
    for _ in range(50):
        k = tuple(rng.randrange(d) for d in degs)
        if any(k) and not ideal.contains(k) and closure_member(k, ideal) == want_closure:
            return ideal_sum(ideal, MonomialIdeal.from_gens([k], n))
    return ideal_sum(ideal, random_ideal(cfg, rng, n))


def _tight(lhs: Fraction, rhs: Fraction) -> bool:
    if rhs == lhs:
        return True
    scale = max(abs(lhs), abs(rhs))
    return scale != 0 and abs(rhs - lhs) <= TIGHT_RATIO * scale


def _chain(values: Sequence[Fraction]) -> tuple[bool, Fraction, Fraction, int]:
    """Whether values are nondecreasing, with the tightest consecutive pair."""
    gaps = [(values[i + 1] - values[i], i) for i in range(len(values) - 1)]
    gap, i = min(gaps)
    return gap >= 0, values[i], values[i + 1], i + 1


class _Collector:
    def __init__(self, names: tuple[str, ...], seed, index):
        self.names = names
        self.seed = seed
        self.index = index
        self.out: list[CheckResult] = []

    def add(self, name: str, ok: bool, lhs=None, rhs=None, witness: str = "", ideals=None) -> None:
        tight = lhs is not None and rhs is not None and _tight(Fraction(lhs), Fraction(rhs))
        self.out.append(
            CheckResult(
                name,
                tuple(ideals or self.names),
                None if lhs is None else Fraction(lhs),
                None if rhs is None else Fraction(rhs),
                PASS if ok else FAIL,
                witness,
                self.seed,
                self.index,
                tight,
            )
        )

    def skip(self, name: str, reason: str) -> None:
        self.out.append(CheckResult(name, self.names, None, None, SKIPPED, reason, self.seed, self.index))

    def guard(self, name: str, fn: Callable[[], None]) -> None:
        # failures are data: an exception inside a check becomes a fail record
        try:
            fn()
        except Exception as exc:  # noqa: BLE001
            self.out.append(
                CheckResult(name, self.names, None, None, FAIL, f"{type(exc).__name__}: {exc}", self.seed, self.index)
            )


def run_checks(
    ideal: MonomialIdeal,
    cfg: HarnessConfig,
    rng: random.Random | None = None,
    seed: int | None = None,
    index: int | None = None,
) -> list[CheckResult]:
    """Every check on ``ideal``; companion ideals for pair checks are drawn from ``rng``."""
    if not ideal.finite_colength:
        raise IdealError("harness checks need a finite-colength ideal")
    if rng is None:
        rng = random.Random(0)
    n = ideal.dim
    m = maximal_ideal(n)
    diag = principal_diag(n)
    col = _Collector((render(ideal),), seed, index)
    other = random_ideal(cfg, rng, n)
    sup = _superset(ideal, rng, cfg)
    sup_other = ideal_sum(other, random_ideal(cfg, rng, n))

    e = (1,) + tuple(relative_multiplicity(ideal, i) for i in range(1, n + 1))
    L = loj_sequence(ideal)
    Lasc = L.ascending()
    L0 = L.entry(n)
    lseq = lct_sequence(ideal)
    o = ord(ideal)

    def chain_loj():
        ok, a, b, i = _chain(Lasc)
        col.add("chain_loj", ok, a, b, f"L^({i}) <= L^({i + 1}); ascending {[str(v) for v in Lasc]}")

    def chain_lct():
        ok, a, b, k = _chain(lseq.ascending())
        col.add("chain_lct", ok, a, b, f"lct^({k}) <= lct^({k + 1}); ascending {[str(v) for v in lseq.ascending()]}")

    def hickel_ratio():
        lhs = Fraction(e[n], e[n - 1])
        col.add("hickel_ratio", lhs <= L0, lhs, L0, f"e={e[n]} e_(n-1)={e[n - 1]}")

    def hickel_equality():
        if not cfg.enable_slow_checks:
            col.skip("hickel_equality", "slow checks disabled")
            return
        if n != 2 or e[n] > 12:
            col.skip("hickel_equality", "gated to n = 2 and e <= 12")
            return
        lhs = e[n - 1] ** n * e[n]
        rhs = samuel_multiplicity(ideal_sum(ideal_power(ideal, e[n - 1]), ideal_power(m, e[n])))
        ratio_attained = Fraction(e[n], e[n - 1]) == L0
        ok = ratio_attained == (lhs == rhs)
        col.add("hickel_equality", ok, lhs, rhs, f"ratio attains L0: {ratio_attained}")

    def mult_bound():
        col.add("mult_bound", e[n] <= L0**n, e[n], L0**n, f"L0={L0}")

    def hickel_product():
        rhs = math.prod(Lasc)
        col.add("hickel_product", e[n] <= rhs, e[n], rhs, "reference ideal m, e(m)=1")

    def lct_ord_bounds():
        v = lct(ideal)
        ok = Fraction(1, o) <= v <= Fraction(n, o)
        # the nearer bound decides tightness
        lhs, rhs = (Fraction(1, o), v) if v - Fraction(1, o) <= Fraction(n, o) - v else (v, Fraction(n, o))
        col.add("lct_ord_bounds", ok, lhs, rhs, f"1/ord={Fraction(1, o)} lct={v} n/ord={Fraction(n, o)}")

    def lct_loj_duality():
        prod = lct_k(ideal, n) * loj_wrt(ideal, diag)
        col.add("lct_loj_duality", prod == 1, prod, 1, "pinned-subset program times diagonal gauge")

    def lct_k_loj_bound():
        best = None
        for k in range(1, n):
            lhs = 1 - Fraction(k, n)
            rhs = lseq.entry(n - k) * loj_relative_wrt(ideal, diag, n - k, cfg.s_cap)
            if best is None or rhs - lhs < best[1] - best[0]:
                best = (lhs, rhs, k)
            if lhs > rhs:
                best = (lhs, rhs, k)
                break
        lhs, rhs, k = best
        col.add("lct_k_loj_bound", lhs <= rhs, lhs, rhs, f"surrogate exponent, k={k}, s_cap={cfg.s_cap}")

    def lct_comparison():
        for a, b in ((ideal, other), (other, ideal)):
            lhs, rhs = lct_compare(a, b)
            col.add("lct_comparison", lhs <= rhs, lhs, rhs, "lct(I) <= L_I(J) lct(J)", (render(a), render(b)))

    def mono_mixed():
        e_sup = [relative_multiplicity(sup, i) for i in range(1, n + 1)]
        for i in range(1, n + 1):
            col.add("mono_mixed", e[i] >= e_sup[i - 1], e_sup[i - 1], e[i], f"e_{i}(J) <= e_{i}(I), I inside J",
                    (render(ideal), render(sup)))
        big = mixed_value((ideal,) + (other,) * (n - 1))
        small = mixed_value((sup,) + (sup_other,) * (n - 1))
        col.add("mono_mixed", big >= small, small, big, "mixed tuple, entrywise inclusion",
                (render(ideal), render(other), render(sup), render(sup_other)))

    def chain_lemma():
        e_sup = (1,) + tuple(relative_multiplicity(sup, i) for i in range(1, n + 1))
        ok = all(e[i] == e_sup[i] for i in range(n) if e[i + 1] == e_sup[i + 1])
        premises = [i for i in range(n) if e[i + 1] == e_sup[i + 1]]
        detail = f"e(I)={list(e)} e(J)={list(e_sup)} premise at i={premises}"
        col.add("chain_lemma", ok, None, None, detail, (render(ideal), render(sup)))

    def oracle_loj():
        for i in range(1, n + 1):
            v = loj_relative_oracle(ideal, i, 1)
            col.add("oracle_loj", v == L.entry(i), v, L.entry(i), f"reduction number at s=1, i={i}")
        lo = loj_oracle_L0(ideal, cfg.s_cap)
        col.add("oracle_loj", lo == L0, lo, L0, f"layer oracle over s <= {cfg.s_cap}")
        lw = loj_wrt(ideal, m)
        col.add("oracle_loj", lw == L0, lw, L0, "largest axis gauge")

    def oracle_mult():
        if n > 3:
            col.skip("oracle_mult", "covolume limited to n <= 3")
            return
        vol = math.factorial(n) * covolume(ideal)
        col.add("oracle_mult", e[n] == vol, e[n], vol, "finite differences vs n! covolume")

    for name, fn in zip(
        CHECK_NAMES,
        (chain_loj, chain_lct, hickel_ratio, hickel_equality, mult_bound, hickel_product, lct_ord_bounds,
         lct_loj_duality, lct_k_loj_bound, lct_comparison, mono_mixed, chain_lemma, oracle_loj, oracle_mult),
    ):
        col.guard(name, fn)
    return col.out


def _instance(args: tuple[HarnessConfig, int]) -> list[CheckResult]:
    cfg, index = args
    rng = instance_rng(cfg.seed, index)
    ideal = random_ideal(cfg, rng)
    return run_checks(ideal, cfg, rng, cfg.seed, index)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    cpus = os.cpu_count() or 1
    if raw is None:
        return cpus
    try:
        return max(1, min(int(raw), cpus))
    except ValueError:
        return 1


def run_harness(cfg: HarnessConfig, workers: int | None = None) -> list[CheckResult]:
    """Results ordered by (seed, index) whatever the worker count."""
    workers = thread_count() if workers is None else workers
    jobs = [(cfg, i) for i in range(cfg.instance_count)]
    if workers <= 1:
        chunks = [_instance(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_instance, jobs))
    return [r for chunk in chunks for r in chunk]


def failures(results: Iterable[CheckResult]) -> list[CheckResult]:
    return [r for r in results if r.verdict == FAIL]


def write_jsonl(results: Iterable[CheckResult], stream) -> None:
    for r in results:
        stream.write(json.dumps(r.as_dict(), sort_keys=True) + "\n")


def write_csv(results: Iterable[CheckResult], stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        d = r.as_dict()
        w.writerow(["" if d[c] is None else (";".join(d[c]) if c == "ideals" else d[c]) for c in CSV_COLUMNS])
