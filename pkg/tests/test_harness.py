import io
import json

import pytest

from newton_invariants.core import parse_ideal
from newton_invariants.harness import (
    CHECK_NAMES,
    CSV_COLUMNS,
    FAIL,
    PASS,
    SKIPPED,
    THREADS_ENV,
    HarnessConfig,
    failures,
    instance_rng,
    random_ideal,
    run_checks,
    run_harness,
    thread_count,
    write_csv,
    write_jsonl,
)
from newton_invariants.multiplicity import samuel_multiplicity


def test_config_validation():
    for bad in [dict(n_range=(5,)), dict(max_degree=1), dict(instance_count=0), dict(s_cap=0)]:
        with pytest.raises(ValueError):
            HarnessConfig(**bad)


def test_box_ideals_without_extras():
    cfg = HarnessConfig(extra_generators=0)
    for i in range(5):
        I = random_ideal(cfg, instance_rng(3, i))
        degs = I.pure_powers()
        assert len(I.gens) == I.dim
        prod = 1
        for d in degs:
            prod *= d
        assert samuel_multiplicity(I) == prod


def test_seeded_generation_is_deterministic():
    cfg = HarnessConfig()
    assert random_ideal(cfg, instance_rng(5, 2)) == random_ideal(cfg, instance_rng(5, 2))


def test_briancon_speder_checks():
    res = run_checks(parse_ideal("x^14, y^7, x*y^6, z^4"), HarnessConfig(n_range=(3,)))
    assert {r.check_name for r in res} <= set(CHECK_NAMES)
    assert not failures(res)
    ratio = next(r for r in res if r.check_name == "hickel_ratio")
    assert ratio.lhs == 13 and ratio.rhs == 14 and ratio.verdict == PASS


def test_hickel_equality_case():
    res = run_checks(parse_ideal("x^2, y^3"), HarnessConfig(enable_slow_checks=True))
    eq = [r for r in res if r.check_name == "hickel_equality"]
    assert eq and eq[0].verdict == PASS
    assert eq[0].lhs == eq[0].rhs == 24


def test_slow_check_is_skipped_by_default():
    res = run_checks(parse_ideal("x^2, y^3"), HarnessConfig())
    assert [r.verdict for r in res if r.check_name == "hickel_equality"] == [SKIPPED]


def test_surrogate_label():
    res = run_checks(parse_ideal("x^2, y^3"), HarnessConfig())
    assert all("surrogate" in r.witness for r in res if r.check_name == "lct_k_loj_bound")


def test_run_is_deterministic_and_ordered():
    cfg = HarnessConfig(n_range=(2,), instance_count=4, seed=11)
    a, b = run_harness(cfg, 1), run_harness(cfg, 2)
    assert a == b
    assert [r.index for r in a] == sorted(r.index for r in a)
    assert not failures(a)


def test_writers():
    res = run_harness(HarnessConfig(n_range=(2,), instance_count=1, seed=1), 1)
    buf = io.StringIO()
    write_jsonl(res, buf)
    rows = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert len(rows) == len(res) and set(rows[0]) == set(CSV_COLUMNS)
    buf = io.StringIO()
    write_csv(res, buf)
    assert buf.getvalue().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert all(r["verdict"] in (PASS, FAIL, SKIPPED) for r in rows)


def test_thread_env(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "1")
    assert thread_count() == 1
    monkeypatch.setenv(THREADS_ENV, "junk")
    assert thread_count() == 1
