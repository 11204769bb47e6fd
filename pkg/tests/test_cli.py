import json
import subprocess
import sys

import pytest

from bethe_weights import harness
from bethe_weights.checks import CHECKS
from bethe_weights.cli import main
from bethe_weights.harness import ConfigInvalid, RunConfig, compute, run
from bethe_weights.scalars import SamplingExhausted


def test_yang_baxter_five_records():
    report = run(RunConfig(2, checks=("yang-baxter",), trials=5))
    assert len(report.records) == 5
    assert report.passed
    assert len({r.seed for r in report.records}) == 5


def test_weight_equality_record():
    report = run(RunConfig(3, 2, (1, 2), trials=3, checks=("main-theorem",)))
    assert report.passed
    assert all(r.witness is None for r in report.records)


@pytest.mark.parametrize("kwargs", [
    dict(N=2, pattern=(2,)),
    dict(N=1),
    dict(N=3, trials=0),
    dict(N=3, checks=("nope",)),
    dict(N=3, seeds=()),
])
def test_invalid_configs(kwargs):
    with pytest.raises(ConfigInvalid):
        run(RunConfig(**kwargs))


def test_records_sorted_by_check_then_seed():
    config = RunConfig(2, 1, (1,), seeds=(3, 1), trials=2, checks=("main-theorem", "inversion"))
    names = [r.check for r in run(config).records]
    assert names == ["inversion"] * 4 + ["main-theorem"] * 4


def test_failure_produces_witness(monkeypatch):
    def broken(N, factors, pattern, pt):
        return [("always-off", pt.q, pt.q + 1)]

    monkeypatch.setitem(CHECKS, "yang-baxter", broken)
    report = run(RunConfig(2, checks=("yang-baxter",)))
    assert not report.passed
    w = report.records[0].witness
    assert w["comparison"] == "always-off"
    assert "/" in w["lhs"] or w["lhs"].lstrip("-").isdigit()


def test_resampling_and_exhaustion(monkeypatch):
    calls = []

    def flaky(N, factors, pattern, pt):
        calls.append(pt.seed)
        if len(calls) < 3:
            raise ZeroDivisionError
        return []

    monkeypatch.setitem(CHECKS, "inversion", flaky)
    report = run(RunConfig(2, checks=("inversion",)))
    assert report.passed and len(calls) == 3
    assert report.records[0].seed == calls[-1]

    def hopeless(N, factors, pattern, pt):
        raise ZeroDivisionError

    monkeypatch.setitem(CHECKS, "inversion", hopeless)
    with pytest.raises(SamplingExhausted):
        run(RunConfig(2, checks=("inversion",)))


def test_compute_examples():
    doc = json.loads(compute("bethe", RunConfig(3, 2), 0))
    assert doc["components"] == [{"index": 0, "numerator": "1", "denominator": "1"}]
    config = RunConfig(3, 2, (1, 2, 1))
    a = compute("bethe", config, 5)
    assert len(json.loads(a)["components"]) > 0
    assert a == compute("projection", config, 5) == compute("bethe", config, 5)
    with pytest.raises(ConfigInvalid):
        compute("other", config, 5)


def test_timing_is_opt_in():
    plain = run(RunConfig(2, checks=("inversion",)))
    timed = run(RunConfig(2, checks=("inversion",), timing=True))
    assert plain.records[0].millis is None
    assert isinstance(timed.records[0].millis, int)


def test_cli_exit_codes(capsys, tmp_path):
    assert main(["run", "--n", "2", "--checks", "yang-baxter", "--trials", "2"]) == 0
    assert "PASS yang-baxter" in capsys.readouterr().out
    assert main(["run", "--n", "2", "--pattern", "2"]) == 2
    assert main(["run", "--n", "x"]) == 2
    assert main(["run", "--n", "2", "--checks", "bogus"]) == 2
    out = tmp_path / "report.json"
    code = main(["run", "--n", "3", "--factors", "2", "--pattern", "1,2", "--checks", "main-theorem",
                 "--emit", "machine", "--seed", "4", "--seed", "9", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["pass"] is True
    assert doc["config"]["seeds"] == [4, 9]
    assert set(doc["records"][0]) == {"check", "params", "seed", "pass", "witness", "millis"}


def test_cli_failure_and_exhaustion(monkeypatch, capsys):
    monkeypatch.setitem(CHECKS, "inversion", lambda N, f, p, pt: [("x", pt.q, pt.q * 2)])
    assert main(["run", "--n", "2", "--checks", "inversion"]) == 1
    assert "witness" in capsys.readouterr().out

    def hopeless(N, factors, pattern, pt):
        raise ZeroDivisionError

    monkeypatch.setitem(CHECKS, "inversion", hopeless)
    assert main(["run", "--n", "2", "--checks", "inversion"]) == 3


def test_cli_compute(capsys):
    assert main(["compute", "bethe", "--n", "2", "--factors", "1", "--pattern", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dimension"] == 2
    assert [c["index"] for c in doc["components"]] == [1]


def test_module_entry_point(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        proc = subprocess.run(
            [sys.executable, "-m", "bethe_weights.cli", "run", "--n", "2", "--factors", "2", "--pattern", "1,1",
             "--checks", "coproduct,main-theorem", "--trials", "2", "--emit", "machine", "--out", str(path)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_default_suite_shape():
    configs = harness.default_suite()
    assert {c.N for c in configs} == {2, 3}
    assert all(len(c.pattern) <= 2 and c.num_factors <= 2 and c.trials == 5 for c in configs)


def test_default_suite_passes():
    reports = [run(c) for c in harness.default_suite()]
    assert all(r.passed for r in reports)
    assert {r.check for rep in reports for r in rep.records} == set(CHECKS)
