import json

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from q8mackey import cache as cache_mod
from q8mackey.builders import Grading
from q8mackey.cache import CACHE_ENV, ResultCache, record_key
from q8mackey.cli import EXIT_BUDGET, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE, main, parse_range
from q8mackey.records import (
    CoefficientRecord,
    compute_record,
    dumps_json,
    parse_markdown,
    render_markdown,
    schema,
)


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path / "cache"))
    return tmp_path / "cache"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_range():
    assert parse_range("-2..2") == range(-2, 3)
    assert parse_range("4") == range(4, 5)
    for bad in ("2..1", "a..b", "1...2", ""):
        with pytest.raises(Exception):
            parse_range(bad)


def test_table_json_validates(capsys):
    code, out, _ = run(capsys, "table", "--k", "0..2", "--l", "0..2", "--m", "-2..2", "--n", "-1..1",
                       "--q", "-2..2", "--format", "json")
    assert code == EXIT_PASS
    data = json.loads(out)
    jsonschema.validate(data, schema())
    assert len(data) == 3 * 3 * 5 * 3 * 5
    keys = [(r["grading"]["k"], r["grading"]["l"], r["grading"]["m"], r["grading"]["n"], r["grading"]["q"])
            for r in data]
    assert keys == sorted(keys)


def test_single_cell_queries(capsys):
    _, out, _ = run(capsys, "table", "--engine", "cellular")
    assert json.loads(out)[0]["value"] == {"rank": 1, "torsion": []}
    _, out, _ = run(capsys, "table", "--n", "2", "--q", "3", "--engine", "cellular")
    assert json.loads(out)[0]["value"] == {"rank": 0, "torsion": []}


def test_markdown_round_trip(capsys):
    code, out, _ = run(capsys, "table", "--k", "-1..1", "--m", "0..1", "--n", "1", "--q", "0..3",
                       "--mode", "both", "--format", "markdown", "--engine", "closed-form")
    assert code == EXIT_PASS
    records = parse_markdown(out)
    assert render_markdown(records) == out
    assert {r.provenance for r in records} <= {"closed-form", "outside-published-table"}


def test_usage_errors(capsys):
    assert run(capsys, "table", "--k", "0..x")[0] == EXIT_USAGE
    assert run(capsys, "verify", "nonsense")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_budget_exit(capsys):
    code, _, err = run(capsys, "table", "--engine", "cellular", "--k", "5", "--l", "5", "--n", "2", "--budget", "5")
    assert code == EXIT_BUDGET and "budget" in err


def test_cache_hit_skips_builders(capsys, monkeypatch):
    argv = ("table", "--n", "0..1", "--q", "0..2", "--stats")
    _, first, err1 = run(capsys, *argv)
    assert json.loads(err1)["misses"] == 6

    def boom(*a, **k):
        raise AssertionError("builders invoked on a cache hit")

    monkeypatch.setattr("q8mackey.cli.compute_record", boom)
    _, second, err2 = run(capsys, *argv)
    assert second == first and json.loads(err2)["hits"] == 6


def test_clear_then_recompute_is_byte_identical(capsys):
    argv = ("table", "--k", "0..1", "--m", "-1..1", "--n", "0..1", "--q", "0..2")
    _, first, _ = run(capsys, *argv)
    code, out, _ = run(capsys, "cache", "--clear")
    assert code == EXIT_PASS and json.loads(out)["cleared"] > 0
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_parallel_output_is_identical(capsys):
    argv = ("table", "--k", "0..1", "--l", "0..1", "--n", "0..1", "--q", "-1..2", "--no-cache")
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "3")
    assert serial == parallel


def test_corrupt_entry_is_evicted(capsys, cache_dir):
    run(capsys, "table", "--q", "0")
    c = ResultCache(cache_dir)
    (path,) = c.entries()
    path.write_text("{not json")
    code, out, err = run(capsys, "table", "--q", "0", "--stats")
    assert code == EXIT_PASS and json.loads(out)[0]["grading"]["q"] == 0
    assert "evicted" in err and json.loads(err.splitlines()[0])["evicted"] == 1


def test_tampered_entry_is_evicted(cache_dir):
    c = ResultCache(cache_dir)
    key = {"grading": [0, 0, 0, 0, 0], "mode": "homology", "engine": "theorem"}
    c.put(key, {"x": 1})
    (path,) = c.entries()
    entry = json.loads(path.read_text())
    entry["record"]["x"] = 2
    path.write_text(json.dumps(entry))
    assert c.get(key) is None and c.stats.evicted
    assert not path.exists()


def test_version_change_invalidates(cache_dir):
    key = {"k": 1}
    ResultCache(cache_dir, version="aaaa").put(key, {"v": 1})
    fresh = ResultCache(cache_dir, version="bbbb")
    assert fresh.get(key) is None
    assert fresh.stale_versions() == ["aaaa"]
    assert fresh.prune_stale() == 1 and fresh.stale_versions() == []


def test_engine_version_tracks_sources():
    v = cache_mod.engine_version()
    assert len(v) == 16 and v == cache_mod.engine_version()


def test_cache_stats_and_verify(capsys):
    run(capsys, "table", "--q", "0..1")
    code, out, _ = run(capsys, "cache", "--stats", "--verify")
    data = json.loads(out)
    assert code == EXIT_PASS and data["stats"]["entries"] == 2 and data["verify"]["valid"] == 2


@given(st.lists(st.integers(-3, 3), min_size=5, max_size=5), st.sampled_from(["homology", "cohomology"]))
def test_record_json_round_trip(g, mode):
    rec = compute_record(Grading(*g), mode)
    assert CoefficientRecord.from_json(rec.to_json()) == rec
    jsonschema.validate([rec.to_json()], schema())


def test_record_keys_are_content_addressed():
    a = record_key({"mode": "homology", "grading": [1, 2, 3, 4, 5]})
    b = record_key({"grading": [1, 2, 3, 4, 5], "mode": "homology"})
    assert a == b and a != record_key({"grading": [1, 2, 3, 4, 6], "mode": "homology"})


def test_dumps_json_is_sorted():
    recs = [compute_record(Grading(0, 0, 0, 0, q)) for q in (2, 0, 1)]
    assert [r["grading"]["q"] for r in json.loads(dumps_json(recs))] == [0, 1, 2]


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "props", "--n-max", "1", "--m-max", "1")
    assert code == EXIT_MISMATCH and "A-family closed forms" in out
    code, _, err = run(capsys, "verify", "oracle", "--k-max", "3", "--n-max", "2", "--budget", "1")
    assert code == EXIT_BUDGET


def test_verify_json_report(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "lemma", "--n-max", "2", "--report", str(report))
    data = json.loads(report.read_text())
    assert code == EXIT_MISMATCH and data["pass"] is False
    names = {c["name"]: c["pass"] for c in data["suites"]["lemma"]}
    assert names["d∘d = 0 on constructed complexes"] and names["S(nρ) homology table"]
    assert not names["fixed differentials under ⟨ij⟩"]
