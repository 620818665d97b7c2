import io
import json
import logging

import pytest

from tangentcones.cache import ConeCache
from tangentcones.cli import main
from tangentcones.verify import parse_corpus


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("TANGENTCONES_CACHE_DIR", str(tmp_path / "cache"))
    return tmp_path / "cache"


def test_compute_example():
    code, out = run("compute", "--rank", "3", "--w", "(13)(24)")
    assert code == 0
    assert "  x41\n" in out and "  x43*x31 + x42*x21\n" in out
    assert "length: 4" in out and "dimension: 4" in out


def test_compute_identity_json():
    code, out = run("compute", "--rank", "2", "--w", "e", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert rec["generators"] == ["x21", "x31", "x32"]
    assert rec["one_line"] == [1, 2, 3] and rec["length"] == 0 and rec["cone_class_id"] is None


def test_compute_bad_point(capsys):
    code, _ = run("compute", "--rank", "3", "--w", "(16)")
    assert code == 2
    assert "out of range" in capsys.readouterr().err


def test_usage_errors():
    assert run("compute", "--rank", "0", "--w", "e")[0] == 2
    assert run("table", "--rank", "2", "--jobs", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        run("verify", "--rank", "2", "--suite", "nope")
    assert exc.value.code == 2


def test_table_counts():
    code, out = run("table", "--rank", "1", "--format", "json")
    assert code == 0 and [r["w"] for r in json.loads(out)["records"]] == ["e", "(12)"]
    code, out = run("table", "--rank", "2")
    assert out.startswith("A_2: 6 elements, 5 cone classes")
    assert len(out.strip().splitlines()) == 6
    code, out = run("table", "--rank", "3", "--format", "json")
    assert len(json.loads(out)["records"]) == 24


def test_json_roundtrip():
    _, out = run("table", "--rank", "3", "--format", "json")
    records, errors = parse_corpus(json.loads(out))
    assert errors == [] and len(records) == 24
    data = json.loads(out)["records"]
    assert set(data[0]) == {"rank", "w", "one_line", "length", "dimension", "generators", "cone_class_id"}


def test_csv():
    _, out = run("table", "--rank", "2", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "rank,w,one_line,length,dimension,cone_class_id,generators"
    assert len(lines) == 7


@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_deterministic(fmt):
    assert run("table", "--rank", "3", "--format", fmt) == run("table", "--rank", "3", "--format", fmt, "--no-cache")


def test_jobs_identical():
    assert run("table", "--rank", "3", "--no-cache") == run("table", "--rank", "3", "--no-cache", "--jobs", "3")


def test_cache_hits_and_corruption(isolated_cache, caplog):
    first = run("table", "--rank", "2")
    files = sorted(isolated_cache.rglob("*.json"))
    assert len(files) == 6
    assert run("table", "--rank", "2") == first
    files[0].write_text("{not json")
    with caplog.at_level(logging.WARNING):
        assert run("table", "--rank", "2") == first
    assert "corrupt cache entry" in caplog.text
    # the corrupt file was rewritten
    json.loads(files[0].read_text())


def test_cache_version_bump(tmp_path):
    old = ConeCache(tmp_path, version=1)
    old.put(2, (1, 2, 3), {"generators": ["x21"], "dimension": 2})
    assert old.get(2, (1, 2, 3))["generators"] == ["x21"]
    assert ConeCache(tmp_path, version=2).get(2, (1, 2, 3)) is None


def test_cache_dir_flag(tmp_path):
    target = tmp_path / "elsewhere"
    run("compute", "--rank", "2", "--w", "(12)", "--cache-dir", str(target))
    assert list(target.rglob("*.json"))


def test_missing_corpus(tmp_path):
    code, _ = run("verify", "--rank", "2", "--suite", "corpus", "--corpus", str(tmp_path / "none.json"))
    assert code == 2


@pytest.mark.parametrize("suite", ["dims", "conj1", "conj2", "conj3", "corpus", "adstar", "coxeter", "all"])
def test_verify_suites_rank3(suite):
    code, out = run("verify", "--rank", "3", "--suite", suite)
    assert code == 0, out
    assert "[FAIL]" not in out


def test_verify_dims_rank2():
    code, out = run("verify", "--rank", "2", "--suite", "dims")
    assert code == 0 and "6/6" in out


def test_verify_corpus_rank4_reports_witnesses():
    code, out = run("verify", "--rank", "4", "--suite", "corpus")
    assert code == 0
    assert "allowlisted" in out and "does not vanish" in out and "duplicate label" in out


def test_verify_failure_exit(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([{"rank": 2, "w": "(12)", "gens": ["x21"]}]))
    code, out = run("verify", "--rank", "2", "--suite", "corpus", "--corpus", str(bad), "--format", "json")
    assert code == 1
    assert json.loads(out)[0]["passed"] is False
