import json

import pytest

from gridsub.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def counts(out):
    return [(r["mode"], r["count"]) for r in json.loads(out)["reports"]]


def test_count_grid_json(capsys):
    code, out = run(capsys, "count-grid", "--cols", "2", "--rows", "2")
    assert code == 0
    assert counts(out) == [("bimonotone", "2"), ("all", "3")]
    rep = json.loads(out)["reports"][0]
    assert rep["conventions"] == {"candidates": "primitive-only", "edge_interaction": "strict"}
    assert rep["configuration"] == "grid(2x2)"


def test_count_grid_3x3(capsys):
    code, out = run(capsys, "count-grid", "--cols", "3", "--rows", "3", "--threads", "2")
    assert code == 0 and counts(out) == [("bimonotone", "528"), ("all", "2224")]


def test_count_grid_all_pairs(capsys):
    code, out = run(capsys, "count-grid", "--cols", "3", "--rows", "3", "--mode", "all",
                    "--candidates", "all-pairs")
    assert counts(out) == [("all", "2424")]


def test_csv(capsys):
    code, out = run(capsys, "count-two-row", "--top", "3", "--bottom", "3", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[0].startswith("configuration,mode,method")
    assert ",12," in lines[1] and ",26," in lines[2]


@pytest.mark.parametrize("method", ["recursion", "closed-form", "enumeration"])
def test_two_row_methods_agree(capsys, method):
    code, out = run(capsys, "count-two-row", "--top", "5", "--bottom", "4", "--method", method)
    assert code == 0
    assert counts(out) == [("bimonotone", "360"), ("all", "768")]


def test_two_row_methods_identical(capsys):
    results = set()
    for method in ("recursion", "closed-form", "enumeration"):
        _, out = run(capsys, "count-two-row", "--top", "5", "--bottom", "4", "--method", method)
        results.add(tuple(counts(out)))
    assert len(results) == 1


def test_triangulations(capsys):
    code, out = run(capsys, "count-triangulations", "--cols", "3", "--rows", "3")
    assert counts(out) == [("bimonotone", "9"), ("all", "64")]
    code, out = run(capsys, "count-triangulations", "--cols", "3", "--rows", "3", "--method", "enumeration")
    assert counts(out) == [("bimonotone", "9"), ("all", "64")]


def test_sequences_and_poly(capsys):
    _, out = run(capsys, "sequences", "--name", "delannoy", "--n", "4")
    assert json.loads(out)["value"] == "321"
    _, out = run(capsys, "poly", "--kind", "Q", "--n", "4")
    assert json.loads(out)["coefficients"] == ["6", "29", "12", "1"]


@pytest.mark.parametrize("suite", ["schroeder", "delannoy-conjecture", "tables", "oracle-equivalence", "descent"])
def test_verify_suites_pass(capsys, suite):
    code, out = run(capsys, "verify", "--suite", suite)
    assert code == 0
    assert json.loads(out)["status"] != "fail"


def test_cross_validate(capsys):
    code, out = run(capsys, "cross-validate", "--n-max", "6", "--enumeration-max", "4")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


@pytest.mark.parametrize("argv", [
    ["count-grid", "--cols", "0", "--rows", "2"],
    ["count-grid", "--cols", "1", "--rows", "3"],
    ["count-grid", "--cols", "2"],
    ["frobnicate"],
    ["sequences", "--name", "catalan", "--n", "3"],
])
def test_usage_errors_exit_64(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 64


def test_budget_env_exits_2(capsys, monkeypatch):
    monkeypatch.setenv("GRIDSUB_BUDGET_NODES", "10")
    code, out = run(capsys, "count-grid", "--cols", "3", "--rows", "3")
    assert code == 2
    assert json.loads(out)["status"] == "budget-exceeded"
    assert "reports" not in out


def test_failed_verification_exits_1(capsys, monkeypatch):
    import gridsub.sequences as seq
    monkeypatch.setattr(seq, "count_two_row_bimonotone", lambda m, n: 0)
    code, out = run(capsys, "verify", "--suite", "schroeder")
    assert code == 1


def test_cache_is_keyed_by_request(capsys, tmp_path):
    cache = tmp_path / "cache.json"
    _, first = run(capsys, "count-grid", "--cols", "3", "--rows", "2", "--cache", str(cache))
    _, again = run(capsys, "count-grid", "--cols", "3", "--rows", "2", "--cache", str(cache))
    assert counts(first) == counts(again) == [("bimonotone", "12"), ("all", "26")]
    assert len(json.loads(cache.read_text())) == 2
    # a different convention gets its own entries
    run(capsys, "count-grid", "--cols", "3", "--rows", "2", "--cache", str(cache),
        "--edge-interaction", "paper-literal", "--candidates", "all-pairs")
    assert len(json.loads(cache.read_text())) == 4


def test_poisoned_cache_does_not_leak_across_conventions(capsys, tmp_path):
    cache = tmp_path / "cache.json"
    run(capsys, "count-grid", "--cols", "3", "--rows", "3", "--mode", "all", "--cache", str(cache))
    data = json.loads(cache.read_text())
    assert list(data.values()) == ["2224"]
    _, out = run(capsys, "count-grid", "--cols", "3", "--rows", "3", "--mode", "all",
                 "--candidates", "all-pairs", "--cache", str(cache))
    assert counts(out) == [("all", "2424")]


def test_output_is_deterministic(capsys):
    outs = []
    for threads in ("1", "4"):
        _, out = run(capsys, "count-grid", "--cols", "3", "--rows", "3", "--threads", threads)
        doc = json.loads(out)
        for r in doc["reports"]:
            r.pop("elapsed_ms")
        outs.append(doc)
    assert outs[0] == outs[1]


def test_render_canonical(capsys, tmp_path):
    path = tmp_path / "c.svg"
    code, _ = run(capsys, "render", "--cols", "3", "--rows", "3", "--canonical-triangulation", "--out", str(path))
    svg = path.read_text()
    assert code == 0
    assert svg.count("<line") == 16 and svg.count("<circle") == 9
    first = svg
    run(capsys, "render", "--cols", "3", "--rows", "3", "--canonical-triangulation", "--out", str(path))
    assert path.read_text() == first


def test_render_empty_square(capsys, tmp_path):
    path = tmp_path / "e.svg"
    code, _ = run(capsys, "render", "--cols", "2", "--rows", "2", "--index", "0", "--out", str(path))
    svg = path.read_text()
    assert code == 0
    assert svg.count("<polygon") == 1 and svg.count("<line") == 0


def test_render_index_out_of_range(capsys, tmp_path):
    code, _ = run(capsys, "render", "--cols", "2", "--rows", "2", "--index", "5", "--out", str(tmp_path / "x.svg"))
    assert code == 64


def test_render_marks_negative_slopes(tmp_path):
    from gridsub.enumeration import list_subdivisions
    from gridsub.geometry import Configuration
    from gridsub.render import svg_document

    subs = list(list_subdivisions(Configuration.grid(2, 2)))
    assert "#d62728" not in svg_document(subs[1])
    assert "#d62728" in svg_document(subs[2])
