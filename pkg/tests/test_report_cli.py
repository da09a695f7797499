"""Run reports, command dispatch, exit codes, and replay determinism."""

import json

import pytest

from turanlab.cli import dispatch, main, replay
from turanlab.constructions import named_graph, pp_incidence
from turanlab.graphs import graph_to_graph6
from turanlab.report import (Report, RunManifest, load_report,
                             report_fingerprint, report_to_text, write_report)
from turanlab.witness import Witness


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.g6"
    path.write_text(graph_to_graph6(named_graph("cycle", 4)) + "\n")
    return str(path)


@pytest.fixture
def empty10_file(tmp_path):
    path = tmp_path / "e10.g6"
    path.write_text(graph_to_graph6(named_graph("empty", 10)) + "\n")
    return str(path)


@pytest.fixture
def k2_file(tmp_path):
    path = tmp_path / "k2.g6"
    path.write_text(graph_to_graph6(named_graph("complete", 2)) + "\n")
    return str(path)


def test_report_roundtrip_with_witness(tmp_path):
    manifest = RunManifest(argv=["solve"], params={}, seed=0, version="x")
    report = Report(manifest=manifest)
    c4 = named_graph("cycle", 4)
    report.add_witness(Witness.biclique([0, 2], [1, 3]), graph_to_graph6(c4))
    path = str(tmp_path / "r.json")
    write_report(report, path)
    loaded = load_report(path)
    assert loaded.manifest.argv == ["solve"]
    assert loaded.witnesses[0]["host"] == graph_to_graph6(c4)


def test_load_report_rejects_corrupt_witness(tmp_path):
    manifest = RunManifest(argv=[], params={}, seed=0, version="x")
    report = Report(manifest=manifest)
    # vertices 0 and 1 are adjacent in C4, so this biclique is a lie
    report.add_witness(Witness.biclique([0, 1], [2, 3]),
                       graph_to_graph6(named_graph("cycle", 4)))
    path = str(tmp_path / "bad.json")
    write_report(report, path)
    with pytest.raises(ValueError):
        load_report(path)


def test_report_text_is_stable():
    manifest = RunManifest(argv=["a"], params={"x": "1"}, seed=3, version="v")
    report = Report(manifest=manifest, counters={"b": 2, "a": 1})
    text = report_to_text(report)
    assert text == report_to_text(report)
    obj = json.loads(text)
    assert obj["counters"] == {"a": 1, "b": 2}


def test_dispatch_solve_known_value(c4_file):
    code, report = dispatch(["solve", "--n", "4", "--induced", c4_file,
                             "--kss", "2"])
    assert code == 0
    assert report.counters["max_edges"] == 4
    assert c4_file in report.manifest.input_digests


def test_dispatch_construct_families():
    code, report = dispatch(["construct", "--family", "pp_incidence",
                             "--params", "3"])
    assert code == 0
    assert report.counters["n"] == 26 and report.counters["edges"] == 52
    code, report = dispatch(["construct", "--family", "hypercube",
                             "--params", "3"])
    assert report.counters["edges"] == 12
    code, report = dispatch(["construct", "--family", "tree_from_pruefer",
                             "--params", "0", "0"])
    assert report.counters["edges"] == 3


def test_dispatch_ratio(c4_file):
    code, report = dispatch(["ratio", "--pattern", c4_file,
                             "--s", "2", "--n", "3", "4"])
    assert code == 0
    assert report.counters["sandwich_ok"] == 1
    assert report.tables["ratio"].startswith("n,s,")


def test_dispatch_cycles_count(c4_file):
    code, report = dispatch(["cycles", "--action", "count",
                             "--graph", c4_file, "--k", "2"])
    assert code == 0
    assert report.counters["hom"] == 32
    assert report.counters["nondegenerate"] == 8


def test_dispatch_cycles_find(tmp_path):
    path = tmp_path / "pp3.g6"
    path.write_text(graph_to_graph6(pp_incidence(3).graph))
    code, report = dispatch(["cycles", "--action", "find-c2k",
                             "--graph", str(path), "--k", "3"])
    assert code == 0
    assert report.witnesses[0]["witness"]["kind"] == "InducedCycle"


def test_dispatch_pipeline_not_found_exit_1(empty10_file, k2_file):
    code, report = dispatch(["pipeline", "--graph", empty10_file,
                             "--pattern", k2_file, "--s", "2",
                             "--override", "t=1", "--override", "m=1",
                             "--override", "ell=1"])
    assert code == 1
    assert report.payload["stage"] == "DRC"


def test_dispatch_embed(tmp_path):
    host = tmp_path / "host.g6"
    host.write_text(graph_to_graph6(pp_incidence(16).graph))
    tree = tmp_path / "tree.g6"
    tree.write_text(graph_to_graph6(named_graph("path", 3)))
    code, report = dispatch(["embed", "--host", str(host),
                             "--tree", str(tree)])
    assert code == 0
    assert report.witnesses[0]["witness"]["kind"] == "InducedCopy"


def test_dispatch_verify(tmp_path, c4_file):
    w = Witness.biclique([0, 2], [1, 3])
    wfile = tmp_path / "w.json"
    wfile.write_text(json.dumps(w.to_json()))
    code, report = dispatch(["verify", "--graph", c4_file,
                             "--witness", str(wfile)])
    assert code == 0 and report.counters["valid"] == 1
    bad = Witness.biclique([0, 1], [2, 3])
    wfile.write_text(json.dumps(bad.to_json()))
    code, report = dispatch(["verify", "--graph", c4_file,
                             "--witness", str(wfile)])
    assert code == 1 and report.counters["valid"] == 0


def test_dispatch_hyper(tmp_path):
    from turanlab.hypergraphs import UniformHypergraph
    h = UniformHypergraph(10, 2, tuple(
        frozenset({i, j}) for i in range(10) for j in range(i + 1, 10)))
    hfile = tmp_path / "h.json"
    hfile.write_text(json.dumps(h.to_json()))
    code, report = dispatch(["hyper", "--input", str(hfile),
                             "--action", "degree", "--set", "0"])
    assert code == 0 and report.counters["degree"] == 9
    code, report = dispatch(["hyper", "--input", str(hfile),
                             "--action", "check", "--epsilon", "0",
                             "--delta", "1/4"])
    assert code == 0 and report.counters["superspread"] == 1
    code, report = dispatch(["hyper", "--input", str(hfile),
                             "--action", "heavy", "--delta", "1"])
    assert code == 0 and report.counters["heavy"] == 0


def test_usage_errors_exit_2(c4_file):
    # pattern too large for the exact solver
    code, report = dispatch(["solve", "--n", "12", "--induced", c4_file])
    assert code == 2
    assert "error" in report.payload
    with pytest.raises(SystemExit):
        dispatch(["solve"])  # missing required --n


def test_main_exit_codes(tmp_path, c4_file, capsys):
    out = str(tmp_path / "report.json")
    code = main(["solve", "--n", "4", "--induced", c4_file, "--kss", "2",
                 "--out", out])
    assert code == 0
    loaded = load_report(out)
    assert loaded.counters["max_edges"] == 4
    assert main(["nonsense"]) == 2


def test_replay_reproduces_fingerprint(c4_file):
    argv = ["solve", "--n", "4", "--induced", c4_file, "--kss", "2",
            "--seed", "7"]
    code1, rep1 = dispatch(argv)
    code2, rep2 = replay(rep1.manifest)
    assert (code1, report_fingerprint(rep1)) == (code2, report_fingerprint(rep2))


def test_fingerprint_ignores_thread_count(c4_file):
    base = ["solve", "--n", "4", "--induced", c4_file, "--kss", "2"]
    _, r1 = dispatch(base + ["--threads", "1"])
    _, r8 = dispatch(base + ["--threads", "8"])
    assert report_fingerprint(r1) == report_fingerprint(r8)


def test_fingerprint_sees_result_changes(c4_file):
    _, r1 = dispatch(["solve", "--n", "4", "--induced", c4_file, "--kss", "2"])
    _, r2 = dispatch(["solve", "--n", "5", "--induced", c4_file, "--kss", "2"])
    assert report_fingerprint(r1) != report_fingerprint(r2)
