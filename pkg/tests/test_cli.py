import json
import subprocess
import sys

import pytest

from dichro.cli import (
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_REFUTED,
    EXIT_USAGE,
    UsageError,
    main,
    named_instance,
    thread_count,
)
from dichro.constructions import complete_bipartite, d25, directed_cycle
from dichro.formats import decode_any, decode_digraph6, encode_digraph6, encode_graph6
from dichro.graphs import Digraph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dichromatic_exit_codes(capsys, tmp_path):
    path = tmp_path / "d25.d6"
    path.write_text(encode_digraph6(d25()) + "\n")
    code, out, _ = run(capsys, "dichromatic", "--input", str(path), "--k", "2", "--format", "json")
    assert code == EXIT_REFUTED
    data = json.loads(out)
    assert data["verdict"] == "not-dicolourable" and data["stats"]["nodes"] > 0
    code, out, _ = run(capsys, "dichromatic", "--input", str(path), "--k", "3", "--format", "json")
    assert code == EXIT_OK and len(json.loads(out)["colouring"]) == 25
    code, out, _ = run(capsys, "dichromatic", "--graph", "p11")
    assert code == EXIT_OK and "= 4" in out


def test_budget_exit_code(capsys):
    code, _, _ = run(capsys, "dichromatic", "--graph", "d25", "--k", "2", "--budget", "10")
    assert code == EXIT_BUDGET
    code, _, err = run(capsys, "acyclic", "--graph", "paley:11", "--budget", "2")
    assert code == EXIT_BUDGET and "budget" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "nonsense")[0] == EXIT_USAGE
    assert run(capsys, "dichromatic")[0] == EXIT_USAGE
    assert run(capsys, "dichromatic", "--graph", "nope")[0] == EXIT_USAGE
    assert run(capsys, "dichromatic", "--graph", "paley:9")[0] == EXIT_USAGE
    assert run(capsys, "dicritical", "--graph", "p7")[0] == EXIT_USAGE
    assert run(capsys, "enumerate", "--n", "20")[0] == EXIT_USAGE
    assert run(capsys, "sweep", "--n-max", "13")[0] == EXIT_USAGE
    assert run(capsys, "extremal", "--n", "9")[0] == EXIT_USAGE
    assert run(capsys, "experiment", "nothing")[0] == EXIT_USAGE
    bad = tmp_path / "bad.g6"
    bad.write_text("A@\n")
    code, _, err = run(capsys, "acyclic", "--input", str(bad))
    assert code == EXIT_USAGE and "bad.g6:1" in err
    assert run(capsys, "acyclic", "--input", str(tmp_path / "missing"))[0] == EXIT_USAGE
    assert run(capsys, "dichromatic", "--graph", "grotzsch")[0] == EXIT_USAGE


def test_thread_count_precedence(monkeypatch):
    monkeypatch.setenv("DICHRO_THREADS", "3")
    assert thread_count(None) == 3
    assert thread_count(5) == 5
    monkeypatch.setenv("DICHRO_THREADS", "zero")
    with pytest.raises(UsageError):
        thread_count(None)
    monkeypatch.delenv("DICHRO_THREADS")
    assert thread_count(None) >= 1
    with pytest.raises(UsageError):
        thread_count(0)


def test_named_instances():
    assert named_instance("cycle:3") == directed_cycle(3)
    assert named_instance("d25").n == 25
    assert named_instance("c:5").m == 5
    assert named_instance("tt:4").m == 6


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--c0", "0.513", "--c1", "3.43", "--c2", "3.1")
    assert code == EXIT_OK
    assert "margin 0.007218" in out and "margin 0.003533" in out
    code, out, _ = run(capsys, "constants", "--c0", "1", "--c1", "1", "--c2", "1", "--eps", "0", "--format", "json")
    assert code == EXIT_REFUTED and json.loads(out)["holds"] is False


def test_dicritical_and_order_and_linforest(capsys):
    code, out, _ = run(capsys, "dicritical", "--graph", "cycle:3", "--k", "2")
    assert code == EXIT_OK and "yes" in out
    code, out, _ = run(capsys, "dicritical", "--graph", "tt:3", "--k", "2")
    assert code == EXIT_REFUTED
    code, out, _ = run(capsys, "order", "--graph", "p7", "--exact", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["min_backedge_chromatic"] == 3
    code, out, _ = run(capsys, "order", "--graph", "p7", "--format", "json")
    assert max(json.loads(out)["backedge_degrees"]) <= 3
    code, out, _ = run(capsys, "linforest", "--graph", "grotzsch", "--format", "json")
    assert json.loads(out)["min_over_orientations"] == 6
    code, out, _ = run(capsys, "linforest", "--graph", "path:9", "--format", "json")
    assert json.loads(out)["max_linear_forest"] == 8


def test_blowup(capsys):
    code, out, _ = run(capsys, "blowup", "--graph", "cycle:5", "--m", "5")
    assert code == EXIT_OK and decode_digraph6(out.strip()) == d25()
    code, out, _ = run(capsys, "blowup", "--graph", "c5a", "--m", "6", "--k", "2", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["verdict"] == "dicolourable"
    assert run(capsys, "blowup", "--graph", "cycle:5")[0] == EXIT_USAGE


def test_enumerate_and_extremal(capsys, tmp_path):
    out_path = tmp_path / "tf.g6"
    code, _, _ = run(capsys, "enumerate", "--n", "8", "--min-deg", "2", "--output", str(out_path))
    lines = out_path.read_text().split()
    assert code == EXIT_OK and len(lines) == 83
    assert all(isinstance(decode_any(x), type(decode_any("A_"))) for x in lines)
    code, out, _ = run(capsys, "extremal", "--n", "4", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["max_dichromatic_number"] == 2 and data["min_acyclic_number"] == 3


def test_sweep_cli_is_deterministic(capsys, tmp_path):
    outs = []
    for threads in ("1", "2"):
        path = tmp_path / f"sweep{threads}.jsonl"
        code, _, _ = run(capsys, "sweep", "--n-max", "10", "--threads", threads, "--format", "json", "--output", str(path))
        assert code == EXIT_OK
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    summary = json.loads(outs[0].splitlines()[-1])["summary"]
    assert summary["total"] == 10 and summary["unresolved"] == []


def test_sweep_checkpoint_and_input(capsys, tmp_path):
    src = tmp_path / "in.g6"
    k44 = encode_graph6(complete_bipartite(4, 4))
    src.write_text(k44 + "\n")
    ck = tmp_path / "ck.jsonl"
    code, out, _ = run(capsys, "sweep", "--input", str(src), "--checkpoint", str(ck), "--threads", "1")
    assert code == EXIT_OK and "instances: 1" in out
    assert len(ck.read_text().splitlines()) == 1
    code, out, _ = run(capsys, "sweep", "--input", str(src), "--checkpoint", str(ck), "--threads", "1")
    assert len(ck.read_text().splitlines()) == 1
    assert run(capsys, "sweep", "--input", str(tmp_path / "nope.g6"))[0] == EXIT_USAGE


def test_decompose_and_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "certs.jsonl"
    code, _, _ = run(capsys, "decompose", "--graph", "k44", "--output", str(path))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == EXIT_OK and "valid" in out
    doc = json.loads(path.read_text())
    doc["evidence"]["x"] = [0, 4]
    path.write_text(json.dumps(doc) + "\n")
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == EXIT_REFUTED and "INVALID" in out
    path.write_text("{}\n")
    assert run(capsys, "verify", "--input", str(path))[0] == EXIT_USAGE


def test_experiments_are_reproducible(capsys):
    first = run(capsys, "experiment", "tournaments", "--n", "6", "--samples", "200", "--seed", "4", "--format", "json")
    second = run(capsys, "experiment", "tournaments", "--n", "6", "--samples", "200", "--seed", "4", "--format", "json")
    assert first == second and first[0] == EXIT_OK
    assert json.loads(first[1])["seed"] == 4
    code, out, _ = run(capsys, "experiment", "chi-bound", "--graph", "c:5", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["bound"] == 12
    code, out, _ = run(capsys, "experiment", "small-deletion", "--n", "5", "--format", "json")
    assert json.loads(out)["checked"] == {"1": 0, "2": 0, "3": 0, "4": 2, "5": 8}


def test_console_script_entry_point(tmp_path):
    cmd = [sys.executable, "-m", "dichro.cli", "dichromatic", "--graph", "cycle:3", "--format", "json"]
    proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dichromatic_number"] == 2
    proc = subprocess.run([sys.executable, "-m", "dichro.cli", "dichromatic", "--graph", "d25", "--k", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1


def test_verify_d25_json_certificates(capsys, tmp_path):
    path = tmp_path / "d25.jsonl"
    code, _, _ = run(capsys, "verify-d25", "--format", "json", "--output", str(path))
    assert code == EXIT_OK
    docs = [json.loads(x) for x in path.read_text().splitlines()]
    assert [d["claim"] for d in docs] == ["dicolouring", "not-dicolourable", "dicritical"]
    code, out, _ = run(capsys, "verify", "--input", str(path))
    assert code == EXIT_OK and out.count("valid") == 3
    assert isinstance(decode_any(docs[0]["instance"]), Digraph)
