import json
import random
import subprocess
import sys

import pytest

from potentsplit.cli import main

from .conftest import EXAMPLE_ROWS


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def example_doc(tmp_path):
    return write(tmp_path, "A.json", {"ring": "Z/4", "n": 8, "rows": EXAMPLE_ROWS})


def test_decompose_example_fixture(example_doc, tmp_path, capsys):
    out = str(tmp_path / "D.json")
    code, stdout, _ = run(["decompose", "--input", example_doc, "--out", out], capsys)
    assert code == 0
    doc = json.loads(open(out).read())
    assert doc["exponent"] == "43"
    assert doc["guarantee"] == "square-zero"
    assert doc["certificate"]["P^exponent=P"] is True
    assert all(doc["certificate"].values())
    assert "P^43" in stdout
    code, stdout, _ = run(["verify", "--input", out], capsys)
    assert code == 0 and "FAIL" not in stdout


def test_output_is_byte_identical(example_doc, tmp_path, capsys):
    a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    run(["decompose", "--input", example_doc, "--out", a], capsys)
    run(["decompose", "--input", example_doc, "--out", b], capsys)
    assert open(a, "rb").read() == open(b, "rb").read()
    run(["rcf", "--input", write(tmp_path, "F.json", {"ring": "GF(2)", "n": 8, "rows": EXAMPLE_ROWS}), "--out", a], capsys)
    run(["rcf", "--input", str(tmp_path / "F.json"), "--out", b], capsys)
    assert open(a, "rb").read() == open(b, "rb").read()


def test_stdout_document(example_doc, capsys):
    code, stdout, stderr = run(["decompose", "--input", example_doc, "--out", "-"], capsys)
    assert code == 0
    assert json.loads(stdout)["exponent"] == "43"
    assert "guarantee" in stderr


def test_verify_corrupted_document(example_doc, tmp_path, capsys):
    out = str(tmp_path / "D.json")
    run(["decompose", "--input", example_doc, "--out", out], capsys)
    doc = json.loads(open(out).read())
    doc["N"][0][0] = 1
    code, stdout, _ = run(["verify", "--input", write(tmp_path, "bad.json", doc)], capsys)
    assert code == 1 and "FAIL A=P+N" in stdout
    doc = json.loads(open(out).read())
    doc["exponent"] = "5"
    code, stdout, _ = run(["verify", "--input", write(tmp_path, "bad2.json", doc)], capsys)
    assert code == 1 and "FAIL P^exponent=P" in stdout


def test_rcf_document(tmp_path, capsys):
    path = write(tmp_path, "F.json", {"ring": "GF(2)", "n": 8, "rows": EXAMPLE_ROWS})
    code, stdout, _ = run(["rcf", "--input", path, "--out", "-"], capsys)
    assert code == 0
    doc = json.loads(stdout)
    assert [b["divisor"] for b in doc["blocks"]] == ["x^3+x^2+1", "x^3", "x", "x"]
    assert doc["Q"] == [[int(i == j) for j in range(8)] for i in range(8)]


def test_rcf_extension_field(tmp_path, capsys):
    path = write(tmp_path, "F.json", {"ring": "GF(2^2)", "n": 2, "rows": [["x", "1"], ["0", "x+1"]]})
    code, stdout, _ = run(["rcf", "--input", path, "--out", "-"], capsys)
    assert code == 0
    doc = json.loads(stdout)
    assert {b["divisor"] for b in doc["blocks"]} == {"y+(x)", "y+(x+1)"}


def test_rcf_needs_field(example_doc, capsys):
    code, _, stderr = run(["rcf", "--input", example_doc], capsys)
    assert code == 2 and "field" in stderr


def test_oracle_search_exit_codes(tmp_path, capsys):
    path = write(tmp_path, "A.json", {"ring": "Z/8", "n": 1, "rows": [[2]]})
    code, stdout, _ = run(["oracle-search", "--input", path, "--max-nil-index", "2", "--out", "-"], capsys)
    assert code == 3
    doc = json.loads(stdout)
    assert doc["found"] is None and doc["search_size"] == 2
    code, stdout, _ = run(["oracle-search", "--input", path, "--max-nil-index", "3", "--out", "-"], capsys)
    assert code == 0 and json.loads(stdout)["found"] == {"P": [[0]], "N": [[2]]}


def test_oracle_budget_exit(tmp_path, capsys):
    path = write(tmp_path, "A.json", {"ring": "Z/4", "n": 2, "rows": [[2, 1], [0, 2]]})
    code, _, _ = run(["oracle-search", "--input", path, "--budget", "5"], capsys)
    assert code == 4


def test_sweep_command(capsys):
    code, stdout, _ = run(["sweep", "--ring", "Z/4", "--n", "2"], capsys)
    assert code == 0 and "256 matrices" in stdout and "0 certificate failures" in stdout
    code, stdout, _ = run(["sweep", "--ring", "F2[t]/(t^2)", "--n", "1", "--jobs", "2", "--out", "-"], capsys)
    assert code == 0 and json.loads(stdout)["total"] == 4


@pytest.mark.parametrize(
    "doc",
    [
        "not json",
        {"n": 1, "rows": [[1]]},
        {"ring": "Z/4[y", "n": 1, "rows": [[1]]},
        {"ring": "Z/4", "n": 2, "rows": [[1, 2]]},
        {"ring": "Z/4", "n": 2, "rows": [[1, 2], [3]]},
        {"ring": "Z/4", "n": 1, "rows": [[True]]},
        {"ring": "Z/4", "n": 0, "rows": []},
        {"ring": "GF(2^2)", "n": 1, "rows": [["x+"]]},
    ],
)
def test_malformed_inputs(doc, tmp_path, capsys):
    code, _, stderr = run(["decompose", "--input", write(tmp_path, "bad.json", doc)], capsys)
    assert code == 2 and stderr.startswith("error:")


def test_ring_error_reports_position(tmp_path, capsys):
    code, _, stderr = run(["sweep", "--ring", "Z/4[y", "--n", "1"], capsys)
    assert code == 2 and "position 3" in stderr


def test_missing_file_and_bad_arguments(capsys):
    assert run(["decompose", "--input", "/nonexistent/A.json"], capsys)[0] == 2
    assert run(["frobnicate"], capsys)[0] == 2
    assert run(["oracle-search", "--input", "x", "--max-nil-index", "0"], capsys)[0] == 2


RINGS_FOR_FUZZ = ["Z/4", "Z/8", "Z/9", "Z/12", "Z/27", "GF(2)", "GF(3)", "GF(2^2)", "GF(3^2)", "F2[t]/(t^2)", "F3[t]/(t^2)"]


def test_round_trip_fuzz(tmp_path, capsys):
    from potentsplit import parse_ring

    rng = random.Random(11)
    for i in range(40):
        spec = rng.choice(RINGS_FOR_FUZZ)
        R = parse_ring(spec)
        n = rng.randint(1, 4)
        elems = [R.to_json(a) for a in R.element_list()]
        rows = [[rng.choice(elems) for _ in range(n)] for _ in range(n)]
        src = write(tmp_path, f"A{i}.json", {"ring": spec, "n": n, "rows": rows})
        out = str(tmp_path / f"D{i}.json")
        assert run(["decompose", "--input", src, "--out", out], capsys)[0] == 0, (spec, rows)
        assert run(["verify", "--input", out], capsys)[0] == 0, (spec, rows)


def test_module_entry_point(example_doc):
    proc = subprocess.run(
        [sys.executable, "-m", "potentsplit", "decompose", "--input", example_doc],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "P^43" in proc.stdout
