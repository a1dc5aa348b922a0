import io
import json
import subprocess
import sys

import pytest

from rank2curves.cli import emit_certificate, run
from rank2curves.family import certify_T2


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_certify_t3_stdout():
    code, text = call("certify", "--torsion", "3", "--a", "8", "--p", "11", "--q", "727")
    assert code == 0
    obj = json.loads(text)
    assert obj["family"] == "T3" and obj["m"] == "7997"


def test_emit_is_canonical():
    text = emit_certificate(certify_T2(5, 47, 3))
    obj = json.loads(text)
    assert json.dumps(obj, sort_keys=True, separators=(",", ":")) == text
    assert '"m":"-141"' in text and '"point":{"x":"25","y":"110"}' in text


def test_search_emit_and_verify(tmp_path):
    path = tmp_path / "t2.jsonl"
    code, _ = call("search", "--torsion", "2", "--max-n", "30", "--emit", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    assert json.loads(lines[0])["search_index"] == "5"
    code, report = call("verify", "--file", str(path))
    assert code == 0 and report.count(" ok ") == len(lines)


def test_verify_detects_tampering(tmp_path):
    path = tmp_path / "bad.jsonl"
    good = emit_certificate(certify_T2(5, 47, 3))
    path.write_text(good + "\n" + good.replace('"root_number":1', '"root_number":-1') + "\n")
    code, report = call("verify", "--file", str(path))
    assert code == 1 and "line 2: FAIL" in report


def test_verify_rejects_non_canonical(tmp_path):
    path = tmp_path / "loose.jsonl"
    path.write_text(json.dumps(certify_T2(5, 47, 3).to_json_obj(), indent=1).replace("\n", "") + "\n")
    code, report = call("verify", "--file", str(path))
    assert code == 1 and "canonical" in report


def test_descent2_table():
    code, text = call("descent2", "--m", "-141")
    assert code == 0
    assert text.count("\n") > 32 and "rank upper bound: 2" in text
    code, text = call("descent2", "--m", "-141", "--json")
    obj = json.loads(text)
    assert len(obj["phi"]["table"]) == 16
    assert set(obj["phi"]["table"]["6"]) == {"inf", "2", "3", "47"}
    assert obj["phi"]["members"] == ["1", "6", "94", "141"]


def test_descent3():
    code, text = call("descent3", "--p", "11", "--q", "727")
    obj = json.loads(text)
    assert code == 0 and obj["im_alpha_order_max"] == 9 and obj["rank_upper"] == 2
    code, text = call("descent3", "--p", "11", "--q", "17")
    assert code == 0 and "not bounded" in json.loads(text)["alpha_prime"]


def test_rootnumber():
    assert json.loads(call("rootnumber", "--family", "E", "--m", "-141")[1])["root_number"] == 1
    assert json.loads(call("rootnumber", "--family", "A", "--m", "7997")[1])["root_number"] == 1


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["localsolve", "quartic", "--d", "2", "--B", "564", "--p", "2"], "not solvable"),
        (["localsolve", "quartic", "--d", "141", "--B", "564", "--p", "47", "--method", "auto"], "solvable"),
        (["localsolve", "quartic", "--d", "-1", "--B", "564", "--p", "inf"], "not solvable"),
        (["localsolve", "cubic", "1", "2", "7", "--p", "3"], "solvable"),
        (["localsolve", "cubic", "1", "2", "5", "--p", "3"], "not solvable"),
    ],
)
def test_localsolve(argv, expected):
    code, text = call(*argv)
    assert code == 0 and text.strip() == expected


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["search", "--torsion", "4", "--max-n", "10"],
        ["search", "--torsion", "2", "--max-n", "ten"],
        ["search", "--torsion", "2", "--max-n", "10", "--workers", "0"],
        ["certify", "--torsion", "2", "--b", "5", "--p", "19", "--q", "31"],
        ["certify", "--torsion", "3", "--p", "11", "--q", "727"],
        ["rootnumber", "--family", "E", "--m", "12"],
        ["localsolve", "quartic", "--d", "4", "--B", "1", "--p", "2"],
        ["localsolve", "cubic", "1", "2", "5", "--p", "9"],
        ["descent3", "--p", "3", "--q", "7"],
    ],
)
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rank2curves", "rootnumber", "--family", "E", "--m", "-141"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and '"root_number":1' in proc.stdout
