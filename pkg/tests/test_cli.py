import csv
import io
import json

import pytest

from metahahn.cli import main, parse_config
from metahahn.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_algebra_at_zero_etas(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--eta0", "0", "--eta1", "0", "--eta3", "0", "--format", "json")
    assert code == 0
    body = json.loads(out)
    ops = {c["operation"] for c in body["checks"]}
    assert {"jacobi_defect", "potential_relations", "casimir"} <= ops
    assert all(c["passed"] for c in body["checks"])


def test_verify_all_default_point(capsys):
    code, out, _ = run(capsys, "verify", "all", "--alpha", "1/3", "--beta", "1/2", "--N", "4", "--mu", "0")
    assert code == 0
    assert "FAIL" not in out


def test_singular_beta_exits_2(capsys):
    code, _, err = run(capsys, "verify", "representation", "--alpha", "1/3", "--beta", "2", "--N", "4")
    assert code == 2
    assert "SingularParameter" in err


def test_large_beta_is_regular(capsys):
    # beta = 7 lies outside the singular set for N = 4
    code, _, _ = run(capsys, "verify", "representation", "--alpha", "1/3", "--beta", "7", "--N", "4")
    assert code == 0


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5.2", ""])
def test_bad_rational_exits_2(capsys, bad):
    code, _, err = run(capsys, "verify", "algebra", "--eta0", bad)
    assert code == 2 and "error" in err


def test_missing_command(capsys):
    assert run(capsys)[0] == 2
    with pytest.raises(ConfigError):
        parse_config(["verify", "nothing"])


def test_eval_hahn(capsys):
    code, out, _ = run(capsys, "eval", "hahn", "--n", "2", "--x", "3", "--alpha-hat", "1/4", "--beta-hat", "1/3",
                       "--N", "5", "--format", "text")
    assert code == 0 and out.strip() == "-929/1350"
    code, out, _ = run(capsys, "eval", "hahn", "--n", "2", "--x", "3", "--alpha-hat", "1/4", "--beta-hat", "1/3",
                       "--N", "5")
    assert json.loads(out)["value"] == "-929/1350"


def test_eval_rational_pole_exits_2(capsys):
    code, _, err = run(capsys, "eval", "rational", "--n", "2", "--x", "4/3", "--alpha", "1/3", "--N", "4")
    assert code == 2 and "PoleHit" in err


def test_table_pade_json(capsys):
    code, out, _ = run(capsys, "table", "pade", "--beta", "1/2", "--max", "8", "--format", "json")
    assert code == 0
    body = json.loads(out)
    assert body["beta"] == "1/2"
    assert len(body["entries"]) == 81
    assert {"m": 1, "n": 1, "num": ["1", "-3/4"], "den": ["1", "-1/4"]} in body["entries"]


def test_table_pade_csv(capsys):
    code, out, _ = run(capsys, "table", "pade", "--beta", "1/2", "--max", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["m", "n", "num", "den"]
    assert ["1", "1", "1 -3/4", "1 -1/4"] in rows


def test_table_hahn_and_rational(capsys):
    code, out, _ = run(capsys, "table", "hahn", "--alpha-hat", "1/4", "--beta-hat", "1/3", "--N", "5")
    body = json.loads(out)
    assert code == 0 and body["Q"][2][3] == "-929/1350" and len(body["Q"]) == 6
    code, out, _ = run(capsys, "table", "rational", "--N", "3", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) == 4 and rows[0][:3] == ["U", "0", "1"]


def test_dump_rep_schema(capsys):
    code, out, _ = run(capsys, "dump", "rep", "--alpha", "1/3", "--beta", "1/2", "--N", "2")
    body = json.loads(out)
    assert code == 0
    for k in ("V", "X", "Z"):
        assert len(body[k]) == 3 and all(isinstance(x, str) for row in body[k] for x in row)
    code2, out2, _ = run(capsys, "--dump-rep", "--alpha", "1/3", "--beta", "1/2", "--N", "2")
    assert code2 == 0 and out2 == out


def test_dump_overlaps_schema(capsys):
    code, out, _ = run(capsys, "dump", "overlaps", "--alpha", "1/3", "--beta", "1/2", "--N", "3", "--mu", "2/7")
    body = json.loads(out)
    assert code == 0
    assert set(body) == {"U", "Utilde", "S", "Stilde"}
    assert len(body["U"]) == 4


def test_text_and_csv_reports(capsys):
    code, out, _ = run(capsys, "verify", "appendix-a", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and len(rows) > 1
    code, out, _ = run(capsys, "verify", "appendix-a")
    assert code == 0 and out.strip()


def test_out_path_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "sl2", "--alpha", "2/5", "--beta", "1/3", "--N", "3", "--format", "json", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert capsys.readouterr().out == ""
    assert a.read_bytes() == b.read_bytes()
    body = json.loads(a.read_text())
    assert body["command"] == "verify sl2" and body["point"]["alpha"] == "2/5"


def test_max_n_sweeps(capsys):
    code, out, _ = run(capsys, "verify", "representation", "--max-n", "3", "--format", "json")
    body = json.loads(out)
    assert code == 0
    assert {c["params"]["N"] for c in body["checks"]} == {1, 2, 3}
