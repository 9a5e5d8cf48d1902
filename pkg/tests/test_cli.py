import json
import subprocess
import sys

import jsonschema
import pytest

from fermatsg.cli import load_schema, main
from fermatsg.collection import triple_tensor_collection
from fermatsg.dgcat import directed_category, tensor


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


JSON_RUNS = [
    ("resolve", ["--weights", "3,3,3", "--stages", "5"]),
    ("resolve", ["--weights", "2,3,6", "--twist", "1,0,0,-1", "--stages", "4"]),
    ("ext", ["--weights", "3,4,5", "--target=-1,-1,-1,0", "--stages", "4"]),
    ("table", ["--weights", "3,3,3", "--stages", "6"]),
    ("verify-collection", ["--weights", "2,2,2", "--stages", "6"]),
    ("compare", ["--weights", "3,3,3", "--stages", "6"]),
    ("euler", ["--weights", "2,4,4"]),
    ("reduce-class", ["--weights", "3,3,3", "--twist=0,0,-2,0"]),
    ("selftest", ["--weights", "2,2,2", "--criteria", "1,3,8", "--stages", "6"]),
]


@pytest.mark.parametrize("cmd,args", JSON_RUNS, ids=[c for c, _ in JSON_RUNS])
def test_json_output_validates(capsys, cmd, args):
    code, out, _ = run(capsys, cmd, *args)
    assert code == 0
    jsonschema.validate(json.loads(out), load_schema(cmd))


@pytest.mark.parametrize("cmd,args", JSON_RUNS[:3] + JSON_RUNS[5:8], ids=[c for c, _ in JSON_RUNS[:3] + JSON_RUNS[5:8]])
def test_output_is_deterministic(capsys, cmd, args):
    _, first, _ = run(capsys, cmd, *args)
    _, second, _ = run(capsys, cmd, *args)
    assert first == second


def test_selftest_is_byte_identical(capsys):
    args = ["selftest", "--weights", "3,3,3", "--criteria", "9,10", "--stages", "6"]
    code, first, err = run(capsys, *args)
    assert code == 0 and err.count("PASS") == 2
    _, second, _ = run(capsys, *args)
    assert first == second
    assert "seconds" not in first


def test_selftest_timings_flag(capsys):
    code, out, _ = run(capsys, "selftest", "--weights", "2,2,2", "--criteria", "8", "--timings")
    assert code == 0 and "seconds" in json.loads(out)


def test_category_schema():
    schema = load_schema("category")
    C, _ = triple_tensor_collection((3, 3, 3))
    jsonschema.validate(C.to_json(), schema)
    jsonschema.validate(tensor(directed_category(3), directed_category(4)).to_json(), schema)


def test_other_formats(capsys):
    code, out, _ = run(capsys, "table", "--weights", "3,3,3", "--format", "csv", "--stages", "4")
    assert code == 0 and out.startswith("m,n,i,dim")
    code, out, _ = run(capsys, "table", "--weights", "2,2,2", "--format", "tex", "--stages", "4")
    assert code == 0 and "\\begin{tabular}" in out
    code, out, _ = run(capsys, "resolve", "--weights", "2,2,2", "--format", "dot", "--stages", "3")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "compare", "--weights", "2,2,2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "euler", "--weights", "3,3,3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "1,-1,-1,-1,1,1,1,-1"
    code, out, _ = run(capsys, "ext", "--weights", "3,3,3", "--format", "csv", "--stages", "2")
    assert out == "i,dim\n0,1\n1,0\n2,0\n"


def test_out_directory(capsys, tmp_path):
    code, out, err = run(capsys, "euler", "--weights", "3,3,3", "--out", str(tmp_path))
    assert code == 0 and out == ""
    path = tmp_path / "euler.json"
    assert path.exists() and json.loads(path.read_text())["verdict"] == "PASS"


@pytest.mark.parametrize("argv", [
    ["resolve", "--weights", "1,3,3"],
    ["resolve", "--weights", "3,3"],
    ["resolve", "--weights", "a,b,c"],
    ["resolve"],
    ["ext", "--weights", "3,3,3", "--source", "1,2"],
    ["resolve", "--weights", "3,3,3", "--window", "0"],
    ["resolve", "--weights", "3,3,3", "--field", "6"],
    ["euler", "--weights", "3,3,3", "--format", "dot"],
    ["selftest", "--criteria", "12"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_field_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FERMATSG_FIELD", "101")
    code, out, _ = run(capsys, "resolve", "--weights", "3,3,3", "--stages", "2")
    assert code == 0 and json.loads(out)["field"] == load_field_json(101)


def load_field_json(q):
    from fermatsg.fields import GF
    return GF(q).to_json()


def test_field_dividing_a_weight_warns(capsys):
    with pytest.warns(UserWarning):
        code, _, _ = run(capsys, "resolve", "--weights", "3,3,3", "--field", "3", "--stages", "3")
    assert code == 0


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "fermatsg", "euler", "--weights", "2,2,2"],
                       capture_output=True, text=True, check=False)
    assert p.returncode == 0 and json.loads(p.stdout)["determinant"] == 1
