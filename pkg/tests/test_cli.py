import json
import subprocess
import sys

import pytest

from resource_games.cli import run
from resource_games.syntax import parse


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_round_trip(capsys):
    code, out, _ = call(capsys, "parse", r"\x:o.   g [x,y] []")
    assert code == 0 and out.strip() == r"\x:o. g [x, y] []"
    code, out, _ = call(capsys, "parse", "--bag", "--json", "[y, z]")
    assert json.loads(out) == {"kind": "bag", "text": "[y, z]"}


def test_typecheck(capsys):
    code, out, _ = call(capsys, "typecheck", r"\f:o->o. f [y]", "--ctx", "y:o")
    assert code == 0 and out.strip() == "(o -> o) -> o"
    code, out, _ = call(capsys, "typecheck", "--bag", "[]", "--type", "o")
    assert code == 0


def test_normalize(capsys):
    code, out, _ = call(capsys, "normalize", r"(\x:o. x) [y]", "--ctx", "y:o")
    assert code == 0 and out.strip() == "y"
    code, out, _ = call(capsys, "normalize", "--json", r"(\x:o. g [x] [x]) [y, y]",
                        "--ctx", "y:o, g:o->o->o", "--strategy", "rightmost-innermost")
    assert json.loads(out) == {"summands": [{"term": "g [y] [y]", "coefficient": "2"}]}
    code, out, _ = call(capsys, "normalize", r"(\x:o. x) []")
    assert code == 0 and out.strip() == "0"


def test_encode_then_decode(capsys, tmp_path):
    term = r"\f:o->o. f [y, f []]"
    code, out, _ = call(capsys, "encode", term, "--ctx", "y:o")
    assert code == 0
    data = json.loads(out)
    assert len(data["events"]) == 6
    path = tmp_path / "q.json"
    path.write_text(out)
    code, out, _ = call(capsys, "decode", str(path), "--ctx", "y:o", "--type", "(o->o)->o")
    assert code == 0 and parse(out.strip()) == parse(term)     # equal up to renaming


def test_decode_rejects_invalid_augmentations(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"arena": "", "events": [
        {"id": 0, "display": [2, 1], "staticParent": None, "dynParent": None}]}))
    code, _, err = call(capsys, "decode", str(path), "--type", "o->o")
    assert code == 2 and "error" in err


def test_interpret(capsys):
    code, out, _ = call(capsys, "interpret", r"(\x:o. g [x] [x]) [y, z]",
                        "--ctx", "y:o, z:o, g:o->o->o")
    assert code == 0
    assert sorted(out.strip().splitlines()) == ["1\tg [y] [z]", "1\tg [z] [y]"]
    code, out, _ = call(capsys, "interpret", "--json", "y", "--ctx", "y:o")
    data = json.loads(out)
    assert data["interface"] == {"left": "y:o", "right": "o"}
    assert [e["coefficient"] for e in data["entries"]] == ["1"]


def test_compose(capsys, tmp_path):
    _, out2, _ = call(capsys, "interpret", "--json", r"\f:o->o->o. f [x] [x]", "--ctx", "x:o")
    _, out3, _ = call(capsys, "interpret", "--json", "y", "--ctx", "y:o")
    (tmp_path / "id.json").write_text(json.dumps({
        "interface": {"left": "x:o", "right": "o"},
        "entries": json.loads(call(capsys, "interpret", "--json", "x", "--ctx", "x:o")[1])["entries"]}))
    (tmp_path / "y.json").write_text(out3)
    (tmp_path / "dup.json").write_text(out2)
    code, out, _ = call(capsys, "compose", str(tmp_path / "id.json"), str(tmp_path / "y.json"))
    assert code == 0 and out.strip().startswith("1\t")
    code, out, _ = call(capsys, "compose", str(tmp_path / "dup.json"), str(tmp_path / "y.json"))
    assert code == 0 and out.strip() == "0"
    code, _, err = call(capsys, "compose", str(tmp_path / "y.json"), str(tmp_path / "dup.json"))
    assert code == 2 and "interfaces" in err


def test_check_laws(capsys):
    code, out, _ = call(capsys, "check-laws", "--arena", "o", "--window", "3",
                        "--law", "bialgebra", "--law", "pointed counit")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2 and all(line.startswith("PASS") for line in lines)
    code, _, err = call(capsys, "check-laws", "--law", "nonsense")
    assert code == 2 and "unknown" in err


def test_soundness(capsys):
    code, out, _ = call(capsys, "soundness", "--corpus", "25", "--seed", "4", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] == data["corpus"] == 25 and data["failed"] == 0


def test_export_dot(capsys):
    code, out, _ = call(capsys, "export-dot", "--type", "(o->o)->o")
    assert code == 0 and out.startswith("digraph")
    code, out, _ = call(capsys, "export-dot", r"\x:o. x")
    assert code == 0 and "style=dotted" in out


@pytest.mark.parametrize("argv", [
    ["parse", "(\\x:o. x"],
    ["typecheck", "y"],
    ["normalize", "(\\x:o. x) [y]", "--ctx", "y:o->o"],
    ["encode", "(\\x:o. x) [y]", "--ctx", "y:o"],
    ["normalize", "(\\x:o. (\\u:o. u) [x]) [y]", "--ctx", "y:o", "--fuel", "1"],
    ["decode", "/nonexistent/file.json", "--type", "o"],
    ["frobnicate"],
    ["normalize"],
])
def test_user_errors_exit_with_two(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2 and err


def test_module_entry_point_is_deterministic():
    cmd = [sys.executable, "-m", "resource_games", "interpret", "--json",
           r"(\k:o->o. g [k [y]] [k [z]]) [\u:o. u, \u:o. h [u]]",
           "--ctx", "y:o, z:o, h:o->o, g:o->o->o"]
    runs = [subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
            for _ in range(2)]
    assert runs[0] == runs[1]
    assert len(json.loads(runs[0])["entries"]) == 2
