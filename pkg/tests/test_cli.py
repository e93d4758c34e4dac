import json
import pathlib
import subprocess

import freezegun
import pytest

import milnordeg.main

data = pathlib.Path('data')

wrong_corpus = """
suite = [
    {
        "name": "line with a wrong link",
        "command": "chi-link0",
        "vars": "x,y",
        "zeros": "x",
        "expected": {"SZAFRANIEC_LINK0": 3},
    },
]
"""


def run(arguments):
    with pytest.raises(SystemExit) as exc:
        milnordeg.main.run(arguments)

    return exc.value.code


def run_json(arguments, capsys):
    code = run(arguments + ["-f", "json"])
    return code, json.loads(capsys.readouterr().out)


@freezegun.freeze_time("2016-10-31 11:29:08")
def test_local_degree(capsys):
    arguments = ["local-degree", "--vars", "x,y", "--map", "2*x,-2*y"]
    code, document = run_json(arguments, capsys)
    assert code == 0
    assert document["command"] == arguments + ["-f", "json"]
    assert document["wall_time"] == 0
    assert document["summary"] == {"VERIFIED": 1}

    (report,) = document["reports"]
    assert report["formula_id"] == "LOCAL_DEGREE"
    assert report["lhs"] == {"value": -1, "provenance": "formula:local_signature"}
    assert report["rhs"]["value"] == -1


@freezegun.freeze_time("2016-10-31 11:29:08")
def test_output_is_deterministic(capsys):
    arguments = ["chi-link0", "--vars", "x,y", "--zeros", "x", "-f", "json"]
    outputs = []

    for _ in range(2):
        assert run(arguments) == 0
        outputs.append(capsys.readouterr().out)

    first, second = outputs
    assert first == second
    assert json.loads(first)["reports"][0]["lhs"]["value"] == 2


def test_text_report(capsys):
    assert run(["chi-link0", "--vars", "x,y", "--zeros", "x"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "milnordeg v0.4.0: chi-link0 --vars x,y --zeros x"
    assert lines[2].split()[:4] == ["SZAFRANIEC_LINK0", "2", "2", "VERIFIED"]
    assert lines[-1] == "VERIFIED: 1"


def test_input_file(capsys):
    arguments = ["local-degree", "--map", str(data / "test" / "saddles.txt")]
    code, document = run_json(arguments, capsys)
    assert code == 0
    assert [r["lhs"]["value"] for r in document["reports"]] == [1, -1, -2]


def test_input_file_skips_comments(capsys):
    arguments = ["chi-link0", "--zeros", str(data / "test" / "links.txt")]
    code, document = run_json(arguments, capsys)
    assert code == 0
    assert [r["lhs"]["value"] for r in document["reports"]] == [2, 0]


def test_strict_mode(capsys):
    # the origin is not the only zero, so only the oracle answers
    arguments = ["local-degree", "--vars", "x,y", "--map", "x^3 - x, y"]
    code, document = run_json(arguments, capsys)
    assert code == 0
    assert document["summary"] == {"UNSUPPORTED-SYMBOLIC": 1}
    assert document["reports"][0]["rhs"]["value"] == -1

    assert run(arguments + ["--strict"]) == 3


def test_oracle_degree(capsys):
    arguments = ["oracle", "degree", "--vars", "x,y", "--map", "x^2 - y^2, 2*x*y"]
    code, document = run_json(arguments + ["--radius", "1"], capsys)
    assert code == 0
    assert document["reports"][0]["degree"] == 2
    assert document["reports"][0]["method"] == "winding_oracle"


def test_oracle_chi(capsys):
    arguments = ["oracle", "chi", "--vars", "x,y", "--poly", "x", "--relation", "le"]
    code, document = run_json(arguments, capsys)
    assert code == 0

    (report,) = document["reports"]
    assert report["lhs"]["value"] == 1
    assert report["parameters"]["cells"] == {"V": 2, "E": 1}
    assert report["verdict"] == "UNCHECKED"


def test_oracle_needs_a_kind():
    assert "oracle kind" in run(["oracle", "--vars", "x,y", "--poly", "x"])


def test_wrong_expectation_is_a_conflict(tmp_path, capsys):
    corpus = tmp_path / "wrong.py"
    corpus.write_text(wrong_corpus, encoding="utf-8")
    assert run(["verify", "-x", str(corpus)]) == 2
    assert "expected 3, got 2" in capsys.readouterr().out


def test_local_basics_suite(capsys):
    assert run(["verify", "--suite", "local-basics", "--strict"]) == 0
    out = capsys.readouterr().out
    assert "CONFLICT" not in out
    assert "UNSTABLE" not in out


def test_infinity_basics_suite(capsys):
    assert run(["verify", "--suite", "infinity-basics"]) == 0
    out = capsys.readouterr().out
    assert "CONFLICT" not in out
    assert "UNSTABLE" not in out


def test_subtuples_flag():
    arguments = ["chi-fiber-tube", "--vars", "x,y,z", "--map", "x, y", "--mode", "nonisolated", "--subtuples"]
    request = milnordeg.main.make_request(milnordeg.main.parser.parse_args(arguments), arguments)
    assert request.flags["subtuples"]
    assert request.flags["mode"] == "nonisolated"


@pytest.mark.parametrize(
    ["arguments", "message"],
    [
        (["local-degree", "--vars", "x,y", "--map", "x + , y"], "position 4"),
        (["local-degree", "--map", "x,y"], "--vars is required"),
        (["chi-link0", "--vars", "x,y"], "--zeros is required"),
        (["chi-link0", "--vars", "x,y", "--zeros", "x", "--complex"], "--complex"),
        (["verify"], "--suite or --custom"),
    ],
)
def test_errors(arguments, message):
    code = run(arguments)
    assert code.startswith("milnordeg: error:")
    assert message in code


def test_usage_errors_exit_with_one(capsys):
    assert run(["degree"]) == 1
    assert run([]) == 1
    assert "usage:" in capsys.readouterr().err


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "link.json"
    arguments = ["chi-link0", "--vars", "x,y", "--zeros", "x", "-f", "json", str(dest)]
    assert run(arguments) == 0
    assert json.loads(dest.read_text())["summary"] == {"VERIFIED": 1}

    assert "use -o" in run(arguments)
    assert run(arguments + ["-o"]) == 0


def test_version(capsys):
    assert run(["-V"]) == 0
    assert capsys.readouterr().out == "v0.4.0\n"


def test_list_suites(capsys):
    assert run(["-L"]) == 0
    assert capsys.readouterr().out == "exploratory, infinity-basics, local-basics\n"


def test_debug(capsys):
    assert run(["-d", "semitame"]) == 0
    assert "'command': 'semitame'" in capsys.readouterr().out


def test_help():
    """
    Assert help command completes.
    """
    out = subprocess.check_output(['milnordeg', '--help'], text=True)
    assert out
