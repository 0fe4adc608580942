import json
from io import StringIO
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from usageclusters.ui.cli import main

CORPORA = Path(__file__).parent / "corpora"
GUAVA = str(CORPORA / "guava_mini")
SMALL = str(CORPORA / "small")


@pytest.fixture(autouse=True)
def no_progress_bar(monkeypatch):
    monkeypatch.setenv("USAGECLUSTERS_PROGRESS_BAR", "False")


# find

def test_find_text(capsys):
    assert main(["find", "initCapacity", "--root", GUAVA]) == 0
    out = capsys.readouterr().out
    assert out.startswith("31 usages of initCapacity in 3 clusters (threshold 0.88)\n")
    assert "Cluster 1 (14 members)\n  > com/google/common/collect/Maps.java, line 15: " in out
    assert "Cluster 2 (10 members)" in out
    assert "Cluster 3 (7 members)" in out


def test_find_json(capsys):
    assert main(["find", "initCapacity", "--root", GUAVA, "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["total_usages"] == 31
    assert [c["size"] for c in report["clusters"]] == [14, 10, 7]
    assert report["config"]["threshold"] == 0.88
    assert report["query"]["symbol"] == "initCapacity"


def test_find_is_reproducible(capsys):
    main(["find", "initCapacity", "--root", GUAVA, "--format", "json"])
    first = capsys.readouterr().out
    main(["find", "initCapacity", "--root", GUAVA, "--format", "json"])
    assert capsys.readouterr().out == first


def test_find_threshold_flag(capsys):
    assert main(["find", "initCapacity", "--root", GUAVA, "--format", "json", "--threshold", "0"]) == 0
    assert [c["size"] for c in json.loads(capsys.readouterr().out)["clusters"]] == [31]


def test_find_arity_filter(capsys):
    assert main(["find", "initCapacity", "--root", SMALL, "--arity", "2", "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["total_usages"] == 1
    assert report["clusters"][0]["representative"] == {
        "file": "com/example/Buffers.java", "line": 15, "snippet": "int[] twice = initCapacity(16, 4);"}


def test_find_include_other_files(capsys):
    # README.txt is skipped since it is not valid Java.
    assert main(["find", "initCapacity", "--root", SMALL, "--include", "*.txt"]) == 1


def test_no_usage_found(capsys):
    assert main(["find", "noSuchSymbol", "--root", GUAVA]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "0 usages found" in captured.err


def test_missing_root(tmp_path, capsys):
    assert main(["find", "initCapacity", "--root", str(tmp_path / "nowhere")]) == 2
    assert "usageclusters: error:" in capsys.readouterr().err


def test_invalid_threshold(capsys):
    assert main(["find", "initCapacity", "--root", SMALL, "--threshold", "1.5"]) == 2


def test_invalid_progress_bar_variable(monkeypatch, capsys):
    monkeypatch.setenv("USAGECLUSTERS_PROGRESS_BAR", "maybe")
    assert main(["find", "initCapacity", "--root", SMALL]) == 2
    assert "USAGECLUSTERS_PROGRESS_BAR" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["find"],
    ["find", "initCapacity", "--threshold", "high"],
    ["find", "initCapacity", "--kind", "field"],
    ["cluster", "initCapacity"],
])
def test_invalid_arguments(argv, capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


def test_broken_files_are_reported(capsys):
    assert main(["find", "helper", "--root", str(CORPORA / "broken")]) == 0
    captured = capsys.readouterr()
    assert "Skipped 1 file that could not be parsed." in captured.out
    assert "Broken.java" in captured.err


# Configuration file

def test_config_file(tmp_path, capsys):
    config = tmp_path / "settings.json"
    config.write_text(json.dumps({"threshold": 0.0, "format": "json"}))
    assert main(["find", "initCapacity", "--root", GUAVA, "--config", str(config)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [c["size"] for c in report["clusters"]] == [31]


def test_flags_override_config_file(tmp_path, capsys):
    config = tmp_path / "settings.json"
    config.write_text(json.dumps({"threshold": 0.0, "format": "json"}))
    assert main(["find", "initCapacity", "--root", GUAVA, "--config", str(config), "--threshold", "0.88"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert [c["size"] for c in report["clusters"]] == [14, 10, 7]


def test_config_file_in_root(tmp_path, capsys):
    (tmp_path / "A.java").write_text("class A {\n  void f() { g(); }\n  void h() { g(); }\n}\n")
    (tmp_path / "B.java").write_text("class B {\n  void f() { g(); }\n}\n")
    (tmp_path / "usageclusters.json").write_text(json.dumps({"exclude": ["B.java"], "format": "json"}))
    assert main(["find", "g", "--root", str(tmp_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["total_usages"] == 2
    assert report["corpus"]["files_scanned"] == 1


@pytest.mark.parametrize("content, message", [
    ("{threshold: 0.5}", "Invalid JSON"),
    ('{"threshold": "0.9"}', "should be a number"),
    ('{"dice": "0.5"}', "should be a number"),
    ('{"include": 5}', "list of glob patterns"),
])
def test_invalid_config_file(tmp_path, capsys, content, message):
    config = tmp_path / "settings.json"
    config.write_text(content)
    assert main(["find", "initCapacity", "--root", SMALL, "--config", str(config)]) == 2
    assert message in capsys.readouterr().err


# list

def test_list_text(capsys):
    assert main(["list", "initCapacity", "--root", SMALL]) == 0
    assert capsys.readouterr().out == (
        "com.example (3 usages)\n"
        "  com/example/Buffers.java, line 14: int[] more = initCapacity(16);\n"
        "  com/example/Buffers.java, line 15: int[] twice = initCapacity(16, 4);\n"
        "  com/example/Pool.java, line 5: Buffers.initCapacity(32);\n"
    )


def test_list_json(capsys):
    assert main(["list", "initCapacity", "--root", GUAVA, "--format", "json"]) == 0
    listing = json.loads(capsys.readouterr().out)
    assert listing["total_usages"] == 31
    assert listing["usages"][0] == {
        "package": "com.google.common.base",
        "file": "com/google/common/base/Joining.java",
        "line": 17,
        "kind": "call",
        "arity": 1,
        "snippet": "StringBuilder builder = new StringBuilder(Sizing.initCapacity(names.size() * 8));",
    }


def test_list_no_usage(capsys):
    assert main(["list", "noSuchSymbol", "--root", SMALL]) == 1


# matrix

def test_matrix(capsys):
    assert main(["matrix", "initCapacity", "--root", SMALL]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",com/example/Buffers.java:14,com/example/Buffers.java:15,com/example/Pool.java:5"
    matrix = pd.read_csv(StringIO(out), index_col=0).to_numpy()
    assert matrix.shape == (3, 3)
    np.testing.assert_allclose(matrix, matrix.T)
    np.testing.assert_allclose(np.diag(matrix), 1.0)
    assert matrix[0, 1] == 1.0
    assert 0.0 <= matrix[0, 2] < 1.0


def test_matrix_to_file(tmp_path, capsys):
    output = tmp_path / "matrix.csv"
    assert main(["matrix", "initCapacity", "--root", SMALL, "--arity", "1", "--output", str(output)]) == 0
    assert capsys.readouterr().out == ""
    assert pd.read_csv(output, index_col=0).shape == (2, 2)


# diff

def test_diff_identical_trees(capsys):
    tree = '(block (return_statement (identifier "x")) (expression_statement (identifier "y")))'
    assert main(["diff", tree, tree]) == 0
    assert capsys.readouterr().out == "shared=5 unmatched=0/0 score=1.0\n"


def test_diff_disjoint_trees(capsys):
    assert main(["diff", '(a (b "1"))', '(c (d "1"))']) == 0
    assert capsys.readouterr().out == "shared=0 unmatched=2/2 score=0.0\n"


def test_diff_debug_logs_the_trees(capsys):
    assert main(["diff", '(a (b "1"))', '(c (d "1"))', "--debug"]) == 0
    captured = capsys.readouterr()
    assert captured.out == "shared=0 unmatched=2/2 score=0.0\n"
    assert "First tree" in captured.err
    assert "b:'1'" in captured.err


def test_diff_from_files(tmp_path, capsys):
    first = tmp_path / "first.sexpr"
    first.write_text('(block\n  (return_statement (identifier "x"))\n  (expression_statement (identifier "y")))\n')
    second = tmp_path / "second.sexpr"
    second.write_text('(block (return_statement (identifier "x")))')
    assert main(["diff", str(first), str(second)]) == 0
    assert capsys.readouterr().out == "shared=3 unmatched=2/0 score=0.75\n"


def test_diff_malformed_tree(capsys):
    assert main(["diff", '(a (b "1")', '(a)']) == 2
    assert "malformed tree" in capsys.readouterr().err


def test_diff_missing_file(tmp_path, capsys):
    assert main(["diff", str(tmp_path / "missing.sexpr"), "(a)"]) == 2
