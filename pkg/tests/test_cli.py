import json
from pathlib import Path

import pytest

from config import CORPUS_DIR
from main import build_parser, main

CORPUS = Path(__file__).resolve().parent.parent / CORPUS_DIR


def run(capsys, *argv):
    code = main(["--quiet", *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def path(name):
    return str(CORPUS / f"{name}.quiver")


def test_validate_gentle(capsys):
    assert run(capsys, "validate", path("sq33")) == (0, "gentle: yes\n", "")


def test_validate_rejects_three_arrows_into_a_vertex(tmp_path, capsys):
    bad = tmp_path / "claw.quiver"
    bad.write_text("algebra claw\nvertices: 1 2 3 4\n"
                   "arrow a: 1 -> 3\narrow b: 2 -> 3\narrow c: 4 -> 3\nrelations:\n")
    code, out, _ = run(capsys, "validate", str(bad))
    assert code == 1
    assert out.startswith("gentle: no\n")
    assert "  S1: " in out


def test_strings(capsys):
    assert run(capsys, "strings", path("a2")) == (0, "e(1)\ne(2)\na\nstrings: 3\n", "")


def test_strings_with_bands_are_truncated(capsys):
    code, out, _ = run(capsys, "strings", path("ex22"), "--max-len", "1", "--bands")
    assert code == 0
    assert "strings: 8\n" in out
    assert out.endswith("bands: 1\n")


def test_fringe_to_file(tmp_path, capsys):
    target = tmp_path / "a2_hat.quiver"
    code, out, _ = run(capsys, "fringe", path("a2"), "-o", str(target))
    assert code == 0
    assert out == f"✓ Wrote {target}\n"
    text = target.read_text()
    assert "arrow 1.fo1: 1 -> 1.out1" in text
    assert "1.fo2 1.fi1" in text


@pytest.mark.parametrize("literal, expected", [
    ("e(2)", "e(1)"),
    ("e(1)", "0"),
    ("a", "0"),
])
def test_tau(capsys, literal, expected):
    assert run(capsys, "tau", path("a2"), "--string", literal) == (0, expected + "\n", "")


def test_tau_fringed(capsys):
    _, out, _ = run(capsys, "tau", path("a2"), "--string", "e(1)", "--fringed")
    assert out == "1.fo2 1.fo1^-\n"


def test_tau_loop_algebra(capsys):
    _, out, _ = run(capsys, "tau", path("gls"), "--string", "b")
    assert out == "b^- a\n"


def test_kiss(capsys):
    code, out, _ = run(capsys, "kiss", path("a2"), "e(1)", "e(2)")
    assert code == 0
    assert out == (
        "cohook(X) = 1.fo2 1.fo1^-\n"
        "cohook(Y) = 1.fi1^- a 2.fo1^-\n"
        "[1,1) -> [2,2) Z=e(1) flanks 1.fo1^- 1.fo2 | a 1.fi1^-\n"
        "kisses: 1\n"
    )


def test_homdim(capsys):
    assert run(capsys, "homdim", path("gls"), "a", "a")[1] == "2\n"
    assert run(capsys, "homdim", path("a2"), "e(1)", "e(2)", "--tau")[1] == "1\n"
    assert run(capsys, "homdim", path("a2"), "e(2)", "e(1)", "--tau")[1] == "0\n"


def test_ext(capsys):
    _, out, _ = run(capsys, "ext", path("a2"), "e(2)", "e(1)")
    assert out == "dim Ext^1(Y, X) = 1\n0 -> e(1) -> a -> e(2) -> 0\n"
    _, out, _ = run(capsys, "ext", path("a2"), "e(1)", "e(2)")
    assert out == "dim Ext^1(Y, X) = 0\n"


def test_sttilt(capsys):
    _, out, _ = run(capsys, "sttilt", path("a2"))
    assert out == (
        "0: e(1) a\n"
        "1: e(1) P[2][1]\n"
        "2: e(2) a\n"
        "3: e(2) P[1][1]\n"
        "4: P[1][1] P[2][1]\n"
        "collections: 5\n"
    )


def test_sttilt_needs_finite_type(capsys):
    code, out, err = run(capsys, "sttilt", path("ex22"))
    assert code == 1
    assert out == ""
    assert err.startswith("gentle: error: InfiniteType: ")


def test_poset(capsys):
    _, out, _ = run(capsys, "poset", path("a2"))
    lines = out.splitlines()
    assert lines[5:] == [
        "0 -> 1 kisses 1",
        "0 -> 2 kisses 1",
        "1 -> 4 kisses 1",
        "2 -> 3 kisses 1",
        "3 -> 4 kisses 1",
        "top: 0  bottom: 4",
    ]


def test_poset_dot(tmp_path, capsys):
    target = tmp_path / "a2.dot"
    code, _, _ = run(capsys, "poset", path("a2"), "--dot", str(target))
    assert code == 0
    dot = target.read_text()
    assert dot.startswith("digraph torsion_poset {\n")
    assert dot.count(" -> ") == 5
    assert 'n0 [label="e(1) a"];' in dot


def test_poset_dot_to_stdout(capsys):
    _, out, _ = run(capsys, "poset", path("gls"), "--dot", "-")
    assert out.startswith("digraph torsion_poset {")
    assert 'color="red"' in out


def test_poset_dot_to_stdout_as_json(capsys):
    code, out, _ = run(capsys, "--json", "poset", path("a2"), "--dot", "-")
    assert code == 0
    data = json.loads(out)
    assert data['command'] == "poset"
    assert data['dot'].startswith("digraph torsion_poset {")
    assert data['top'] == 0


def test_mc(capsys):
    _, out, _ = run(capsys, "mc", path("a2"), "--torsion-of", "0", "--arrow", "1.fo1")
    assert out == "1.fo1 1.fo2^-\n"


def test_mc_rejects_unknown_arrow(capsys):
    code, _, err = run(capsys, "mc", path("a2"), "--torsion-of", "0", "--arrow", "zz")
    assert code == 1
    assert "unknown arrow" in err


def test_census(capsys):
    assert run(capsys, "census", path("a2")) == (
        0, "✓ e(1) a: 7 walks\n✓ kiss uniqueness on 5 covers\ncensus: 1/1 passed\n", "")


def test_census_all(capsys):
    code, out, _ = run(capsys, "census", path("a3"), "--all")
    assert code == 0
    assert out.endswith("census: 14/14 passed\n")
    assert "anchors failed" not in out


def test_census_all_with_relations(capsys):
    code, out, _ = run(capsys, "census", path("sq33"), "--all")
    assert code == 0
    assert "anchors failed" not in out
    assert "✓ kiss uniqueness on " in out


def test_oracle_check(capsys):
    code, out, _ = run(capsys, "oracle-check", path("a2"), "--max-len", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["check", "pairs", "fail", "result"]
    assert [line.split()[0] for line in lines[1:]] == ["hom", "kiss", "ext", "tau", "fac"]
    assert all(line.endswith("✓") for line in lines[1:])


def test_json_envelope(capsys):
    code = main(["--json", "homdim", path("gls"), "a", "a"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["schema"] == "gentle-kiss/1"
    assert payload["command"] == "homdim"
    assert payload["dim"] == 2


def test_json_ext(capsys):
    main(["--json", "ext", path("a3"), "b", "a"])
    payload = json.loads(capsys.readouterr().out)
    (seq,) = payload["sequences"]
    assert seq["kind"] == "two-sided"
    assert sorted(seq["middle"]) == ["a b", "e(2)"]


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "no/such.quiver")
    assert code == 1
    assert err.startswith("gentle: error: ValueError: File not found")


def test_bad_literal(capsys):
    code, _, err = run(capsys, "tau", path("a2"), "--string", "a(")
    assert code == 1
    assert "StringSyntaxError" in err


def test_progress_messages_when_not_quiet(capsys):
    main(["homdim", path("a2"), "a", "a"])
    out = capsys.readouterr().out
    assert out.startswith("Loading quiver from: a2.quiver\n")
    assert out.endswith("1\n")


def test_usage_errors():
    assert main([]) == 2
    assert main(["tau", path("a2")]) == 2
    assert build_parser().parse_args(["sttilt", "x"]).command == "sttilt"
