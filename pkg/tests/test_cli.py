import io
import subprocess
import sys

import pytest

from conftest import DATA, GOLDEN, reference_das_geht
from lud import demo_corpus, isomorphic, parse_lud_text
from lud.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


GOLDEN_CASES = {
    "analyze_das_geht.txt": ["analyze", "das geht"],
    "analyze_two_quantifiers.txt": ["analyze", "jeder kollege vereinbart einen termin"],
    "interpret_dasgeht.txt": ["interpret", DATA / "dasgeht.lud"],
    "plug_twoquant.txt": ["plug", DATA / "twoquant.lud"],
    "interpret_twoquant.txt": ["interpret", DATA / "twoquant.lud"],
    "plug_twoquant_mood.txt": ["plug", DATA / "twoquant_mood.lud", "--mood", "l16"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name):
    code, out, err = run(*GOLDEN_CASES[name])
    assert code == 0, err
    assert out == (GOLDEN / name).read_text(encoding="utf-8")


def test_analyze_matches_reference():
    code, out, _ = run("analyze", "das geht")
    assert code == 0
    body = "".join(line + "\n" for line in out.splitlines() if not line.startswith("#"))
    assert isomorphic(parse_lud_text(body), reference_das_geht())


def test_interpret_das_geht_has_one_box():
    _, out, _ = run("interpret", DATA / "dasgeht.lud")
    assert out.count("# reading") == 1
    assert "| e z        |" in out.splitlines()


def test_plug_lists_two_pluggings():
    _, out, _ = run("plug", DATA / "twoquant.lud")
    assert len(out.splitlines()) == 2


def test_oracle_flag_agrees():
    assert run("plug", DATA / "twoquant.lud", "--oracle") == run("plug", DATA / "twoquant.lud")
    assert run("interpret", DATA / "twoquant.lud", "--oracle") == run("interpret", DATA / "twoquant.lud")


def test_interpret_single_reading():
    code, out, _ = run("interpret", DATA / "twoquant.lud", "--plugging", 2)
    assert code == 0
    assert out.startswith("# reading 2: ")
    assert out.count("# reading") == 1


def test_analyze_with_mood():
    code, out, _ = run("analyze", "das geht", "--mood", "assert")
    assert code == 0
    assert "# mood " in out and "assert(e0)" in out


@pytest.mark.parametrize("argv, code", [
    (["check", DATA / "dasgeht.lud"], 0),
    (["check", DATA / "twoquant.lud"], 0),
    (["plug", DATA / "dasgeht.lud"], 0),
    (["analyze", "alle termine passen"], 0),
    (["check", DATA / "broken.lud"], 1),
    (["check", DATA / "syntax.lud"], 1),
    (["plug", DATA / "syntax.lud"], 1),
    (["interpret", DATA / "syntax.lud"], 1),
    (["plug", DATA / "twoquant.lud", "--mood", "l99"], 1),
    (["analyze", "das gehen"], 1),
    (["analyze", "das fliegt"], 1),
    (["interpret", DATA / "twoquant.lud", "--plugging", 3], 2),
    (["interpret", DATA / "twoquant.lud", "--plugging", "x"], 2),
    (["plug", DATA / "missing.lud"], 2),
    (["frobnicate"], 2),
    ([], 2),
])
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_diagnostics_go_to_stderr():
    code, out, err = run("check", DATA / "syntax.lud")
    assert out == ""
    assert err.strip() == f"{DATA / 'syntax.lud'}:2:1: syntax: malformed condition 'p(x'"
    code, out, err = run("check", DATA / "broken.lud")
    assert out.startswith("self-embedding: l1")
    code, out, err = run("analyze", "das fliegt")
    assert out == "" and err.startswith("lexicon-miss")


def test_corpus_output_is_byte_stable():
    def once():
        return subprocess.run(
            [sys.executable, "-m", "lud", "analyze", sentence],
            capture_output=True, check=True).stdout

    for sentence in demo_corpus()[:3]:
        assert once() == once()
