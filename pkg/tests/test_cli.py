import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from ttslex.cli import main
from ttslex.fstio import from_text, read_fst, to_text
from ttslex.paths import relation
from ttslex.symbols import SymbolTable

DATA = resources.files("ttslex") / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    capsys.readouterr()
    status = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return status, out, err


def test_analyze_german_golden(capsys):
    status, out, _ = run(capsys, "analyze", "--manifest", DATA / "de" / "de.mf", "--text", "234",
                         "--spelled")
    assert status == 0
    assert out == (GOLDEN / "cli_de_234.txt").read_text(encoding="utf-8")


def test_analyze_nbest_and_lattice(capsys):
    mf = DATA / "ru" / "ru.mf"
    status, out, _ = run(capsys, "analyze", "--manifest", mf, "--text", "5%", "--nbest", "2")
    lines = out.splitlines()
    assert status == 0 and len(lines) == 2
    assert lines[0] == "pjatʹ{num}{many}{nom}{##}procent{noun}{masc}{inan}{pl}{gen}\t0.0"
    assert lines[1].endswith("\t1.0")
    status, out, _ = run(capsys, "analyze", "--manifest", mf, "--text", "5%", "--lattice")
    lattice = from_text(out, SymbolTable())
    assert status == 0 and "*" not in {lattice.table.lookup(a.olabel)
                                       for s in lattice.states() for a in lattice.arcs(s)}


def test_lattice_command(capsys, tmp_path):
    out_file = tmp_path / "lat.fst"
    mf = DATA / "ru" / "ru.mf"
    assert run(capsys, "lattice", "--manifest", mf, "--text", "с 5% скидкой",
               "-o", out_file)[0] == 0
    raw = read_fst(out_file, SymbolTable())
    assert "*" in {raw.table.lookup(a.olabel) for s in raw.states() for a in raw.arcs(s)}
    status, out, _ = run(capsys, "bestpath", out_file)
    assert status == 0 and out.count("\t") == 2


def test_compile_commands_and_round_trip(capsys, tmp_path):
    ru = DATA / "ru"
    for cmd, src in [("compile-wordlist", ru / "func.wl"),
                     ("compile-paradigm", ru / "adj.par"),
                     ("compile-arclist", ru / "word.arc")]:
        target = tmp_path / (src.name + ".fst")
        assert run(capsys, cmd, src, "-o", target)[0] == 0
        status, printed, _ = run(capsys, "print", target)
        assert status == 0
        assert printed == target.read_text(encoding="utf-8")
    a = read_fst(tmp_path / "func.wl.fst", SymbolTable())
    b = from_text(to_text(a), SymbolTable())
    assert relation(a, 8) != {}

    def named(f):
        return {(tuple(f.table.decode(i)), tuple(f.table.decode(o))): w
                for (i, o), w in relation(f, 8).items()}

    assert named(a) == named(b)


def test_rules_compose_bestpath(capsys, tmp_path):
    (tmp_path / "r.rules").write_text("a -> b / _ c\n", encoding="utf-8")
    (tmp_path / "s.fst").write_text("0\t1\ta\ta\n1\t2\tc\tc\n2\n", encoding="utf-8")
    assert run(capsys, "compile-rules", tmp_path / "r.rules", "-o", tmp_path / "r.fst")[0] == 0
    assert run(capsys, "compose", tmp_path / "s.fst", tmp_path / "r.fst",
               "-o", tmp_path / "out.fst")[0] == 0
    status, out, _ = run(capsys, "bestpath", tmp_path / "out.fst")
    assert (status, out) == (0, "a c\tb c\t0.0\n")


def test_build_numbers_and_stats(capsys, tmp_path):
    de = DATA / "de"
    target = tmp_path / "num.fst"
    status, _, _ = run(capsys, "build-numbers", "--lexicon", de / "numbers.wl", "--filter",
                       "decade-flop", "--cleanup", de / "cleanup.rules", "--max-digits", "4",
                       "-o", target)
    assert status == 0
    status, out, _ = run(capsys, "stats", target)
    assert status == 0 and out.startswith("states=") and " arcs=" in out
    status, _, err = run(capsys, "build-numbers", "--lexicon", de / "numbers.wl",
                         "--max-digits", "4")
    assert status == 1 and "[compile]" in err and "witness" in err


def test_build_analyzer_and_stats(capsys, tmp_path):
    target = tmp_path / "an.fst"
    mf = DATA / "de" / "de.mf"
    assert run(capsys, "build-analyzer", "--manifest", mf, "-o", target)[0] == 0
    from_file = run(capsys, "stats", target)[1]
    assert from_file == run(capsys, "stats", "--manifest", mf)[1]
    (tmp_path / "empty.fst").write_text("", encoding="utf-8")
    assert run(capsys, "stats", tmp_path / "empty.fst")[1] == "states=0 arcs=0\n"


def test_draw(capsys, tmp_path):
    (tmp_path / "s.fst").write_text("0\t1\ta\tb\t0.5\n1\t2.0\n", encoding="utf-8")
    status, out, _ = run(capsys, "draw", tmp_path / "s.fst")
    assert status == 0 and out.startswith("digraph") and "a:b/0.5" in out


def test_errors_exit_one_with_stage(capsys, tmp_path):
    (tmp_path / "bad.wl").write_text("a : b : c\n", encoding="utf-8")
    status, _, err = run(capsys, "compile-wordlist", tmp_path / "bad.wl")
    assert status == 1 and err.startswith("[parse]") and "line 1" in err
    status, _, err = run(capsys, "analyze", "--manifest", DATA / "ru" / "ru.mf",
                         "--text", "кот xyz")
    assert status == 1 and "[analyze]" in err
    (tmp_path / "w.wl").write_text("a{x} : a\n", encoding="utf-8")
    (tmp_path / "lm.rules").write_text("<eps> -> \\* / {x} _\n", encoding="utf-8")
    (tmp_path / "m.mf").write_text("word = w.wl\nlm.1 = lm.rules\n", encoding="utf-8")
    status, _, err = run(capsys, "analyze", "--manifest", tmp_path / "m.mf", "--text", "a")
    assert status == 1 and "[disambiguate]" in err
    status, _, err = run(capsys, "print", tmp_path / "missing.fst")
    assert status == 1 and err.startswith("[io]")
    (tmp_path / "broken.fst").write_text("0\t1\ta\n", encoding="utf-8")
    status, _, err = run(capsys, "print", tmp_path / "broken.fst")
    assert status == 1 and err.startswith("[parse]")


def test_requires_subcommand():
    with pytest.raises(SystemExit):
        main([])


def test_module_entry_point_reads_stdin_lines():
    proc = subprocess.run([sys.executable, "-m", "ttslex.cli", "analyze", "--manifest",
                           str(DATA / "de" / "de.mf"), "--spelled"],
                          input="13\n34\n", capture_output=True, text=True, encoding="utf-8")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0::2] == ["dreizehn\t0.0", "vierunddreißig\t0.0"]
