"""Command-line front end.

Machines are read and written in the text format of :mod:`ttslex.fstio`;
output goes to stdout unless ``-o`` names a file. Errors print a
stage-tagged message on stderr and exit with status 1.
"""

import argparse
import sys
from pathlib import Path as FilePath

from . import ops
from .errors import TtslexError
from .fstio import from_text, to_dot, to_text
from .lextools import (compile_arclist, compile_paradigm, compile_wordlist, load_source,
                       parse_arclist, parse_paradigms)
from .manifest import load_manifest
from .numbuilder import build_numbers
from .paths import best_path, nbest
from .pipeline import (analyze, disambiguate, format_phonemes, pronounce, select, spelled,
                       stats)
from .rules import compile_cascade
from .semiring import format_weight
from .symbols import SymbolTable


def _read_machine(path, table=None):
    table = table if table is not None else SymbolTable()
    text = sys.stdin.read() if path == "-" else FilePath(path).read_text(encoding="utf-8")
    try:
        return from_text(text, table)
    except ValueError as err:
        raise _Failure(f"[parse] {path}: {err}") from None


class _Failure(Exception):
    pass


def _emit(args, text):
    if getattr(args, "output", None):
        FilePath(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _source_text(path):
    return FilePath(path).read_text(encoding="utf-8")


def cmd_compile_wordlist(args):
    table = SymbolTable()
    _emit(args, to_text(compile_wordlist(_source_text(args.source), table, args.source)))


def cmd_compile_paradigm(args):
    table = SymbolTable()
    paradigms, stems = parse_paradigms(_source_text(args.source), args.source)
    _emit(args, to_text(compile_paradigm(paradigms, stems, table)))


def cmd_compile_arclist(args):
    table = SymbolTable()
    path = FilePath(args.source)
    grammar = parse_arclist(_source_text(path), str(path))
    subs = {name: load_source(path.parent / ref, table) for name, ref in grammar.lexicons.items()}
    _emit(args, to_text(compile_arclist(grammar, subs, table)))


def cmd_compile_rules(args):
    table = SymbolTable(args.symbol or ())
    _emit(args, to_text(compile_cascade(_source_text(args.source), table)))


def cmd_build_numbers(args):
    table = SymbolTable()
    fst = build_numbers(args.base, args.max_digits, args.lexicon, args.filter or [],
                        args.cleanup, table)
    _emit(args, to_text(fst))


def cmd_build_analyzer(args):
    g = load_manifest(args.manifest)
    _emit(args, to_text(g.analyzer(args.permissive)))


def _lattice(args, g):
    lattice = analyze(args.text, g, args.permissive)
    return disambiguate(lattice, g) if args.disambiguate else lattice


def _texts(args):
    if args.text is not None:
        return [args.text]
    return [line.rstrip("\n") for line in sys.stdin]


def cmd_analyze(args):
    g = load_manifest(args.manifest)
    for text in _texts(args):
        lattice = disambiguate(analyze(text, g, args.permissive), g)
        if args.lattice:
            sys.stdout.write(to_text(lattice))
            continue
        if args.nbest:
            for p in nbest(lattice, args.nbest):
                print(f"{p.output_string()}\t{format_weight(p.weight)}")
            continue
        path = select(lattice)
        shown = spelled(path.output_tokens) if args.spelled else path.output_string()
        print(f"{shown}\t{format_weight(path.weight)}")
        print(format_phonemes(pronounce(path, g)))


def cmd_lattice(args):
    g = load_manifest(args.manifest)
    _emit(args, to_text(_lattice(args, g)))


def _path_line(p):
    return "\t".join([" ".join(p.input_tokens), " ".join(p.output_tokens),
                      format_weight(p.weight)])


def cmd_bestpath(args):
    fst = _read_machine(args.fst)
    if args.nbest:
        for p in nbest(fst, args.nbest):
            print(_path_line(p))
    else:
        print(_path_line(best_path(fst)))


def cmd_compose(args):
    table = SymbolTable()
    a = _read_machine(args.first, table)
    b = _read_machine(args.second, table)
    _emit(args, to_text(ops.compose(a, b)))


def cmd_print(args):
    _emit(args, to_text(_read_machine(args.fst)))


def cmd_draw(args):
    _emit(args, to_dot(_read_machine(args.fst), FilePath(args.fst).stem))


def cmd_stats(args):
    if args.manifest:
        fst = load_manifest(args.manifest).analyzer()
    elif args.fst:
        fst = _read_machine(args.fst)
    else:
        raise _Failure("stats needs a machine file or --manifest")
    n_states, n_arcs = stats(fst)
    print(f"states={n_states} arcs={n_arcs}")


def build_parser():
    parser = argparse.ArgumentParser(prog="ttslex",
                                     description="Weighted finite-state text analysis tools.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, fn, help_text, output=False):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        if output:
            p.add_argument("-o", "--output", help="write the machine here instead of stdout")
        return p

    for name, fn, what in [("compile-wordlist", cmd_compile_wordlist, "word list"),
                           ("compile-paradigm", cmd_compile_paradigm, "paradigm file"),
                           ("compile-arclist", cmd_compile_arclist, "arc-list grammar")]:
        p = command(name, fn, f"compile a {what}", output=True)
        p.add_argument("source")

    p = command("compile-rules", cmd_compile_rules, "compile a rewrite-rule cascade",
                output=True)
    p.add_argument("source")
    p.add_argument("--symbol", action="append",
                   help="extra symbol the rules must pass through (repeatable)")

    p = command("build-numbers", cmd_build_numbers, "build a numeral expander", output=True)
    p.add_argument("--base", type=int, default=10)
    p.add_argument("--max-digits", type=int, default=6)
    p.add_argument("--lexicon", required=True, help="number lexicon word list")
    p.add_argument("--filter", action="append", help="named filter, e.g. decade-flop")
    p.add_argument("--cleanup", help="rule file applied after the lexicon")

    p = command("build-analyzer", cmd_build_analyzer, "build the text analyzer of a manifest",
                output=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--permissive", action="store_true")

    p = command("analyze", cmd_analyze, "analyze text and print analysis and phonemes")
    p.add_argument("--manifest", required=True)
    p.add_argument("--text", help="text to analyze (default: one text per stdin line)")
    p.add_argument("--lattice", action="store_true", help="dump the disambiguated lattice")
    p.add_argument("--nbest", type=int, metavar="K", help="print the K cheapest analyses")
    p.add_argument("--spelled", action="store_true",
                   help="print the analysis without tags and stress marks")
    p.add_argument("--permissive", action="store_true")

    p = command("lattice", cmd_lattice, "dump the analysis lattice of a text", output=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--text", required=True)
    p.add_argument("--disambiguate", action="store_true",
                   help="apply the language model and tag filter first")
    p.add_argument("--permissive", action="store_true")

    p = command("bestpath", cmd_bestpath, "print the cheapest path(s) of a machine")
    p.add_argument("fst")
    p.add_argument("--nbest", type=int, metavar="K")

    p = command("compose", cmd_compose, "compose two machines", output=True)
    p.add_argument("first")
    p.add_argument("second")

    p = command("print", cmd_print, "re-serialize a machine", output=True)
    p.add_argument("fst")

    p = command("draw", cmd_draw, "Graphviz description of a machine", output=True)
    p.add_argument("fst")

    p = command("stats", cmd_stats, "print state and arc counts")
    p.add_argument("fst", nargs="?")
    p.add_argument("--manifest", help="report the analyzer of this manifest")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (TtslexError, _Failure) as err:
        print(err, file=sys.stderr)
        return 1
    except OSError as err:
        print(f"[io] {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
