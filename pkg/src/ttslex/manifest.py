"""Grammar manifests: ``key = path`` lines naming the parts of a grammar set.

Keys are ``word``, ``surface``, ``abbr``, ``numbers``, ``special``,
``space``, ``punct``, ``lm.N``, ``mma``, ``phon`` and ``filter_tags``.
``mma`` and ``phon`` may list several files, applied left to right.
``space = whitespace`` and ``space = epsilon`` are built in, and
``filter_tags`` lists tokens (default ``*``). Paths are relative to the
manifest. Source files compile by extension: ``.fst`` (needs a
``symbols`` entry), ``.wl``, ``.par``, ``.arc``, ``.rules`` and ``.nb``.

Every source is lexed once up front so the shared symbol table is
complete before any rule is compiled; rule transducers are total only
over the symbols known when they are built.
"""

from pathlib import Path as FilePath

from . import ops
from .errors import CompileError, ParseError
from .fst import compile_pair
from .fstio import read_fst, read_symbols
from .lexer import lex, strip_comment
from .lextools import load_source
from .numbuilder import build_factorizer, load_recipe
from .pipeline import GrammarSet
from .rules import compile_cascade, compile_rules
from .symbols import SymbolTable

KEYS = {"word", "surface", "abbr", "numbers", "special", "space", "punct", "mma", "phon",
        "filter_tags", "symbols"}


def parse_manifest(text, source=None):
    entries = {}
    for n, line in enumerate(text.splitlines(), 1):
        body = strip_comment(line).strip()
        if not body:
            continue
        key, eq, value = body.partition("=")
        key, value = key.strip(), value.strip()
        if not eq or not value:
            raise ParseError("expected 'key = value'", n, None, source)
        if key not in KEYS and not (key.startswith("lm.") and key[3:].isdigit()):
            raise ParseError(f"unknown manifest key {key!r}", n, 1, source)
        if key in entries:
            raise ParseError(f"duplicate key {key!r}", n, 1, source)
        entries[key] = value
    return entries


def _recipe_files(path):
    files = []
    for line in path.read_text(encoding="utf-8").splitlines():
        key, _, value = strip_comment(line).strip().partition(" ")
        if key in ("lexicon", "cleanup"):
            files.append(path.parent / value.strip())
    return files


def _prescan(path, table, seen):
    """Add every token a source file mentions to ``table``."""
    path = FilePath(path)
    if path in seen:
        return
    seen.add(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".nb":
        for sub in _recipe_files(path):
            _prescan(sub, table, seen)
        return
    if path.suffix == ".fst":
        return
    for n, line in enumerate(text.splitlines(), 1):
        body = strip_comment(line)
        for item in lex(body, n, str(path)):
            if item.kind == "tok":
                table.add(item.text)
        if path.suffix == ".arc" and body.strip().startswith("lexicon"):
            fields = body.split()
            if len(fields) == 3:
                _prescan(path.parent / fields[2], table, seen)


def compile_file(path, table, symbols_path=None):
    path = FilePath(path)
    if path.suffix == ".fst":
        return read_fst(path, table)
    if path.suffix == ".rules":
        return compile_cascade(path.read_text(encoding="utf-8"), table)
    if path.suffix == ".nb":
        return load_recipe(path, table)
    return load_source(path, table)


def _space_machine(value, table, base):
    if value == "whitespace":
        return ops.union(*[compile_pair(["{##}"], [ch], table) for ch in (" ", "\t", "\n")])
    if value == "epsilon":
        return compile_pair(["{##}"], [], table)
    return compile_file(base / value, table)


def load_manifest(path):
    """Read a manifest and compile every component into one GrammarSet."""
    path = FilePath(path)
    entries = parse_manifest(path.read_text(encoding="utf-8"), str(path))
    base = path.parent
    if "symbols" in entries:
        table = read_symbols(base / entries["symbols"])
    else:
        table = SymbolTable()
    table.add("{##}")
    for ch in " \t\n":
        table.add(ch)
    tags = entries.get("filter_tags", "*").split()
    for t in tags:
        table.add(t)
    seen = set()
    for key, value in entries.items():
        if key in ("filter_tags", "symbols") or value in ("whitespace", "epsilon"):
            continue
        for name in value.split():
            _prescan(base / name, table, seen)
    if "numbers" in entries:
        # factorization tokens, so rules compiled below are total over them
        build_factorizer(10, 6, table)

    def one(key):
        if key not in entries:
            return None
        names = entries[key].split()
        if len(names) != 1:
            raise CompileError(f"manifest key {key!r} takes one file")
        return compile_file(base / names[0], table)

    def cascade(key):
        machines = []
        for name in entries.get(key, "").split():
            p = base / name
            if p.suffix == ".rules":
                machines.extend(compile_rules(p.read_text(encoding="utf-8"), table))
            else:
                machines.append(compile_file(p, table))
        return machines

    numbers = one("numbers")
    g = GrammarSet(
        table=table,
        word=one("word"),
        surface=one("surface"),
        abbr=one("abbr"),
        numbers=ops.invert(numbers) if numbers is not None else None,
        special=one("special"),
        space=_space_machine(entries.get("space", "whitespace"), table, base),
        punct=one("punct"),
        mma_map=cascade("mma"),
        phon=cascade("phon"),
        filter_tags=frozenset(table.find(t) for t in tags),
    )
    lm_keys = sorted((k for k in entries if k.startswith("lm.")), key=lambda k: int(k[3:]))
    for k in lm_keys:
        g.lm.extend(cascade(k))
    return g
