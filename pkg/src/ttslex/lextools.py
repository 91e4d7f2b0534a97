"""Lexicon compilers: word lists, inflectional paradigms and arc-list word grammars.

All three source formats share the token syntax of :mod:`ttslex.lexer`.

Word list, one entry per line::

    lhs [: rhs] [<cost>]

Either side may be a regular expression and the whole entry may be
wrapped in slashes (``/{2} : zw`ei{num}{##}/``). An entry without ``rhs``
is an acceptor.

Paradigm file::

    paradigm NAME
    slot SUFFIX FEATURES [<cost>]      # SUFFIX may be <eps>
    stem LEXICAL[:SURFACE] NAME INHERENT

Arc-list grammar::

    lexicon NAME FILE
    state NAME                         # first state declared is the start
    arc FROM TO $NAME [<cost>]         # splice a sub-lexicon
    arc FROM TO ENTRY                  # or any word-list entry
    final NAME [<cost>]
"""

from dataclasses import dataclass, field
from pathlib import Path as FilePath

from . import ops, semiring
from .errors import CompileError, ParseError
from .fst import Fst, compile_pair, empty
from .lexer import lex, strip_comment, tokens_of
from .regex import compile_regex, parse_items, regex_tokens


# word lists ----------------------------------------------------------------

@dataclass(frozen=True)
class WordListEntry:
    lhs: tuple
    rhs: tuple = None
    cost: float = semiring.ONE
    line: int = None

    def tokens(self):
        yield from regex_tokens(self.lhs)
        if self.rhs is not None:
            yield from regex_tokens(self.rhs)


def parse_entry(text, lineno=None, source=None):
    items = lex(text, lineno, source)
    outer_cost = semiring.ONE
    if len(items) >= 3 and items[-1].kind == "cost" and items[-2].kind == "op" \
            and items[-2].text == "/":
        outer_cost = items[-1].value
        items = items[:-1]
    if len(items) >= 2 and items[0].kind == "op" and items[0].text == "/" \
            and items[-1].kind == "op" and items[-1].text == "/":
        items = items[1:-1]
    cost = semiring.ONE
    if items and items[-1].kind == "cost":
        cost = items[-1].value
        items = items[:-1]
    colons = [i for i, it in enumerate(items) if it.kind == "op" and it.text == ":"]
    if len(colons) > 1:
        raise ParseError("more than one ':' in entry", lineno, items[colons[1]].col, source)
    if colons:
        lhs_items, rhs_items = items[:colons[0]], items[colons[0] + 1:]
    else:
        lhs_items, rhs_items = items, None
    if not lhs_items and not rhs_items:
        raise ParseError("empty entry", lineno, None, source)
    lhs = parse_items(lhs_items, lineno, source)
    rhs = parse_items(rhs_items, lineno, source) if rhs_items is not None else None
    return WordListEntry(lhs, rhs, cost + outer_cost, lineno)


def parse_wordlist(text, source=None):
    entries = []
    for n, line in enumerate(text.splitlines(), 1):
        body = strip_comment(line).strip()
        if body:
            entries.append(parse_entry(body, n, source))
    return entries


def _plain_tokens(node):
    """Token list and cost for a regex that is just a string, else None."""
    kind = node[0]
    if kind == "sym":
        return [node[1]], semiring.ONE
    if kind == "eps":
        return [], semiring.ONE
    if kind == "cost":
        return [], node[1]
    if kind == "cat":
        toks, cost = [], semiring.ONE
        for child in node[1]:
            sub = _plain_tokens(child)
            if sub is None:
                return None
            toks += sub[0]
            cost += sub[1]
        return toks, cost
    return None


def compile_entry(entry, table):
    lhs = _plain_tokens(entry.lhs)
    rhs = _plain_tokens(entry.rhs) if entry.rhs is not None else lhs
    if lhs is not None and rhs is not None:
        cost = entry.cost + lhs[1] + (rhs[1] if entry.rhs is not None else 0.0)
        return compile_pair(lhs[0], rhs[0], table, cost)
    left = compile_regex(entry.lhs, table)
    if entry.rhs is None:
        machine = left
    else:
        machine = ops.cross(left, compile_regex(entry.rhs, table))
    return ops.add_weight(machine, entry.cost) if entry.cost else machine


def compile_wordlist(entries, table, source=None):
    """Union of one machine per entry; ``entries`` may be source text."""
    if isinstance(entries, str):
        entries = parse_wordlist(entries, source)
    for e in entries:
        for tok in e.tokens():
            table.add(tok)
    machines = [compile_entry(e, table) for e in entries]
    if not machines:
        return empty(table)
    return ops.union(*machines)


# paradigms -------------------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    suffix: tuple
    features: tuple
    cost: float = semiring.ONE


@dataclass
class ParadigmSpec:
    name: str
    slots: list = field(default_factory=list)


@dataclass(frozen=True)
class StemEntry:
    stem: tuple
    paradigm: str
    inherent: tuple = ()
    surface: tuple = None

    @property
    def surface_stem(self):
        return self.stem if self.surface is None else self.surface


def parse_paradigms(text, source=None):
    """Returns (paradigms by name, stem entries)."""
    paradigms = {}
    stems = []
    current = None
    for n, line in enumerate(text.splitlines(), 1):
        body = strip_comment(line).strip()
        if not body:
            continue
        head, _, rest = body.partition(" ")
        fields = rest.split()
        if head == "paradigm":
            if len(fields) != 1:
                raise ParseError("expected 'paradigm NAME'", n, None, source)
            if fields[0] in paradigms:
                raise ParseError(f"paradigm {fields[0]!r} defined twice", n, None, source)
            current = paradigms[fields[0]] = ParadigmSpec(fields[0])
        elif head == "slot":
            if current is None:
                raise ParseError("slot before any paradigm", n, None, source)
            cost = semiring.ONE
            if fields and fields[-1].startswith("<") and fields[-1] != "<eps>":
                (item,) = lex(fields.pop(), n, source)
                cost = item.value
            if len(fields) != 2:
                raise ParseError("expected 'slot SUFFIX FEATURES [<cost>]'", n, None, source)
            features = tuple(tokens_of(fields[1], n, source))
            if not features:
                raise ParseError("slot needs at least one feature", n, None, source)
            current.slots.append(Slot(tuple(tokens_of(fields[0], n, source)), features, cost))
        elif head == "stem":
            if len(fields) not in (2, 3):
                raise ParseError("expected 'stem LEX[:SURFACE] PARADIGM [FEATURES]'",
                                 n, None, source)
            lexical, _, surface = fields[0].partition(":")
            stems.append(StemEntry(tuple(tokens_of(lexical, n, source)), fields[1],
                                   tuple(tokens_of(fields[2], n, source)) if len(fields) == 3 else (),
                                   tuple(tokens_of(surface, n, source)) if surface else None))
        else:
            raise ParseError(f"unknown directive {head!r}", n, 1, source)
    return paradigms, stems


def paradigm_forms(paradigms, stems):
    """(lexical tokens, surface tokens, cost) for every stem x slot."""
    if isinstance(paradigms, ParadigmSpec):
        paradigms = {paradigms.name: paradigms}
    for st in stems:
        spec = paradigms.get(st.paradigm)
        if spec is None:
            raise CompileError(f"stem {''.join(st.stem)!r} uses unknown paradigm {st.paradigm!r}")
        for slot in spec.slots:
            yield (st.stem + st.inherent + slot.features,
                   st.surface_stem + slot.suffix, slot.cost)


def compile_paradigm(paradigms, stems, table):
    """Lexical form (stem, inherent and slot features) to stem plus suffix."""
    machines = [compile_pair(lex_, surf, table, cost)
                for lex_, surf, cost in paradigm_forms(paradigms, stems)]
    if not machines:
        return empty(table)
    return ops.union(*machines)


# arc lists -------------------------------------------------------------------

@dataclass
class ArcListGrammar:
    states: list = field(default_factory=list)
    arcs: list = field(default_factory=list)      # (src, dst, "$name" | WordListEntry, cost)
    finals: dict = field(default_factory=dict)
    lexicons: dict = field(default_factory=dict)  # name -> file reference


def parse_arclist(text, source=None):
    g = ArcListGrammar()
    for n, line in enumerate(text.splitlines(), 1):
        body = strip_comment(line).strip()
        if not body:
            continue
        head, _, rest = body.partition(" ")
        fields = rest.split()
        if head == "lexicon":
            if len(fields) != 2:
                raise ParseError("expected 'lexicon NAME FILE'", n, None, source)
            g.lexicons[fields[0]] = fields[1]
        elif head == "state":
            if len(fields) != 1:
                raise ParseError("expected 'state NAME'", n, None, source)
            if fields[0] not in g.states:
                g.states.append(fields[0])
        elif head == "final":
            if len(fields) not in (1, 2):
                raise ParseError("expected 'final NAME [<cost>]'", n, None, source)
            cost = lex(fields[1], n, source)[0].value if len(fields) == 2 else semiring.ONE
            g.finals[fields[0]] = cost
        elif head == "arc":
            if len(fields) < 3:
                raise ParseError("expected 'arc FROM TO LABEL [<cost>]'", n, None, source)
            label_text = rest.split(None, 2)[2]
            if label_text.startswith("$"):
                ref, *tail = label_text.split()
                cost = semiring.ONE
                if tail:
                    items = lex(" ".join(tail), n, source)
                    if len(items) != 1 or items[0].kind != "cost":
                        raise ParseError("unexpected text after lexicon reference", n, None, source)
                    cost = items[0].value
                g.arcs.append((fields[0], fields[1], ref, cost, n))
            else:
                g.arcs.append((fields[0], fields[1], parse_entry(label_text, n, source),
                               semiring.ONE, n))
        else:
            raise ParseError(f"unknown directive {head!r}", n, 1, source)
    return g


def compile_arclist(grammar, sublexicons, table):
    """Splice copies of sub-lexicons (and literal entries) into the state graph."""
    if not grammar.states:
        return empty(table)
    out = Fst(table)
    ids = {name: out.add_state() for name in grammar.states}
    out.set_start(ids[grammar.states[0]])

    def state(name, lineno):
        if name not in ids:
            raise CompileError(f"line {lineno}: undeclared state {name!r}")
        return ids[name]

    for src, dst, label, cost, lineno in grammar.arcs:
        s, t = state(src, lineno), state(dst, lineno)
        if isinstance(label, str):
            sub = sublexicons.get(label[1:])
            if sub is None:
                raise CompileError(f"line {lineno}: unresolved lexicon reference {label}")
            if sub.table is not table:
                raise CompileError(f"line {lineno}: lexicon {label} uses another symbol table")
        else:
            for tok in label.tokens():
                table.add(tok)
            sub = compile_entry(label, table)
        if sub.start is None:
            continue
        offset = ops._copy_into(out, sub)
        out.add_arc(s, 0, 0, cost, sub.start + offset)
        for f, w in sub.finals.items():
            out.add_arc(f + offset, 0, 0, w, t)
    for name, w in grammar.finals.items():
        out.set_final(state(name, "final"), w)
    return ops.connect(out)


def load_source(path, table):
    """Compile a word list (.wl), paradigm (.par) or arc list (.arc) file."""
    path = FilePath(path)
    text = path.read_text(encoding="utf-8")
    suffix = path.suffix
    if suffix == ".wl":
        return compile_wordlist(text, table, source=str(path))
    if suffix == ".par":
        paradigms, stems = parse_paradigms(text, str(path))
        return compile_paradigm(paradigms, stems, table)
    if suffix == ".arc":
        grammar = parse_arclist(text, str(path))
        subs = {name: load_source(path.parent / ref, table)
                for name, ref in grammar.lexicons.items()}
        return compile_arclist(grammar, subs, table)
    raise CompileError(f"don't know how to compile {path.name}")
