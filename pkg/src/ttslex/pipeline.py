"""Text analysis: lexical analyzer, disambiguation, best path, pronunciation.

The analyzer maps surface text to lexical analyses::

    (token separator)* token?
    token     = (word ∘ surface)⁻¹ ∪ abbr⁻¹ ∪ numbers⁻¹ · special⁻¹? ∪ special⁻¹
    separator = space⁻¹ ∪ punct⁻¹

Each component machine in a :class:`GrammarSet` maps lexical strings to
their written form, hence the inversions.
"""

import re
from dataclasses import dataclass, field

from . import ops
from .errors import (CompileError, EmptyAfterFiltering, NoAcceptingPath, NoAnalysis,
                     NoPronunciation, TtslexError)
from .fst import Fst
from .lexer import split_text
from .paths import best_path, best_transduction
from .regex import Dfa

FALLBACK_COST = 100.0


@dataclass
class GrammarSet:
    table: object
    word: Fst = None
    surface: Fst = None
    abbr: Fst = None
    numbers: Fst = None
    special: Fst = None
    space: Fst = None
    punct: Fst = None
    lm: list = field(default_factory=list)
    mma_map: list = field(default_factory=list)
    phon: list = field(default_factory=list)
    filter_tags: frozenset = frozenset()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def analyzer(self, permissive=False):
        key = ("analyzer", permissive)
        if key not in self._cache:
            self._cache[key] = build_analyzer(self, permissive)
        return self._cache[key]

    def search_analyzer(self, permissive=False):
        """Epsilon-free copy of the analyzer used for analysis; same relation."""
        key = ("search", permissive)
        if key not in self._cache:
            self._cache[key] = ops.rm_epsilon(self.analyzer(permissive))
        return self._cache[key]

    def stages(self, name):
        """The machines of list ``name``, epsilon-free, built once."""
        key = ("stages", name)
        if key not in self._cache:
            self._cache[key] = [ops.rm_epsilon(m) for m in getattr(self, name)]
        return self._cache[key]

    def tag_filter(self):
        if "filter" not in self._cache:
            self._cache["filter"] = ops.avoid_symbols(self.table, self.filter_tags)
        return self._cache["filter"]


def _nonempty(name, machine):
    if machine is None:
        return None
    if machine.is_empty():
        raise CompileError(f"grammar component {name!r} accepts nothing")
    return machine


def build_analyzer(g, permissive=False):
    """Surface-to-lexical transducer for whole texts."""
    word = _nonempty("word", g.word)
    surface = _nonempty("surface", g.surface)
    abbr = _nonempty("abbr", g.abbr)
    numbers = _nonempty("numbers", g.numbers)
    special = _nonempty("special", g.special)
    space = _nonempty("space", g.space)
    punct = _nonempty("punct", g.punct)
    if space is None:
        raise CompileError("grammar component 'space' is required")

    tokens = []
    if word is not None:
        spelled = ops.compose(word, surface) if surface is not None else word
        tokens.append(ops.invert(spelled))
    if abbr is not None:
        tokens.append(ops.invert(abbr))
    if numbers is not None:
        num = ops.invert(numbers)
        if special is not None:
            num = ops.concat(num, ops.optional(ops.invert(special)))
        tokens.append(num)
    if special is not None:
        tokens.append(ops.invert(special))
    if permissive:
        tokens.append(_fallback(g.table))
    if not tokens:
        raise CompileError("grammar set has no text-word component")
    token = ops.union(*tokens)
    separator = ops.invert(space) if punct is None else ops.union(ops.invert(space),
                                                                  ops.invert(punct))
    return ops.connect(ops.concat(ops.closure(ops.concat(token, separator), "star"),
                                  ops.optional(token)))


def _fallback(table):
    """Any single known character, read as itself at a high cost."""
    f = Fst(table)
    s, t = f.add_states(2)
    f.set_start(s)
    f.set_final(t)
    for label in table.labels():
        if len(table.lookup(label)) == 1:
            f.add_arc(s, label, label, FALLBACK_COST, t)
    return ops.closure(f, "plus")


def _encode_text(text, table):
    labels = []
    for i, ch in enumerate(split_text(text)):
        label = table.get(ch)
        if label is None:
            offset = _chunk_start(text, i)
            raise NoAnalysis(offset, _span(text, offset))
        labels.append(label)
    return labels


def _span(text, offset):
    """The whitespace-delimited chunk of ``text`` starting at ``offset``."""
    m = re.compile(r"\S*").match(text, offset)
    return text[offset:m.end()] or text[offset:offset + 1]


def _chunk_start(text, offset):
    """Start of the whitespace-delimited chunk holding position ``offset``."""
    offset = min(offset, len(text.rstrip()))
    while offset > 0 and not text[offset - 1].isspace():
        offset -= 1
    return offset


def _viable_prefix(analyzer, labels):
    dfa = Dfa(ops.project(analyzer, "input"))
    state = dfa.start
    for i, label in enumerate(labels):
        state = dfa.step(state, label)
        if state is None:
            return i
    return len(labels)


def analyze(text, g, permissive=False):
    """Lattice of all lexical analyses of ``text``."""
    labels = _encode_text(text, g.table)
    analyzer = g.search_analyzer(permissive)
    acceptor = Fst(g.table)
    states = acceptor.add_states(len(labels) + 1)
    acceptor.set_start(states[0])
    acceptor.set_final(states[-1])
    for i, label in enumerate(labels):
        acceptor.add_arc(states[i], label, label, 0.0, states[i + 1])
    lattice = ops.compose(acceptor, analyzer)
    if lattice.is_empty():
        offset = _chunk_start(text, _viable_prefix(analyzer, labels))
        raise NoAnalysis(offset, _span(text, offset))
    return lattice


def disambiguate(lattice, g):
    """Apply the language-model cascade, then drop paths carrying filter tags."""
    if lattice.is_empty():
        raise EmptyAfterFiltering("empty lattice")
    result = lattice
    for machine in g.lm:
        result = ops.compose(result, machine)
    if g.filter_tags:
        result = ops.compose(result, g.tag_filter())
    if result.is_empty():
        raise EmptyAfterFiltering("every analysis was removed by the language model")
    return result


def select(lattice):
    return best_path(lattice)


def _transduce(tokens, machines, table):
    """Best output of the cascade ``machines`` for ``tokens``, or None.

    Each stage keeps only its cheapest output. For a functional stage
    (obligatory rules, a deterministic phonology) this is the best path of
    the whole composition; the composed lattice is never built.
    """
    labels = table.encode(tokens)
    for m in machines:
        try:
            labels, _ = best_transduction(labels, m)
        except NoAcceptingPath:
            return None
    return list(table.decode(labels))


def to_mma(lexical_tokens, g):
    mma = _transduce(lexical_tokens, g.stages("mma_map"), g.table)
    if mma is None:
        raise NoPronunciation("".join(lexical_tokens))
    return mma


def pronounce(path, g):
    """Phoneme tokens for a selected lexical path: lexical string through M then P."""
    lexical = list(path.output_tokens) if hasattr(path, "output_tokens") else list(path)
    for tok in lexical:
        if tok not in g.table:
            raise NoPronunciation("".join(lexical))
    mma = to_mma(lexical, g)
    phonemes = _transduce(mma, g.stages("phon"), g.table)
    if phonemes is None:
        raise NoPronunciation("".join(mma))
    return phonemes


def analyze_text(text, g, permissive=False):
    """analyze, disambiguate, select and pronounce; returns (path, phonemes)."""
    lattice = analyze(text, g, permissive)
    lattice = disambiguate(lattice, g)
    try:
        path = select(lattice)
    except NoAcceptingPath as err:  # pragma: no cover - disambiguate guards this
        raise EmptyAfterFiltering(str(err)) from None
    return path, pronounce(path, g)


def stats(f):
    return f.num_states, f.num_arcs


def spelled(tokens):
    """Plain rendering of lexical or MMA tokens: tags and stress marks dropped."""
    return "".join(t for t in tokens
                   if not (t.startswith("{") and len(t) > 1) and t not in ("`", "'"))


def format_phonemes(tokens):
    return " ".join(t[1:-1] if t.startswith("{") and len(t) > 2 else t for t in tokens)


__all__ = ["GrammarSet", "TtslexError", "analyze", "analyze_text", "build_analyzer",
           "disambiguate", "format_phonemes", "pronounce", "select", "spelled", "stats",
           "to_mma"]
