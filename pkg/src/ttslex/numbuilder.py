"""Numeral expansion: digit strings to factorizations to number names.

A factorization is a ``{+++}``-separated sum of terms, each a digit value
optionally followed by a power of the base, highest power first and zero
terms left out::

    234 -> {2}{10^2}{+++}{3}{10^1}{+++}{4}

The expander composes the factorizer with optional reordering filters,
the closure of a number lexicon and a cleanup rule cascade.
"""

import re
from collections import deque
from pathlib import Path as FilePath

from . import ops, semiring
from .errors import CompileError, CoverageError, ParseError
from .fst import Fst
from .lexer import strip_comment
from .lextools import compile_wordlist
from .regex import Dfa
from .rules import compile_cascade

SUM = "{+++}"
POWER = re.compile(r"^\{(\d+)\^(\d+)\}$")


def digit_token(d):
    return "{%d}" % d


def power_token(k, base=10):
    return "{%d^%d}" % (base, k)


def _emit(fst, src, ilabel, outputs, dst, weight=semiring.ONE):
    """Arc(s) reading ``ilabel`` (may be 0) and writing ``outputs``."""
    outputs = list(outputs) or [0]
    prev = src
    for k, o in enumerate(outputs):
        nxt = dst if k == len(outputs) - 1 else fst.add_state()
        fst.add_arc(prev, ilabel if k == 0 else 0, o, weight if k == 0 else semiring.ONE, nxt)
        prev = nxt


def build_factorizer(base=10, max_digits=6, table=None):
    """Digit strings (no leading zeros, at most ``max_digits``) to factorizations."""
    if max_digits < 1:
        raise ValueError("max_digits must be at least 1")
    if not 2 <= base <= 10:
        raise ValueError("base must be between 2 and 10")
    chars = [table.add(str(d)) for d in range(base)]
    digits = [table.add(digit_token(d)) for d in range(base)]
    powers = [None] + [table.add(power_token(k, base)) for k in range(1, max_digits)]
    plus = table.add(SUM)

    f = Fst(table)
    start = f.add_state()
    f.set_start(start)
    done = f.add_state()
    f.set_final(done)
    # after[p]: the next digit read has power p; after[-1] is the end
    after = {p: f.add_state() for p in range(max_digits - 1)}
    after[-1] = done
    _emit(f, start, chars[0], [digits[0]], done)
    for n in range(1, max_digits + 1):
        p = n - 1
        for d in range(1, base):
            _emit(f, start, chars[d], [digits[d]] + ([powers[p]] if p else []), after[p - 1])
    for p in range(max_digits - 1):
        f.add_arc(after[p], chars[0], 0, semiring.ONE, after[p - 1])
        for d in range(1, base):
            _emit(f, after[p], chars[d], [plus, digits[d]] + ([powers[p]] if p else []),
                  after[p - 1])
    return f


def build_decade_flop(table, base=10):
    """Identity except ``{d}{10^1}{+++}{u}`` becomes ``{u}{+++}{d}{10^1}``.

    A final bare ``{1}{10^1}`` (ten, with no unit after it) is written
    ``{0}{+++}{1}{10^1}`` so it meets the same composite lexicon entry as
    the other teens.
    """
    digits = [table.add(digit_token(d)) for d in range(base)]
    ten = table.add(power_token(1, base))
    plus = table.add(SUM)
    digit_value = {lab: d for d, lab in enumerate(digits)}

    f = Fst(table)
    idle = f.add_state()
    f.set_start(idle)
    f.set_final(idle)
    end = f.add_state()
    f.set_final(end)
    buffered = {d: f.add_state() for d in range(base)}     # {d} read
    decade = {d: f.add_state() for d in range(base)}       # {d}{10^1} read
    summed = {d: f.add_state() for d in range(base)}       # {d}{10^1}{+++} read
    unit = {(d, u): f.add_state() for d in range(base) for u in range(base)}

    others = [lab for lab in table.labels() if lab not in digit_value]

    def leave(src, pending, label):
        """Flush ``pending`` then handle ``label`` from the idle state."""
        if label in digit_value:
            _emit(f, src, label, pending, buffered[digit_value[label]])
        else:
            _emit(f, src, label, pending + [label], idle)

    for lab in others:
        f.add_arc(idle, lab, lab, semiring.ONE, idle)
    for d, lab in enumerate(digits):
        f.add_arc(idle, lab, 0, semiring.ONE, buffered[d])

    for d in range(base):
        dec = [digits[d], ten]
        _emit(f, buffered[d], 0, [digits[d]], end)
        for lab in table.labels():
            if lab == ten:
                f.add_arc(buffered[d], ten, 0, semiring.ONE, decade[d])
            else:
                leave(buffered[d], [digits[d]], lab)

        _emit(f, decade[d], 0, [digits[0], plus] + dec if d == 1 else dec, end)
        for lab in table.labels():
            if lab == plus:
                f.add_arc(decade[d], plus, 0, semiring.ONE, summed[d])
            else:
                leave(decade[d], dec, lab)

        _emit(f, summed[d], 0, dec + [plus], end)
        for lab in table.labels():
            if lab in digit_value:
                f.add_arc(summed[d], lab, 0, semiring.ONE, unit[d, digit_value[lab]])
            else:
                leave(summed[d], dec + [plus], lab)

        for u in range(base):
            flopped = [digits[u], plus] + dec
            _emit(f, unit[d, u], 0, flopped, end)
            for lab in table.labels():
                if POWER.match(table.lookup(lab)):
                    # not a unit term after all
                    _emit(f, unit[d, u], lab, dec + [plus, digits[u], lab], idle)
                else:
                    leave(unit[d, u], flopped, lab)
    return f


def _first_uncovered(domain, machine):
    """Shortest input accepted by ``domain`` but not by ``machine``, or None."""
    a = Dfa(ops.project(domain, "input"))
    b = Dfa(ops.project(machine, "input"))
    if a.start is None:
        return None
    labels = sorted({arc.ilabel for s in domain.states() for arc in domain.arcs(s)} - {0})
    seen = {(a.start, b.start)}
    queue = deque([(a.start, b.start, ())])
    while queue:
        qa, qb, word = queue.popleft()
        if a.accepting(qa) and not b.accepting(qb):
            return word
        for lab in labels:
            na = a.step(qa, lab)
            if na is None:
                continue
            nb = b.step(qb, lab)
            if (na, nb) not in seen:
                seen.add((na, nb))
                queue.append((na, nb, word + (lab,)))
    return None


def build_expander(factorizer, filters, lexicon, cleanup, table):
    """factorizer ∘ filters ∘ closure(lexicon) ∘ cleanup.

    ``lexicon`` is a compiled machine, a list of word-list entries or
    word-list source text; ``cleanup`` is a machine, rule source or None.
    Raises CoverageError with a witness digit string when some input in
    the factorizer's domain has no expansion.
    """
    if not hasattr(lexicon, "arcs"):
        lexicon = compile_wordlist(lexicon, table)
    if cleanup is not None and not hasattr(cleanup, "arcs"):
        cleanup = compile_cascade(cleanup, table)
    chain = [factorizer, *filters, ops.closure(lexicon, "plus")]
    if cleanup is not None:
        chain.append(cleanup)
    expander = ops.compose_all(*chain)
    witness = _first_uncovered(factorizer, expander)
    if witness is not None:
        digits = "".join(table.decode(witness))
        raise CoverageError(f"number lexicon does not cover {digits!r}", digits)
    return expander


FILTERS = {"decade-flop": build_decade_flop}


def load_recipe(path, table):
    """Build an expander from a recipe file of ``key value`` lines.

    Keys: ``base``, ``max_digits``, ``lexicon`` (word list), ``filter``
    (repeatable, by name) and ``cleanup`` (rule file). Paths are relative
    to the recipe.
    """
    path = FilePath(path)
    opts = {"base": "10", "max_digits": "6", "filter": [], "cleanup": None}
    for n, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        body = strip_comment(line).strip()
        if not body:
            continue
        key, _, value = body.partition(" ")
        value = value.strip()
        if key == "filter":
            opts["filter"].append(value)
        elif key in ("base", "max_digits", "lexicon", "cleanup"):
            opts[key] = value
        else:
            raise ParseError(f"unknown recipe key {key!r}", n, 1, str(path))
    if "lexicon" not in opts:
        raise ParseError("recipe needs a lexicon", None, None, str(path))
    return build_numbers(int(opts["base"]), int(opts["max_digits"]),
                         path.parent / opts["lexicon"], opts["filter"],
                         path.parent / opts["cleanup"] if opts["cleanup"] else None, table)


def build_numbers(base, max_digits, lexicon_path, filter_names, cleanup_path, table):
    fact = build_factorizer(base, max_digits, table)
    lexicon = compile_wordlist(FilePath(lexicon_path).read_text(encoding="utf-8"), table,
                               source=str(lexicon_path))
    filters = []
    for name in filter_names:
        if name not in FILTERS:
            raise CompileError(f"unknown filter {name!r} (known: {', '.join(FILTERS)})")
        filters.append(FILTERS[name](table, base))
    cleanup = None
    if cleanup_path is not None:
        cleanup = compile_cascade(FilePath(cleanup_path).read_text(encoding="utf-8"), table)
    return build_expander(fact, filters, lexicon, cleanup, table)
