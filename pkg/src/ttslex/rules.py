"""Context-dependent rewrite rules ``phi -> psi / lambda _ rho``.

Rules apply obligatorily, left to right, choosing at each position the
longest match of ``phi`` whose left context (on the input read so far)
and right context (on the remaining input) both hold. Matches do not
overlap. If ``phi`` also accepts the empty string and no nonempty match
is available, ``psi`` is inserted at that position. Contexts are tested
against the original input, never against rewritten material.

The compiled transducer guesses, at every position, whether the right
context holds there and verifies each guess as the rest of the input is
read (pending positive and negative obligations on a DFA of ``rho``).
Longest-match and leftmost-match are enforced the same way: a skipped or
shortened match leaves a "shadow" DFA run that kills the path if it would
ever have completed in a valid right context. Every input string thus has
exactly one accepting path.
"""

from dataclasses import dataclass, field

from . import ops, semiring
from .errors import CompileError, ParseError
from .fst import Fst, compile_string, sigma_star
from .lexer import lex, strip_comment
from .regex import Dfa, compile_regex, parse_items, regex_tokens


@dataclass(frozen=True)
class RewriteRule:
    phi: tuple
    psi: tuple = ()
    left: tuple = None
    right: tuple = None
    cost: float = semiring.ONE
    text: str = field(default="", compare=False)

    def tokens(self):
        yield from regex_tokens(self.phi)
        yield from self.psi
        for ctx in (self.left, self.right):
            if ctx is not None:
                yield from regex_tokens(ctx)


# parsing -----------------------------------------------------------------

def _split_focus(items):
    """Split context items at the ``_``/``__`` focus marker."""
    marks = [i for i, it in enumerate(items)
             if it.kind == "tok" and it.text == "_" and not it.escaped]
    if not marks:
        return None
    first = marks[0]
    last = first
    if first + 1 < len(items) and first + 1 in marks:
        last = first + 1
    if any(m > last for m in marks):
        return "many"
    return items[:first], items[last + 1:]


def parse_rule(line, lineno=None, source=None):
    """Parse one rule line: ``phi -> psi [/ lambda _ rho] [<cost>]``."""
    text = strip_comment(line).strip()
    items = lex(text, lineno, source)
    arrows = [i for i, it in enumerate(items) if it.kind == "op" and it.text == "->"]
    if len(arrows) != 1:
        raise ParseError("expected exactly one '->'", lineno, None, source)
    phi_items = items[:arrows[0]]
    rest = items[arrows[0] + 1:]
    slash = next((i for i, it in enumerate(rest) if it.kind == "op" and it.text == "/"), None)
    psi_items = rest if slash is None else rest[:slash]
    ctx_items = [] if slash is None else rest[slash + 1:]

    cost = semiring.ONE
    tail = ctx_items if slash is not None else psi_items
    if tail and tail[-1].kind == "cost":
        cost = tail[-1].value
        tail = tail[:-1]
        if slash is None:
            psi_items = tail
        else:
            ctx_items = tail

    psi = []
    for it in psi_items:
        if it.kind == "tok":
            psi.append(it.text)
        elif it.kind != "eps":
            raise ParseError(f"replacement must be a token sequence, found {it.text!r}",
                             lineno, it.col, source)

    phi = parse_items(phi_items, lineno, source)
    left = right = None
    if slash is not None:
        parts = _split_focus(ctx_items)
        if parts is None:
            raise ParseError("context needs a '_' focus marker", lineno, None, source)
        if parts == "many":
            raise ParseError("more than one '_' focus marker", lineno, None, source)
        left = parse_items(parts[0], lineno, source) if parts[0] else None
        right = parse_items(parts[1], lineno, source) if parts[1] else None
    return RewriteRule(phi, tuple(psi), left, right, cost, text)


def parse_rules(text, source=None):
    rules = []
    for n, line in enumerate(text.splitlines(), 1):
        if strip_comment(line).strip():
            rules.append(parse_rule(line, n, source))
    return rules


# compilation -------------------------------------------------------------

def _strip_anchor(node, anchor, at_start):
    """Remove a leading ``^`` / trailing ``$``; returns (node, anchored)."""
    if node is None:
        return ("eps",), False
    if node == (anchor,):
        return ("eps",), True
    if node[0] == "cat":
        parts = list(node[1])
        edge = 0 if at_start else -1
        if parts[edge] == (anchor,):
            parts.pop(edge)
            _reject_anchors(parts)
            if not parts:
                return ("eps",), True
            return (parts[0] if len(parts) == 1 else ("cat", tuple(parts))), True
    _reject_anchors([node])
    return node, False


def _reject_anchors(nodes):
    for n in nodes:
        if n[0] in ("bos", "eos"):
            raise CompileError("anchors may only appear at the outer edge of a context")
        if n[0] in ("cat", "alt"):
            _reject_anchors(n[1])
        elif n[0] in ("star", "plus", "opt"):
            _reject_anchors([n[1]])


def _symbol_classes(table, mentioned):
    """Group labels that every DFA treats identically."""
    named = {}
    rest = []
    for label in table.labels():
        if table.lookup(label) in mentioned:
            named[label] = [label]
        else:
            rest.append(label)
    groups = list(named.values())
    if rest:
        groups.append(rest)
    return groups


def compile_rule(rule, table):
    """Compile one rule into a total, functional transducer over Sigma*."""
    if isinstance(rule, str):
        rule = parse_rule(rule)
    mentioned = set(rule.tokens())
    for tok in mentioned:
        table.add(tok)
    if rule.phi[0] in ("bos", "eos"):
        raise CompileError("anchors are not allowed in the rule focus")
    _reject_anchors([rule.phi])
    left, left_anchored = _strip_anchor(rule.left, "bos", True)
    right, right_anchored = _strip_anchor(rule.right, "eos", False)

    lam = compile_regex(left, table)
    if not left_anchored:
        lam = ops.concat(sigma_star(table), lam)
    ldfa = Dfa(lam)
    rdfa = Dfa(compile_regex(right, table))
    fdfa = Dfa(compile_regex(rule.phi, table))
    if fdfa.start is None:
        raise CompileError(f"rule focus denotes the empty language: {rule.text}")
    eps_phi = fdfa.accepting(fdfa.start)
    psi = tuple(table.encode(rule.psi))
    cost = rule.cost
    groups = _symbol_classes(table, mentioned)

    out = Fst(table)
    ids = {}
    todo = []

    def node(key):
        s = ids.get(key)
        if s is None:
            s = out.add_state()
            ids[key] = s
            if key[0] == "P":
                todo.append(key)
        return s

    def obligations_ok_here(pos, neg):
        """Apply this position's acceptance checks; None if violated."""
        if right_anchored:
            return pos, neg
        if any(rdfa.accepting(q) for q in neg):
            return None
        return frozenset(q for q in pos if not rdfa.accepting(q)), neg

    def end_ok(pos, neg):
        if right_anchored:
            return all(rdfa.accepting(q) for q in pos) and not any(rdfa.accepting(q) for q in neg)
        return not pos

    def decisions(state):
        """Ready configurations at a position: (l, pos, neg, shadows, m, emit, w)."""
        l, pos, neg, shadows, m = state
        for r in (True, False):
            p2 = pos | {rdfa.start} if r else pos
            n2 = neg if r else neg | {rdfa.start}
            checked = obligations_ok_here(p2, n2)
            if checked is None:
                continue
            p2, n2 = checked
            if r and any(fdfa.accepting(q) for q in shadows):
                continue
            fresh_shadows = [shadows]
            if m is not None:
                yield (l, p2, n2, shadows, m, (), semiring.ONE)
                if not (fdfa.accepting(m) and r):
                    continue
                fresh_shadows = [shadows | {m}]
            for sh in fresh_shadows:
                if ldfa.accepting(l):
                    yield (l, p2, n2, sh, fdfa.start, psi, cost)
                    sh2 = sh | {fdfa.start}
                    if eps_phi and r:
                        yield (l, p2, n2, sh2, None, psi, cost)
                    else:
                        yield (l, p2, n2, sh2, None, (), semiring.ONE)
                else:
                    yield (l, p2, n2, sh, None, (), semiring.ONE)

    def consume(config, label):
        l, pos, neg, shadows, m, _, _ = config
        if m is not None:
            m = fdfa.step(m, label)
            if m is None:
                return None
        pos2 = set()
        for q in pos:
            q2 = rdfa.step(q, label)
            if q2 is None:
                return None
            pos2.add(q2)
        neg2 = frozenset(q2 for q2 in (rdfa.step(q, label) for q in neg) if q2 is not None)
        sh2 = frozenset(q2 for q2 in (fdfa.step(q, label) for q in shadows) if q2 is not None)
        return ("P", ldfa.step(l, label), frozenset(pos2), neg2, sh2, m)

    start_key = ("P", ldfa.start, frozenset(), frozenset(), frozenset(), None)
    out.set_start(node(start_key))
    expanded = set()
    while todo:
        key = todo.pop()
        src = ids[key]
        for config in decisions(key[1:]):
            _, pos, neg, _, m, emit, w = config
            origin = src
            if emit:
                origin = node(("R", config))
                _link_emission(out, src, origin, emit, w)
                w = semiring.ONE
                if config in expanded:
                    continue
                expanded.add(config)
            if m is None and end_ok(pos, neg):
                out.set_final(origin, w)
            for group in groups:
                target = consume(config, group[0])
                if target is None:
                    continue
                t = node(target)
                for label in group:
                    out.add_arc(origin, label, label if m is None else 0, w, t)
    return ops.connect(out)


def _link_emission(out, src, target, emit, w):
    prev = src
    for k, label in enumerate(emit):
        nxt = target if k == len(emit) - 1 else out.add_state()
        out.add_arc(prev, 0, label, w if k == 0 else semiring.ONE, nxt)
        prev = nxt


def compile_rules(rules, table):
    """Compile each rule of a cascade; returns the list of transducers."""
    if isinstance(rules, str):
        rules = parse_rules(rules)
    for r in rules:
        for tok in r.tokens():
            table.add(tok)
    return [compile_rule(r, table) for r in rules]


def compile_cascade(rules, table):
    """Single transducer: the rules composed in order (identity if empty)."""
    machines = compile_rules(rules, table)
    if not machines:
        return sigma_star(table)
    return ops.compose_all(*machines)


def apply_cascade(machines, tokens, table):
    """Run a token sequence through a list of rule machines."""
    lattice = compile_string(tokens, table)
    return ops.compose_all(lattice, *machines)
