"""Regular expressions over tokens.

Syntax: literal tokens, ``.`` (any symbol), ``[a b c]`` and ``[^a b]``
classes, juxtaposition, ``|``, ``*``, ``+``, ``?``, parentheses, costs
``<w>`` and ``<eps>``. ``^`` and ``$`` anchor rule contexts to the string
edges and are rejected elsewhere.
"""

from . import ops, semiring
from .errors import ParseError
from .fst import Fst
from .lexer import lex


class _Parser:
    def __init__(self, items, line, source):
        self.items = items
        self.pos = 0
        self.line = line
        self.source = source

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def error(self, msg, item=None):
        item = item or self.peek()
        col = item.col if item else None
        raise ParseError(msg, self.line, col, self.source)

    def is_op(self, text):
        item = self.peek()
        return item is not None and item.kind == "op" and item.text == text

    def parse(self):
        node = self.alt()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek().text!r}")
        return node

    def alt(self):
        branches = [self.seq()]
        while self.is_op("|"):
            self.pos += 1
            branches.append(self.seq())
        return branches[0] if len(branches) == 1 else ("alt", tuple(branches))

    def seq(self):
        parts = []
        while True:
            item = self.peek()
            if item is None or (item.kind == "op" and item.text in ("|", ")")):
                break
            parts.append(self.post())
        if not parts:
            return ("eps",)
        return parts[0] if len(parts) == 1 else ("cat", tuple(parts))

    def post(self):
        node = self.atom()
        while True:
            item = self.peek()
            if item is not None and item.kind == "op" and item.text in ("*", "+", "?"):
                self.pos += 1
                node = ({"*": "star", "+": "plus", "?": "opt"}[item.text], node)
            else:
                return node

    def atom(self):
        item = self.peek()
        self.pos += 1
        if item.kind == "tok":
            return ("sym", item.text)
        if item.kind == "eps":
            return ("eps",)
        if item.kind == "cost":
            return ("cost", item.value)
        if item.text == ".":
            return ("any",)
        if item.text == "^":
            return ("bos",)
        if item.text == "$":
            return ("eos",)
        if item.text == "(":
            node = self.alt()
            if not self.is_op(")"):
                self.error("expected ')'")
            self.pos += 1
            return node
        if item.text == "[":
            negated = False
            if self.is_op("^"):
                negated = True
                self.pos += 1
            members = []
            while True:
                nxt = self.peek()
                if nxt is None:
                    self.error("unterminated '['", item)
                if nxt.kind == "op" and nxt.text == "]":
                    self.pos += 1
                    break
                if nxt.kind != "tok":
                    self.error(f"unexpected {nxt.text!r} in class", nxt)
                members.append(nxt.text)
                self.pos += 1
            return ("class", tuple(members), negated)
        self.error(f"unexpected {item.text!r}", item)


def parse_regex(text, line=None, source=None):
    """Parse regex source text into a small tuple AST."""
    if isinstance(text, tuple):
        return text
    return _Parser(lex(text, line, source), line, source).parse()


def parse_items(items, line=None, source=None):
    return _Parser(list(items), line, source).parse()


def regex_tokens(node):
    """Literal tokens mentioned by an AST (for pre-populating a table)."""
    kind = node[0]
    if kind == "sym":
        yield node[1]
    elif kind == "class":
        yield from node[1]
    elif kind in ("cat", "alt"):
        for child in node[1]:
            yield from regex_tokens(child)
    elif kind in ("star", "plus", "opt"):
        yield from regex_tokens(node[1])


def accepts_epsilon_only(node):
    return node[0] == "eps"


def _labels_machine(table, labels, weight=semiring.ONE):
    f = Fst(table)
    s, t = f.add_states(2)
    f.set_start(s)
    f.set_final(t, weight)
    for label in labels:
        f.add_arc(s, label, label, semiring.ONE, t)
    return f


def compile_regex(regex, table):
    """Acceptor for the language of ``regex`` (text or parsed AST)."""
    node = parse_regex(regex)
    return ops.connect(_compile(node, table))


def _compile(node, table):
    from .fst import epsilon_machine
    kind = node[0]
    if kind == "sym":
        return _labels_machine(table, [table.add(node[1])])
    if kind == "any":
        return _labels_machine(table, list(table.labels()))
    if kind == "class":
        members = {table.add(t) for t in node[1]}
        if node[2]:
            labels = [lab for lab in table.labels() if lab not in members]
        else:
            labels = sorted(members)
        return _labels_machine(table, labels)
    if kind == "eps":
        return epsilon_machine(table)
    if kind == "cost":
        return epsilon_machine(table, node[1])
    if kind == "cat":
        return ops.concat(*[_compile(c, table) for c in node[1]])
    if kind == "alt":
        return ops.union(*[_compile(c, table) for c in node[1]])
    if kind == "star":
        return ops.closure(_compile(node[1], table), "star")
    if kind == "plus":
        return ops.closure(_compile(node[1], table), "plus")
    if kind == "opt":
        return ops.optional(_compile(node[1], table))
    if kind in ("bos", "eos"):
        raise ParseError("anchors '^' and '$' are only allowed at the edges of rule contexts")
    raise ValueError(f"unknown regex node {kind!r}")


class Dfa:
    """Lazy subset construction over an acceptor, ignoring weights.

    States are frozensets of acceptor states; ``step`` returns ``None`` for
    the dead state.
    """

    def __init__(self, acceptor):
        self.fst = acceptor
        self._closure = {}
        self._step = {}
        self.start = self._eclose(frozenset([acceptor.start])) if acceptor.start is not None else None
        self._accepting = {}

    def _eclose(self, states):
        stack = list(states)
        seen = set(states)
        while stack:
            s = stack.pop()
            for arc in self.fst.arcs(s):
                if arc.ilabel == 0 and arc.nextstate not in seen:
                    seen.add(arc.nextstate)
                    stack.append(arc.nextstate)
        return frozenset(seen)

    def step(self, state, label):
        if state is None:
            return None
        key = (state, label)
        if key in self._step:
            return self._step[key]
        index = self.fst.input_index()
        nxt = set()
        for s in state:
            for arc in index[s].get(label, ()):
                nxt.add(arc.nextstate)
        result = self._eclose(frozenset(nxt)) if nxt else None
        self._step[key] = result
        return result

    def accepting(self, state):
        if state is None:
            return False
        a = self._accepting.get(state)
        if a is None:
            a = any(s in self.fst.finals for s in state)
            self._accepting[state] = a
        return a
