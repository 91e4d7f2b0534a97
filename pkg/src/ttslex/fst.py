"""Weighted transducer data model.

An :class:`Fst` is a list of per-state arc lists plus a start state and a
map of final weights. Machines are built once through the ``add_*``
methods and treated as read-only afterwards; every operation in
:mod:`ttslex.ops` returns a new machine.
"""

from typing import NamedTuple

from . import semiring
from .symbols import SymbolTable


class Arc(NamedTuple):
    ilabel: int
    olabel: int
    weight: float
    nextstate: int


class Fst:
    def __init__(self, table: SymbolTable):
        self.table = table
        self._arcs = []
        self.finals = {}
        self.start = None
        self._index = None

    # construction -----------------------------------------------------

    def add_state(self):
        self._arcs.append([])
        return len(self._arcs) - 1

    def add_states(self, n):
        first = len(self._arcs)
        self._arcs.extend([] for _ in range(n))
        return range(first, first + n)

    def set_start(self, state):
        self._check_state(state)
        self.start = state

    def set_final(self, state, weight=semiring.ONE):
        self._check_state(state)
        weight = semiring.check(weight)
        if weight == semiring.ZERO:
            self.finals.pop(state, None)
        else:
            self.finals[state] = weight

    def add_arc(self, state, ilabel, olabel, weight, nextstate):
        self._check_state(state)
        self._check_state(nextstate)
        self._arcs[state].append(Arc(ilabel, olabel, semiring.check(weight), nextstate))
        self._index = None

    def _add_arc_unchecked(self, state, ilabel, olabel, weight, nextstate):
        # for operations whose states and weights are valid by construction
        self._arcs[state].append(Arc(ilabel, olabel, weight, nextstate))
        self._index = None

    def _check_state(self, state):
        if not 0 <= state < len(self._arcs):
            raise IndexError(f"state {state} out of range (have {len(self._arcs)})")

    # access -----------------------------------------------------------

    @property
    def num_states(self):
        return len(self._arcs)

    @property
    def num_arcs(self):
        return sum(len(a) for a in self._arcs)

    def states(self):
        return range(len(self._arcs))

    def arcs(self, state):
        return self._arcs[state]

    def final(self, state):
        return self.finals.get(state, semiring.ZERO)

    def is_final(self, state):
        return state in self.finals

    def input_index(self):
        """Per-state ``{ilabel: [arcs]}`` maps, built lazily for composition."""
        if self._index is None:
            index = []
            for arcs in self._arcs:
                d = {}
                for arc in arcs:
                    d.setdefault(arc.ilabel, []).append(arc)
                index.append(d)
            self._index = index
        return self._index

    def is_empty(self):
        return self.start is None

    def copy(self):
        other = Fst(self.table)
        other._arcs = [list(a) for a in self._arcs]
        other.finals = dict(self.finals)
        other.start = self.start
        return other

    def __repr__(self):
        return f"<Fst {self.num_states} states, {self.num_arcs} arcs>"


def empty(table):
    """The machine accepting nothing (no start state)."""
    return Fst(table)


def epsilon_machine(table, weight=semiring.ONE):
    """Single-state machine accepting only the empty string."""
    f = Fst(table)
    s = f.add_state()
    f.set_start(s)
    f.set_final(s, weight)
    return f


def compile_string(tokens, table, weight=semiring.ONE):
    """Linear acceptor for a token sequence; unknown tokens are inserted."""
    labels = table.encode(tokens)
    f = Fst(table)
    states = f.add_states(len(labels) + 1)
    f.set_start(states[0])
    for i, label in enumerate(labels):
        f.add_arc(states[i], label, label, semiring.ONE, states[i + 1])
    f.set_final(states[-1], weight)
    return f


def compile_pair(itokens, otokens, table, weight=semiring.ONE):
    """Linear transducer mapping one token sequence to another.

    Shorter side is padded with epsilons at the end.
    """
    ilabels = table.encode(itokens)
    olabels = table.encode(otokens)
    n = max(len(ilabels), len(olabels))
    ilabels += [0] * (n - len(ilabels))
    olabels += [0] * (n - len(olabels))
    f = Fst(table)
    states = f.add_states(n + 1)
    f.set_start(states[0])
    for i in range(n):
        f.add_arc(states[i], ilabels[i], olabels[i], semiring.ONE, states[i + 1])
    f.set_final(states[-1], weight)
    return f


def sigma_star(table, exclude=()):
    """Identity on Sigma* (optionally minus some labels)."""
    f = Fst(table)
    s = f.add_state()
    f.set_start(s)
    f.set_final(s)
    banned = set(exclude)
    for label in table.labels():
        if label not in banned:
            f.add_arc(s, label, label, semiring.ONE, s)
    return f
