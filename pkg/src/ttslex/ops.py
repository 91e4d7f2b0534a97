"""Rational operations on weighted transducers (tropical semiring)."""

import heapq
from collections import deque

from . import semiring
from .errors import SymbolTableMismatch
from .fst import Fst, sigma_star


def _same_table(*machines):
    table = machines[0].table
    for m in machines[1:]:
        if m.table is not table:
            raise SymbolTableMismatch("machines do not share one symbol table")
    return table


def _copy_into(dst, src):
    """Append ``src``'s states to ``dst``; returns the state offset."""
    offset = dst.num_states
    dst.add_states(src.num_states)
    for s in src.states():
        for arc in src.arcs(s):
            dst.add_arc(s + offset, arc.ilabel, arc.olabel, arc.weight, arc.nextstate + offset)
    return offset


def compose(a, b, connect_result=True):
    """Relational composition ``a ∘ b``.

    Epsilon moves are sequenced canonically: between two matched symbols
    all output-epsilon moves of ``a`` come before the input-epsilon moves
    of ``b``. Each pair of component paths therefore yields exactly one
    composed path.
    """
    table = _same_table(a, b)
    out = Fst(table)
    if a.start is None or b.start is None:
        return out
    index = b.input_index()
    ids = {}
    queue = deque()
    add = out._add_arc_unchecked

    def get(key):
        s = ids.get(key)
        if s is None:
            s = out.add_state()
            ids[key] = s
            queue.append(key)
        return s

    out.set_start(get((a.start, b.start, 0)))
    while queue:
        key = queue.popleft()
        sa, sb, blocked = key
        src = ids[key]
        if sa in a.finals and sb in b.finals:
            out.set_final(src, a.finals[sa] + b.finals[sb])
        bidx = index[sb]
        for arc in a.arcs(sa):
            if arc.olabel == 0:
                if not blocked:
                    add(src, arc.ilabel, 0, arc.weight, get((arc.nextstate, sb, 0)))
                continue
            for barc in bidx.get(arc.olabel, ()):
                add(src, arc.ilabel, barc.olabel, arc.weight + barc.weight,
                            get((arc.nextstate, barc.nextstate, 0)))
        for barc in bidx.get(0, ()):
            add(src, 0, barc.olabel, barc.weight, get((sa, barc.nextstate, 1)))
    return connect(out) if connect_result else out


def compose_all(first, *rest):
    """Left-to-right composition of a cascade; keeps intermediates small."""
    result = first
    for m in rest:
        result = compose(result, m)
    return result


def union(*machines):
    table = _same_table(*machines)
    live = [m for m in machines if m.start is not None]
    out = Fst(table)
    if not live:
        return out
    if len(live) == 1:
        return live[0].copy()
    start = out.add_state()
    out.set_start(start)
    for m in live:
        offset = _copy_into(out, m)
        out.add_arc(start, 0, 0, semiring.ONE, m.start + offset)
        for s, w in m.finals.items():
            out.set_final(s + offset, w)
    return out


def concat(*machines):
    table = _same_table(*machines)
    out = Fst(table)
    if any(m.start is None for m in machines):
        return out
    prev_finals = None
    for m in machines:
        offset = _copy_into(out, m)
        if prev_finals is None:
            out.set_start(m.start + offset)
        else:
            for s, w in prev_finals.items():
                out.add_arc(s, 0, 0, w, m.start + offset)
        prev_finals = {s + offset: w for s, w in m.finals.items()}
    for s, w in prev_finals.items():
        out.set_final(s, w)
    return out


def closure(a, mode="star"):
    """Kleene closure; ``mode`` is ``"star"`` or ``"plus"``."""
    if mode not in ("star", "plus"):
        raise ValueError(f"closure mode must be 'star' or 'plus', not {mode!r}")
    out = Fst(a.table)
    if a.start is None:
        if mode == "star":
            s = out.add_state()
            out.set_start(s)
            out.set_final(s)
        return out
    offset = _copy_into(out, a) if mode == "plus" else None
    if mode == "star":
        start = out.add_state()
        offset = _copy_into(out, a)
        out.set_start(start)
        out.set_final(start)
        out.add_arc(start, 0, 0, semiring.ONE, a.start + offset)
    else:
        out.set_start(a.start + offset)
    for s, w in a.finals.items():
        out.set_final(s + offset, w)
        out.add_arc(s + offset, 0, 0, w, a.start + offset)
    return out


def optional(a):
    """``a ∪ ε``."""
    from .fst import epsilon_machine
    return union(a, epsilon_machine(a.table))


def _map_arcs(a, fn):
    out = Fst(a.table)
    out.add_states(a.num_states)
    for s in a.states():
        for arc in a.arcs(s):
            i, o = fn(arc.ilabel, arc.olabel)
            out.add_arc(s, i, o, arc.weight, arc.nextstate)
    out.finals = dict(a.finals)
    out.start = a.start
    return out


def invert(a):
    return _map_arcs(a, lambda i, o: (o, i))


def project(a, side="input"):
    if side == "input":
        return _map_arcs(a, lambda i, o: (i, i))
    if side == "output":
        return _map_arcs(a, lambda i, o: (o, o))
    raise ValueError(f"side must be 'input' or 'output', not {side!r}")


def cross(a, b):
    """Cross product of two acceptors: every string of ``a`` maps to every string of ``b``."""
    _same_table(a, b)
    left = _map_arcs(a, lambda i, o: (i, 0))
    right = _map_arcs(b, lambda i, o: (0, o))
    return concat(left, right)


def add_weight(a, weight):
    """Times every final weight by ``weight``."""
    out = a.copy()
    out.finals = {s: w + weight for s, w in a.finals.items()}
    return out


def connect(a):
    """Drop states that are not on some start-to-final path."""
    out = Fst(a.table)
    if a.start is None:
        return out
    forward = {a.start}
    stack = [a.start]
    while stack:
        s = stack.pop()
        for arc in a.arcs(s):
            if arc.nextstate not in forward:
                forward.add(arc.nextstate)
                stack.append(arc.nextstate)
    preds = {}
    for s in forward:
        for arc in a.arcs(s):
            preds.setdefault(arc.nextstate, []).append(s)
    backward = set(f for f in a.finals if f in forward)
    stack = list(backward)
    while stack:
        s = stack.pop()
        for p in preds.get(s, ()):
            if p not in backward:
                backward.add(p)
                stack.append(p)
    if a.start not in backward:
        return out
    keep = sorted(backward)
    remap = {s: i for i, s in enumerate(keep)}
    out.add_states(len(keep))
    add = out._add_arc_unchecked
    for s in keep:
        for arc in a.arcs(s):
            t = remap.get(arc.nextstate)
            if t is not None:
                add(remap[s], arc.ilabel, arc.olabel, arc.weight, t)
    for s, w in a.finals.items():
        if s in remap:
            out.set_final(remap[s], w)
    out.set_start(remap[a.start])
    return out


def avoid_symbols(table, banned):
    """Identity over strings containing none of the ``banned`` labels.

    This is the complement filter ``¬(Σ* b Σ*)`` built directly as
    ``(Σ - banned)*``.
    """
    banned = set(banned)
    if not banned:
        raise ValueError("avoid_symbols needs at least one banned label")
    return sigma_star(table, exclude=banned)


def is_acyclic(a):
    color = {}
    for root in a.states():
        if root in color:
            continue
        stack = [(root, iter(a.arcs(root)))]
        color[root] = 1
        while stack:
            s, it = stack[-1]
            arc = next(it, None)
            if arc is None:
                color[s] = 2
                stack.pop()
                continue
            c = color.get(arc.nextstate)
            if c == 1:
                return False
            if c is None:
                color[arc.nextstate] = 1
                stack.append((arc.nextstate, iter(a.arcs(arc.nextstate))))
    return True


def rm_epsilon(a):
    """Equivalent machine without ``<eps>:<eps>`` arcs (tropical weights).

    Each state takes over the labelled arcs and final weights of its
    epsilon closure at the closure distance. Path multiplicities may
    change; the cheapest weight of every string pair does not.
    """
    out = Fst(a.table)
    if a.start is None:
        return out
    out.add_states(a.num_states)
    out.set_start(a.start)
    add = out._add_arc_unchecked
    for s in a.states():
        dist = {s: 0.0}
        heap = [(0.0, s)]
        done = set()
        while heap:
            d, q = heapq.heappop(heap)
            if q in done:
                continue
            done.add(q)
            for arc in a.arcs(q):
                if arc.ilabel == 0 and arc.olabel == 0:
                    nd = d + arc.weight
                    if nd < dist.get(arc.nextstate, semiring.ZERO):
                        dist[arc.nextstate] = nd
                        heapq.heappush(heap, (nd, arc.nextstate))
        final = semiring.ZERO
        for q in sorted(done):
            d = dist[q]
            if q in a.finals:
                final = min(final, d + a.finals[q])
            for arc in a.arcs(q):
                if arc.ilabel or arc.olabel:
                    add(s, arc.ilabel, arc.olabel, d + arc.weight, arc.nextstate)
        if final != semiring.ZERO:
            out.set_final(s, final)
    return connect(out)
