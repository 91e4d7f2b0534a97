"""Path extraction: Viterbi best path, n-best and bounded enumeration."""

import heapq
import math
from dataclasses import dataclass

from .errors import NoAcceptingPath


@dataclass(frozen=True)
class Path:
    """An accepting path: the visited states, the arcs taken and the exit weight."""

    table: object
    states: tuple
    arcs: tuple
    final_weight: float

    @property
    def weight(self):
        return sum(arc.weight for arc in self.arcs) + self.final_weight

    @property
    def input_labels(self):
        return tuple(a.ilabel for a in self.arcs if a.ilabel)

    @property
    def output_labels(self):
        return tuple(a.olabel for a in self.arcs if a.olabel)

    @property
    def input_tokens(self):
        return tuple(self.table.decode(self.input_labels))

    @property
    def output_tokens(self):
        return tuple(self.table.decode(self.output_labels))

    def input_string(self):
        return "".join(self.input_tokens)

    def output_string(self):
        return "".join(self.output_tokens)

    def __len__(self):
        return len(self.arcs)


def distances_to_final(fst):
    """Backward Dijkstra: ``{state: (cost, arcs)}`` for every coaccessible state.

    Ties in cost are broken by the number of arcs, which keeps greedy
    reconstruction from looping on zero-cost cycles.
    """
    preds = {}
    for s in fst.states():
        for arc in fst.arcs(s):
            preds.setdefault(arc.nextstate, []).append((s, arc.weight))
    dist = {}
    heap = [(w, 0, s) for s, w in fst.finals.items()]
    heapq.heapify(heap)
    while heap:
        d, hops, s = heapq.heappop(heap)
        if s in dist:
            continue
        dist[s] = (d, hops)
        for p, w in preds.get(s, ()):
            if p not in dist:
                heapq.heappush(heap, (d + w, hops + 1, p))
    return dist


def best_path(fst):
    """Minimum-cost accepting path.

    Among equal-cost paths the one with fewest arcs wins, then the one
    whose state sequence is lexicographically smallest.
    """
    if fst.start is None:
        raise NoAcceptingPath("machine has no start state")
    dist = distances_to_final(fst)
    if fst.start not in dist:
        raise NoAcceptingPath("no accepting path")
    state = fst.start
    states = [state]
    arcs = []
    while True:
        target = dist[state]
        fw = fst.final(state)
        if fw == target[0] and target[1] == 0:
            return Path(fst.table, tuple(states), tuple(arcs), fw)
        choice = None
        for arc in fst.arcs(state):
            nd = dist.get(arc.nextstate)
            if nd is None:
                continue
            if math.isclose(arc.weight + nd[0], target[0], rel_tol=1e-12, abs_tol=1e-12) \
                    and nd[1] + 1 == target[1]:
                if choice is None or arc.nextstate < choice.nextstate:
                    choice = arc
        if choice is None:
            # only reachable through float noise; fall back to the final exit
            return Path(fst.table, tuple(states), tuple(arcs), fw)
        arcs.append(choice)
        state = choice.nextstate
        states.append(state)


def best_transduction(labels, fst):
    """Cheapest output of ``fst`` for the input label string ``labels``.

    Same result weight as ``best_path(compose(compile_string(...), fst))``
    but searched lazily over (position, state) pairs, so the composed
    lattice is never built. Returns ``(output labels, weight)``; raises
    NoAcceptingPath when ``labels`` is not in the domain.
    """
    if fst.start is None:
        raise NoAcceptingPath("machine has no start state")
    labels = tuple(labels)
    n = len(labels)
    index = fst.input_index()
    start = (0, fst.start)
    back = {start: None}
    done = set()
    heap = [(0.0, 0, 0, fst.start)]
    best = {start: (0.0, 0)}
    while heap:
        d, hops, pos, state = heapq.heappop(heap)
        if pos < 0:
            break               # the exit entry: nothing cheaper is left
        key = (pos, state)
        if key in done:
            continue
        done.add(key)
        if pos == n and state in fst.finals:
            fkey = ("end",)
            cand = (d + fst.finals[state], hops)
            if fkey not in best or cand < best[fkey]:
                best[fkey] = cand
                back[fkey] = (key, 0)
                heapq.heappush(heap, (cand[0], hops, -1, -1))
        moves = list(index[state].get(0, ()))
        if pos < n:
            moves += index[state].get(labels[pos], ())
        for arc in moves:
            nkey = (pos + (1 if arc.ilabel else 0), arc.nextstate)
            if nkey in done:
                continue
            cand = (d + arc.weight, hops + 1)
            if nkey not in best or cand < best[nkey]:
                best[nkey] = cand
                back[nkey] = (key, arc.olabel)
                heapq.heappush(heap, (cand[0], cand[1], nkey[0], nkey[1]))
    if ("end",) not in best:
        raise NoAcceptingPath("input not accepted")
    out = []
    key = ("end",)
    while back[key] is not None:
        key, olabel = back[key]
        if olabel:
            out.append(olabel)
    out.reverse()
    return tuple(out), best[("end",)][0]


def nbest(fst, n):
    """Up to ``n`` cheapest accepting paths, cheapest first (A* search)."""
    if fst.start is None or n <= 0:
        return []
    dist = distances_to_final(fst)
    if fst.start not in dist:
        return []
    heap = [(dist[fst.start][0], 0, (fst.start,), (), False)]
    out = []
    while heap and len(out) < n:
        f, g_hops, states, arcs, done = heapq.heappop(heap)
        state = states[-1]
        if done:
            g = sum(a.weight for a in arcs)
            out.append(Path(fst.table, states, arcs, fst.final(state)))
            continue
        g = sum(a.weight for a in arcs)
        if state in fst.finals:
            heapq.heappush(heap, (g + fst.finals[state], g_hops, states, arcs, True))
        for arc in fst.arcs(state):
            nd = dist.get(arc.nextstate)
            if nd is None:
                continue
            heapq.heappush(heap, (g + arc.weight + nd[0], g_hops + 1,
                                  states + (arc.nextstate,), arcs + (arc,), False))
    return out


def enumerate_paths(fst, max_len):
    """All accepting paths with at most ``max_len`` arcs (depth-first order)."""
    out = []
    if fst.start is None:
        return out

    def walk(state, states, arcs):
        if state in fst.finals:
            out.append(Path(fst.table, tuple(states), tuple(arcs), fst.finals[state]))
        if len(arcs) == max_len:
            return
        for arc in fst.arcs(state):
            states.append(arc.nextstate)
            arcs.append(arc)
            walk(arc.nextstate, states, arcs)
            states.pop()
            arcs.pop()

    walk(fst.start, [fst.start], [])
    return out


def relation(fst, max_len):
    """``{(input_labels, output_labels): min weight}`` over bounded paths."""
    rel = {}
    for p in enumerate_paths(fst, max_len):
        key = (p.input_labels, p.output_labels)
        w = p.weight
        if w < rel.get(key, math.inf):
            rel[key] = w
    return rel
