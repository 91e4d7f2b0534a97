"""Shared test utilities: random machines, random rules, bulk transduction."""

import itertools
import math
import random

from ttslex.fst import Fst


def random_fst(rng, table, labels, n_states=None, acyclic=True, eps_rate=0.2, max_arcs=2):
    """Random weighted transducer with up to 6 states and 2 arcs per state."""
    n = n_states or rng.randint(1, 6)
    f = Fst(table)
    f.add_states(n)
    f.set_start(0)
    weights = [0.0, 0.25, 0.5, 1.0, 2.0]

    def lab():
        return 0 if rng.random() < eps_rate else rng.choice(labels)

    for s in range(n):
        for _ in range(rng.randint(0, max_arcs)):
            if acyclic:
                if s == n - 1:
                    break
                t = rng.randint(s + 1, n - 1)
            else:
                t = rng.randint(0, n - 1)
            f.add_arc(s, lab(), lab(), rng.choice(weights), t)
        if rng.random() < 0.4 or s == n - 1:
            f.set_final(s, rng.choice(weights))
    return f


def random_regex(rng, alphabet, depth=2, allow_star=True):
    r = rng.random()
    if depth == 0 or r < 0.35:
        k = rng.random()
        if k < 0.7:
            return ("sym", rng.choice(alphabet))
        if k < 0.8:
            return ("any",)
        members = tuple(rng.sample(alphabet, rng.randint(1, len(alphabet) - 1)))
        return ("class", members, rng.random() < 0.5)
    if r < 0.6:
        parts = tuple(random_regex(rng, alphabet, depth - 1, allow_star) for _ in range(2))
        return ("cat", parts)
    if r < 0.8:
        parts = tuple(random_regex(rng, alphabet, depth - 1, allow_star) for _ in range(2))
        return ("alt", parts)
    if r < 0.9 or not allow_star:
        return ("opt", random_regex(rng, alphabet, depth - 1, allow_star))
    return (rng.choice(["star", "plus"]), random_regex(rng, alphabet, depth - 1, False))


def random_rule(rng, alphabet):
    from ttslex.rules import RewriteRule
    if rng.random() < 0.1:
        phi = ("eps",)
    else:
        phi = random_regex(rng, alphabet)
    psi = tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 2)))
    if phi == ("eps",) and not psi:
        psi = (alphabet[0],)
    left = right = None
    if rng.random() < 0.6:
        left = random_regex(rng, alphabet, 1)
        if rng.random() < 0.2:
            left = ("cat", (("bos",), left))
    if rng.random() < 0.6:
        right = random_regex(rng, alphabet, 1)
        if rng.random() < 0.2:
            right = ("cat", (right, ("eos",)))
    cost = rng.choice([0.0, 0.0, 1.0, 0.5])
    return RewriteRule(phi, psi, left, right, cost, text=repr((phi, psi, left, right)))


def transduce_all(fst, labels, max_len):
    """Outputs of every input string up to ``max_len`` labels.

    Returns ``{input: [(output, weight), ...]}`` by walking the input trie
    once, carrying the set of live (state, output, weight) configurations.
    """
    results = {}

    def eclose(configs):
        out = []
        stack = list(configs)
        while stack:
            s, o, w = stack.pop()
            out.append((s, o, w))
            for arc in fst.arcs(s):
                if arc.ilabel == 0:
                    stack.append((arc.nextstate, o + ((arc.olabel,) if arc.olabel else ()),
                                  w + arc.weight))
        return out

    def walk(prefix, configs):
        results[prefix] = [(o, w + fst.finals[s]) for s, o, w in configs if s in fst.finals]
        if len(prefix) == max_len:
            return
        index = fst.input_index()
        for a in labels:
            nxt = []
            for s, o, w in configs:
                for arc in index[s].get(a, ()):
                    nxt.append((arc.nextstate, o + ((arc.olabel,) if arc.olabel else ()),
                                w + arc.weight))
            walk(prefix + (a,), eclose(nxt))

    if fst.start is not None:
        walk((), eclose([(fst.start, (), 0.0)]))
    return results


def _str_pair_fst(table, x, y):
    from ttslex.fst import compile_pair
    return compile_pair([table.lookup(l) for l in x], [table.lookup(l) for l in y], table)


def check_operations(rng, table, labels):
    """Compare compose/union/concat/closure on one random pair with the
    relation oracles. Returns a list of discrepancy descriptions."""
    from oracles import (compose_relations, concat_relations, path_relation,
                         star_relation, union_relations)
    from ttslex import ops
    from ttslex.paths import best_path, enumerate_paths
    from ttslex.errors import NoAcceptingPath

    a = random_fst(rng, table, labels)
    b = random_fst(rng, table, labels)
    ra = path_relation(enumerate_paths(a, 12))
    rb = path_relation(enumerate_paths(b, 12))
    problems = []
    for name, got, want in (
        ("compose", ops.compose(a, b), compose_relations(ra, rb)),
        ("union", ops.union(a, b), union_relations(ra, rb)),
        ("concat", ops.concat(a, b), concat_relations(ra, rb)),
    ):
        rel = path_relation(enumerate_paths(got, 30))
        if set(rel) != set(want):
            problems.append((name, "pairs", sorted(set(rel) ^ set(want))))
            continue
        for k, (w, c) in want.items():
            if abs(rel[k][0] - w) > 1e-9 or rel[k][1] != c:
                problems.append((name, k, rel[k], (w, c)))

    bound = 5
    star = star_relation(ra, bound)
    for mode in ("star", "plus"):
        c = ops.closure(a, mode)
        want = dict(star)
        if mode == "plus":
            plus = {}
            for (x, y), (w, _) in ra.items():
                for (x2, y2), w2 in star.items():
                    k = (x + x2, y + y2)
                    if len(k[0]) + len(k[1]) <= bound and w + w2 < plus.get(k, math.inf):
                        plus[k] = w + w2
            want = plus
        for (x, y), w in want.items():
            probe = ops.compose(ops.compose(_str_pair_fst(table, x, x), c),
                                _str_pair_fst(table, y, y))
            try:
                got = best_path(probe).weight
            except NoAcceptingPath:
                got = math.inf
            if abs(got - w) > 1e-9:
                problems.append((mode, (x, y), got, w))
        # nothing outside the oracle: every short enumerated pair is expected
        for p in enumerate_paths(c, 8):
            k = (p.input_labels, p.output_labels)
            if len(k[0]) + len(k[1]) <= bound and k not in want:
                problems.append((mode, "extra", k))
                break
    return problems


def check_rule(rule, alphabet, max_len=6):
    """Discrepancies between the compiled rule and the string oracle."""
    from oracles import StringRewriter
    from ttslex.rules import compile_rule
    from ttslex.symbols import SymbolTable

    table = SymbolTable(alphabet)
    machine = compile_rule(rule, table)
    labels = [table.find(x) for x in alphabet]
    oracle = StringRewriter(rule.phi, rule.psi, rule.left, rule.right, rule.cost, alphabet)
    problems = []
    results = transduce_all(machine, labels, max_len)
    for n in range(max_len + 1):
        for inp in itertools.product(labels, repeat=n):
            if inp not in results:
                problems.append((rule.text, table.decode(inp), [], oracle(table.decode(inp))))
    for inp, outs in results.items():
        tokens = table.decode(inp)
        want, w = oracle(tokens)
        got = [(table.decode(o), ww) for o, ww in outs]
        if len(got) != 1 or got[0][0] != want or abs(got[0][1] - w) > 1e-9:
            problems.append((rule.text, tokens, got, (want, w)))
    return problems
