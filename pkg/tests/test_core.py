import math

import pytest
from hypothesis import given, strategies as st

from ttslex import semiring
from ttslex.errors import NoAcceptingPath
from ttslex.fst import Fst, compile_pair, compile_string, sigma_star
from ttslex.fstio import from_text, to_text, to_dot
from ttslex.ops import compose, project
from ttslex.paths import best_path, enumerate_paths
from ttslex.symbols import EPSILON, SymbolTable

weights = st.one_of(st.just(math.inf), st.floats(0, 1e6, allow_nan=False))


@given(weights, weights, weights)
def test_semiring_laws(a, b, c):
    p, t = semiring.plus, semiring.times
    assert p(a, b) == p(b, a)
    assert t(a, b) == t(b, a)
    assert p(p(a, b), c) == p(a, p(b, c))
    assert t(t(a, b), c) == pytest.approx(t(a, t(b, c)))
    assert t(a, p(b, c)) == pytest.approx(p(t(a, b), t(a, c)))
    assert p(a, semiring.ZERO) == a
    assert t(a, semiring.ONE) == a
    assert t(a, semiring.ZERO) == semiring.ZERO


def test_weight_formatting():
    assert semiring.format_weight(1.0) == "1.0"
    assert semiring.format_weight(0.75) == "0.75"
    assert semiring.format_weight(2) == "2.0"
    assert semiring.format_weight(math.inf) == "inf"
    assert semiring.parse_weight("inf") == math.inf
    with pytest.raises(ValueError):
        semiring.check(-1.0)


def test_symbol_table():
    t = SymbolTable()
    assert t.lookup(0) == EPSILON
    k = t.add("{num}")
    assert t.lookup(k) == "{num}"
    assert t.add("{num}") == k
    t.add("tab\there")
    again = SymbolTable.from_text(t.to_text())
    assert list(again) == list(t)


def test_compile_string_examples():
    t = SymbolTable()
    e = compile_string([], t)
    assert (e.num_states, e.num_arcs) == (1, 0)
    assert e.final(e.start) == 0.0
    f = compile_string(["2", "3", "4"], t)
    assert f.num_states == 4
    k = compile_string(list("костра"), t)
    assert k.num_states == 7
    (p,) = enumerate_paths(k, 10)
    assert list(p.input_tokens) == list("костра") == list(p.output_tokens)
    assert project(k, "output").num_arcs == 6


def test_compose_transliterator():
    t = SymbolTable()
    tr = Fst(t)
    s = tr.add_state()
    tr.set_start(s)
    tr.set_final(s)
    tr.add_arc(s, t.add("a"), t.add("x"), 0.5, s)
    tr.add_arc(s, t.add("b"), t.add("y"), 0.25, s)
    p = best_path(compose(compile_string(["a", "b"], t), tr))
    assert p.output_string() == "xy"
    assert p.weight == 0.75
    ident = sigma_star(t)
    q = best_path(compose(compose(compile_string(["a", "b"], t), ident), tr))
    assert q.weight == 0.75


def test_best_path_and_tie_break():
    t = SymbolTable()
    f = Fst(t)
    s0, s1, s2, s3 = f.add_states(4)
    f.set_start(s0)
    f.add_arc(s0, t.add("a"), t.add("a"), 2.0, s2)
    f.add_arc(s0, t.add("b"), t.add("b"), 1.0, s1)
    f.add_arc(s0, t.add("c"), t.add("c"), 1.0, s3)
    f.set_final(s1)
    f.set_final(s2)
    f.set_final(s3)
    p = best_path(f)
    assert p.weight == 1.0 and p.input_string() == "b"
    with pytest.raises(NoAcceptingPath):
        best_path(Fst(t))


def test_text_round_trip():
    t = SymbolTable()
    f = compile_pair(list("ab"), ["{x}"], t, 1.5)
    f.set_final(0, 0.25)
    text = to_text(f)
    assert text.splitlines()[0].startswith("0\t")
    g = from_text(text, t)
    assert to_text(g) == text
    assert "ε" in to_dot(f)


def test_text_format_weight_omitted():
    t = SymbolTable()
    g = from_text("0\t1\ta\tb\n1\t0.0\n", t)
    (p,) = enumerate_paths(g, 3)
    assert p.weight == 0.0 and p.output_string() == "b"
