import random
from importlib import resources

import pytest

from helpers import random_fst
from ttslex import ops
from ttslex.errors import CompileError, EmptyAfterFiltering, NoAnalysis, NoPronunciation, \
    ParseError
from ttslex.fst import compile_pair, compile_string, empty
from ttslex.lexer import tokens_of
from ttslex.manifest import load_manifest, parse_manifest
from ttslex.paths import best_path, best_transduction, enumerate_paths, relation
from ttslex.pipeline import (GrammarSet, analyze, analyze_text, build_analyzer, disambiguate,
                             format_phonemes, pronounce, select, spelled, stats, to_mma)
from ttslex.symbols import SymbolTable

DATA = resources.files("ttslex") / "data"


@pytest.fixture(scope="module")
def ru():
    return load_manifest(DATA / "ru" / "ru.mf")


def outputs(lattice):
    return sorted(p.output_string() for p in enumerate_paths(lattice, 200))


def toy(tmp_path, space="whitespace", extra=""):
    (tmp_path / "words.wl").write_text("cat{n} : cat\ndog{n} : dog\nca{v} : ca <1.0>\n",
                                       encoding="utf-8")
    (tmp_path / "phon.rules").write_text("c -> k\n", encoding="utf-8")
    (tmp_path / "toy.mf").write_text(
        f"word = words.wl\nspace = {space}\nphon = phon.rules\n{extra}", encoding="utf-8")
    return load_manifest(tmp_path / "toy.mf")


def test_toy_manifest_end_to_end(tmp_path):
    g = toy(tmp_path)
    path, phonemes = analyze_text("cat dog", g)
    assert path.output_string() == "cat{n}{##}dog{n}"
    # no M in this grammar, so P reads the lexical string itself
    assert format_phonemes(phonemes) == "k a t n ## d o g n"
    assert outputs(analyze("", g)) == [""]


def test_space_epsilon_segments_unspaced_text(tmp_path):
    g = toy(tmp_path, space="epsilon")
    # an epsilon separator may also close the text
    assert outputs(analyze("catdog", g)) == ["cat{n}{##}dog{n}", "cat{n}{##}dog{n}{##}"]
    with pytest.raises(NoAnalysis):
        analyze("cat dog", g)


def test_no_analysis_reports_earliest_span(tmp_path):
    g = toy(tmp_path)
    with pytest.raises(NoAnalysis) as err:
        analyze("cat cow dog", g)
    assert (err.value.offset, err.value.substring) == (4, "cow")
    with pytest.raises(NoAnalysis) as err:
        analyze("cat dog!", g)                 # '!' is not in the symbol table
    assert (err.value.offset, err.value.substring) == (4, "dog!")
    assert "[analyze]" in str(err.value)


def test_permissive_mode_reads_unknown_words_at_high_cost(tmp_path):
    g = toy(tmp_path)
    path = select(analyze("cat cod", g, permissive=True))
    assert path.output_string() == "cat{n}{##}cod"
    assert path.weight == 300.0


def test_language_model_and_filter(tmp_path):
    (tmp_path / "words.wl").write_text("cat{n} : cat\ncat{v} : cat <1.0>\ndog{n} : dog\n",
                                       encoding="utf-8")
    # a noun before "dog" and a final "dog" are marked for removal
    (tmp_path / "lm.rules").write_text("<eps> -> \\* / {n} _ {##} d\n"
                                       "<eps> -> \\* / d o g {n} _ $\n", encoding="utf-8")
    (tmp_path / "toy.mf").write_text("word = words.wl\nlm.1 = lm.rules\n", encoding="utf-8")
    g = load_manifest(tmp_path / "toy.mf")
    assert outputs(analyze("cat dog", g)) == ["cat{n}{##}dog{n}", "cat{v}{##}dog{n}"]
    with pytest.raises(EmptyAfterFiltering):
        disambiguate(analyze("cat dog", g), g)
    path = select(disambiguate(analyze("cat dog cat", g), g))
    assert (path.output_string(), path.weight) == ("cat{v}{##}dog{n}{##}cat{n}", 1.0)
    assert outputs(disambiguate(analyze("cat", g), g)) == ["cat{n}", "cat{v}"]


def test_filter_is_identity_without_tags(ru):
    lattice = analyze("костра", ru)
    assert relation(disambiguate(lattice, ru), 40) == relation(lattice, 40)


def test_empty_component_is_named(tmp_path):
    t = SymbolTable()
    g = GrammarSet(table=t, word=empty(t), space=compile_pair(["{##}"], [" "], t))
    with pytest.raises(CompileError, match="'word'"):
        build_analyzer(g)
    with pytest.raises(CompileError, match="space"):
        build_analyzer(GrammarSet(table=t, word=compile_string(["a"], t)))


def test_manifest_errors(tmp_path):
    with pytest.raises(ParseError):
        parse_manifest("word words.wl\n")
    with pytest.raises(ParseError, match="unknown"):
        parse_manifest("colour = x.wl\n")
    assert parse_manifest("lm.2 = a.rules\nlm.10 = b.rules\n") == {"lm.2": "a.rules",
                                                                  "lm.10": "b.rules"}


def test_stats_examples():
    t = SymbolTable()
    assert stats(empty(t)) == (0, 0)
    assert stats(compile_string(["a", "b", "c"], t)) == (4, 3)


def test_fixture_branches(ru):
    assert any(o.startswith("pjatʹ{num}") and "procent" in o
               for o in outputs(analyze("5%", ru)))
    assert "kostr{noun}{masc}{inan}{sg}{gen}" in outputs(analyze("костра", ru))
    starred = [o for o in outputs(analyze("с 5% скидкой", ru)) if "*" in o]
    assert any("procentn{adj}{fem}{sg}{ins}*" in o for o in starred)


@pytest.mark.parametrize("n,noun", [(1, "{sg}{nom}"), (2, "{sg}{gen}"), (3, "{sg}{gen}"),
                                    (4, "{sg}{gen}"), (5, "{pl}{gen}"), (21, "{sg}{nom}")])
def test_percent_agreement(ru, n, noun):
    path, _ = analyze_text(f"{n}%", ru)
    assert path.output_string().endswith("procent{noun}{masc}{inan}" + noun)


def test_pronounce_and_mma(ru):
    assert pronounce([], ru) == []
    lexical = tokens_of("kostr{noun}{masc}{inan}{sg}{gen}")
    assert "".join(to_mma(lexical, ru)) == "kostr'a"
    with pytest.raises(NoPronunciation):
        pronounce(tokens_of("kostr{adj}"), ru)


def test_spelled():
    assert spelled(tokens_of("zw`ei{++}h`undert{num}{##}")) == "zweihundert"


def test_rm_epsilon_keeps_best_weights():
    rng = random.Random(3)
    for _ in range(300):
        f = random_fst(rng, SymbolTable(["a", "b", "c"]), [1, 2, 3], eps_rate=0.4)
        g = ops.rm_epsilon(f)
        assert all(a.ilabel or a.olabel for s in g.states() for a in g.arcs(s))
        assert relation(g, 20) == relation(f, 20)


def test_best_transduction_matches_composition():
    rng = random.Random(9)
    for _ in range(300):
        t = SymbolTable(["a", "b", "c"])
        f = random_fst(rng, t, [1, 2, 3], acyclic=False)
        x = tuple(rng.choice([1, 2, 3]) for _ in range(rng.randint(0, 3)))
        lattice = ops.compose(compile_string(t.decode(x), t), f)
        if lattice.is_empty():
            with pytest.raises(Exception):
                best_transduction(x, f)
            continue
        out, w = best_transduction(x, f)
        assert abs(w - best_path(lattice).weight) < 1e-9
        assert relation(ops.compose(compile_string(t.decode(x), t),
                                    ops.compose(f, compile_string(t.decode(out), t))),
                        30) != {}
