"""German numerals: factorization, Decade Flop, lexicon and cleanup.

Run: python3 demos/german_numbers.py [number ...]
"""

import sys
from importlib import resources

from ttslex import ops
from ttslex.fst import compile_string
from ttslex.manifest import load_manifest
from ttslex.numbuilder import build_decade_flop, build_factorizer
from ttslex.paths import best_path
from ttslex.pipeline import analyze_text, format_phonemes, spelled
from ttslex.symbols import SymbolTable

numbers = sys.argv[1:] or ["234", "13", "21", "1001", "9999"]

table = SymbolTable()
factorizer = build_factorizer(10, 4, table)
flop = build_decade_flop(table)
g = load_manifest(resources.files("ttslex") / "data" / "de" / "de.mf")

for n in numbers:
    digits = compile_string(list(n), table)
    factored = best_path(ops.compose(digits, factorizer)).output_string()
    flopped = best_path(ops.compose(ops.compose(digits, factorizer), flop)).output_string()
    path, phonemes = analyze_text(n, g)
    print(n)
    print("  factorization", factored)
    print("  flopped      ", flopped)
    print("  lexical      ", path.output_string())
    print("  spelled      ", spelled(path.output_tokens))
    print("  phonemes     ", format_phonemes(phonemes))
