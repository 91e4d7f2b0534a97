"""Walk the Russian fixture through the percent examples.

Run: python3 demos/russian_percent.py
"""

from importlib import resources

from ttslex.manifest import load_manifest
from ttslex.paths import nbest
from ttslex.pipeline import analyze, analyze_text, disambiguate, format_phonemes, stats

g = load_manifest(resources.files("ttslex") / "data" / "ru" / "ru.mf")
print("analyzer: states=%d arcs=%d" % stats(g.analyzer()))

for text in ["1%", "2%", "5%", "21%", "20% скидка", "с 5% скидкой", "костра"]:
    path, phonemes = analyze_text(text, g)
    print(f"{text:14} {path.output_string()}  <{path.weight}>")
    print(f"{'':14} /{format_phonemes(phonemes)}/")

# the raw lattice keeps starred adjectival readings; the language model
# rescues the agreeing one and the tag filter drops the rest
text = "с 5% скидкой"
raw = analyze(text, g)
print(f"\n{text}: cheapest raw analyses")
for p in nbest(raw, 5):
    print(f"  {p.weight:4}  {p.output_string()}")
print("after the language model and filter")
for p in nbest(disambiguate(raw, g), 3):
    print(f"  {p.weight:4}  {p.output_string()}")
