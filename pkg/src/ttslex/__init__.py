"""Weighted finite-state text analysis for text-to-speech front ends."""

from .fst import Arc, Fst, compile_string
from .manifest import load_manifest
from .ops import (avoid_symbols, closure, compose, concat, connect, invert,
                  project, rm_epsilon, union)
from .paths import Path, best_path, best_transduction, enumerate_paths, nbest
from .pipeline import GrammarSet, analyze, analyze_text, disambiguate, pronounce, select
from .symbols import SymbolTable

__all__ = [
    "Arc", "Fst", "GrammarSet", "Path", "SymbolTable", "analyze", "analyze_text",
    "avoid_symbols", "best_path", "best_transduction", "closure", "compile_string",
    "compose", "concat", "connect", "disambiguate", "enumerate_paths", "invert",
    "load_manifest", "nbest", "project", "pronounce", "rm_epsilon", "select", "union",
]
