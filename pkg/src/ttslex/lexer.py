"""Lexer shared by all grammar source formats.

A token is a single character, a brace group such as ``{num}`` or
``{10^1}``, or a backslash-escaped character. Whitespace separates and is
otherwise ignored; ``#`` outside braces starts a comment. ``<1.5>`` is a
cost and ``<eps>`` the empty string.
"""

from typing import NamedTuple

from .errors import ParseError

OPERATORS = set("()|*+?.[]^$:/")


class Item(NamedTuple):
    kind: str  # "tok", "op", "cost", "eps"
    text: str
    col: int
    value: float = 0.0
    escaped: bool = False


def strip_comment(line):
    """Remove a trailing ``#`` comment, respecting braces and escapes."""
    depth = 0
    i = 0
    while i < len(line):
        c = line[i]
        if c == "\\":
            i += 2
            continue
        if c == "{":
            depth += 1
        elif c == "}" and depth:
            depth -= 1
        elif c == "#" and depth == 0:
            return line[:i]
        i += 1
    return line


def lex(text, line=None, source=None):
    items = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == "\\":
            if i + 1 >= n:
                raise ParseError("dangling backslash", line, i + 1, source)
            items.append(Item("tok", text[i + 1], i + 1, escaped=True))
            i += 2
        elif c == "{":
            j = text.find("}", i + 1)
            if j < 0:
                raise ParseError("unterminated '{'", line, i + 1, source)
            if j == i + 1:
                raise ParseError("empty brace token", line, i + 1, source)
            items.append(Item("tok", text[i:j + 1], i + 1))
            i = j + 1
        elif c == "<":
            j = text.find(">", i + 1)
            if j < 0:
                raise ParseError("unterminated '<'", line, i + 1, source)
            body = text[i + 1:j].strip()
            if body == "eps":
                items.append(Item("eps", "<eps>", i + 1))
            else:
                try:
                    w = float(body)
                except ValueError:
                    raise ParseError(f"bad cost <{body}>", line, i + 1, source) from None
                if not w >= 0:
                    raise ParseError(f"negative cost <{body}>", line, i + 1, source)
                items.append(Item("cost", text[i:j + 1], i + 1, w))
            i = j + 1
        elif c == "-" and text.startswith("->", i):
            items.append(Item("op", "->", i + 1))
            i += 2
        elif c in OPERATORS:
            items.append(Item("op", c, i + 1))
            i += 1
        else:
            items.append(Item("tok", c, i + 1))
            i += 1
    return items


def tokens_of(text, line=None, source=None):
    """Plain token sequence; any operator is an error."""
    out = []
    for item in lex(text, line, source):
        if item.kind == "tok":
            out.append(item.text)
        elif item.kind == "eps":
            continue
        else:
            raise ParseError(f"unexpected {item.text!r} in token string", line, item.col, source)
    return out


def split_text(text):
    """Character-level tokenization of raw input text (no brace groups)."""
    return list(text)
