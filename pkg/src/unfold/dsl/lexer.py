"""Tokenizer for the annotation language and scenario files."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ParseError

KEYWORDS = {
    "fun", "forall", "let", "in", "not", "true", "false",
    "folds", "iters", "maps", "filters",
    "with", "structure", "elt", "accumulator",
    "len", "prefix", "reverse", "distinct", "setof",
    "union", "inter", "diff", "subset", "mem", "add", "sum",
    "emptyset", "flatten", "levels", "copy",
    "collection", "decl", "call", "uses", "within",
    "consumer", "init", "expect",
    "graph", "tree", "node", "leaf", "vertices", "edge",
}

_PUNCT = (
    "->", "/\\", "\\/", "<>", "<=", ">=",
    "(", ")", "[", "]", "{", "}", ",", ";", ":", ".",
    "=", "<", ">", "+", "-", "*", "~",
)


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, TYVAR, INT, KW, PUNCT, EOF
    text: str
    line: int
    column: int


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_'"


def strip_wrapper(text: str) -> str:
    """Specification blocks may come wrapped as an annotation comment
    ``(*@ ... *)``; accept both wrapped and bare text."""
    stripped = text.strip()
    if stripped.startswith("(*@") and stripped.endswith("*)"):
        return stripped[3:-2]
    return text


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_line, start_col = line, col
        if _is_ident_start(ch):
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            word = text[i:j]
            kind = "KW" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch == "'":
            j = i + 1
            while j < n and _is_ident_char(text[j]):
                j += 1
            if j == i + 1:
                raise ParseError("dangling type-variable quote", line, col)
            tokens.append(Token("TYVAR", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        for punct in _PUNCT:
            if text.startswith(punct, i):
                tokens.append(Token("PUNCT", punct, start_line, start_col))
                col += len(punct)
                i += len(punct)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens
