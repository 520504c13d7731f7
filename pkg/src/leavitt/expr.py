"""Parser for element expressions such as ``2/3 v - y1 y1* + 3*e f*``.

Grammar::

    element := ['-'] term (('+'|'-') term)*
    term    := [scalar ['*']] word | scalar
    scalar  := integer ['/' integer]
    word    := token+ ;  token := id ['*']

The parser is graph-agnostic: it returns a formal combination of raw words
(tuples of tokens, ghosts carrying a trailing ``*``). Resolving tokens to
generators happens in the algebra.
"""

from __future__ import annotations

import re
from fractions import Fraction

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<id>[A-Za-z(][A-Za-z0-9_.,()]*)
  | (?P<star>\*)
  | (?P<plus>\+)
  | (?P<minus>-)
    """,
    re.VERBOSE,
)


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} at position {position}")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    return out


def parse_expression(text: str) -> list[tuple[Fraction, tuple[str, ...]]]:
    """Parse into ``[(coefficient, word)]``; a bare scalar term has an empty word.

    Only ``0`` is allowed as a bare scalar, since the algebra of a graph with
    infinitely many vertices has no unit and we do not assume one here.
    """
    toks = tokenize(text)
    if not toks:
        raise ExprSyntaxError("empty expression", 0)
    terms: list[tuple[Fraction, tuple[str, ...]]] = []
    i = 0
    sign = 1
    if toks[0][0] == "minus":
        sign = -1
        i = 1
    while True:
        if i >= len(toks):
            raise ExprSyntaxError("expected a term", len(text))
        coeff = Fraction(1)
        have_scalar = False
        if toks[i][0] == "num":
            num, _, den = toks[i][1].partition("/")
            if den and int(den) == 0:
                raise ExprSyntaxError("zero denominator", toks[i][2])
            coeff = Fraction(int(num), int(den) if den else 1)
            have_scalar = True
            i += 1
            if i < len(toks) and toks[i][0] == "star":
                i += 1
                if i >= len(toks) or toks[i][0] != "id":
                    pos = toks[i][2] if i < len(toks) else len(text)
                    raise ExprSyntaxError("expected a word after '*'", pos)
        word: list[str] = []
        while i < len(toks) and toks[i][0] == "id":
            name = toks[i][1]
            i += 1
            if i < len(toks) and toks[i][0] == "star":
                name += "*"
                i += 1
            word.append(name)
        if not word and not have_scalar:
            pos = toks[i][2] if i < len(toks) else len(text)
            raise ExprSyntaxError("expected a scalar or a word", pos)
        if not word and coeff != 0:
            pos = toks[i - 1][2]
            raise ExprSyntaxError("a bare nonzero scalar needs a unit; write it times a vertex", pos)
        terms.append((sign * coeff, tuple(word)))
        if i >= len(toks):
            break
        kind, _, pos = toks[i]
        if kind == "plus":
            sign = 1
        elif kind == "minus":
            sign = -1
        else:
            raise ExprSyntaxError(f"unexpected {toks[i][1]!r}", pos)
        i += 1
    return terms
