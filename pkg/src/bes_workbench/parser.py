"""Text grammar for formulae.

``neg`` binds tighter than ``&``, which binds tighter than ``|``, which binds
tighter than the right-associative ``->``. A bare name is an assertion.
"""

import lark
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

from .errors import FormulaSyntaxError, SyntaxErrorKind
from .syntax import BOT, TOP, And, Content, Formula, Imp, Lit, Literal, Or, Polarity

LITERAL_PATTERN = r"/[a-z][A-Za-z0-9_]*(\+|-(?!>))?/"

GRAMMAR = rf"""
?start: implication

?implication: disjunction
            | disjunction _IMPLIES implication -> imp

?disjunction: conjunction
            | disjunction _OR conjunction -> disj

?conjunction: prefix
            | conjunction _AND prefix -> conj

?prefix: atom
       | _NEG prefix -> neg

?atom: LITERAL -> literal
     | _BOT -> bot
     | _TOP -> top
     | _LPAR implication _RPAR

_IMPLIES: "->"
_OR: "|"
_AND: "&"
_NEG: "neg"
_BOT: "bot"
_TOP: "top"
_LPAR: "("
_RPAR: ")"
LITERAL: {LITERAL_PATTERN}

%import common.WS
%ignore WS
"""


def literal_from_token(text: str) -> Literal:
    if text.endswith("+"):
        return Literal(Content(text[:-1]), Polarity.ASSERT)
    if text.endswith("-"):
        return Literal(Content(text[:-1]), Polarity.DENY)
    return Literal(Content(text), Polarity.ASSERT)


class FormulaTransformer(lark.Transformer):
    def literal(self, children: list[lark.Token]) -> Formula:
        return Lit(literal_from_token(str(children[0])))

    def bot(self, _: list) -> Formula:
        return BOT

    def top(self, _: list) -> Formula:
        return TOP

    def neg(self, children: list[Formula]) -> Formula:
        return Imp(children[0], BOT)

    def conj(self, children: list[Formula]) -> Formula:
        return And(children[0], children[1])

    def disj(self, children: list[Formula]) -> Formula:
        return Or(children[0], children[1])

    def imp(self, children: list[Formula]) -> Formula:
        return Imp(children[0], children[1])


_parser = lark.Lark(
    GRAMMAR, parser="lalr", lexer="basic", transformer=FormulaTransformer()
)


OPERAND_STARTS = frozenset({"LITERAL", "_BOT", "_TOP", "_LPAR", "_NEG"})
OPERAND_ENDS = frozenset({"LITERAL", "_BOT", "_TOP", "_RPAR"})


def _tokens(text: str) -> list[lark.Token]:
    """The tokens lexed before the first lexical error."""
    tokens: list[lark.Token] = []
    try:
        for token in _parser.lex(text):
            tokens.append(token)
    except UnexpectedCharacters:
        pass
    return tokens


def _balanced(text: str) -> bool:
    depth = 0
    for char in text:
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                return False
    return depth == 0


def _syntax_error(text: str, error: UnexpectedInput) -> FormulaSyntaxError:
    tokens = _tokens(text)
    starts = [token.start_pos or 0 for token in tokens]
    if isinstance(error, UnexpectedCharacters):
        position = error.pos_in_stream
        index = sum(1 for start in starts if start < position)
        return FormulaSyntaxError(text, SyntaxErrorKind.LEXICAL, position, index)

    token = error.token if isinstance(error, UnexpectedToken) else None
    if token is None or token.type == "$END" or token.start_pos is None:
        position, index = len(text), len(starts)
    else:
        position = token.start_pos
        index = starts.index(position) if position in starts else len(starts)

    if (
        0 < index < len(tokens)
        and tokens[index].type in OPERAND_STARTS
        and tokens[index - 1].type in OPERAND_ENDS
    ):
        kind = SyntaxErrorKind.MISSING
    elif _balanced(text):
        kind = SyntaxErrorKind.DANGLING
    else:
        kind = SyntaxErrorKind.UNBALANCED
    return FormulaSyntaxError(text, kind, position, index)


def parse(text: str) -> Formula:
    try:
        return _parser.parse(text)
    except UnexpectedInput as error:
        raise _syntax_error(text, error) from error


def parse_literal(text: str) -> Literal:
    phi = parse(text)
    if not isinstance(phi, Lit):
        raise FormulaSyntaxError(text, SyntaxErrorKind.DANGLING, 0, 0)
    return phi.literal


def parse_context(text: str) -> list[Formula]:
    """Comma-separated formulae; the empty string is the empty context."""
    if not text.strip():
        return []
    return [parse(part) for part in text.split(",")]
