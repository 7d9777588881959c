from enum import Enum


class SyntaxErrorKind(Enum):
    LEXICAL = "lexical error"
    UNBALANCED = "unbalanced parenthesis"
    DANGLING = "dangling connective"
    MISSING = "missing connective"


class FormulaSyntaxError(ValueError):
    def __init__(
        self, text: str, kind: SyntaxErrorKind, position: int, token_index: int
    ) -> None:
        self.text = text
        self.kind = kind
        self.position = position
        self.token_index = token_index
        super().__init__(
            f"{kind.value} at position {position} (token {token_index}) in {text!r}"
        )


class BaseSyntaxError(ValueError):
    def __init__(self, line_number: int, line: str, reason: str) -> None:
        self.line_number = line_number
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}: {line!r}")


class ProofError(ValueError):
    """A proof tree failed validation at the node addressed by ``path``."""

    def __init__(self, path: tuple[int, ...], reason: str) -> None:
        self.path = path
        self.reason = reason
        super().__init__(f"{format_path(path)}: {reason}")


class RuleShapeError(ProofError):
    pass


class UnboundHypothesisError(ProofError):
    pass


class DischargeMismatchError(ProofError):
    pass


class DualMismatchError(ProofError):
    pass


class DuplicateLabelError(ProofError):
    pass


class ResourceLimitError(RuntimeError):
    def __init__(self, what: str, size: int, cap: int) -> None:
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} {size=} exceeds the configured cap {cap}.")


class PreconditionError(ValueError):
    pass


class TautologyError(PreconditionError):
    pass


class ModePreconditionError(PreconditionError):
    pass


class NotInRangeError(LookupError):
    pass


class ValuationDomainError(KeyError):
    pass


def format_path(path: tuple[int, ...]) -> str:
    return ".".join(["root", *map(str, path)])
