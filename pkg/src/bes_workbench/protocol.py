from typing import Protocol

from .bases import AtomicQuery, Base, DerivationAnswer
from .config import Config


class Engine(Protocol):
    config: Config

    @property
    def name(self) -> str: ...

    def derives(self, b: Base, q: AtomicQuery) -> DerivationAnswer: ...
