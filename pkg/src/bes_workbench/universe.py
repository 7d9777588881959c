from typing import Iterable, Iterator

from .syntax import Content, Literal, Polarity


class LiteralIndex:
    """Packs literal sets over a fixed content list into int bitmasks.

    Content ``i`` owns bit ``2i`` for its assertion and ``2i + 1`` for its
    denial, so a literal and its dual always sit in the same pair.
    """

    __slots__ = ("_contents", "_position", "_even", "_odd")

    def __init__(self, contents: Iterable[Content]):
        self._contents: tuple[Content, ...] = tuple(dict.fromkeys(contents))
        self._position: dict[Content, int] = {
            content: index for index, content in enumerate(self._contents)
        }
        self._even: int = sum(1 << (2 * i) for i in range(len(self._contents)))
        self._odd: int = self._even << 1

    @classmethod
    def of_literals(
        cls, literals: Iterable[Literal], first: Iterable[Content] = ()
    ) -> "LiteralIndex":
        """Index the contents of ``literals``; ``first`` goes to the lowest pairs."""
        contents = sorted({literal.content for literal in literals})
        preferred = [content for content in first if content in set(contents)]
        return cls([*preferred, *contents])

    def __repr__(self) -> str:
        names = ", ".join(map(str, self._contents))
        return f"{self.__class__.__name__}(size={len(self)}, contents=[{names}])"

    def __len__(self) -> int:
        return 2 * len(self._contents)

    def __contains__(self, literal: Literal) -> bool:
        return literal.content in self._position

    @property
    def contents(self) -> tuple[Content, ...]:
        return self._contents

    @property
    def full(self) -> int:
        return self._even | self._odd

    def bit(self, literal: Literal) -> int:
        try:
            index = self._position[literal.content]
        except KeyError:
            raise IndexError(f"{literal} is outside the literal index") from None
        return 1 << (2 * index + (0 if literal.polarity is Polarity.ASSERT else 1))

    def encode(self, literals: Iterable[Literal]) -> int:
        mask = 0
        for literal in literals:
            mask |= self.bit(literal)
        return mask

    def literal(self, position: int) -> Literal:
        content = self._contents[position // 2]
        return Literal(content, Polarity.ASSERT if position % 2 == 0 else Polarity.DENY)

    def positions(self, mask: int) -> Iterator[int]:
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def decode(self, mask: int) -> frozenset[Literal]:
        return frozenset(self.literal(position) for position in self.positions(mask))

    def swap(self, mask: int) -> int:
        """The mask of the duals of ``mask``."""
        return ((mask & self._even) << 1) | ((mask & self._odd) >> 1)

    def clashes(self, mask: int) -> int:
        """Assertion bits whose denial is also set."""
        return mask & self._even & (mask >> 1)

    def consistent(self, mask: int) -> bool:
        return not self.clashes(mask)

    def decided(self, mask: int) -> int:
        """Bit ``2i`` set iff content ``i`` has either literal in ``mask``."""
        return (mask | (mask >> 1)) & self._even

    def complete(self, mask: int) -> int:
        """Extend ``mask`` with the assertion of every content it leaves open."""
        return mask | (self._even & ~self.decided(mask))

    def submasks(self, mask: int) -> Iterator[int]:
        sub = mask
        while True:
            yield sub
            if sub == 0:
                return
            sub = (sub - 1) & mask
