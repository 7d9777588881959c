from dataclasses import dataclass
from functools import cached_property

from .constants import (
    MAX_CONTENTS,
    MAX_ORACLE_UNIVERSE,
    MAX_POOL_SIZE,
    MAX_SATURATION_UNIVERSE,
    MAX_UNIVERSE,
    POOL_DEPTH,
    POOL_MAX_HYPOTHESES,
    POOL_MAX_SUBRULES,
)


@dataclass(frozen=True)
class Config:
    max_contents: int = MAX_CONTENTS
    max_universe: int = MAX_UNIVERSE
    max_oracle_universe: int = MAX_ORACLE_UNIVERSE
    max_saturation_universe: int = MAX_SATURATION_UNIVERSE

    pool_depth: int = POOL_DEPTH
    pool_max_subrules: int = POOL_MAX_SUBRULES
    pool_max_hypotheses: int = POOL_MAX_HYPOTHESES
    max_pool_size: int = MAX_POOL_SIZE

    def __post_init__(self) -> None:
        for name in (
            "max_contents",
            "max_universe",
            "max_oracle_universe",
            "max_saturation_universe",
            "pool_max_subrules",
            "max_pool_size",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name}={getattr(self, name)} must be positive.")
        if self.pool_depth < 0 or self.pool_max_hypotheses < 0:
            raise ValueError(
                f"{self.pool_depth=} and {self.pool_max_hypotheses=} must not be negative."
            )

    @cached_property
    def max_valuations(self) -> int:
        return 1 << self.max_contents

    @cached_property
    def max_oracle_contexts(self) -> int:
        return 1 << self.max_oracle_universe

    def __str__(self):
        nl = "\n" + " " * len(self.__class__.__name__)
        return f"""{self.__repr__()[:-1]},{nl} max_valuations={
            self.max_valuations
        }, max_oracle_contexts={self.max_oracle_contexts})"""


DEFAULT_CONFIG = Config()
