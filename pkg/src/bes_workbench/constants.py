from typing import Literal, TypeAlias

MAX_CONTENTS: int = 16  # truth-table oracle: 2**16 valuations
MAX_UNIVERSE: int = 64  # literals seen by the refutation engine
MAX_ORACLE_UNIVERSE: int = 10  # naive closure enumerates 2**n contexts
MAX_SATURATION_UNIVERSE: int = 20  # joint saturation visits up to 2**n contexts
MAX_POOL_SIZE: int = 4096

POOL_DEPTH: int = 1
POOL_MAX_SUBRULES: int = 1
POOL_MAX_HYPOTHESES: int = 1

SEED_ENV_VAR: str = "BES_SEED"
DEFAULT_SEED: int = 0

FRESH_CONTENT_PREFIX: str = "p"
BOTTOM_CONTENT_PREFIX: str = "f"

EXIT_OK: int = 0
EXIT_NEGATIVE: int = 1
EXIT_USAGE: int = 2
EXIT_RESOURCE: int = 3

TYPE_BIT: TypeAlias = Literal[0, 1]
