from .. import protocol
from ..bases import AtomicQuery, Base, relevant_universe
from ..config import Config
from ..errors import ResourceLimitError
from ..syntax import Literal


class BaseEngine(protocol.Engine):
    config: Config

    def universe(self, b: Base, q: AtomicQuery, cap: int) -> frozenset[Literal]:
        universe = relevant_universe(b, q)
        if len(universe) > cap:
            raise ResourceLimitError("universe", len(universe), cap)
        return universe
