from dataclasses import dataclass
from typing import Any


@dataclass(slots=True)
class BnBStats:
    """Counters of one branch-and-bound run; mutated in place while it runs."""

    nodes: int = 0
    pruned: int = 0
    lp_solves: int = 0
    lp_pivots: int = 0
    fallbacks: int = 0
    max_depth: int = 0

    def as_attributes(self) -> dict[str, Any]:
        return {
            "bnb.nodes": self.nodes,
            "bnb.pruned": self.pruned,
            "bnb.fallbacks": self.fallbacks,
            "bnb.max_depth": self.max_depth,
            "lp.solves": self.lp_solves,
            "lp.pivots": self.lp_pivots,
        }
