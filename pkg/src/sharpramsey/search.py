"""Shared plumbing for exact searches: node/time budgets and three-valued verdicts."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any


class BudgetExceeded(Exception):
    """Raised inside a search when its Budget runs out."""


class Budget:
    """Caps on expanded search nodes and wall-clock time.

    One budget may be threaded through several nested searches; ``nodes``
    accumulates across all of them.
    """

    def __init__(self, max_nodes: int | None = None, timeout_ms: int | None = None):
        self.max_nodes = max_nodes
        self.deadline = None if timeout_ms is None else time.monotonic() + timeout_ms / 1000
        self.nodes = 0

    def tick(self, k: int = 1) -> None:
        self.nodes += k
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded("node limit reached")
        # checking the clock every call is measurably slow
        if self.deadline is not None and (self.nodes & 1023) == 0 \
                and time.monotonic() > self.deadline:
            raise BudgetExceeded("time limit reached")


def unlimited() -> Budget:
    return Budget()


@dataclass
class Decision:
    """Outcome of a decision procedure.

    ``verdict`` is True, False, or None when the budget ran out before the
    search finished. ``witness`` is whatever certificate the procedure
    produces for its answer (a colouring, a map, a list assignment...).
    """

    verdict: bool | None
    witness: Any = None
    nodes_expanded: int = 0
    info: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        if self.verdict is None:
            raise ValueError("inconclusive decision has no truth value")
        return self.verdict

    @property
    def inconclusive(self) -> bool:
        return self.verdict is None
