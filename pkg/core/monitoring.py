"""
Operation counting and run monitoring
Tallies field work per algorithm phase, times runs and samples process memory
"""
import time
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, asdict
from typing import Dict, Iterator, Optional

import psutil

from core.logging import get_logger

logger = get_logger(__name__)

PHASE_GENERATE = "generate"
PHASE_ELIMINATE = "eliminate"
PHASE_ORACLE = "oracle"
PHASES = (PHASE_GENERATE, PHASE_ELIMINATE, PHASE_ORACLE)


@dataclass
class PhaseTally:
    """Counts for one algorithm phase"""
    muls: int = 0
    divs: int = 0
    adds: int = 0
    checks: int = 0

    @property
    def mul_div(self) -> int:
        return self.muls + self.divs

    def to_dict(self) -> Dict[str, int]:
        return {'mul': self.muls, 'div': self.divs, 'add': self.adds, 'check': self.checks}


class OpCounter:
    """Tally of field multiplications, divisions and additions split by phase.

    Counts only ever grow; ``reset`` is the one way back to zero. A counter
    belongs to a single computation thread.
    """

    def __init__(self, phase: str = PHASE_GENERATE):
        self.tallies: Dict[str, PhaseTally] = {name: PhaseTally() for name in PHASES}
        self.phase = phase
        self._current = self.tallies[phase]

    def enter(self, phase: str) -> None:
        """Switch the phase subsequent tallies are charged to"""
        if phase not in self.tallies:
            raise ValueError(f"unknown phase {phase!r}; expected one of {PHASES}")
        self.phase = phase
        self._current = self.tallies[phase]

    @contextmanager
    def in_phase(self, phase: str) -> Iterator["OpCounter"]:
        previous = self.phase
        self.enter(phase)
        try:
            yield self
        finally:
            self.enter(previous)

    def tally(self, muls: int = 0, divs: int = 0, adds: int = 0, checks: int = 0) -> None:
        if muls < 0 or divs < 0 or adds < 0 or checks < 0:
            raise ValueError("operation counts cannot decrease")
        current = self._current
        current.muls += muls
        current.divs += divs
        current.adds += adds
        current.checks += checks

    def reset(self) -> None:
        for tally in self.tallies.values():
            tally.muls = tally.divs = tally.adds = tally.checks = 0

    def __getitem__(self, phase: str) -> PhaseTally:
        return self.tallies[phase]

    @property
    def muls(self) -> int:
        return sum(t.muls for t in self.tallies.values())

    @property
    def divs(self) -> int:
        return sum(t.divs for t in self.tallies.values())

    @property
    def adds(self) -> int:
        return sum(t.adds for t in self.tallies.values())

    @property
    def checks(self) -> int:
        return sum(t.checks for t in self.tallies.values())

    def snapshot(self) -> Dict[str, PhaseTally]:
        return {name: PhaseTally(**asdict(t)) for name, t in self.tallies.items()}

    def to_dict(self) -> Dict[str, Dict[str, int]]:
        return {name: tally.to_dict() for name, tally in self.tallies.items()}

    def __repr__(self) -> str:
        parts = ", ".join(f"{name}={t.to_dict()}" for name, t in self.tallies.items())
        return f"OpCounter({parts})"


# Counter charged by the element-level field API (core.field.mul and friends)
active_counter_ctx: ContextVar[Optional[OpCounter]] = ContextVar('active_counter', default=None)


def active_counter() -> Optional[OpCounter]:
    return active_counter_ctx.get()


@contextmanager
def counting(counter: Optional[OpCounter] = None) -> Iterator[OpCounter]:
    """Make ``counter`` (or a fresh one) the active counter for this context"""
    counter = counter if counter is not None else OpCounter()
    token = active_counter_ctx.set(counter)
    try:
        yield counter
    finally:
        active_counter_ctx.reset(token)


class OperationTimer:
    """Context manager for timing operations"""

    def __init__(self, operation_name: str):
        self.operation_name = operation_name
        self.start_time: Optional[float] = None
        self.duration_ms: float = 0.0

    def __enter__(self) -> "OperationTimer":
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        if self.start_time is not None:
            self.duration_ms = (time.perf_counter() - self.start_time) * 1000
            logger.debug(f"{self.operation_name} finished in {self.duration_ms:.2f}ms", extra={
                'operation': self.operation_name,
                'duration_ms': self.duration_ms,
                'success': exc_type is None,
            })


def process_rss_bytes() -> int:
    """Resident set size of the current process"""
    return psutil.Process().memory_info().rss
