"""
Sequence computation service: runs one algorithm under an op counter and a timer
"""
from typing import Callable, Dict, Optional

from core.baseline import naive_sequence
from core.logging import get_logger, log_performance
from core.monitoring import OpCounter, OperationTimer
from core.sequence import InvertibilitySequence
from core.sliding import invertibility_sequence
from core.stencil import Stencil
from models import RunReport

logger = get_logger(__name__)

Algorithm = Callable[[Stencil, int, Optional[OpCounter]], InvertibilitySequence]

ALGORITHMS: Dict[str, Algorithm] = {
    'sliding': invertibility_sequence,
    'naive': naive_sequence,
}


class SequenceService:
    """Computes invertibility sequences and packages them as RunReports"""

    def __init__(self, algorithms: Optional[Dict[str, Algorithm]] = None):
        self.algorithms = dict(algorithms or ALGORITHMS)

    def algorithm(self, name: str) -> Algorithm:
        try:
            return self.algorithms[name]
        except KeyError:
            raise ValueError(f"unknown algorithm {name!r}; expected one of {sorted(self.algorithms)}")

    def compute(self, stencil: Stencil, n: int, algo: str = 'sliding') -> RunReport:
        run = self.algorithm(algo)
        counter = OpCounter()
        with OperationTimer(f"{algo} sequence") as timer:
            sequence = run(stencil, n, counter)

        log_performance(logger, f"{algo} sequence", timer.duration_ms,
                        k=stencil.k, n=n, field=str(stencil.field))
        return RunReport(
            n=n,
            k=stencil.k,
            field=str(stencil.field),
            algo=algo,
            sequence=sequence,
            ops=counter.to_dict(),
            wall_ms=timer.duration_ms,
            best_effort=not stencil.field.exact,
        )


# Global instance
sequence_service = SequenceService()
