"""
Report records produced by the services and rendered by the templates
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from core.sequence import InvertibilitySequence


@dataclass
class RunReport:
    """One computed invertibility sequence with its cost"""
    n: int
    k: int
    field: str
    algo: str
    sequence: InvertibilitySequence
    ops: Dict[str, Dict[str, int]]
    wall_ms: float
    best_effort: bool = False

    @property
    def bits(self) -> str:
        return self.sequence.to_string()

    @property
    def singular_orders(self) -> List[int]:
        return self.sequence.singular_orders

    def to_dict(self) -> Dict[str, Any]:
        """Stable key order: n, k, field, algo, bits, singular_orders, ops, wall_ms, best_effort"""
        return {
            'n': self.n,
            'k': self.k,
            'field': self.field,
            'algo': self.algo,
            'bits': self.bits,
            'singular_orders': self.singular_orders,
            'ops': self.ops,
            'wall_ms': round(self.wall_ms, 3),
            'best_effort': self.best_effort,
        }


@dataclass
class BenchCell:
    """Measurements for one (k, n, algo) combination"""
    k: int
    n: int
    algo: str
    field: str
    wall_ms: float
    generate_mul_div: int
    eliminate_muls: int
    checks: int
    rss_bytes: int
    predicted: Optional[int] = None

    @property
    def sort_key(self) -> tuple:
        return (self.k, self.n, self.algo)

    def to_row(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'n': self.n,
            'algo': self.algo,
            'field': self.field,
            'wall_ms': round(self.wall_ms, 3),
            'generate_mul_div': self.generate_mul_div,
            'eliminate_mul': self.eliminate_muls,
            'checks': self.checks,
            'predicted': '' if self.predicted is None else self.predicted,
            'rss_bytes': self.rss_bytes,
        }


@dataclass
class VerifyOutcome:
    """Result of a verify run that found no disagreement"""
    instances: int
    passed: int
    blocks_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.passed == self.instances
