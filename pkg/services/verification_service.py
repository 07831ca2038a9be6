"""
Cross-verification service.

Compares the sliding algorithm, the naive baseline and the dense oracle on the
same stencil, and checks the block identity behind the window criterion at
every order above k. The first disagreement is cut down to the smallest order
where it shows and raised as VerificationMismatch.
"""
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.baseline import naive_sequence
from core.exceptions import ValidationError, VerificationMismatch
from core.field import FieldSpec
from core.logging import get_logger, log_run_event
from core.oracle import dense_sequence, theorem1_blocks
from core.sequence import InvertibilitySequence
from core.sliding import invertibility_sequence
from core.stencil import Stencil, normalize, random_stencil
from models import VerifyOutcome

logger = get_logger(__name__)


def flip_bit(sequence: InvertibilitySequence, order: int) -> InvertibilitySequence:
    """Copy of ``sequence`` with the bit of M_order inverted (fault injection)"""
    if not 1 <= order <= sequence.n:
        return sequence
    bits = list(sequence.bits)
    bits[order - 1] = not bits[order - 1]
    return InvertibilitySequence.from_bits(bits)


class VerificationService:

    def compare(self, stencil: Stencil, n: int, inject_fault: Optional[int] = None) -> Optional[Dict[str, Any]]:
        """Minimal counterexample if the three sequences disagree, else None"""
        sliding = invertibility_sequence(stencil, n)
        if inject_fault is not None:
            sliding = flip_bit(sliding, inject_fault)
        naive = naive_sequence(stencil, n)
        dense = dense_sequence(stencil, n)

        differences = [
            sliding.first_difference(naive),
            sliding.first_difference(dense),
            naive.first_difference(dense),
        ]
        order = min((d for d in differences if d), default=0)
        if not order:
            return None
        return {
            'reason': 'sequences disagree',
            'stencil': str(stencil),
            'field': str(stencil.field),
            'order': order,
            'sliding': sliding.to_string()[:order],
            'naive': naive.to_string()[:order],
            'dense': dense.to_string()[:order],
        }

    def check_blocks(self, stencil: Stencil, n: int) -> Tuple[int, Optional[Dict[str, Any]]]:
        """Block identity at orders k+1..n"""
        normalized = normalize(stencil)
        if normalized.k < 1:
            return 0, None
        checked = 0
        for order in range(normalized.k + 1, n + 1):
            report = theorem1_blocks(normalized, order)
            checked += 1
            if not report.ok:
                return checked, {
                    'reason': 'block identity failed' if report.top_block_zero else 'top block not zero',
                    'stencil': str(stencil),
                    'field': str(stencil.field),
                    'order': order,
                }
        return checked, None

    def _require_exact(self, field: FieldSpec) -> None:
        # tolerance pivots are not certified against the dense oracle
        if not field.exact:
            raise ValidationError(
                f"verify needs an exact field (gf:<p> or rational), got {field}; approx results are best-effort",
                field='field', value=str(field)
            )

    def _check(self, stencil: Stencil, n: int, inject_fault: Optional[int]) -> Tuple[int, Optional[Dict[str, Any]]]:
        counterexample = self.compare(stencil, n, inject_fault)
        if counterexample is not None:
            return 0, counterexample
        return self.check_blocks(stencil, n)

    def _fail(self, counterexample: Dict[str, Any]) -> None:
        log_run_event(logger, 'mismatch', **{f"ce_{key}": value for key, value in counterexample.items()})
        raise VerificationMismatch(
            f"{counterexample['reason']} at order {counterexample['order']}",
            counterexample=counterexample
        )

    def verify_stencil(self, stencil: Stencil, n: int, inject_fault: Optional[int] = None) -> VerifyOutcome:
        self._require_exact(stencil.field)
        blocks, counterexample = self._check(stencil, n, inject_fault)
        if counterexample is not None:
            self._fail(counterexample)
        log_run_event(logger, 'verified', n=n, blocks_checked=blocks)
        return VerifyOutcome(instances=1, passed=1, blocks_checked=blocks)

    def verify_random(self,
                      field: FieldSpec,
                      count: int,
                      k_max: int,
                      n_max: int,
                      seed: int,
                      inject_fault: Optional[int] = None) -> VerifyOutcome:
        """``count`` seeded random stencils with 1 <= k <= k_max, every order up to n_max"""
        self._require_exact(field)
        rng = np.random.default_rng(seed)
        outcome = VerifyOutcome(instances=count, passed=0)
        for instance in range(1, count + 1):
            k = int(rng.integers(1, k_max + 1)) if k_max >= 1 else 0
            stencil = random_stencil(field, k, rng)
            blocks, counterexample = self._check(stencil, n_max, inject_fault)
            if counterexample is not None:
                counterexample['instance'] = instance
                self._fail(counterexample)
            outcome.passed += 1
            outcome.blocks_checked += blocks
        log_run_event(logger, 'verified', instances=count, seed=seed, blocks_checked=outcome.blocks_checked)
        return outcome


# Global instance
verification_service = VerificationService()
