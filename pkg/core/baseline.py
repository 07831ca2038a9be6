"""
Naive per-order reference: rebuild W_i from the streamed recurrence and run a
full k x k elimination for every order, O(k^3) work per step.
"""
from collections import deque
from typing import Deque, Optional

from core.exceptions import SequenceLengthError
from core.field import field_for
from core.monitoring import PHASE_ELIMINATE, PHASE_GENERATE, OpCounter
from core.oracle import matrix_rank
from core.recurrence import Row, recurrence_rows
from core.sequence import InvertibilitySequence
from core.sliding import _diagonal_sequence, _leading_bits
from core.stencil import Stencil, normalize


def naive_sequence(s: Stencil, n: int, counter: Optional[OpCounter] = None) -> InvertibilitySequence:
    """Bit-identical to ``invertibility_sequence``; used for cross-checks and op-count ratios"""
    if n < 1:
        raise SequenceLengthError(n)
    stencil = normalize(s)
    field = field_for(stencil.field, counter)
    if stencil.k == 0:
        return _diagonal_sequence(stencil, n, field)

    k = stencil.k
    bits = _leading_bits(stencil, n, field)
    if n <= k:
        return InvertibilitySequence.from_bits(bits)

    window: Deque[Row] = deque(maxlen=k)
    for index, row in recurrence_rows(stencil, field):
        window.append(row)
        i = index - k
        if i < 1:
            continue
        if counter is not None:
            counter.enter(PHASE_ELIMINATE)
        invertible = matrix_rank(field, window) == k
        if counter is not None:
            counter.tally(checks=1)
            counter.enter(PHASE_GENERATE)
        if i > k:
            bits.append(invertible)
        if i == n:
            break
    return InvertibilitySequence.from_bits(bits)
