"""
Sliding-window invertibility sequence.

The state keeps the last 2k recurrence rows (enough to produce the next one)
and a k x k buffer Y whose rows span the same space as W_i with a
unit upper-triangular change of basis: the row of age rank j is a
combination of W_i rows of age rank >= j with coefficient one on row j.
Each step drops the oldest Y row, inserts the newest W row and restores
pairwise-distinct pivots, always letting the newer row of a colliding pair
eliminate the older one. W_i is invertible iff no Y row is zero.
"""
from typing import Deque, List, Optional

from core.exceptions import BandwidthError, SequenceLengthError
from core.field import Field, field_for
from core.logging import get_logger
from core.monitoring import PHASE_ELIMINATE, PHASE_GENERATE, PHASE_ORACLE, OpCounter
from core.oracle import dense_invertible
from core.recurrence import Recurrence, Row
from core.sequence import InvertibilitySequence
from core.stencil import NormalizedStencil, Stencil, normalize

logger = get_logger(__name__)


class SlidingState:
    """Working set of the sliding algorithm: 3k^2 field elements, k pivots, one step counter.

    ``pivot[r]`` is the 0-based column of the first nonzero entry of
    ``ybuf[r]``, or None for a zero row. Rows enter ``ybuf`` cyclically, so
    after ``step`` advances the oldest row sits in slot ``step % k``.
    """

    def __init__(self, stencil: NormalizedStencil, field: Optional[Field] = None):
        if stencil.k < 1:
            raise BandwidthError("sliding state needs k >= 1; use the diagonal fast path for k = 0", k=stencil.k)
        self.stencil = stencil
        self.k = stencil.k
        self.field = field or field_for(stencil.field)
        self._counter: Optional[OpCounter] = self.field.counter
        self._recurrence = Recurrence(stencil, self.field)

        self.wbuf: Deque[Row] = self._recurrence.base_window()
        # Y_0 = W_0 = I
        self.ybuf: List[Row] = [list(row) for row in list(self.wbuf)[self.k:]]
        self.pivot: List[Optional[int]] = list(range(self.k))
        self.step = 0
        self.last_eliminations = 0

    def age_rank(self, slot: int) -> int:
        """0 for the oldest Y row, k-1 for the newest"""
        return (slot - self.step) % self.k

    def rows_by_age(self) -> List[Row]:
        return [self.ybuf[(self.step + r) % self.k] for r in range(self.k)]

    def element_count(self) -> int:
        return sum(len(row) for row in self.wbuf) + sum(len(row) for row in self.ybuf)

    def row_recurrence(self) -> Row:
        """v_{step+k+1} from the 2k rows in the window"""
        return self._recurrence.next_row(self.wbuf)

    def advance(self) -> bool:
        """Produce the invertibility bit of W_{step+1} and move the window"""
        field, k = self.field, self.k
        counter = self._counter
        if counter is not None:
            counter.enter(PHASE_GENERATE)

        row = self.row_recurrence()
        self.wbuf.append(row)

        if counter is not None:
            counter.enter(PHASE_ELIMINATE)

        slot = self.step % k
        self.step += 1
        self.ybuf[slot] = list(row)

        cur = slot
        col = field.leading_index(row)
        eliminations = 0
        while col is not None:
            other = self._pivot_owner(col, cur)
            if other is None:
                break
            if self.age_rank(other) > self.age_rank(cur):
                newer, older = other, cur
            else:
                newer, older = cur, other
            field.eliminate(self.ybuf[older], self.ybuf[newer], col)
            eliminations += 1
            self.pivot[newer] = col
            cur = older
            col = field.leading_index(self.ybuf[older], col + 1)
        self.pivot[cur] = col

        assert eliminations <= k, f"{eliminations} eliminations in one step (k = {k})"
        self.last_eliminations = eliminations
        if counter is not None:
            counter.tally(checks=1)
        return None not in self.pivot

    def _pivot_owner(self, col: int, exclude: int) -> Optional[int]:
        for r, p in enumerate(self.pivot):
            if p == col and r != exclude:
                return r
        return None

    def is_quasi_row_echelon(self) -> bool:
        seen = [p for p in self.pivot if p is not None]
        return len(seen) == len(set(seen))


def _diagonal_sequence(stencil: NormalizedStencil, n: int, field: Field) -> InvertibilitySequence:
    bit = not field.is_zero(stencil.x(0))
    if field.counter is not None:
        field.counter.tally(checks=n)
    return InvertibilitySequence((bit,) * n)


def _leading_bits(stencil: NormalizedStencil, n: int, field: Field) -> List[bool]:
    """Bits for orders 1..min(n, k) by dense elimination, charged to the oracle phase"""
    counter = field.counter
    if counter is not None:
        counter.enter(PHASE_ORACLE)
    bits = [dense_invertible(stencil, i, field) for i in range(1, min(n, stencil.k) + 1)]
    if counter is not None:
        counter.enter(PHASE_GENERATE)
    return bits


def invertibility_sequence(s: Stencil, n: int, counter: Optional[OpCounter] = None) -> InvertibilitySequence:
    """Invertibility of M_1..M_n with O(k^2) work per order and O(k^2) memory.

    Orders i <= k are settled by the dense oracle since the window criterion
    only covers i > k; the sliding state still advances through them.
    """
    if n < 1:
        raise SequenceLengthError(n)
    stencil = normalize(s)
    field = field_for(stencil.field, counter)
    if stencil.k == 0:
        return _diagonal_sequence(stencil, n, field)

    bits = _leading_bits(stencil, n, field)
    if n > stencil.k:
        state = SlidingState(stencil, field)
        for i in range(1, n + 1):
            bit = state.advance()
            if i > stencil.k:
                bits.append(bit)
    logger.debug("sliding sequence computed", extra={'k': stencil.k, 'n': n, 'field': str(stencil.field)})
    return InvertibilitySequence.from_bits(bits)


def advance_bits(s: NormalizedStencil, n: int) -> List[bool]:
    """Raw W_i bits for i = 1..n, including the orders i <= k the sequence does not trust"""
    state = SlidingState(s)
    return [state.advance() for _ in range(n)]
