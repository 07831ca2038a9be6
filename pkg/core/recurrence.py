"""
The v recurrence shared by the sliding algorithm, the naive baseline and the
block-identity check.

    v_{i,j} = 1 if i == j, 0 otherwise          for i <= k
    v_{i,j} = -(x_{k-1} v_{i-1,j} + ... + x_{-k} v_{i-2k,j}) / x_k   for i > k

W_i is the k x k matrix with rows v_{i+1}, ..., v_{i+k}.
"""
from collections import deque
from typing import Any, Deque, Iterator, List, Optional, Tuple

from core.exceptions import BandwidthError
from core.field import Field, field_for
from core.stencil import NormalizedStencil

Row = List[Any]


class Recurrence:
    """Coefficients of the recurrence for one normalized stencil.

    ``-1/x_k`` is computed once here and reused for every row.
    """

    def __init__(self, stencil: NormalizedStencil, field: Field):
        if stencil.k < 1:
            raise BandwidthError("the recurrence needs k >= 1; diagonal stencils take the fast path", k=stencil.k)
        self.k = stencil.k
        self.field = field
        self.lower: Tuple[Any, ...] = tuple(stencil.coeffs[:2 * self.k])
        self.scale = field.neg(field.invert(stencil.x(self.k)))

    def base_window(self) -> Deque[Row]:
        """Rows v_{-k+1}, ..., v_k, oldest first"""
        field, k = self.field, self.k
        window: Deque[Row] = deque(maxlen=2 * k)
        for i in range(-k + 1, k + 1):
            window.append([field.one if i == j else field.zero for j in range(1, k + 1)])
        return window

    def next_row(self, window: Deque[Row]) -> Row:
        """v_i from the 2k rows v_{i-2k}, ..., v_{i-1} held oldest first"""
        return self.field.recur(self.lower, window, self.scale)


def recurrence_rows(stencil: NormalizedStencil, field: Optional[Field] = None) -> Iterator[Tuple[int, Row]]:
    """Stream (i, v_i) for i = 1, 2, ... in constant memory"""
    recurrence = Recurrence(stencil, field or field_for(stencil.field))
    window = recurrence.base_window()
    for i, row in enumerate(list(window)[recurrence.k:], start=1):
        yield i, row
    i = recurrence.k
    while True:
        i += 1
        row = recurrence.next_row(window)
        window.append(row)
        yield i, row


def w_matrix(stencil: NormalizedStencil, i: int, field: Optional[Field] = None) -> List[Row]:
    """W_i, recomputed from scratch (verification path, not the hot loop)"""
    if i < 0:
        raise BandwidthError(f"W_i needs i >= 0, got {i}", k=stencil.k, n=i)
    rows: List[Row] = []
    for index, row in recurrence_rows(stencil, field):
        if index > i:
            rows.append(list(row))
        if index == i + stencil.k:
            return rows
    raise AssertionError("unreachable")  # pragma: no cover
