"""
Independent ground truth for invertibility.

Dense banded Toeplitz construction, rank by textbook elimination, the
three-term determinant recurrence for tridiagonal stencils, and a check of
the block identity M_n X = [O; Q W_n] linking M_n to the k x k window W_n.
None of this is meant for large n.
"""
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Union

import numpy as np

from core.exceptions import BandwidthError, SequenceLengthError
from core.field import Field, FieldSpec, field_for
from core.logging import get_logger
from core.recurrence import recurrence_rows
from core.sequence import InvertibilitySequence
from core.stencil import NormalizedStencil, Stencil

logger = get_logger(__name__)

AnyStencil = Union[Stencil, NormalizedStencil]
Matrix = List[List[Any]]


@dataclass(frozen=True)
class DenseMatrix:
    field: FieldSpec
    entries: np.ndarray

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def tolist(self) -> Matrix:
        return self.entries.tolist()


@dataclass(frozen=True)
class BlockCheckReport:
    top_block_zero: bool
    p_block: Matrix
    q_times_w: Matrix
    match: bool

    @property
    def ok(self) -> bool:
        return self.top_block_zero and self.match


def dense_matrix(s: AnyStencil, n: int) -> DenseMatrix:
    """M_n with entry (r, c) = x_{c-r} inside the band, zero outside"""
    if n < 1:
        raise SequenceLengthError(n)
    field = field_for(s.field)
    entries = np.full((n, n), field.zero, dtype=object)
    for d in range(-s.k, s.k + 1):
        if abs(d) >= n:
            continue
        rows = np.arange(max(0, -d), min(n, n - d))
        entries[rows, rows + d] = s.x(d)
    return DenseMatrix(s.field, entries)


def matrix_rank(field: Field, rows: Union[Sequence[Sequence[Any]], np.ndarray]) -> int:
    """Rank by forward elimination.

    Exact fields pivot on the first nonzero entry; the approx field pivots on
    the largest magnitude. Eliminations are charged to ``field.counter``.
    """
    work = rows.tolist() if isinstance(rows, np.ndarray) else [list(r) for r in rows]
    m = len(work)
    width = len(work[0]) if m else 0
    rank = 0
    for col in range(width):
        if rank == m:
            break
        candidates = [r for r in range(rank, m) if not field.is_zero(work[r][col])]
        if not candidates:
            continue
        if field.spec.exact:
            pivot = candidates[0]
        else:
            pivot = max(candidates, key=lambda r: abs(work[r][col]))
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(rank + 1, m):
            if not field.is_zero(work[r][col]):
                field.eliminate(work[r], work[rank], col)
        rank += 1
    return rank


def dense_invertible(s: AnyStencil, n: int, field: Optional[Field] = None) -> bool:
    """M_n invertible iff its rank is n"""
    field = field or field_for(s.field)
    return matrix_rank(field, dense_matrix(s, n).entries) == n


def dense_sequence(s: AnyStencil, n: int, field: Optional[Field] = None) -> InvertibilitySequence:
    """Invertibility of M_1..M_n by dense elimination on the stencil as given (O(n^4))"""
    if n < 1:
        raise SequenceLengthError(n)
    field = field or field_for(s.field)
    return InvertibilitySequence.from_bits(dense_invertible(s, i, field) for i in range(1, n + 1))


def tridiag_recurrence_sequence(s: AnyStencil, n: int, field: Optional[Field] = None) -> InvertibilitySequence:
    """D_i = x_0 D_{i-1} - x_1 x_{-1} D_{i-2}, D_0 = 1, D_{-1} = 0; bit i = (D_i != 0)"""
    if s.k != 1:
        raise BandwidthError(f"the three-term recurrence needs k = 1, got k = {s.k}", k=s.k)
    if n < 1:
        raise SequenceLengthError(n)
    field = field or field_for(s.field)
    coupling = field.mul(s.x(1), s.x(-1))
    before, current = field.zero, field.one
    bits = []
    for _ in range(n):
        before, current = current, field.sub(field.mul(s.x(0), current), field.mul(coupling, before))
        bits.append(not field.is_zero(current))
    return InvertibilitySequence.from_bits(bits)


def _reduce(field: Field, matrix: np.ndarray) -> Matrix:
    return [[field.normalize(value) for value in row] for row in matrix.tolist()]


def theorem1_blocks(s: NormalizedStencil, n: int) -> BlockCheckReport:
    """Multiply M_n by [I_k; v_{k+1}; ...; v_n] and compare the bottom block with Q W_n.

    The top (n-k) x k block must vanish by the defining recurrence; Q is lower
    triangular with Q[a][b] = -x_{k-(a-b)}.
    """
    k = s.k
    if k < 1 or n <= k:
        raise BandwidthError(f"block identity needs k >= 1 and n > k, got k = {k}, n = {n}", k=k, n=n)
    field = field_for(s.field)

    rows = []
    for index, row in recurrence_rows(s, field):
        rows.append(list(row))
        if index == n + k:
            break
    stacked = np.array(rows[:n], dtype=object)
    window = np.array(rows[n:n + k], dtype=object)

    product = _reduce(field, dense_matrix(s, n).entries.dot(stacked))
    top_block_zero = all(field.is_zero(value) for row in product[:n - k] for value in row)
    p_block = product[n - k:]

    q = np.full((k, k), field.zero, dtype=object)
    for a in range(k):
        for b in range(a + 1):
            q[a, b] = field.neg(s.x(k - (a - b)))
    q_times_w = _reduce(field, q.dot(window))

    match = all(
        field.is_zero(field.sub(p, w))
        for p_row, w_row in zip(p_block, q_times_w)
        for p, w in zip(p_row, w_row)
    )
    if not (top_block_zero and match):
        logger.warning("block identity failed", extra={'k': k, 'n': n, 'field': str(s.field)})
    return BlockCheckReport(top_block_zero=top_block_zero, p_block=p_block, q_times_w=q_times_w, match=match)
