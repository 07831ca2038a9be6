"""
Field arithmetic
Prime fields GF(p), exact rationals and tolerance floats behind one interface,
with every multiplication, division and addition charged to an OpCounter.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from operator import mul as _mul
from typing import Any, List, Optional, Sequence

import numpy as np

from core.exceptions import (
    FieldMismatchError, FieldSpecError, FieldZeroDivisionError, StencilParseError
)
from core.monitoring import OpCounter, active_counter

PRIME_LIMIT = 2 ** 31

# Witnesses making Miller-Rabin deterministic below 3,215,031,751 (> 2^31)
_MR_WITNESSES = (2, 3, 5, 7)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2^31"""
    if n < 2:
        return False
    for small in _MR_WITNESSES:
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class FieldKind(Enum):
    PRIME = "gf"
    RATIONAL = "rational"
    APPROX = "approx"


@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of a field; safe to share between threads"""
    kind: FieldKind
    p: Optional[int] = None
    tol: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind is FieldKind.PRIME:
            if self.p is None or not 2 <= self.p < PRIME_LIMIT:
                raise FieldSpecError(f"prime modulus must satisfy 2 <= p < 2^31, got {self.p}", str(self.p))
            if not is_prime(self.p):
                raise FieldSpecError(f"{self.p} is not prime", str(self.p))
        elif self.kind is FieldKind.APPROX:
            if self.tol is None or not self.tol > 0:
                raise FieldSpecError(f"approx tolerance must be positive, got {self.tol}", str(self.tol))

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(FieldKind.PRIME, p=p)

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls(FieldKind.RATIONAL)

    @classmethod
    def approx(cls, tol: float) -> "FieldSpec":
        return cls(FieldKind.APPROX, tol=tol)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``gf:<p>``, ``rational`` or ``approx:<tol>``"""
        raw = text.strip().lower()
        name, _, arg = raw.partition(':')
        if name == FieldKind.RATIONAL.value and not arg:
            return cls.rational()
        if name == FieldKind.PRIME.value and arg:
            try:
                return cls.prime(int(arg))
            except ValueError:
                raise FieldSpecError(f"invalid prime modulus in field spec {text!r}", text)
        if name == FieldKind.APPROX.value and arg:
            try:
                return cls.approx(float(arg))
            except ValueError:
                raise FieldSpecError(f"invalid tolerance in field spec {text!r}", text)
        raise FieldSpecError(f"unknown field spec {text!r}; expected gf:<p>, rational or approx:<tol>", text)

    @property
    def exact(self) -> bool:
        return self.kind is not FieldKind.APPROX

    def __str__(self) -> str:
        if self.kind is FieldKind.PRIME:
            return f"gf:{self.p}"
        if self.kind is FieldKind.APPROX:
            return f"approx:{self.tol:g}"
        return "rational"


class Field(ABC):
    """Arithmetic context for one field, optionally bound to an OpCounter.

    Values handled here are raw canonical representations: ``int`` residues
    for GF(p), ``Fraction`` for rationals, ``float`` for approx. The row
    kernels (``recur``, ``eliminate``) tally in bulk exactly what the
    element-wise operations would.
    """

    def __init__(self, spec: FieldSpec, counter: Optional[OpCounter] = None):
        self.spec = spec
        self.counter = counter

    def _tally(self, muls: int = 0, divs: int = 0, adds: int = 0) -> None:
        if self.counter is not None:
            self.counter.tally(muls=muls, divs=divs, adds=adds)

    # -- representation ---------------------------------------------------

    @property
    @abstractmethod
    def zero(self) -> Any:
        ...

    @property
    @abstractmethod
    def one(self) -> Any:
        ...

    @abstractmethod
    def normalize(self, value: Any) -> Any:
        """Canonical representation of ``value``; identity on canonical input"""

    @abstractmethod
    def parse_token(self, token: str) -> Any:
        ...

    @abstractmethod
    def is_zero(self, a: Any) -> bool:
        ...

    @abstractmethod
    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> Any:
        ...

    def format(self, a: Any) -> str:
        return str(a)

    # -- counted element operations ---------------------------------------

    @abstractmethod
    def _add(self, a: Any, b: Any) -> Any:
        ...

    @abstractmethod
    def _mul(self, a: Any, b: Any) -> Any:
        ...

    @abstractmethod
    def _neg(self, a: Any) -> Any:
        ...

    @abstractmethod
    def _invert(self, a: Any) -> Any:
        ...

    def add(self, a: Any, b: Any) -> Any:
        self._tally(adds=1)
        return self._add(a, b)

    def sub(self, a: Any, b: Any) -> Any:
        self._tally(adds=1)
        return self._add(a, self._neg(b))

    def neg(self, a: Any) -> Any:
        self._tally(adds=1)
        return self._neg(a)

    def mul(self, a: Any, b: Any) -> Any:
        self._tally(muls=1)
        return self._mul(a, b)

    def invert(self, a: Any) -> Any:
        if self.is_zero(a):
            raise FieldZeroDivisionError(str(self.spec), a)
        self._tally(divs=1)
        return self._invert(a)

    def div(self, a: Any, b: Any) -> Any:
        if self.is_zero(b):
            raise FieldZeroDivisionError(str(self.spec), b)
        self._tally(divs=1)
        return self._mul(a, self._invert(b))

    # -- row kernels --------------------------------------------------------

    def leading_index(self, row: Sequence[Any], start: int = 0) -> Optional[int]:
        """Column of the first nonzero entry at or after ``start``"""
        for j in range(start, len(row)):
            if not self.is_zero(row[j]):
                return j
        return None

    def recur(self, lower: Sequence[Any], window: Sequence[Sequence[Any]], scale: Any) -> List[Any]:
        """One recurrence row: ``scale * sum_t lower[t] * window[t]`` column-wise.

        ``scale`` is a precomputed ``-1/x_k``; each entry is charged as
        len(lower) multiplications plus one division.
        """
        width = len(window[0])
        terms = len(lower)
        row = [self.normalize(sum(map(_mul, lower, column)) * scale) for column in zip(*window)]
        self._tally(muls=terms * width, divs=width, adds=(terms - 1) * width)
        return row

    def eliminate(self, target: List[Any], source: Sequence[Any], col: int) -> None:
        """Clear ``target[col]`` using ``source`` (whose entry at ``col`` is nonzero).

        Only columns right of ``col`` are touched; entries left of ``col`` are
        zero in both rows when called from echelon routines.
        """
        factor = self._mul(target[col], self._invert(source[col]))
        width = len(target)
        for j in range(col + 1, width):
            target[j] = self.normalize(target[j] - factor * source[j])
        target[col] = self.zero
        span = width - col - 1
        self._tally(muls=span, divs=1, adds=span)

    def element(self, value: Any) -> "FieldElement":
        return FieldElement(self.spec, value)


class PrimeField(Field):
    """GF(p), elements are residues in [0, p)"""

    def __init__(self, spec: FieldSpec, counter: Optional[OpCounter] = None):
        super().__init__(spec, counter)
        self.p: int = spec.p  # type: ignore[assignment]

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.p

    def normalize(self, value: Any) -> int:
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FieldZeroDivisionError(str(self.spec), value.denominator)
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        if isinstance(value, (float, np.floating)):
            raise FieldMismatchError("float", str(self.spec))
        return int(value) % self.p

    def parse_token(self, token: str) -> int:
        try:
            return int(token) % self.p
        except ValueError:
            raise StencilParseError(f"cannot parse {token!r} as an integer", token=token)

    def is_zero(self, a: int) -> bool:
        return a == 0

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        low = 1 if nonzero else 0
        return int(rng.integers(low, self.p))

    def _add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def _mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def _neg(self, a: int) -> int:
        return -a % self.p

    def _invert(self, a: int) -> int:
        return pow(a, -1, self.p)

    def recur(self, lower: Sequence[int], window: Sequence[Sequence[int]], scale: int) -> List[int]:
        p = self.p
        width = len(window[0])
        terms = len(lower)
        row = [sum(map(_mul, lower, column)) * scale % p for column in zip(*window)]
        if self.counter is not None:
            self.counter.tally(muls=terms * width, divs=width, adds=(terms - 1) * width)
        return row

    def eliminate(self, target: List[int], source: Sequence[int], col: int) -> None:
        p = self.p
        factor = target[col] * pow(source[col], -1, p) % p
        width = len(target)
        for j in range(col + 1, width):
            target[j] = (target[j] - factor * source[j]) % p
        target[col] = 0
        if self.counter is not None:
            span = width - col - 1
            self.counter.tally(muls=span, divs=1, adds=span)


class RationalField(Field):
    """Exact rationals; Fraction keeps numerator/denominator reduced with unbounded ints"""

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def normalize(self, value: Any) -> Fraction:
        if isinstance(value, float):
            raise FieldMismatchError("float", str(self.spec))
        return Fraction(value)

    def parse_token(self, token: str) -> Fraction:
        numerator, slash, denominator = token.partition('/')
        try:
            if slash:
                q = int(denominator)
                if q == 0:
                    raise StencilParseError(f"zero denominator in {token!r}", token=token)
                return Fraction(int(numerator), q)
            return Fraction(int(numerator))
        except ValueError:
            raise StencilParseError(f"cannot parse {token!r} as p/q or p", token=token)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def random_element(self, rng: np.random.Generator, nonzero: bool = False, bound: int = 5) -> Fraction:
        while True:
            value = Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, bound + 1)))
            if not (nonzero and value == 0):
                return value

    def _add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def _mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def _neg(self, a: Fraction) -> Fraction:
        return -a

    def _invert(self, a: Fraction) -> Fraction:
        return 1 / a


class ApproxField(Field):
    """Machine floats; anything within ``tol`` of zero counts as zero (best effort)"""

    def __init__(self, spec: FieldSpec, counter: Optional[OpCounter] = None):
        super().__init__(spec, counter)
        self.tol: float = spec.tol  # type: ignore[assignment]

    @property
    def zero(self) -> float:
        return 0.0

    @property
    def one(self) -> float:
        return 1.0

    def normalize(self, value: Any) -> float:
        return float(value)

    def parse_token(self, token: str) -> float:
        try:
            if '/' in token:
                return float(RationalField(FieldSpec.rational()).parse_token(token))
            return float(token)
        except ValueError:
            raise StencilParseError(f"cannot parse {token!r} as a real number", token=token)

    def is_zero(self, a: float) -> bool:
        return abs(a) <= self.tol

    def random_element(self, rng: np.random.Generator, nonzero: bool = False) -> float:
        while True:
            value = float(rng.uniform(-1.0, 1.0))
            if not (nonzero and self.is_zero(value)):
                return value

    def format(self, a: float) -> str:
        return f"{a:g}"

    def _add(self, a: float, b: float) -> float:
        return a + b

    def _mul(self, a: float, b: float) -> float:
        return a * b

    def _neg(self, a: float) -> float:
        return -a

    def _invert(self, a: float) -> float:
        return 1.0 / a

    def eliminate(self, target: List[float], source: Sequence[float], col: int) -> None:
        super().eliminate(target, source, col)
        target[col] = 0.0


_FIELD_CLASSES = {
    FieldKind.PRIME: PrimeField,
    FieldKind.RATIONAL: RationalField,
    FieldKind.APPROX: ApproxField,
}


def field_for(spec: FieldSpec, counter: Optional[OpCounter] = None) -> Field:
    """Arithmetic context for ``spec`` charging ``counter`` (uncounted if None)"""
    if counter is None:
        return _uncounted_field(spec)
    return _FIELD_CLASSES[spec.kind](spec, counter)


@lru_cache(maxsize=None)
def _uncounted_field(spec: FieldSpec) -> Field:
    return _FIELD_CLASSES[spec.kind](spec, None)


# ---------------------------------------------------------------------------
# Element-level API, charged to the active counter (see core.monitoring.counting)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldElement:
    """A value together with its field; always stored in canonical form"""
    field: FieldSpec
    value: Any

    def __post_init__(self) -> None:
        object.__setattr__(self, 'value', _uncounted_field(self.field).normalize(self.value))

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return sub(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return mul(self, invert(other))

    def __neg__(self) -> "FieldElement":
        return neg(self)

    def __str__(self) -> str:
        return _uncounted_field(self.field).format(self.value)


def element(spec: FieldSpec, value: Any) -> FieldElement:
    return FieldElement(spec, value)


def _context(a: FieldElement, b: Optional[FieldElement] = None) -> Field:
    if b is not None and a.field != b.field:
        raise FieldMismatchError(str(a.field), str(b.field))
    return field_for(a.field, active_counter())


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(a.field, _context(a, b).add(a.value, b.value))


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(a.field, _context(a, b).sub(a.value, b.value))


def neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, _context(a).neg(a.value))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return FieldElement(a.field, _context(a, b).mul(a.value, b.value))


def invert(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, _context(a).invert(a.value))


def is_zero(a: FieldElement) -> bool:
    return _uncounted_field(a.field).is_zero(a.value)
