"""
Band stencils: parsing, reversal and normalization.

A stencil holds the 2k+1 coefficients x_{-k}, ..., x_0, ..., x_k of every
banded Toeplitz matrix M_1, M_2, ... in the family; M_n[r][c] = x_{c-r}.
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Tuple, Union

import numpy as np

from core.exceptions import StencilParseError
from core.field import Field, FieldElement, FieldSpec, field_for


@dataclass(frozen=True)
class Stencil:
    field: FieldSpec
    coeffs: Tuple[Any, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) % 2 != 1:
            raise StencilParseError("stencil length must be odd")
        arithmetic = field_for(self.field)
        object.__setattr__(self, 'coeffs', tuple(arithmetic.normalize(c) for c in self.coeffs))

    @property
    def k(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def x(self, j: int) -> Any:
        """Raw coefficient x_j for -k <= j <= k (zero outside the band)"""
        if abs(j) > self.k:
            return field_for(self.field).zero
        return self.coeffs[j + self.k]

    def elements(self) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coeffs)

    def arithmetic(self) -> Field:
        return field_for(self.field)

    def __str__(self) -> str:
        arithmetic = self.arithmetic()
        return ",".join(arithmetic.format(c) for c in self.coeffs)


@dataclass(frozen=True)
class NormalizedStencil:
    """Stencil with minimal k and a nonzero top band edge x_k (or k = 0)"""
    inner: Stencil
    reversed: bool = False

    @property
    def k(self) -> int:
        return self.inner.k

    @property
    def field(self) -> FieldSpec:
        return self.inner.field

    @property
    def coeffs(self) -> Tuple[Any, ...]:
        return self.inner.coeffs

    def x(self, j: int) -> Any:
        return self.inner.x(j)


def parse(text: str, field: FieldSpec) -> Stencil:
    """Parse ``x_{-k},...,x_k``; rationals as ``p/q`` or ``p``, GF(p) values as integers"""
    tokens = [token.strip() for token in text.strip().split(',')]
    if not tokens or any(token == '' for token in tokens):
        raise StencilParseError(f"empty coefficient in stencil {text!r}")
    if len(tokens) % 2 != 1:
        raise StencilParseError("stencil length must be odd", token=text)
    arithmetic = field_for(field)
    return Stencil(field, tuple(arithmetic.parse_token(token) for token in tokens))


def load_stencil_file(path: str, field: FieldSpec) -> Stencil:
    """Read a stencil file: one coefficient line, ``#`` comment lines ignored"""
    try:
        lines = Path(path).read_text(encoding='utf-8').splitlines()
    except (OSError, UnicodeDecodeError) as e:
        raise StencilParseError(f"cannot read stencil file: {e}", source=path)

    data = [line.strip() for line in lines if line.strip() and not line.lstrip().startswith('#')]
    if len(data) != 1:
        raise StencilParseError(f"stencil file must contain exactly one coefficient line, found {len(data)}",
                                source=path)
    return parse(data[0], field)


def read_stencil_argument(argument: str, field: FieldSpec) -> Stencil:
    """``@path`` reads a stencil file, anything else is parsed inline"""
    if argument.startswith('@'):
        return load_stencil_file(argument[1:], field)
    return parse(argument, field)


def reverse(s: Stencil) -> Stencil:
    """x_j -> x_{-j}; the stencil of the transposed matrices"""
    return Stencil(s.field, tuple(reversed(s.coeffs)))


def normalize(s: Union[Stencil, NormalizedStencil]) -> NormalizedStencil:
    """Trim zero band edges and flip so that x_k != 0.

    Transposition preserves invertibility, so reversing the stencil when only
    the lower edge survives leaves the invertibility sequence unchanged.
    Interior zeros are kept.
    """
    if isinstance(s, NormalizedStencil):
        s = s.inner
    arithmetic = s.arithmetic()
    k = s.k
    upper = max((j for j in range(1, k + 1) if not arithmetic.is_zero(s.x(j))), default=0)
    lower = max((j for j in range(1, k + 1) if not arithmetic.is_zero(s.x(-j))), default=0)
    k_eff = max(upper, lower)

    trimmed = Stencil(s.field, s.coeffs[k - k_eff:k + k_eff + 1])
    if k_eff >= 1 and arithmetic.is_zero(trimmed.x(k_eff)):
        return NormalizedStencil(reverse(trimmed), reversed=True)
    return NormalizedStencil(trimmed, reversed=False)


def scale(s: Stencil, factor: Any) -> Stencil:
    """Multiply every coefficient by ``factor`` (uncounted)"""
    arithmetic = s.arithmetic()
    factor = arithmetic.normalize(factor)
    return Stencil(s.field, tuple(arithmetic.mul(c, factor) for c in s.coeffs))


def random_stencil(field: FieldSpec, k: int, rng: np.random.Generator, *, full_band: bool = False) -> Stencil:
    """Seeded random stencil; ``full_band`` forces both band edges nonzero"""
    arithmetic = field_for(field)
    coeffs = [arithmetic.random_element(rng) for _ in range(2 * k + 1)]
    if full_band and k >= 1:
        coeffs[0] = arithmetic.random_element(rng, nonzero=True)
        coeffs[-1] = arithmetic.random_element(rng, nonzero=True)
    return Stencil(field, tuple(coeffs))
