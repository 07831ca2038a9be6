"""
Tests for field arithmetic and op counting at element level
"""
from fractions import Fraction

import numpy as np
import pytest

from core.exceptions import FieldMismatchError, FieldSpecError, FieldZeroDivisionError, StencilParseError
from core.field import (
    FieldKind, FieldSpec, add, element, field_for, invert, is_prime, is_zero, mul, neg, sub
)
from core.monitoring import PHASE_GENERATE, OpCounter, counting


class TestFieldSpec:

    @pytest.mark.parametrize("text,kind", [
        ("gf:2", FieldKind.PRIME),
        ("GF:2147483647", FieldKind.PRIME),
        ("rational", FieldKind.RATIONAL),
        ("approx:1e-9", FieldKind.APPROX),
    ])
    def test_parse(self, text, kind):
        assert FieldSpec.parse(text).kind is kind

    def test_round_trip_text(self):
        for text in ("gf:7", "rational", "approx:1e-09"):
            assert str(FieldSpec.parse(text)) == text

    @pytest.mark.parametrize("text", ["gf:4", "gf:1", "gf:x", "gf:2147483648", "approx:0", "approx:-1", "real", ""])
    def test_invalid(self, text):
        with pytest.raises(FieldSpecError):
            FieldSpec.parse(text)

    def test_exact(self):
        assert FieldSpec.prime(3).exact
        assert FieldSpec.rational().exact
        assert not FieldSpec.approx(1e-9).exact

    def test_is_prime(self):
        primes = [p for p in range(60) if is_prime(p)]
        assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        assert is_prime(2147483647)
        assert not is_prime(2147483645)


class TestElementArithmetic:

    def test_gf7_inverse(self):
        gf7 = FieldSpec.prime(7)
        assert invert(element(gf7, 3)).value == 5

    def test_gf5_product(self):
        gf5 = FieldSpec.prime(5)
        assert mul(element(gf5, 2), element(gf5, 3)).value == 1

    def test_rational_product(self):
        q = FieldSpec.rational()
        assert mul(element(q, Fraction(2, 3)), element(q, Fraction(3, 4))).value == Fraction(1, 2)

    def test_operators(self):
        gf7 = FieldSpec.prime(7)
        a, b = element(gf7, 3), element(gf7, 5)
        assert (a + b).value == 1
        assert (a - b).value == 5
        assert (-a).value == 4
        assert (a / b).value == 2
        assert str(a * b) == "1"

    def test_canonical_form(self):
        assert element(FieldSpec.prime(7), -1).value == 6
        assert element(FieldSpec.prime(7), Fraction(1, 2)).value == 4

    def test_zero_has_no_inverse(self):
        gf7 = FieldSpec.prime(7)
        with pytest.raises(FieldZeroDivisionError):
            invert(element(gf7, 0))
        with pytest.raises(ZeroDivisionError):
            invert(element(FieldSpec.rational(), 0))

    def test_approx_tolerance(self):
        approx = FieldSpec.approx(1e-9)
        assert is_zero(element(approx, 1e-12))
        assert not is_zero(element(approx, 1e-6))
        with pytest.raises(FieldZeroDivisionError):
            invert(element(approx, 1e-12))

    def test_mismatch(self):
        with pytest.raises(FieldMismatchError):
            add(element(FieldSpec.prime(7), 1), element(FieldSpec.prime(5), 1))

    def test_rational_rejects_float(self):
        with pytest.raises(FieldMismatchError):
            element(FieldSpec.rational(), 0.5)


class TestCounting:

    def test_active_counter_charged(self):
        gf7 = FieldSpec.prime(7)
        a, b = element(gf7, 3), element(gf7, 4)
        with counting() as counter:
            mul(a, b)
            add(a, b)
            sub(a, b)
            neg(a)
            invert(a)
        tally = counter[PHASE_GENERATE]
        assert (tally.muls, tally.divs, tally.adds) == (1, 1, 3)

    def test_no_counter_outside_context(self):
        gf7 = FieldSpec.prime(7)
        counter = OpCounter()
        with counting(counter):
            pass
        mul(element(gf7, 2), element(gf7, 3))
        assert counter.muls == 0

    def test_bound_field_counts(self):
        counter = OpCounter()
        field = field_for(FieldSpec.rational(), counter)
        field.div(Fraction(1), Fraction(3))
        field.sub(Fraction(1), Fraction(3))
        assert (counter.muls, counter.divs, counter.adds) == (0, 1, 1)

    def test_uncounted_field_is_shared(self):
        assert field_for(FieldSpec.prime(7)) is field_for(FieldSpec.prime(7))


AXIOM_FIELD_SPECS = ["gf:2", "gf:3", "gf:5", "gf:7", "rational", "approx:1e-9"]


def _close(field, a, b) -> bool:
    if field.spec.exact:
        return a == b
    return abs(a - b) <= 4 * field.spec.tol


class TestFieldAxioms:

    @pytest.mark.parametrize("spec", AXIOM_FIELD_SPECS)
    def test_random_triples(self, spec):
        field = field_for(FieldSpec.parse(spec))
        rng = np.random.default_rng([31, len(spec)])
        for _ in range(200):
            a, b, c = (field.random_element(rng) for _ in range(3))
            assert _close(field, field.add(field.add(a, b), c), field.add(a, field.add(b, c)))
            assert _close(field, field.mul(field.mul(a, b), c), field.mul(a, field.mul(b, c)))
            assert _close(field, field.add(a, b), field.add(b, a))
            assert _close(field, field.mul(a, b), field.mul(b, a))
            assert _close(field, field.mul(a, field.add(b, c)), field.add(field.mul(a, b), field.mul(a, c)))
            assert _close(field, field.add(a, field.neg(a)), field.zero)
            assert _close(field, field.sub(a, b), field.add(a, field.neg(b)))
            nonzero = field.random_element(rng, nonzero=True)
            assert _close(field, field.mul(nonzero, field.invert(nonzero)), field.one)

    @pytest.mark.parametrize("spec", ["gf:2", "gf:7", "gf:2147483647"])
    def test_prime_canonical_idempotent(self, spec):
        field = field_for(FieldSpec.parse(spec))
        rng = np.random.default_rng(17)
        for _ in range(200):
            raw = int(rng.integers(-10**12, 10**12))
            once = field.normalize(raw)
            assert 0 <= once < field.p
            assert field.normalize(once) == once
            ratio = Fraction(raw, int(rng.integers(1, 10**6)) * 2 + 1)
            if ratio.denominator % field.p:
                assert field.normalize(field.normalize(ratio)) == field.normalize(ratio)

    def test_rational_canonical_idempotent(self):
        field = field_for(FieldSpec.rational())
        rng = np.random.default_rng(19)
        for _ in range(200):
            value = Fraction(int(rng.integers(-10**9, 10**9)), int(rng.integers(1, 10**9)))
            once = field.normalize(value)
            assert field.normalize(once) == once
            assert once.denominator > 0

    def test_approx_canonical_idempotent(self):
        field = field_for(FieldSpec.parse("approx:1e-9"))
        rng = np.random.default_rng(23)
        for _ in range(200):
            once = field.normalize(rng.uniform(-1e6, 1e6))
            assert isinstance(once, float)
            assert field.normalize(once) == once

    def test_prime_rejects_float(self):
        field = field_for(FieldSpec.prime(7))
        with pytest.raises(FieldMismatchError):
            field.normalize(2.5)
        with pytest.raises(FieldMismatchError):
            element(FieldSpec.prime(7), np.float64(3.0))
        assert field.normalize(np.int64(9)) == 2


class TestCountingRepeated:

    OPERATIONS = [
        ("add", 2, "adds"),
        ("sub", 2, "adds"),
        ("neg", 1, "adds"),
        ("mul", 2, "muls"),
        ("invert", 1, "divs"),
        ("div", 2, "divs"),
    ]

    @pytest.mark.parametrize("spec", AXIOM_FIELD_SPECS)
    def test_n_calls_add_n(self, spec):
        rng = np.random.default_rng([41, len(spec)])
        for name, arity, bucket in self.OPERATIONS:
            counter = OpCounter()
            field = field_for(FieldSpec.parse(spec), counter)
            repeats = int(rng.integers(1, 50))
            for _ in range(repeats):
                args = [field.random_element(rng, nonzero=True) for _ in range(arity)]
                getattr(field, name)(*args)
            assert getattr(counter, bucket) == repeats, name
            assert counter.muls + counter.divs + counter.adds == repeats, name

    def test_element_api_counts(self):
        gf5 = FieldSpec.prime(5)
        a = element(gf5, 2)
        with counting() as counter:
            for _ in range(37):
                a = mul(a, element(gf5, 3))
        assert counter.muls == 37


class TestRowKernels:

    @pytest.mark.parametrize("spec", ["gf:7", "rational"])
    def test_eliminate(self, spec):
        counter = OpCounter()
        field = field_for(FieldSpec.parse(spec), counter)
        target = [field.normalize(v) for v in (0, 2, 4, 1)]
        source = [field.normalize(v) for v in (0, 1, 3, 5)]
        field.eliminate(target, source, 1)
        assert field.is_zero(target[1])
        assert target[2] == field.normalize(4 - 2 * 3)
        assert target[3] == field.normalize(1 - 2 * 5)
        assert (counter.muls, counter.divs, counter.adds) == (2, 1, 2)

    def test_recur_counts(self):
        counter = OpCounter()
        field = field_for(FieldSpec.prime(7), counter)
        window = [[1, 0], [0, 1], [2, 3], [4, 5]]
        row = field.recur([1, 2, 3, 4], window, 6)
        assert row == [(1 + 6 + 16) * 6 % 7, (2 + 9 + 20) * 6 % 7]
        assert (counter.muls, counter.divs, counter.adds) == (8, 2, 6)

    def test_generic_recur_matches_prime_kernel(self):
        window = [[1, 0], [0, 1], [2, 3], [4, 5]]
        exact = field_for(FieldSpec.rational()).recur([1, 2, 3, 4], window, Fraction(-1, 2))
        assert exact == [Fraction(-23, 2), Fraction(-31, 2)]

    def test_leading_index(self):
        field = field_for(FieldSpec.prime(3))
        assert field.leading_index([0, 0, 2, 1]) == 2
        assert field.leading_index([0, 0, 2, 1], start=3) == 3
        assert field.leading_index([0, 0, 0]) is None


class TestTokens:

    def test_rational_tokens(self):
        field = field_for(FieldSpec.rational())
        assert field.parse_token("-3/6") == Fraction(-1, 2)
        assert field.parse_token("4") == Fraction(4)
        with pytest.raises(StencilParseError):
            field.parse_token("1/0")
        with pytest.raises(StencilParseError):
            field.parse_token("one")

    def test_prime_tokens(self):
        field = field_for(FieldSpec.prime(5))
        assert field.parse_token("-1") == 4
        assert field.parse_token("12") == 2
        with pytest.raises(StencilParseError):
            field.parse_token("1/2")
