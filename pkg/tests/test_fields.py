"""Tests for the coefficient fields."""

import fractions
import random

import pytest

from fanoverify.exceptions import FanoVerifyException
from fanoverify.fields import (
    ExtensionField,
    PrimeField,
    RationalField,
    embedding,
    find_irreducible,
    make_field,
    roots,
)


class TestPrimeField:
    def test_arithmetic(self):
        F = PrimeField(7)
        assert F.add(5, 4) == 2
        assert F.sub(2, 5) == 4
        assert F.mul(3, 5) == 1
        assert F.inv(3) == 5
        assert F.pow(3, 6) == 1

    def test_fractions_map_into_the_field(self):
        F = PrimeField(7)
        assert F(fractions.Fraction(1, 2)) == 4
        assert F(-1) == 6

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            PrimeField(7).inv(0)

    def test_random_nonzero_element(self, seed):
        F = PrimeField(11)
        rng = random.Random(seed)
        values = [F.random_element(rng, nonzero=True) for _ in range(50)]
        assert all(0 < v < 11 for v in values)


class TestExtensionField:
    def test_every_nonzero_element_is_invertible(self):
        F = ExtensionField(3, find_irreducible(3, 2))
        assert F.degree == 2
        elements = list(F.elements())
        assert len(elements) == 9
        for a in elements:
            if F.is_zero(a):
                continue
            assert F.mul(a, F.inv(a)) == F.one()

    def test_frobenius_fixes_the_prime_field(self):
        F = make_field(5, 3)
        for c in range(5):
            a = F(c)
            assert F.frobenius(a) == a

    def test_reducible_modulus(self):
        # z^2 - 1 = (z - 1)(z + 1)
        with pytest.raises(FanoVerifyException):
            ExtensionField(5, [1, 0, -1])

    def test_find_irreducible_is_deterministic(self, seed):
        assert find_irreducible(7, 3, seed) == find_irreducible(7, 3, seed)


class TestMakeField:
    def test_kinds(self):
        assert isinstance(make_field(0), RationalField)
        assert isinstance(make_field(13), PrimeField)
        assert make_field(13, 2).degree == 2
        assert make_field(13, 2).characteristic == 13


class TestRoots:
    def test_prime_field(self):
        # 3^2 = 4^2 = 2 mod 7
        assert roots(PrimeField(7), [1, 0, 5]) == [3, 4]

    def test_no_roots(self):
        assert roots(PrimeField(7), [1, 0, 4]) == []

    def test_cube_roots_of_unity(self):
        F = make_field(5, 2)
        found = roots(F, [F.one(), F.zero(), F.zero(), F.neg(F.one())])
        assert len(found) == 3
        assert all(F.pow(r, 3) == F.one() for r in found)

    def test_characteristic_two(self):
        F = make_field(2, 2)
        found = roots(F, [F.one(), F.zero(), F.zero(), F.one()])
        assert len(found) == 3
        assert F.zero() not in found

    def test_repeated_roots_counted_once(self):
        # (l - 2)^2 (l - 3) over GF(11)
        assert roots(PrimeField(11), [1, 4, 5, 10]) == [2, 3]

    def test_rationals_rejected(self):
        with pytest.raises(FanoVerifyException):
            roots(RationalField(), [1, 0, -1])


class TestEmbedding:
    def test_homomorphism(self, seed):
        small, large = make_field(7, 2), make_field(7, 4)
        embed = embedding(small, large)
        rng = random.Random(seed)
        for _ in range(20):
            a, b = small.random_element(rng), small.random_element(rng)
            assert embed(small.add(a, b)) == large.add(embed(a), embed(b))
            assert embed(small.mul(a, b)) == large.mul(embed(a), embed(b))

    def test_prime_field(self):
        assert embedding(PrimeField(7), make_field(7, 3))(3) == (3,)

    def test_degree_must_divide(self):
        with pytest.raises(FanoVerifyException):
            embedding(make_field(7, 2), make_field(7, 3))
