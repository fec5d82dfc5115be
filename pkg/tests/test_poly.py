"""Tests for weighted coordinate rings."""

import fractions
import random

import pytest

from fanoverify.exceptions import FanoVerifyException, ParseError
from fanoverify.fields import make_field
from fanoverify.poly import CoordinateRing, parameter_values
from fanoverify.wps import WeightedSpace


@pytest.fixture
def ring():
    return CoordinateRing(["x", "y", "z"], [1, 2, 3])


class TestParsing:
    def test_format_parses_back(self, ring):
        f = ring.parse("3*x^3 - y*x + 2*z - 1/2*x*y")
        assert ring.parse(ring.format(f)) == f

    def test_parameters(self, ring):
        f = ring.parse("a*x^2 + y", {"a": 5})
        assert f == 5 * ring.gen("x") ** 2 + ring.gen("y")

    def test_unknown_name(self, ring):
        with pytest.raises(ParseError):
            ring.parse("x + w")

    def test_format_in_positive_characteristic_uses_small_representatives(self):
        ring = CoordinateRing(["x", "y"], [1, 1], 7)
        assert ring.format(ring.parse("x - y")) == "x - y"

    def test_fraction_with_denominator_divisible_by_p(self):
        ring = CoordinateRing(["x"], [1], 3)
        with pytest.raises(FanoVerifyException):
            ring.parse("x/3")


class TestWeights:
    def test_quasi_homogeneous(self, ring):
        h = ring.weighted_degree(ring.parse("x^6 + y^3 + z^2 + x*y*z"))
        assert h.is_homogeneous()
        assert h.degree == 6

    def test_offending_terms(self, ring):
        h = ring.weighted_degree(ring.parse("x^2 + z"))
        assert not h.is_homogeneous()
        assert sorted(h.offending) == [2, 3]

    def test_zero_polynomial(self, ring):
        h = ring.weighted_degree(ring.zero())
        assert h.is_homogeneous()
        assert h.degree is None

    def test_duplicate_names(self):
        with pytest.raises(FanoVerifyException):
            CoordinateRing(["x", "x"], [1, 1])


class TestSubstitution:
    def test_simultaneous(self):
        ring = CoordinateRing(["x", "y"], [1, 1])
        f = ring.parse("x^2 - y")
        swapped = ring.substitute(f, {"x": ring.gen("y"), "y": ring.gen("x")})
        assert swapped == ring.parse("y^2 - x")

    def test_into_smaller_ring(self, ring):
        target = ring.without(["y"])
        f = ring.parse("y*x + z")
        g = ring.substitute(f, {"y": target.parse("2*x^2")}, target)
        assert g == target.parse("2*x^3 + z")

    def test_missing_image(self, ring):
        target = ring.without(["y"])
        with pytest.raises(FanoVerifyException):
            ring.convert(ring.parse("y"), target)

    def test_reduction_mod_p(self, ring):
        target = ring.with_characteristic(5)
        assert target.format(ring.convert(ring.parse("7*x"), target)) == "2*x"


class TestEvaluation:
    def test_over_extension(self):
        ring = CoordinateRing(["x", "y"], [1, 1], 3)
        F = make_field(3, 2)
        z = F.generator()
        value = ring.evaluate(ring.parse("x*y - 1"), {"x": z, "y": F.inv(z)}, F)
        assert F.is_zero(value)

    def test_characteristic_mismatch(self):
        ring = CoordinateRing(["x"], [1], 5)
        with pytest.raises(FanoVerifyException):
            ring.evaluate(ring.gen("x"), {"x": 1}, make_field(7))

    def test_linear_part(self):
        ring = CoordinateRing(["x", "y", "u"], [1, 1, 1], 11)
        f = ring.parse("3*x + u*y + y^2 - 2*u")
        assert ring.linear_part(f) == ring.parse("3*x - 2*u")


class TestParameterValues:
    def test_deterministic_and_nonzero(self, seed):
        values = parameter_values(["a", "b", "c"], seed, 101)
        assert values == parameter_values(["a", "b", "c"], seed, 101)
        assert all(0 < v < 101 for v in values.values())

    def test_value_depends_only_on_name(self, seed):
        assert (
            parameter_values(["a", "b"], seed, 101)["a"]
            == parameter_values(["a"], seed, 101)["a"]
        )

    def test_rational_values(self):
        values = parameter_values(["a"], 1, 0)
        assert values["a"] != 0
        assert isinstance(values["a"], int)


def random_polynomial(rng, ring, terms=4, degree=3):
    exponents = {}
    for _ in range(rng.randrange(terms + 1)):
        monom = tuple(rng.randrange(degree + 1) for _ in ring.names)
        exponents[monom] = rng.randrange(-6, 7)
    return ring.from_terms(exponents)


def random_point(rng, ring):
    return {name: rng.randrange(ring.characteristic) for name in ring.names}


class TestArithmetic:
    CASES = 350

    @pytest.fixture
    def ring(self):
        return CoordinateRing(["x", "y", "z"], [1, 2, 3], 13)

    def test_ring_axioms(self, ring, seed):
        rng = random.Random(seed)
        for _ in range(self.CASES):
            f, g, h = (random_polynomial(rng, ring) for _ in range(3))
            assert f + g == g + f
            assert f * g == g * f
            assert (f + g) + h == f + (g + h)
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert f - f == ring.zero()
            assert f * ring.one() == f

    def test_evaluation_is_a_homomorphism(self, ring, seed):
        rng = random.Random(seed)
        field = ring.field()
        for _ in range(self.CASES):
            f, g = random_polynomial(rng, ring), random_polynomial(rng, ring)
            point = random_point(rng, ring)
            a, b = ring.evaluate(f, point), ring.evaluate(g, point)
            assert ring.evaluate(f + g, point) == field.add(a, b)
            assert ring.evaluate(f * g, point) == field.mul(a, b)

    def test_format_parse_round_trip(self, ring, seed):
        rng = random.Random(seed)
        for _ in range(self.CASES):
            f = random_polynomial(rng, ring)
            assert ring.parse(ring.format(f)) == f

    def test_rational_format_parse_round_trip(self, seed):
        ring = CoordinateRing(["x", "y"], [1, 1])
        rng = random.Random(seed)
        for _ in range(100):
            terms = {
                (rng.randrange(3), rng.randrange(3)): fractions.Fraction(
                    rng.randrange(-9, 10), rng.randrange(1, 5)
                )
                for _ in range(3)
            }
            f = ring.from_terms(terms)
            assert ring.parse(ring.format(f)) == f

    def test_weighted_scaling(self, ring, seed):
        # f(l^w1 x, l^w2 y, l^w3 z) = l^d f(x, y, z) for f of weighted degree d.
        rng = random.Random(seed)
        field = ring.field()
        space = WeightedSpace(ring.names, ring.weights)
        for _ in range(100):
            d = rng.randrange(1, 10)
            f = ring.from_terms(
                {m: rng.randrange(1, 13) for m in space.monomials_of_weight(d)}
            )
            assert ring.weighted_degree(f).degree == d
            point = random_point(rng, ring)
            lam = rng.randrange(1, 13)
            scaled = {
                n: field.mul(field.pow(lam, ring.weight(n)), v) for n, v in point.items()
            }
            assert ring.evaluate(f, scaled) == field.mul(
                field.pow(lam, d), ring.evaluate(f, point)
            )

    def test_leibniz_rule(self, ring, seed):
        rng = random.Random(seed)
        for _ in range(self.CASES):
            f, g = random_polynomial(rng, ring), random_polynomial(rng, ring)
            for name in ring.names:
                d = ring.partial_derivative
                assert d(f * g, name) == d(f, name) * g + f * d(g, name)
