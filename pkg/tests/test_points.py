"""Tests for solving zero dimensional systems over GF(p)."""

import itertools

import pytest

from fanoverify.exceptions import ExtensionTooLarge, FanoVerifyException
from fanoverify.ideals import Ideal, Status
from fanoverify.points import (
    geometric_count,
    radical,
    solve_zero_dimensional,
)
from fanoverify.poly import CoordinateRing


def brute_force(ring, equations, p):
    """Rational zeros by enumeration, the oracle for the solver."""
    found = []
    for values in itertools.product(range(p), repeat=len(ring.names)):
        point = dict(zip(ring.names, values))
        if all(ring.evaluate(f, point) % p == 0 for f in equations):
            found.append(point)
    return found


class TestSolve:
    def test_matches_enumeration(self, seed):
        p = 11
        ring = CoordinateRing(["x", "y"], [1, 1], p)
        equations = [ring.parse("x^2 + y^2 - 2"), ring.parse("x - y^3")]
        points = solve_zero_dimensional(Ideal(equations, ring), seed=seed)
        rational = sorted(
            tuple(pt.coordinates[n] for n in ring.names) for pt in points if pt.degree == 1
        )
        expected = sorted(tuple(pt[n] for n in ring.names) for pt in brute_force(ring, equations, p))
        assert rational == expected
        for pt in points:
            for f in equations:
                assert pt.field.is_zero(ring.evaluate(f, pt.coordinates, pt.field))

    def test_conjugate_points_form_one_orbit(self, seed):
        # x^2 = 3 has no root mod 7, so the two points are conjugate.
        ring = CoordinateRing(["x", "y"], [1, 1], 7)
        I = Ideal([ring.parse("x^2 - 3"), ring.parse("y - 1")], ring)
        points = solve_zero_dimensional(I, seed=seed)
        assert len(points) == 1
        assert points[0].degree == 2
        assert geometric_count(points) == 2

    def test_extension_too_large(self):
        ring = CoordinateRing(["x"], [1], 2)
        # x^5 + x^2 + 1 is irreducible over GF(2).
        I = Ideal([ring.parse("x^5 + x^2 + 1")], ring)
        with pytest.raises(ExtensionTooLarge):
            solve_zero_dimensional(I, max_extension_degree=4)

    def test_unit_ideal_has_no_points(self):
        ring = CoordinateRing(["x"], [1], 7)
        assert solve_zero_dimensional(Ideal([ring.one()], ring)) == []

    def test_needs_a_prime_field(self):
        ring = CoordinateRing(["x"], [1], 0)
        with pytest.raises(FanoVerifyException):
            solve_zero_dimensional(Ideal([ring.parse("x")], ring))

    def test_positive_dimensional(self):
        ring = CoordinateRing(["x", "y"], [1, 1], 7)
        with pytest.raises(FanoVerifyException):
            solve_zero_dimensional(Ideal([ring.parse("x*y")], ring))


class TestRadical:
    def test_double_point(self):
        ring = CoordinateRing(["x", "y"], [1, 1], 13)
        I = Ideal([ring.parse("x^2"), ring.parse("y")], ring)
        R = radical(I)
        assert R.contains(ring.gen("x")) == Status.TRUE
        points = solve_zero_dimensional(I)
        assert len(points) == 1
        assert points[0].coordinates == {"x": 0, "y": 0}
