"""
Solve zero dimensional ideals over GF(p) into closed points.

The ideal is first made radical by adding the square-free part of the
minimal polynomial of every coordinate. A random linear form that takes
distinct values on the points then generates the quotient algebra, every
coordinate is a polynomial in it, and factoring the minimal polynomial of
the form over GF(p) splits the points into Galois orbits. An orbit of size
k is returned once, with coordinates in GF(p^k).
"""

import logging
import random

from sympy.polys import galoistools as gt
from sympy.polys.domains import ZZ

from . import linalg
from .exceptions import ExtensionTooLarge, FanoVerifyException
from .fields import ExtensionField, PrimeField
from .ideals import Ideal

DEFAULT_MAX_EXTENSION_DEGREE = 4


class ClosedPoint:
    """
    A Galois orbit of points. `coordinates` maps names to elements of
    `field`; `degree` is the number of geometric points in the orbit.
    """

    def __init__(self, coordinates, field):
        self.coordinates = dict(coordinates)
        self.field = field
        self.degree = field.degree

    def __getitem__(self, name):
        return self.coordinates[name]

    def is_rational(self):
        return self.degree == 1

    def nonzero_coordinates(self):
        return [n for n, v in self.coordinates.items() if not self.field.is_zero(v)]

    def __str__(self):
        values = ", ".join(
            "{}={}".format(n, self.field.format(v)) for n, v in self.coordinates.items()
        )
        if self.degree == 1:
            return "({})".format(values)
        return "({}) over {}".format(values, self.field)

    def object(self):
        return {
            "degree": self.degree,
            "field": str(self.field),
            "coordinates": {n: self.field.format(v) for n, v in self.coordinates.items()},
        }


class _Quotient:
    """
    The finite dimensional algebra R/I with the standard monomial basis.
    """

    def __init__(self, basis):
        self.basis = basis
        self.ring = basis.ring
        self.field = PrimeField(self.ring.characteristic)
        self.monomials = basis.standard_monomials()
        self.position = {m: i for i, m in enumerate(self.monomials)}

    def vector(self, f):
        f = self.basis.normal_form(f)
        v = [0] * len(self.monomials)
        for m, c in f.terms():
            v[self.position[m]] = int(c) % self.field.characteristic
        return v

    def power_vectors(self, g, count):
        vectors = []
        current = self.ring.one()
        for _ in range(count):
            current = self.basis.normal_form(current)
            vectors.append(self.vector(current))
            current = current * g
        return vectors

    def minimal_polynomial(self, g):
        """
        Monic minimal polynomial of `g` in R/I, highest coefficient first.
        """
        vectors = []
        current = self.ring.one()
        for k in range(len(self.monomials) + 1):
            current = self.basis.normal_form(current)
            vectors.append(self.vector(current))
            relation = linalg.find_linear_relation(vectors, self.field)
            if relation is not None:
                return [int(c) for c in reversed(relation)]
            current = current * g
        raise FanoVerifyException("No minimal polynomial found; ideal is not zero dimensional")


def _univariate(ring, name, coefficients):
    x = ring.gen(name)
    result = ring.zero()
    for c in coefficients:
        result = result * x + ring.constant(int(c))
    return result


def radical(ideal, **budget):
    """
    The radical of a zero dimensional ideal over GF(p).
    """
    basis = ideal.groebner(**budget)
    if basis.is_unit():
        return ideal
    quotient = _Quotient(basis)
    p = ideal.ring.characteristic
    extra = []
    for name in ideal.ring.names:
        mu = quotient.minimal_polynomial(ideal.ring.gen(name))
        square_free = gt.gf_sqf_part(ZZ.map(mu), p, ZZ)
        if len(square_free) < len(mu):
            extra.append(_univariate(ideal.ring, name, [int(c) for c in square_free]))
    if not extra:
        return ideal
    return ideal + extra


def solve_zero_dimensional(
    ideal, seed=0, max_extension_degree=DEFAULT_MAX_EXTENSION_DEGREE, **budget
):
    """
    Closed points of a zero dimensional ideal in a ring over GF(p).

    Raises `ExtensionTooLarge` if some orbit needs GF(p^k) with k above
    `max_extension_degree`.
    """
    ring = ideal.ring
    p = ring.characteristic
    if not p:
        raise FanoVerifyException("Point solving needs a ring over a prime field")
    basis = ideal.groebner(**budget)
    if basis.is_unit():
        return []
    if not basis.is_zero_dimensional():
        raise FanoVerifyException("Ideal is not zero dimensional")

    reduced = radical(ideal, **budget)
    quotient = _Quotient(reduced.groebner(**budget))
    count = len(quotient.monomials)
    names = ring.names

    rng = random.Random("points:{}".format(seed))
    for attempt in range(32):
        if attempt == 0 and len(names) == 1:
            weights = [1]
        else:
            weights = [rng.randrange(1, p) for _ in names]
        form = ring.zero()
        for name, c in zip(names, weights):
            form += ring.constant(c) * ring.gen(name)
        mu = quotient.minimal_polynomial(form)
        if len(mu) - 1 == count:
            break
    else:
        raise FanoVerifyException("Could not find a separating linear form")

    # Coordinates as polynomials in the separating form.
    powers = quotient.power_vectors(form, count)
    rows = [[v[i] for v in powers] for i in range(count)]
    expressions = {}
    for name in names:
        target = quotient.vector(ring.gen(name))
        solution = linalg.solve(rows, target, quotient.field)
        if solution is None:
            raise FanoVerifyException("Linear form does not generate the quotient algebra")
        expressions[name] = list(reversed(solution))

    _, factors = gt.gf_factor(ZZ.map(mu), p, ZZ)
    points = []
    for factor, _ in factors:
        factor = [int(c) for c in factor]
        k = len(factor) - 1
        if k == 1:
            field = PrimeField(p)
            root = field.neg(factor[1])
            coordinates = {
                name: _horner(field, expressions[name], root) for name in names
            }
        else:
            if k > max_extension_degree:
                raise ExtensionTooLarge(
                    "A point needs GF({}^{}), above the maximum degree {}".format(
                        p, k, max_extension_degree
                    )
                )
            field = ExtensionField(p, factor)
            root = field.generator()
            coordinates = {
                name: field.evaluate_univariate(expressions[name], root) for name in names
            }
        points.append(ClosedPoint(coordinates, field))
    logging.debug(
        "Solved zero dimensional ideal: {} geometric points in {} orbits".format(
            count, len(points)
        )
    )
    return points


def _horner(field, coefficients, value):
    result = field.zero()
    for c in coefficients:
        result = field.add(field.mul(result, value), field(c))
    return result


def geometric_count(points):
    return sum(point.degree for point in points)
