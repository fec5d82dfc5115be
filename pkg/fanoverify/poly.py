"""
Weighted coordinate rings.

A `CoordinateRing` is a sympy `PolyRing` over QQ or GF(p) together with the
coordinate names and their weights. Polynomials are plain sympy
`PolyElement`s; everything that needs the weights or the names (parsing,
printing, weighted degrees, substitution between rings, evaluation at
points over an extension field) goes through the ring object.
"""

import fractions
import functools
import random

from sympy.polys.domains import GF, QQ
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.rings import PolyRing

from . import parser
from .exceptions import FanoVerifyException
from .fields import PrimeField, RationalField


def resolve_order(tag, nvars):
    """
    Turn an order tag into a sympy monomial order.

    Tags are `"grevlex"`, `"lex"` and `("elim", k)`. The elimination order
    compares the first `k` variables by grevlex first and breaks ties with
    grevlex on the rest.
    """
    if tag == "grevlex":
        return grevlex
    if tag == "lex":
        return lex
    if isinstance(tag, (tuple, list)) and len(tag) == 2 and tag[0] == "elim":
        k = int(tag[1])
        if not 0 < k < nvars:
            raise FanoVerifyException(
                "Elimination block size {} out of range for {} variables".format(k, nvars)
            )
        return ProductOrder(
            (grevlex, lambda m: m[:k]),
            (grevlex, lambda m: m[k:]),
        )
    raise FanoVerifyException("Unknown monomial order '{}'".format(tag))


class Homogeneity:
    """
    Result of a weighted degree computation. `degree` is None for the zero
    polynomial and for polynomials that are not quasi-homogeneous; in the
    latter case `offending` lists the terms grouped by their degree.
    """

    def __init__(self, degree, offending=None):
        self.degree = degree
        self.offending = offending or {}

    def is_homogeneous(self):
        return not self.offending

    def __str__(self):
        if self.is_homogeneous():
            if self.degree is None:
                return "zero polynomial"
            return "quasi-homogeneous of degree {}".format(self.degree)
        parts = []
        for degree in sorted(self.offending):
            parts.append("{}: {}".format(degree, ", ".join(self.offending[degree])))
        return "not quasi-homogeneous ({})".format("; ".join(parts))

    def object(self):
        return {
            "homogeneous": self.is_homogeneous(),
            "degree": self.degree,
            "offending": {str(k): v for k, v in sorted(self.offending.items())},
        }


class CoordinateRing:
    """
    Polynomial ring in named, weighted coordinates.

    `characteristic` 0 gives coefficients in QQ, a prime gives GF(p).
    """

    def __init__(self, names, weights, characteristic=0, order="grevlex"):
        names = list(names)
        if len(set(names)) != len(names):
            raise FanoVerifyException("Duplicate coordinate names in {}".format(names))
        if isinstance(weights, dict):
            weights = [weights[name] for name in names]
        weights = [int(w) for w in weights]
        if len(weights) != len(names):
            raise FanoVerifyException(
                "Got {} weights for {} coordinates".format(len(weights), len(names))
            )
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.characteristic = characteristic
        self.order_tag = order
        domain = QQ if characteristic == 0 else GF(characteristic)
        self.ring = PolyRing(list(names), domain, resolve_order(order, len(names)))
        self.domain = self.ring.domain
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return (
            isinstance(other, CoordinateRing)
            and self.names == other.names
            and self.weights == other.weights
            and self.characteristic == other.characteristic
            and self.order_tag == other.order_tag
        )

    def __hash__(self):
        return hash((self.names, self.weights, self.characteristic, str(self.order_tag)))

    def __str__(self):
        field = "QQ" if self.characteristic == 0 else "GF({})".format(self.characteristic)
        return "{}[{}]".format(
            field, ", ".join("{}:{}".format(n, w) for n, w in zip(self.names, self.weights))
        )

    ################################################################################
    ## Construction
    ################################################################################

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise FanoVerifyException("Unknown coordinate '{}' in {}".format(name, self))

    def weight(self, name):
        return self.weights[self.index(name)]

    def weight_map(self):
        return dict(zip(self.names, self.weights))

    def gen(self, name):
        return self.ring.gens[self.index(name)]

    def zero(self):
        return self.ring.zero

    def one(self):
        return self.ring.one

    def constant(self, value):
        """
        Ring element for an int or `fractions.Fraction`.
        """
        value = fractions.Fraction(value)
        if self.characteristic == 0:
            c = self.domain(value.numerator, value.denominator)
        else:
            if value.denominator % self.characteristic == 0:
                raise FanoVerifyException(
                    "{} has no image in GF({})".format(value, self.characteristic)
                )
            c = self.domain(value.numerator) / self.domain(value.denominator)
        return self.ring.ground_new(c)

    def coefficient_value(self, c):
        """
        A ring coefficient as a `fractions.Fraction` (reduced to `[0, p)` in
        positive characteristic).
        """
        if self.characteristic == 0:
            return fractions.Fraction(int(c.numerator), int(c.denominator))
        return fractions.Fraction(int(c) % self.characteristic)

    def monomial(self, exponents):
        return self.ring({tuple(exponents): self.domain.one})

    def from_terms(self, terms):
        """
        Build a polynomial from `{exponent tuple: int or Fraction}`.
        """
        result = self.ring.zero
        for exponents, coefficient in terms.items():
            result += self.constant(coefficient).mul_monom(tuple(exponents))
        return result

    def field(self):
        if self.characteristic == 0:
            return RationalField()
        return PrimeField(self.characteristic)

    def with_order(self, order):
        return CoordinateRing(self.names, self.weights, self.characteristic, order)

    def with_characteristic(self, characteristic):
        return CoordinateRing(self.names, self.weights, characteristic, self.order_tag)

    def without(self, names):
        """
        The ring on the coordinates not in `names`, same order of the rest.
        """
        names = set(names)
        kept = [(n, w) for n, w in zip(self.names, self.weights) if n not in names]
        return CoordinateRing(
            [n for n, _ in kept], [w for _, w in kept], self.characteristic, self.order_tag
        )

    ################################################################################
    ## Parsing and printing
    ################################################################################

    def parse(self, text, parameters=None):
        """
        Parse `text` in the expression grammar. Names are looked up first
        among the coordinates, then in `parameters` (name to int or Fraction).
        """
        parameters = parameters or {}

        def lookup(name):
            if name in self._index:
                return self.gen(name)
            return self.constant(parameters[name])

        return parser.parse_expression(str(text), lookup, self.constant)

    def format(self, f):
        """
        Print `f` in the expression grammar, terms in descending degrevlex
        order. The printed form parses back to `f`.
        """
        if not f:
            return "0"
        out = ""
        for i, (monom, coeff) in enumerate(f.terms(grevlex)):
            value = self.coefficient_value(coeff)
            if self.characteristic and value > self.characteristic // 2:
                value -= self.characteristic
            negative = value < 0
            value = abs(value)
            names = self.format_monomial(monom)
            if names == "1":
                body = str(value)
            elif value == 1:
                body = names
            else:
                body = "{}*{}".format(value, names)
            if i == 0:
                out = "-" + body if negative else body
            else:
                out += " - " + body if negative else " + " + body
        return out

    def format_monomial(self, monom):
        parts = []
        for name, e in zip(self.names, monom):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("{}^{}".format(name, e))
        return "*".join(parts) if parts else "1"

    ################################################################################
    ## Weights
    ################################################################################

    def monomial_weight(self, monom):
        return sum(e * w for e, w in zip(monom, self.weights))

    def weighted_degree(self, f):
        """
        Weighted degree of `f`. Returns a `Homogeneity`.
        """
        if not f:
            return Homogeneity(None)
        by_degree = {}
        for monom in f.monoms():
            by_degree.setdefault(self.monomial_weight(monom), []).append(
                self.format_monomial(monom)
            )
        if len(by_degree) == 1:
            return Homogeneity(next(iter(by_degree)))
        return Homogeneity(None, by_degree)

    def variables_of(self, f):
        """
        Names of the coordinates that occur in `f`, in ring order.
        """
        used = [False] * len(self.names)
        for monom in f.monoms():
            for i, e in enumerate(monom):
                if e:
                    used[i] = True
        return [name for name, u in zip(self.names, used) if u]

    ################################################################################
    ## Calculus, substitution, evaluation
    ################################################################################

    def partial_derivative(self, f, name):
        return f.diff(self.gen(name))

    def convert(self, f, target):
        """
        Move `f` into the ring `target`, matching coordinates by name.
        Coefficients are reduced mod p when going from QQ to GF(p).
        """
        return self.substitute(f, {}, target)

    def substitute(self, f, bindings, target=None):
        """
        Replace coordinates of `f` simultaneously. `bindings` maps a name to
        a polynomial of `target` (default: this ring) or to an int/Fraction.
        Coordinates without a binding must exist in `target`.
        """
        target = target or self
        images = []
        for name in self.names:
            if name in bindings:
                value = bindings[name]
                if isinstance(value, (int, fractions.Fraction)):
                    value = target.constant(value)
                images.append(value)
            elif name in target:
                images.append(target.gen(name))
            else:
                images.append(None)

        powers = [{} for _ in self.names]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                if e == 1:
                    cache[e] = images[i]
                else:
                    half = power(i, e // 2)
                    cache[e] = half * half if e % 2 == 0 else half * half * images[i]
            return cache[e]

        result = target.ring.zero
        for monom, coeff in f.terms():
            term = target.constant(self.coefficient_value(coeff))
            for i, e in enumerate(monom):
                if not e:
                    continue
                if images[i] is None:
                    raise FanoVerifyException(
                        "Coordinate '{}' has no image in {}".format(self.names[i], target)
                    )
                term = term * power(i, e)
                if not term:
                    break
            result += term
        return result

    def evaluate(self, f, point, field=None):
        """
        Evaluate `f` at `point` (name to element of `field`). The field
        defaults to the coefficient field of this ring.
        """
        field = field or self.field()
        if field.characteristic != self.characteristic:
            raise FanoVerifyException(
                "Cannot evaluate a polynomial over {} at a point over {}".format(
                    "QQ" if self.characteristic == 0 else "GF({})".format(self.characteristic),
                    field,
                )
            )
        values = []
        for name in self.names:
            if name in point:
                values.append(point[name])
            else:
                values.append(None)

        @functools.lru_cache(maxsize=None)
        def power(i, e):
            return field.pow(values[i], e)

        total = field.zero()
        for monom, coeff in f.terms():
            term = field(self.coefficient_value(coeff))
            for i, e in enumerate(monom):
                if not e:
                    continue
                if values[i] is None:
                    raise FanoVerifyException(
                        "Point does not give a value for '{}'".format(self.names[i])
                    )
                term = field.mul(term, power(i, e))
            total = field.add(total, term)
        return total

    def linear_part(self, f):
        """
        Terms of total (unweighted) degree exactly one.
        """
        return self.ring(
            {m: c for m, c in f.terms() if sum(m) == 1}
        )


def parameter_values(names, seed, characteristic):
    """
    Deterministic nonzero values for named parameters. The value of a name
    depends only on the seed and the name.
    """
    values = {}
    for name in names:
        rng = random.Random("{}:{}".format(seed, name))
        if characteristic:
            values[name] = rng.randrange(1, characteristic)
        else:
            values[name] = rng.choice([-1, 1]) * rng.randrange(1, 100)
    return values
