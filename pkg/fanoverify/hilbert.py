"""
Hilbert series of weighted graded rings.

Numerators are `sympy.Poly` objects in `t` over ZZ. A Hilbert series is
`N(t) / prod(1 - t^a)` over the ambient weights `a`.
"""

import fractions
import functools
import logging

import sympy
from sympy import ZZ, Poly

from .exceptions import FanoVerifyException

t = sympy.Symbol("t")


def as_poly(value):
    """
    Accept a `Poly`, a coefficient list (constant term first) or an
    expression string in `t`.
    """
    if isinstance(value, Poly):
        return value
    if isinstance(value, (list, tuple)):
        return Poly(list(reversed([int(c) for c in value])), t, domain=ZZ)
    if isinstance(value, int):
        return Poly(value, t, domain=ZZ)
    try:
        return Poly(sympy.sympify(str(value).replace("^", "**"), locals={"t": t}), t, domain=ZZ)
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as e:
        raise FanoVerifyException("Cannot read Hilbert numerator '{}': {}".format(value, e))


def coefficients(poly):
    """
    Coefficients constant term first.
    """
    return [int(c) for c in reversed(poly.all_coeffs())]


def format_poly(poly):
    terms = []
    for e, c in enumerate(coefficients(poly)):
        if c == 0:
            continue
        if e == 0:
            body = str(abs(c))
        elif e == 1:
            body = "t" if abs(c) == 1 else "{}*t".format(abs(c))
        else:
            body = "t^{}".format(e) if abs(c) == 1 else "{}*t^{}".format(abs(c), e)
        if not terms:
            terms.append("-" + body if c < 0 else body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


def one_minus_power(a):
    return Poly(1 - t**a, t, domain=ZZ)


def ci_numerator(degrees):
    """
    Koszul numerator `prod(1 - t^d)` of a complete intersection.
    """
    degrees = list(degrees)
    if not degrees:
        raise FanoVerifyException("A complete intersection needs at least one degree")
    result = Poly(1, t, domain=ZZ)
    for d in degrees:
        result = result * one_minus_power(d)
    return result


def section_numerator(key_numerator, profile):
    """
    Numerator over the key ambient after cutting by `m` general
    hypersurfaces of each weight `a` in the profile `[(a, m), ...]`.
    """
    result = as_poly(key_numerator)
    for a, m in profile:
        result = result * one_minus_power(a) ** m
    return result


def cancel_factors(numerator, weights):
    """
    Divide out `(1 - t^a)` for each `a` in `weights`; the division must be
    exact.
    """
    result = as_poly(numerator)
    for a in weights:
        q, r = result.div(one_minus_power(a))
        if not r.is_zero:
            raise FanoVerifyException(
                "Numerator {} is not divisible by 1 - t^{}".format(format_poly(result), a)
            )
        result = q
    return result


class HilbertData:
    """
    Numerator and ambient weights of a Hilbert series.
    """

    def __init__(self, numerator, weights):
        self.numerator = as_poly(numerator)
        self.weights = sorted(int(w) for w in weights)
        if self.numerator.is_zero or coefficients(self.numerator)[0] != 1:
            raise FanoVerifyException(
                "Hilbert numerator must have constant term 1, got {}".format(
                    format_poly(self.numerator)
                )
            )
        if any(w < 1 for w in self.weights):
            raise FanoVerifyException("Ambient weights must be positive")

    def expand(self, n):
        """
        Coefficients c_0..c_n of the series.
        """
        c = coefficients(self.numerator)[: n + 1]
        c += [0] * (n + 1 - len(c))
        for a in self.weights:
            for i in range(a, n + 1):
                c[i] += c[i - a]
        return c

    def _reduced(self):
        """
        `(m, N / (1-t)^m)` with m the multiplicity of t = 1 as a root of N.
        """
        numerator = self.numerator
        m = 0
        line = Poly(1 - t, t, domain=ZZ)
        while not numerator.is_zero and numerator.eval(1) == 0:
            numerator = numerator.exquo(line)
            m += 1
        return m, numerator

    def pole_order(self):
        m, _ = self._reduced()
        return len(self.weights) - m

    def anticanonical_degree(self):
        """
        Leading coefficient of the pole of order 4 at t = 1, which for an
        anticanonical ring of a 3-fold is (-K)^3.
        """
        m, reduced = self._reduced()
        order = len(self.weights) - m
        if order != 4:
            raise FanoVerifyException(
                "Not a 3-fold Hilbert series: pole of order {} at t=1".format(order)
            )
        value = fractions.Fraction(int(reduced.eval(1)))
        for a in self.weights:
            value /= a
        return value

    def genus(self):
        return genus(self.expand(1))

    def __str__(self):
        return "({}) / {}".format(
            format_poly(self.numerator),
            " ".join("(1 - t^{})".format(a) for a in self.weights),
        )

    def object(self):
        return {"numerator": coefficients(self.numerator), "weights": self.weights}


def ci_hilbert(degrees, weights):
    return HilbertData(ci_numerator(degrees), weights)


def genus(series):
    """
    `g = c_1 - 2`. Returns `(g, flagged)`; flagged when c_1 is zero, which
    no Fano 3-fold with -K ample and a section has.
    """
    if len(series) < 2:
        raise FanoVerifyException("Need at least two coefficients to read the genus")
    c1 = series[1]
    g = c1 - 2
    return g, c1 <= 0


################################################################################
## Orbifold Riemann-Roch
################################################################################


def _rr_form(singularity):
    """
    Write 1/r(w1,w2,w3) as 1/r(1,a,r-a) by scaling: returns (r, a).
    """
    r = singularity.index
    weights = list(singularity.weights)
    if len(weights) != 3:
        raise FanoVerifyException("Plurigenus formula needs 3-fold types, got {}".format(singularity))
    for i in range(3):
        for j in range(i + 1, 3):
            if (weights[i] + weights[j]) % r == 0:
                k = 3 - i - j
                scale = pow(weights[k], -1, r)
                return r, (weights[i] * scale) % r
    raise FanoVerifyException("{} is not a terminal quotient singularity".format(singularity))


def plurigenus(n, degree, basket):
    """
    h^0(-nK) from the orbifold Riemann-Roch formula.
    """
    value = fractions.Fraction(2 * n + 1) + fractions.Fraction(n * (n + 1) * (2 * n + 1), 12) * degree
    for singularity in basket:
        r, a = _rr_form(singularity)
        b = pow(a, -1, r)
        for j in range(1, n + 1):
            bj = (b * j) % r
            value -= fractions.Fraction(bj * (r - bj), 2 * r)
    return value


def rr_prediction(degree, basket, n):
    """
    Predicted coefficients c_0..c_n.
    """
    return [fractions.Fraction(1)] + [plurigenus(k, degree, basket) for k in range(1, n + 1)]


def _validation_fixtures():
    from .singularity import QuotientSingularity

    half = QuotientSingularity(2, (1, 1, 1))
    return [
        ("X6 in P(1,1,1,1,3)", [6], [1, 1, 1, 1, 3], []),
        ("X4 in P(1,1,1,1,1)", [4], [1, 1, 1, 1, 1], []),
        ("X2,3 in P(1,1,1,1,1,1)", [2, 3], [1, 1, 1, 1, 1, 1], []),
        ("X5 in P(1,1,1,1,2)", [5], [1, 1, 1, 1, 2], [half]),
        (
            "X16 in P(1,2,3,4,7)",
            [16],
            [1, 2, 3, 4, 7],
            [half] * 4
            + [QuotientSingularity(3, (1, 1, 2)), QuotientSingularity(7, (1, 3, 4))],
        ),
    ]


@functools.lru_cache(maxsize=None)
def formula_validated(order=12):
    """
    Check the plurigenus formula against complete intersection fixtures
    whose series is known independently.
    """
    for name, degrees, weights, basket in _validation_fixtures():
        data = ci_hilbert(degrees, weights)
        series = data.expand(order)
        predicted = rr_prediction(data.anticanonical_degree(), basket, order)
        if predicted != series:
            logging.warning(
                "Plurigenus formula does not reproduce {}; disabling the check".format(name)
            )
            return False
    return True


def orbifold_rr_check(degree, basket, series):
    """
    True iff the plurigenus formula with `degree` and `basket` reproduces
    `series`. None when the formula could not be validated.
    """
    if not formula_validated():
        return None
    predicted = rr_prediction(fractions.Fraction(degree), list(basket), len(series) - 1)
    return predicted == [fractions.Fraction(c) for c in series]
