"""
Coefficient fields used when evaluating polynomials at points.

Polynomials themselves live in sympy rings over QQ or GF(p). Points found by
the solver can need coordinates in a small extension of GF(p), so evaluation
goes through the field objects here. All three field classes share the same
method names so callers never need to know which one they hold.
"""

import fractions
import itertools
import random

from sympy.polys.domains import ZZ
from sympy.polys import galoistools as gt

from .exceptions import FanoVerifyException

# Default characteristic for the finite field surrogate of C.
DEFAULT_CHARACTERISTIC = 2147483647


class RationalField:
    """
    Exact rationals, elements are `fractions.Fraction`.
    """

    characteristic = 0
    degree = 1

    def __call__(self, value):
        return fractions.Fraction(value)

    def zero(self):
        return fractions.Fraction(0)

    def one(self):
        return fractions.Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        return a**n

    def is_zero(self, a):
        return a == 0

    def embed(self, value):
        return fractions.Fraction(value)

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __str__(self):
        return "QQ"


class PrimeField:
    """
    The field with `p` elements. Elements are Python ints in `[0, p)`.
    """

    degree = 1

    def __init__(self, p):
        self.characteristic = p
        self.order = p

    def __call__(self, value):
        if isinstance(value, fractions.Fraction):
            return self.div(value.numerator % self.characteristic, value.denominator)
        return int(value) % self.characteristic

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.characteristic

    def sub(self, a, b):
        return (a - b) % self.characteristic

    def mul(self, a, b):
        return (a * b) % self.characteristic

    def neg(self, a):
        return (-a) % self.characteristic

    def inv(self, a):
        a = a % self.characteristic
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF({})".format(self.characteristic))
        return pow(a, -1, self.characteristic)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.characteristic)
        return pow(a, n, self.characteristic)

    def is_zero(self, a):
        return a % self.characteristic == 0

    def embed(self, value):
        return self(value)

    def elements(self):
        return range(self.characteristic)

    def random_element(self, rng, nonzero=False):
        low = 1 if nonzero else 0
        return rng.randrange(low, self.characteristic)

    def frobenius(self, a):
        return a

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return (
            isinstance(other, PrimeField)
            and other.characteristic == self.characteristic
        )

    def __hash__(self):
        return hash(("GF", self.characteristic))

    def __str__(self):
        return "GF({})".format(self.characteristic)


class ExtensionField:
    """
    The field GF(p)[z] / (modulus) for a monic irreducible `modulus`.

    Elements are tuples of ints, highest coefficient first, with leading
    zeros stripped; zero is the empty tuple. The generator prints as `z`.
    """

    def __init__(self, p, modulus):
        modulus = [int(c) % p for c in modulus]
        _, modulus = gt.gf_monic(ZZ.map(modulus), p, ZZ)
        if len(modulus) < 2:
            raise FanoVerifyException("Extension modulus must have degree at least one")
        if not gt.gf_irreducible_p(modulus, p, ZZ):
            raise FanoVerifyException(
                "Modulus {} is reducible over GF({})".format(_to_tuple(modulus), p)
            )
        self.characteristic = p
        self.modulus = _to_tuple(modulus)
        self.degree = len(self.modulus) - 1
        self.order = p**self.degree

    def _reduce(self, f):
        return _to_tuple(gt.gf_rem(ZZ.map(list(f)), ZZ.map(list(self.modulus)), self.characteristic, ZZ))

    def __call__(self, value):
        if isinstance(value, tuple):
            return self._reduce(value)
        if isinstance(value, fractions.Fraction):
            base = PrimeField(self.characteristic)
            return self.embed(base(value))
        return self.embed(value)

    def zero(self):
        return ()

    def one(self):
        return (1,)

    def embed(self, value):
        value = int(value) % self.characteristic
        if value == 0:
            return ()
        return (value,)

    def generator(self):
        return self._reduce((1, 0))

    def add(self, a, b):
        return _to_tuple(gt.gf_add(ZZ.map(list(a)), ZZ.map(list(b)), self.characteristic, ZZ))

    def sub(self, a, b):
        return _to_tuple(gt.gf_sub(ZZ.map(list(a)), ZZ.map(list(b)), self.characteristic, ZZ))

    def mul(self, a, b):
        product = gt.gf_mul(ZZ.map(list(a)), ZZ.map(list(b)), self.characteristic, ZZ)
        return self._reduce(product)

    def neg(self, a):
        return _to_tuple(gt.gf_neg(ZZ.map(list(a)), self.characteristic, ZZ))

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in {}".format(self))
        s, _, h = gt.gf_gcdex(
            ZZ.map(list(a)), ZZ.map(list(self.modulus)), self.characteristic, ZZ
        )
        if _to_tuple(h) != (1,):
            raise FanoVerifyException("{} is not invertible in {}".format(a, self))
        return self._reduce(s)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a = self.inv(a)
            n = -n
        if n == 0:
            return (1,)
        return _to_tuple(
            gt.gf_pow_mod(
                ZZ.map(list(a)), n, ZZ.map(list(self.modulus)), self.characteristic, ZZ
            )
        )

    def is_zero(self, a):
        return len(a) == 0

    def elements(self):
        for coefficients in itertools.product(
            range(self.characteristic), repeat=self.degree
        ):
            yield _strip(coefficients)

    def random_element(self, rng, nonzero=False):
        while True:
            element = _strip(
                tuple(rng.randrange(self.characteristic) for _ in range(self.degree))
            )
            if element or not nonzero:
                return element

    def evaluate_univariate(self, coefficients, a):
        """
        Evaluate a GF(p) polynomial, given highest coefficient first, at `a`.
        """
        result = ()
        for c in coefficients:
            result = self.add(self.mul(result, a), self.embed(c))
        return result

    def frobenius(self, a):
        return self.pow(a, self.characteristic)

    def format(self, a):
        if not a:
            return "0"
        terms = []
        top = len(a) - 1
        for i, c in enumerate(a):
            if c == 0:
                continue
            e = top - i
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append("{}*z".format(c) if c != 1 else "z")
            else:
                terms.append("{}*z^{}".format(c, e) if c != 1 else "z^{}".format(e))
        return " + ".join(terms)

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.characteristic == self.characteristic
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("GF", self.characteristic, self.modulus))

    def __str__(self):
        return "GF({}^{})".format(self.characteristic, self.degree)


def _strip(coefficients):
    coefficients = tuple(int(c) for c in coefficients)
    i = 0
    while i < len(coefficients) and coefficients[i] == 0:
        i += 1
    return coefficients[i:]


def _to_tuple(f):
    return _strip(gt.gf_strip(list(f)))


def find_irreducible(p, k, seed=0):
    """
    Deterministically find a monic irreducible polynomial of degree `k` over
    GF(p). Returned highest coefficient first.
    """
    if k < 1:
        raise FanoVerifyException("Extension degree must be positive")
    rng = random.Random("irreducible:{}:{}:{}".format(p, k, seed))
    for _ in range(100000):
        candidate = [1] + [rng.randrange(p) for _ in range(k)]
        if gt.gf_irreducible_p(ZZ.map(candidate), p, ZZ):
            return tuple(candidate)
    raise FanoVerifyException(
        "No irreducible polynomial of degree {} found over GF({})".format(k, p)
    )


def make_field(characteristic, degree=1):
    """
    Return the prime field, or an extension of the given degree built on a
    deterministically chosen modulus.
    """
    if characteristic == 0:
        return RationalField()
    if degree == 1:
        return PrimeField(characteristic)
    return ExtensionField(characteristic, find_irreducible(characteristic, degree))


################################################################################
## Univariate polynomials over a finite field object
################################################################################

# Polynomials below are lists of field elements, highest coefficient first.


def _trim(field, f):
    i = 0
    while i < len(f) and field.is_zero(f[i]):
        i += 1
    return list(f[i:])


def _monic(field, f):
    f = _trim(field, f)
    if not f:
        return f
    lead = field.inv(f[0])
    return [field.mul(lead, c) for c in f]


def _sub(field, f, g):
    n = max(len(f), len(g))
    f = [field.zero()] * (n - len(f)) + list(f)
    g = [field.zero()] * (n - len(g)) + list(g)
    return _trim(field, [field.sub(a, b) for a, b in zip(f, g)])


def _mul(field, f, g):
    if not f or not g:
        return []
    out = [field.zero()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(a, b))
    return _trim(field, out)


def _divmod(field, f, g):
    g = _trim(field, g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead = field.inv(g[0])
    remainder = _trim(field, f)
    quotient = []
    while len(remainder) >= len(g):
        c = field.mul(remainder[0], lead)
        quotient.append(c)
        for i in range(len(g)):
            remainder[i] = field.sub(remainder[i], field.mul(c, g[i]))
        remainder.pop(0)
    return quotient, _trim(field, remainder)


def _gcd(field, f, g):
    f, g = _trim(field, f), _trim(field, g)
    while g:
        f, g = g, _divmod(field, f, g)[1]
    return _monic(field, f)


def _powmod(field, f, n, modulus):
    result = [field.one()]
    base = _divmod(field, f, modulus)[1]
    while n:
        if n & 1:
            result = _divmod(field, _mul(field, result, base), modulus)[1]
        base = _divmod(field, _mul(field, base, base), modulus)[1]
        n >>= 1
    return result


def _evaluate(field, f, a):
    value = field.zero()
    for c in f:
        value = field.add(field.mul(value, a), c)
    return value


def _split(field, g, rng, out):
    if len(g) < 2:
        return
    if len(g) == 2:
        out.append(field.neg(g[1]))
        return
    q = field.order
    if q % 2 == 0:
        out.extend(a for a in field.elements() if field.is_zero(_evaluate(field, g, a)))
        return
    while True:
        shift = [field.one(), field.random_element(rng)]
        h = _sub(field, _powmod(field, shift, (q - 1) // 2, g), [field.one()])
        h = _gcd(field, g, h)
        if 1 < len(h) < len(g):
            _split(field, h, rng, out)
            _split(field, _divmod(field, g, h)[0], rng, out)
            return


def roots(field, coefficients, seed=0):
    """
    The distinct roots in the finite `field` of a polynomial whose
    coefficients (highest first) are elements of `field`. Sorted.
    """
    if not hasattr(field, "order"):
        raise FanoVerifyException("Roots are only computed over finite fields")
    f = _monic(field, coefficients)
    if len(f) < 2:
        return []
    x = [field.one(), field.zero()]
    split_part = _gcd(field, f, _sub(field, _powmod(field, x, field.order, f), x))
    found = []
    _split(field, split_part, random.Random("roots:{}".format(seed)), found)
    return sorted(found)


def embedding(source, target):
    """
    A function mapping elements of the finite field `source` into `target`,
    which must contain it.
    """
    if source == target:
        return lambda a: a
    if (
        source.characteristic != target.characteristic
        or target.degree % source.degree != 0
    ):
        raise FanoVerifyException("{} does not embed in {}".format(source, target))
    if source.degree == 1:
        return target.embed
    image = roots(target, [target.embed(c) for c in source.modulus])[0]
    return lambda a: target.evaluate_univariate(a, image)
