"""
Weighted projective spaces, their affine charts and the residual cyclic
group actions on those charts.
"""

import collections
import math

from sympy import primerange

from .exceptions import FanoVerifyException
from .ideals import Ideal


def multiset_string(weights, prefix="P"):
    """
    `[1, 4, 5, 5, 6]` -> `P(1,4,5^2,6)`.
    """
    counts = collections.Counter(weights)
    parts = []
    for w in sorted(counts):
        if counts[w] == 1:
            parts.append(str(w))
        else:
            parts.append("{}^{}".format(w, counts[w]))
    return "{}({})".format(prefix, ",".join(parts))


def parse_multiset(text):
    """
    Inverse of `multiset_string`. Accepts `P(1,4,5^2,6)` or `1,4,5^2,6`.
    """
    text = text.strip()
    if text.startswith("P"):
        text = text[1:]
    text = text.strip().strip("()")
    weights = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "^" in part:
                w, m = part.split("^")
                weights.extend([int(w)] * int(m))
            else:
                weights.append(int(part))
        except ValueError:
            raise FanoVerifyException("Bad weight '{}' in '{}'".format(part, text))
    return sorted(weights)


class WellFormedReport:
    """
    For each prime q up to the largest weight, the coordinates whose weight
    q divides.
    """

    def __init__(self, space):
        self.space = space
        self.divisibility = {}
        largest = max(space.weights) if space.weights else 1
        for q in primerange(2, largest + 1):
            names = [n for n, w in zip(space.names, space.weights) if w % q == 0]
            if names:
                self.divisibility[int(q)] = names

    def primes_dividing_all(self):
        n = len(self.space.names)
        return [q for q, names in self.divisibility.items() if len(names) == n]

    def primes_dividing_all_but_one(self):
        n = len(self.space.names)
        return [q for q, names in self.divisibility.items() if len(names) == n - 1]

    def is_well_formed(self):
        return not self.primes_dividing_all() and not self.primes_dividing_all_but_one()

    def __str__(self):
        lines = ["Weights {}".format(self.space)]
        for q, names in self.divisibility.items():
            lines.append("  {} | {}".format(q, ", ".join(names)))
        for q in self.primes_dividing_all():
            lines.append("  degenerate: {} divides every weight".format(q))
        return "\n".join(lines)

    def object(self):
        return {
            "divisibility": {str(q): names for q, names in self.divisibility.items()},
            "degenerate": self.primes_dividing_all(),
            "well_formed": self.is_well_formed(),
        }


class WeightedSpace:
    """
    Weighted projective space on named coordinates. Weight zero coordinates
    given in `affine` are carried along as parameters and take no part in
    the projective bookkeeping.
    """

    def __init__(self, names, weights, affine=()):
        names = list(names)
        weights = [int(w) for w in weights]
        if len(names) != len(weights):
            raise FanoVerifyException(
                "Got {} weights for {} coordinates".format(len(weights), len(names))
            )
        if len(set(names) | set(affine)) != len(names) + len(affine):
            raise FanoVerifyException("Coordinate names are not unique: {}".format(names))
        if len(names) < 2:
            raise FanoVerifyException("A weighted projective space needs two coordinates")
        for name, w in zip(names, weights):
            if w < 1:
                raise FanoVerifyException(
                    "Projective coordinate {} has weight {} < 1".format(name, w)
                )
        self.names = tuple(names)
        self.weights = tuple(weights)
        self.affine = tuple(affine)

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self.names

    def __eq__(self, other):
        return (
            isinstance(other, WeightedSpace)
            and self.names == other.names
            and self.weights == other.weights
            and self.affine == other.affine
        )

    def __hash__(self):
        return hash((self.names, self.weights, self.affine))

    def weight(self, name):
        try:
            return self.weights[self.names.index(name)]
        except ValueError:
            raise FanoVerifyException("No coordinate '{}' in {}".format(name, self))

    def weight_map(self):
        return dict(zip(self.names, self.weights))

    def sorted_weights(self):
        return sorted(self.weights)

    def coordinates_of_weight(self, w):
        return [n for n, x in zip(self.names, self.weights) if x == w]

    def multiset_string(self):
        return multiset_string(self.weights)

    def without(self, names):
        names = set(names)
        kept = [(n, w) for n, w in zip(self.names, self.weights) if n not in names]
        return WeightedSpace([n for n, _ in kept], [w for _, w in kept], self.affine)

    def renamed(self, replacements):
        """
        Replace coordinates; `replacements` maps an old name to a list of
        `(new name, weight)`.
        """
        names = []
        weights = []
        for n, w in zip(self.names, self.weights):
            if n in replacements:
                for new, new_w in replacements[n]:
                    names.append(new)
                    weights.append(new_w)
            else:
                names.append(n)
                weights.append(w)
        return WeightedSpace(names, weights, self.affine)

    def well_formed_report(self):
        return WellFormedReport(self)

    def monomials_of_weight(self, d):
        """
        Exponent vectors (one entry per projective coordinate) of weighted
        degree `d`, in descending lex order.
        """
        if d < 0:
            return []
        result = []
        n = len(self.weights)
        exponents = [0] * n

        def fill(i, remaining):
            if i == n - 1:
                w = self.weights[i]
                if remaining % w == 0:
                    exponents[i] = remaining // w
                    result.append(tuple(exponents))
                    exponents[i] = 0
                return
            w = self.weights[i]
            for e in range(remaining // w, -1, -1):
                exponents[i] = e
                fill(i + 1, remaining - e * w)
            exponents[i] = 0

        fill(0, d)
        return result

    def base_locus_ideal(self, d, ring):
        """
        Ideal in `ring` generated by the weight `d` monomials.
        """
        generators = []
        for exponents in self.monomials_of_weight(d):
            m = ring.one()
            for name, e in zip(self.names, exponents):
                if e:
                    m = m * ring.gen(name) ** e
            generators.append(m)
        return Ideal(generators, ring)

    def chart_of(self, name):
        return Chart(self, name)

    def charts(self):
        return [Chart(self, n) for n in self.names]

    def __str__(self):
        return self.multiset_string()

    def object(self):
        out = {"coordinates": list(self.names), "weights": list(self.weights)}
        if self.affine:
            out["affine"] = list(self.affine)
        return out


class Chart:
    """
    The affine chart `{x = 1}` of a weighted projective space, with the
    residual action of the cyclic group of order `index = w(x)`.
    """

    def __init__(self, space, coordinate):
        self.space = space
        self.coordinate = coordinate
        self.index = space.weight(coordinate)
        self.coordinates = [n for n in space.names if n != coordinate]
        self.residuals = {n: space.weight(n) % self.index for n in self.coordinates}

    def residual(self, name):
        return self.residuals[name]

    def fixed_loci(self):
        """
        `(d, CoordinateSubspace)` for every divisor d > 1 of the index: the
        subspace fixed by the subgroup of order d.
        """
        loci = []
        for d in range(2, self.index + 1):
            if self.index % d:
                continue
            zero = [n for n in self.coordinates if self.residuals[n] % d != 0]
            loci.append((d, CoordinateSubspace(zero, self)))
        return loci

    def stabilizer_order(self, nonzero):
        """
        Order of the stabilizer of a chart point whose nonzero coordinates
        (besides the chart coordinate) are `nonzero`.
        """
        g = self.index
        for n in nonzero:
            if n == self.coordinate:
                continue
            g = math.gcd(g, self.residuals[n])
        return g

    def __str__(self):
        if self.index == 1:
            return "{}-chart".format(self.coordinate)
        return "{}-chart (Z/{} acting with weights {})".format(
            self.coordinate,
            self.index,
            ",".join("{}:{}".format(n, self.residuals[n]) for n in self.coordinates),
        )

    def object(self):
        return {
            "coordinate": self.coordinate,
            "index": self.index,
            "residuals": dict(self.residuals),
        }


class CoordinateSubspace:
    """
    The subspace of a chart where the coordinates in `zero` vanish.
    """

    def __init__(self, zero, chart=None):
        self.zero = list(zero)
        self.chart = chart

    def free_coordinates(self):
        if self.chart is None:
            return []
        return [n for n in self.chart.coordinates if n not in self.zero]

    def is_origin(self):
        return not self.free_coordinates()

    def ideal(self, ring):
        return Ideal([ring.gen(n) for n in self.zero if n in ring], ring)

    def __eq__(self, other):
        return isinstance(other, CoordinateSubspace) and set(self.zero) == set(other.zero)

    def __str__(self):
        if not self.zero:
            return "whole chart"
        return "{{{}=0}}".format("=".join(self.zero))

    def object(self):
        return {"zero": list(self.zero), "free": self.free_coordinates()}
