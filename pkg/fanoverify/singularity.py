"""
Cyclic quotient singularities, baskets and the linear part computation.

The linear part computation looks at a point of a chart that is fixed by
a subgroup of order `s` of the residual action. If the Jacobian of the
equations at the point has the expected rank, the coordinates whose classes
complete the linear parts to a basis of the cotangent space are local
coordinates of the variety there, and their residual weights mod `s` give
the type 1/s(...) of the quotient singularity.
"""

import collections
import functools
import math
import re

from . import linalg
from .exceptions import ExtensionTooLarge, FanoVerifyException
from .fields import embedding, make_field, roots
from .ideals import Status
from .points import DEFAULT_MAX_EXTENSION_DEGREE, geometric_count, solve_zero_dimensional

_TYPE = re.compile(r"^\s*(?:(\d+)\s*[x×*]\s*)?1/(\d+)\s*\(([\d,\s]+)\)\s*$")


@functools.total_ordering
class QuotientSingularity:
    """
    The singularity 1/index(weights). Weights are reduced mod the index and
    sorted, so equal types compare equal.
    """

    def __init__(self, index, weights):
        index = int(index)
        if index < 2:
            raise FanoVerifyException("Quotient singularity index must be at least 2")
        weights = tuple(sorted(int(w) % index for w in weights))
        if len(weights) not in (2, 3):
            raise FanoVerifyException(
                "Only surface and 3-fold types are supported, got {} weights".format(len(weights))
            )
        for w in weights:
            if w == 0 or math.gcd(w, index) != 1:
                raise FanoVerifyException(
                    "Weight {} is not a unit mod {} in 1/{}{}".format(w, index, index, weights)
                )
        if len(weights) == 2 and (weights[0] + weights[1]) % index != 0:
            raise FanoVerifyException(
                "Surface type 1/{}{} is not of the form 1/a(b,a-b)".format(index, weights)
            )
        self.index = index
        self.weights = weights

    @classmethod
    def parse(cls, text):
        """
        Read `1/9(4,5)`. A multiplicity prefix such as `2x` is not allowed
        here; see `Basket.parse`.
        """
        match = _TYPE.match(text)
        if match is None or match.group(1):
            raise FanoVerifyException("Cannot read singularity type '{}'".format(text))
        weights = [int(w) for w in match.group(3).split(",") if w.strip()]
        return cls(int(match.group(2)), weights)

    def dimension(self):
        return len(self.weights)

    def _pair(self):
        """
        Indices of two weights summing to zero mod the index, and the third.
        """
        for i in range(3):
            for j in range(i + 1, 3):
                if (self.weights[i] + self.weights[j]) % self.index == 0:
                    return i, j, 3 - i - j
        return None

    def is_terminal(self):
        """
        3-fold types only: terminal iff of the form 1/r(a,-a,b) with a and
        b units mod r.
        """
        if self.dimension() != 3:
            return False
        return self._pair() is not None

    def promote(self):
        """
        Surface type 1/a(b,a-b) to the 3-fold type 1/a(1,b,a-b).
        """
        if self.dimension() == 3:
            return self
        return QuotientSingularity(self.index, (1,) + self.weights)

    def demote(self):
        """
        3-fold type 1/a(1,b,a-b) back to the surface type 1/a(b,a-b).
        """
        if self.dimension() == 2:
            return self
        pair = self._pair()
        if pair is None:
            raise FanoVerifyException("{} is not terminal".format(self))
        i, j, k = pair
        scale = pow(self.weights[k], -1, self.index)
        return QuotientSingularity(
            self.index, (self.weights[i] * scale, self.weights[j] * scale)
        )

    def _key(self):
        return (self.index, self.weights)

    def __eq__(self, other):
        return isinstance(other, QuotientSingularity) and self._key() == other._key()

    def __lt__(self, other):
        return (self.dimension(), self._key()) < (other.dimension(), other._key())

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "QuotientSingularity({}, {})".format(self.index, self.weights)

    def __str__(self):
        return "1/{}({})".format(self.index, ",".join(str(w) for w in self.weights))

    def object(self):
        return str(self)


class Smooth:
    """
    The point is a smooth point of the quotient.
    """

    def __eq__(self, other):
        return isinstance(other, Smooth)

    def __hash__(self):
        return hash("smooth")

    def __str__(self):
        return "smooth"

    def object(self):
        return "smooth"


class NotQuasiSmooth:
    """
    The Jacobian at the point has rank `corank` less than required.
    """

    def __init__(self, corank):
        self.corank = corank

    def __eq__(self, other):
        return isinstance(other, NotQuasiSmooth) and other.corank == self.corank

    def __str__(self):
        return "not quasi-smooth (corank {})".format(self.corank)

    def object(self):
        return {"status": "not-quasi-smooth", "corank": self.corank}


class LPCFailure:
    """
    The linear part computation could not read off a type. `reason` says
    why.
    """

    def __init__(self, reason):
        self.reason = reason

    def __eq__(self, other):
        return isinstance(other, LPCFailure) and other.reason == self.reason

    def __str__(self):
        return "linear part computation failed: {}".format(self.reason)

    def object(self):
        return {"status": "lpc-failure", "reason": self.reason}


class Basket:
    """
    Multiset of quotient singularities.
    """

    def __init__(self, singularities=()):
        self.counts = collections.Counter()
        for s in singularities:
            self.add(s)

    @classmethod
    def parse(cls, text):
        """
        Read `{2x1/4(1,1,3), 1/6(1,1,5)}` or a list of such entries.
        """
        if isinstance(text, (list, tuple)):
            entries = list(text)
        else:
            body = text.strip().strip("{}").strip()
            entries = re.findall(r"(?:\d+\s*[x×*]\s*)?1/\d+\s*\([\d,\s]+\)", body) if body else []
        basket = cls()
        for entry in entries:
            match = _TYPE.match(entry)
            if match is None:
                raise FanoVerifyException("Cannot read basket entry '{}'".format(entry))
            count = int(match.group(1)) if match.group(1) else 1
            weights = [int(w) for w in match.group(3).split(",") if w.strip()]
            basket.add(QuotientSingularity(int(match.group(2)), weights), count)
        return basket

    def add(self, singularity, count=1):
        self.counts[singularity] += count

    def __len__(self):
        return sum(self.counts.values())

    def __iter__(self):
        for s in sorted(self.counts):
            for _ in range(self.counts[s]):
                yield s

    def __eq__(self, other):
        return isinstance(other, Basket) and +self.counts == +other.counts

    def promote(self):
        basket = Basket()
        for s, n in self.counts.items():
            basket.add(s.promote(), n)
        return basket

    def symmetric_difference(self, other):
        """
        `(missing, extra)`: entries of `other` not in this basket, and
        entries of this basket not in `other`.
        """
        missing = other.counts - self.counts
        extra = self.counts - other.counts
        return Basket(missing.elements()), Basket(extra.elements())

    def entries(self):
        out = []
        for s in sorted(self.counts):
            n = self.counts[s]
            if n == 1:
                out.append(str(s))
            elif n > 1:
                out.append("{}x{}".format(n, s))
        return out

    def __str__(self):
        return "{{{}}}".format(", ".join(self.entries()))

    def object(self):
        return self.entries()


################################################################################
## Localisation
################################################################################


class LocalizedSystem:
    """
    Equations of a variety on a chart near one point.

    `coordinates` are the chart coordinates (the chart coordinate itself is
    already set to 1), `residuals` their weights mod `index`, the order of
    the stabilizer of the point. `jacobian` holds the rows of the Jacobian
    at the point, one per equation, as elements of `field`.
    """

    def __init__(self, coordinates, residuals, index, jacobian, field, label=""):
        self.coordinates = list(coordinates)
        self.residuals = {n: int(residuals[n]) % index if index > 1 else 0 for n in coordinates}
        self.index = index
        self.jacobian = [list(row) for row in jacobian]
        self.field = field
        self.label = label

    @classmethod
    def from_equations(
        cls,
        ring,
        equations,
        point,
        field,
        residuals,
        index,
        label="",
    ):
        """
        Build the system for the polynomials `equations` of `ring` at
        `point` (name to element of `field`).
        """
        coordinates = list(ring.names)
        for f in equations:
            if not field.is_zero(ring.evaluate(f, point, field)):
                raise FanoVerifyException(
                    "Equation {} does not vanish at the point".format(ring.format(f))
                )
        jacobian = []
        for f in equations:
            jacobian.append(
                [ring.evaluate(ring.partial_derivative(f, n), point, field) for n in coordinates]
            )
        return cls(coordinates, residuals, index, jacobian, field, label)


def lift_point(chart, point, field, max_extension_degree=DEFAULT_MAX_EXTENSION_DEGREE):
    """
    Affine representatives of a projective point on `chart`: every way to
    scale it so that the chart coordinate becomes 1. `point` maps every
    coordinate of the space to an element of the finite field `field`.

    The scalars are the roots of l^alpha = 1/x. When `field` does not hold
    all of them, the smallest extension that does is built, up to degree
    `max_extension_degree` over the prime field. Returns `(field,
    representatives)` with the representatives over the field used.
    """
    x = point[chart.coordinate]
    if field.is_zero(x):
        raise FanoVerifyException(
            "Point does not lie on the {}-chart".format(chart.coordinate)
        )
    alpha = chart.index
    p = field.characteristic
    # l^alpha - c has this many distinct roots over a large enough field.
    distinct = alpha
    while distinct % p == 0:
        distinct //= p

    degree = field.degree
    while degree <= max_extension_degree:
        target = field if degree == field.degree else make_field(p, degree)
        embed = embedding(field, target)
        values = {name: embed(point[name]) for name in chart.space.names}
        equation = [target.one()] + [target.zero()] * (alpha - 1)
        equation.append(target.neg(target.inv(values[chart.coordinate])))
        scales = roots(target, equation)
        if len(scales) == distinct:
            break
        degree += field.degree
    else:
        raise ExtensionTooLarge(
            "Lifting from the {}-chart needs an extension of degree above {}; "
            "resample the seed".format(chart.coordinate, max_extension_degree)
        )

    representatives = []
    for lam in scales:
        representative = {}
        for name in chart.space.names:
            w = chart.space.weight(name)
            representative[name] = target.mul(target.pow(lam, w), values[name])
        representatives.append(representative)
    return target, representatives


def linear_part_rank(system):
    """
    `(rank, spanning, complement)`: the rank of the Jacobian at the point,
    the coordinates at pivot columns, and coordinates completing the linear
    parts to a basis, chosen greedily by ascending residual weight and then
    by declared order.
    """
    field = system.field
    n = len(system.coordinates)
    reduced, pivots = linalg.echelon(system.jacobian, field)
    rank = len(pivots)
    spanning = [system.coordinates[p] for p in pivots]
    order = sorted(
        range(n), key=lambda i: (system.residuals[system.coordinates[i]], i)
    )
    rows = list(reduced)
    complement = []
    for i in order:
        if len(complement) == n - rank:
            break
        unit = [field.zero() for _ in range(n)]
        unit[i] = field.one()
        if linalg.rank(rows + [unit], field) > len(rows):
            rows.append(unit)
            complement.append(system.coordinates[i])
    return rank, spanning, complement


def _equivariant(system):
    """
    Each row of the Jacobian may only involve coordinates of one residue.
    """
    for row in system.jacobian:
        residues = {
            system.residuals[n]
            for n, value in zip(system.coordinates, row)
            if not system.field.is_zero(value)
        }
        if len(residues) > 1:
            return False
    return True


def lpc_classify(system, expected_local_dim):
    """
    Classify the point of `system`: a `QuotientSingularity`, `Smooth`,
    `NotQuasiSmooth` or `LPCFailure`.
    """
    n = len(system.coordinates)
    rank, _, complement = linear_part_rank(system)
    required = n - expected_local_dim
    if rank < required:
        return NotQuasiSmooth(required - rank)
    if rank > required:
        return LPCFailure(
            "rank {} exceeds the codimension {}; local dimension is below {}".format(
                rank, required, expected_local_dim
            )
        )
    if system.index == 1:
        return Smooth()
    if not _equivariant(system):
        return LPCFailure("linear parts are not equivariant under Z/{}".format(system.index))
    weights = [system.residuals[c] for c in complement]
    for c, w in zip(complement, weights):
        if math.gcd(w, system.index) != 1:
            return LPCFailure(
                "local coordinate {} has residue {} mod {}; fixed locus is not isolated".format(
                    c, w, system.index
                )
            )
    if expected_local_dim < 2:
        return LPCFailure("local dimension {} is too small to type".format(expected_local_dim))
    try:
        return QuotientSingularity(system.index, weights)
    except FanoVerifyException as e:
        return LPCFailure(str(e))


def residue_check(singularity, weights):
    """
    True iff the distinguished residue of the type (b or a-b for a surface
    type 1/a(b,a-b)) occurs among `weights` mod a.
    """
    surface = singularity.demote()
    if hasattr(weights, "weights"):
        weights = weights.weights
    residues = {w % surface.index for w in weights}
    return any(b in residues for b in surface.weights)


def assemble_basket(findings, promote=True):
    """
    Basket from `(point id, type)` findings. Repeated ids must carry the
    same type and count once.
    """
    seen = {}
    for point_id, singularity in findings:
        if point_id in seen:
            if seen[point_id] != singularity:
                raise FanoVerifyException(
                    "Point {} found as both {} and {}".format(
                        point_id, seen[point_id], singularity
                    )
                )
            continue
        seen[point_id] = singularity
    basket = Basket(seen.values())
    return basket.promote() if promote else basket


def half_point_count(chart, ideal, seed=0, **budget):
    """
    Number of points with stabilizer exactly 2 on the order 2 fixed locus
    of `chart`, for a variety whose chart ideal is `ideal`. Returns None if
    that locus is not zero dimensional.
    """
    fixed = [s for d, s in chart.fixed_loci() if d == 2]
    if not fixed:
        return 0
    restricted = ideal + fixed[0].ideal(ideal.ring)
    if restricted.is_empty(**budget) == Status.TRUE:
        return 0
    if restricted.is_zero_dimensional(**budget) != Status.TRUE:
        return None
    points = [
        point
        for point in solve_zero_dimensional(restricted, seed=seed)
        if chart.stabilizer_order(point.nonzero_coordinates()) == 2
    ]
    return geometric_count(points) // (chart.index // 2)
