"""
Groebner bases and Jacobian criterion primitives.

Buchberger's algorithm over sympy `PolyElement`s: `spoly`, `reduce`,
`select` (normal strategy), `update` (Gebauer-Moeller pair elimination),
then `minimalize` and `interreduce` to get the reduced basis. Pair count and
degree caps raise `BudgetExceeded`; the public predicates catch it and
answer `Status.INCONCLUSIVE` instead of guessing.
"""

import itertools
import logging

from .exceptions import BudgetExceeded, FanoVerifyException

DEFAULT_MAX_PAIRS = 20000
DEFAULT_MAX_DEGREE = 64


class Status:
    """
    Three valued answer of the ideal predicates.
    """

    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"

    @staticmethod
    def from_bool(value):
        return Status.TRUE if value else Status.FALSE

    @staticmethod
    def combine(statuses):
        """
        Any FALSE gives FALSE, otherwise any INCONCLUSIVE gives INCONCLUSIVE.
        """
        statuses = list(statuses)
        if Status.FALSE in statuses:
            return Status.FALSE
        if Status.INCONCLUSIVE in statuses:
            return Status.INCONCLUSIVE
        return Status.TRUE


################################################################################
## Buchberger
################################################################################


def spoly(f, g, lmf=None, lmg=None):
    """
    S-polynomial of the monic polynomials `f` and `g`.
    """
    lmf = f.LM if lmf is None else lmf
    lmg = g.LM if lmg is None else lmg
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    s1 = f.mul_monom(R.monomial_div(lcm, lmf))
    s2 = g.mul_monom(R.monomial_div(lcm, lmg))
    return s1 - s2


def reduce(g, F):
    if not F:
        return g
    return g.rem(F)


def select(G, P):
    """
    Normal strategy: the pair with the smallest lcm of leading monomials.
    """
    R = G[0].ring

    def key(p):
        return R.order(R.monomial_lcm(G[p[0]].LM, G[p[1]].LM)), p

    return min(P, key=key)


def update(G, P, f):
    """
    Add `f` to the basis `G` and return the new basis and pair set, dropping
    pairs by the Gebauer-Moeller criteria.
    """
    lmf = f.LM
    lmG = [g.LM for g in G]
    R = f.ring
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div

    P = {
        p
        for p in P
        if (
            not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf)
        )
    }
    lcm_dict = {}
    for i in range(len(G)):
        lcm_dict.setdefault(lcm(lmG[i], lmf), []).append(i)
    minimal_lcms = []
    for L in sorted(lcm_dict.keys(), key=R.order):
        if all(not div(L, other) for other in minimal_lcms):
            minimal_lcms.append(L)
    new_pairs = set()
    for L in minimal_lcms:
        # Coprime leading monomials: the S-polynomial reduces to zero.
        if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in lcm_dict[L]):
            new_pairs.add((min(lcm_dict[L]), len(G)))
    return G + [f], P | new_pairs


def minimalize(G):
    if not G:
        return []
    R = G[0].ring
    minimal = []
    for f in sorted(G, key=lambda h: R.order(h.LM)):
        if all(not R.monomial_div(f.LM, g.LM) for g in minimal):
            minimal.append(f)
    return minimal


def interreduce(G):
    reduced = []
    for i in range(len(G)):
        g = reduce(G[i], G[:i] + G[i + 1 :])
        reduced.append(g.monic())
    return reduced


def buchberger(F, max_pairs=DEFAULT_MAX_PAIRS, max_degree=DEFAULT_MAX_DEGREE):
    """
    Reduced Groebner basis of the polynomials `F`, all in one sympy ring.
    The ring's monomial order is used. Returns `[1]` as soon as a nonzero
    constant shows up.
    """
    F = [f for f in F if f]
    if not F:
        return []
    R = F[0].ring
    for f in F:
        if f.is_ground:
            return [R.one]

    G = []
    P = set()
    for f in F:
        G, P = update(G, P, f.monic())

    processed = 0
    while P:
        if processed >= max_pairs:
            raise BudgetExceeded(
                "Groebner basis exceeded {} pairs ({} polynomials so far)".format(
                    max_pairs, len(G)
                )
            )
        i, j = select(G, P)
        P.remove((i, j))
        processed += 1
        r = reduce(spoly(G[i], G[j]), G)
        if r:
            if r.is_ground:
                logging.debug("Groebner basis is the unit ideal after {} pairs".format(processed))
                return [R.one]
            if max(sum(m) for m in r.monoms()) > max_degree:
                raise BudgetExceeded(
                    "Groebner basis element of degree above {}".format(max_degree)
                )
            G, P = update(G, P, r.monic())

    basis = interreduce(minimalize(G))
    basis.sort(key=lambda g: R.order(g.LM))
    logging.debug(
        "Groebner basis: {} pairs processed, {} polynomials".format(processed, len(basis))
    )
    return basis


################################################################################
## Ideals
################################################################################


class GroebnerBasis:
    """
    Reduced Groebner basis, in the `CoordinateRing` whose order was used.
    """

    def __init__(self, polys, ring):
        self.polys = list(polys)
        self.ring = ring

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        return (
            isinstance(other, GroebnerBasis)
            and self.ring == other.ring
            and self.polys == other.polys
        )

    def is_unit(self):
        return len(self.polys) == 1 and self.polys[0].is_ground

    def leading_monomials(self):
        return [g.LM for g in self.polys]

    def normal_form(self, f):
        if f.ring != self.ring.ring:
            raise FanoVerifyException("Polynomial is not in the ring of the basis")
        return reduce(f, self.polys)

    def contains(self, f):
        return not self.normal_form(f)

    def is_zero_dimensional(self):
        """
        True iff every variable has a pure power among the leading
        monomials. The unit ideal counts as zero dimensional.
        """
        if self.is_unit():
            return True
        n = len(self.ring)
        found = [False] * n
        for m in self.leading_monomials():
            support = [i for i, e in enumerate(m) if e]
            if len(support) == 1:
                found[support[0]] = True
        return all(found)

    def dimension(self):
        """
        Krull dimension from the leading monomials: the size of a largest
        set of variables containing the support of no leading monomial.
        The unit ideal has dimension -1.
        """
        if self.is_unit():
            return -1
        supports = [frozenset(i for i, e in enumerate(m) if e) for m in self.leading_monomials()]
        n = len(self.ring)
        best = [0]

        def search(start, chosen):
            if len(chosen) > best[0]:
                best[0] = len(chosen)
            if len(chosen) + (n - start) <= best[0]:
                return
            for i in range(start, n):
                candidate = chosen | {i}
                if not any(s <= candidate for s in supports):
                    search(i + 1, candidate)

        search(0, frozenset())
        return best[0]

    def standard_monomials(self):
        """
        Monomials outside the initial ideal, for a zero dimensional ideal.
        Sorted ascending by the basis order.
        """
        if not self.is_zero_dimensional():
            raise FanoVerifyException("Staircase is infinite for a positive dimensional ideal")
        if self.is_unit():
            return []
        R = self.ring.ring
        leads = self.leading_monomials()
        n = len(self.ring)
        seen = set()
        frontier = [R.zero_monom]
        while frontier:
            m = frontier.pop()
            if m in seen:
                continue
            if any(R.monomial_div(m, lm) is not None for lm in leads):
                continue
            seen.add(m)
            for i in range(n):
                step = list(m)
                step[i] += 1
                frontier.append(tuple(step))
        return sorted(seen, key=R.order)

    def object(self):
        return [self.ring.format(g) for g in self.polys]


class Ideal:
    """
    An ideal given by generators in a `CoordinateRing`.
    """

    def __init__(self, generators, ring):
        self.ring = ring
        self.generators = []
        for g in generators:
            if g.ring != ring.ring:
                raise FanoVerifyException("Generator does not belong to {}".format(ring))
            if g:
                self.generators.append(g)
        self._bases = {}

    def __add__(self, other):
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(self.generators + list(other), self.ring)

    def __str__(self):
        return "({})".format(", ".join(self.ring.format(g) for g in self.generators))

    def groebner(self, order=None, max_pairs=DEFAULT_MAX_PAIRS, max_degree=DEFAULT_MAX_DEGREE):
        """
        Reduced Groebner basis for the order tag (default: the ring's own).
        Raises `BudgetExceeded` when a cap is hit.
        """
        order = self.ring.order_tag if order is None else order
        key = (str(order), max_pairs, max_degree)
        if key not in self._bases:
            if order == self.ring.order_tag:
                ring = self.ring
                generators = self.generators
            else:
                ring = self.ring.with_order(order)
                generators = [self.ring.convert(g, ring) for g in self.generators]
            basis = buchberger(generators, max_pairs=max_pairs, max_degree=max_degree)
            self._bases[key] = GroebnerBasis(basis, ring)
        return self._bases[key]

    def _decide(self, predicate, **budget):
        try:
            return Status.from_bool(predicate(self.groebner(**budget)))
        except BudgetExceeded as e:
            logging.debug(str(e))
            return Status.INCONCLUSIVE

    def is_empty(self, **budget):
        """
        TRUE iff the ideal has no zeros over the algebraic closure.
        """
        return self._decide(lambda gb: gb.is_unit(), **budget)

    def is_zero_dimensional(self, **budget):
        return self._decide(lambda gb: gb.is_zero_dimensional(), **budget)

    def contains(self, f, **budget):
        return self._decide(lambda gb: gb.contains(f), **budget)


################################################################################
## Jacobian criterion
################################################################################


def jacobian_matrix(ring, F, coords):
    return [[ring.partial_derivative(f, x) for x in coords] for f in F]


def minors(M, r):
    """
    All nonzero `r` x `r` minors of the matrix of polynomials `M`, by
    Laplace expansion along the first row with memoised sub-minors.
    """
    nrows = len(M)
    ncols = len(M[0]) if M else 0
    if not 1 <= r <= min(nrows, ncols):
        raise FanoVerifyException(
            "Minor size {} out of range for a {}x{} matrix".format(r, nrows, ncols)
        )
    cache = {}

    def det(rows, cols):
        key = (rows, cols)
        if key in cache:
            return cache[key]
        if len(rows) == 1:
            value = M[rows[0]][cols[0]]
        else:
            value = None
            head, tail = rows[0], rows[1:]
            for k, c in enumerate(cols):
                entry = M[head][c]
                if not entry:
                    continue
                sub = det(tail, cols[:k] + cols[k + 1 :])
                if not sub:
                    continue
                term = entry * sub
                if value is None:
                    value = term if k % 2 == 0 else -term
                else:
                    value = value + term if k % 2 == 0 else value - term
            if value is None:
                value = M[head][cols[0]].ring.zero
        cache[key] = value
        return value

    result = []
    for rows in itertools.combinations(range(nrows), r):
        for cols in itertools.combinations(range(ncols), r):
            value = det(rows, cols)
            if value:
                result.append(value)
    return result


def minors_ideal(ring, M, r):
    return Ideal(minors(M, r), ring)


def singular_locus_ideal(ring, F, coords, codim):
    """
    Equations plus the `codim` x `codim` minors of the Jacobian in `coords`.
    For a complete intersection of codimension `codim` this cuts out the
    singular locus.
    """
    F = [f for f in F if f]
    if codim <= 0:
        return Ideal([ring.one()], ring)
    M = jacobian_matrix(ring, F, coords)
    if not M or codim > min(len(M), len(coords)):
        # Not enough equations for the expected codimension: everything is singular.
        return Ideal(F, ring)
    return Ideal(F + minors(M, codim), ring)
