"""
Dense linear algebra over the field objects in `fields.py`.

Matrices are lists of rows, rows are lists of field elements. Nothing here
mutates its arguments. Over a prime field the work is done by sympy's
`DomainMatrix` over GF(p); extension fields use the elimination below.
"""

from sympy.polys.domains import GF
from sympy.polys.matrices import DomainMatrix

from .fields import PrimeField


def _domain_matrix(matrix, field):
    domain = GF(field.characteristic)
    return DomainMatrix(
        [[domain(x) for x in row] for row in matrix],
        (len(matrix), len(matrix[0])),
        domain,
    )


def echelon(rows, field):
    """
    Reduced row echelon form. Returns `(rows, pivots)` with one pivot column
    index per nonzero row.
    """
    matrix = [list(row) for row in rows if row]
    if not matrix:
        return [], []
    if isinstance(field, PrimeField):
        reduced, pivots = _domain_matrix(matrix, field).rref()
        p = field.characteristic
        entries = reduced.to_Matrix().tolist()
        return [[int(x) % p for x in row] for row in entries[: len(pivots)]], list(pivots)
    return _echelon(matrix, field)


def _echelon(matrix, field):
    ncols = len(matrix[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(matrix)):
            if not field.is_zero(matrix[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inverse = field.inv(matrix[r][c])
        matrix[r] = [field.mul(inverse, x) for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and not field.is_zero(matrix[i][c]):
                factor = matrix[i][c]
                matrix[i] = [
                    field.sub(x, field.mul(factor, y)) for x, y in zip(matrix[i], matrix[r])
                ]
        pivots.append(c)
        r += 1
        if r == len(matrix):
            break
    return matrix[:r], pivots


def rank(rows, field):
    matrix = [list(row) for row in rows if row]
    if not matrix:
        return 0
    if isinstance(field, PrimeField):
        return _domain_matrix(matrix, field).rank()
    return len(_echelon(matrix, field)[1])


def solve(rows, rhs, field):
    """
    One solution of `rows * x = rhs`, or None if the system is inconsistent.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    reduced, pivots = echelon(augmented, field)
    if ncols in pivots:
        return None
    solution = [field.zero() for _ in range(ncols)]
    for row, p in zip(reduced, pivots):
        solution[p] = row[ncols]
    return solution


def find_linear_relation(vectors, field):
    """
    Coefficients `c` with `sum(c[i] * vectors[i]) == 0` and `c[-1] == 1`,
    if the last vector is a combination of the others, else None.
    """
    if not vectors:
        return None
    *previous, last = vectors
    if not previous:
        if all(field.is_zero(x) for x in last):
            return [field.one()]
        return None
    # Columns are the previous vectors.
    rows = [[v[i] for v in previous] for i in range(len(last))]
    solution = solve(rows, [field.neg(x) for x in last], field)
    if solution is None:
        return None
    return solution + [field.one()]
