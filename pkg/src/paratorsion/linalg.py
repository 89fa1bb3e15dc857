"""Exact rational linear algebra on lists of Fractions, backed by sympy's QQ matrices."""

from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


class SingularMatrixError(ValueError):
    pass


def _dm(rows, ncols=None):
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    data = [[QQ(x.numerator, x.denominator) if isinstance(x, Fraction) else QQ(x)
             for x in row] for row in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _frac(q):
    return Fraction(int(q.numerator), int(q.denominator))


def _rows(dm):
    return [[_frac(x) for x in row] for row in dm.to_list()]


def rank(rows, ncols=None):
    if not rows:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows, ncols):
    """Basis (list of vectors) of {x : rows @ x = 0}, in rref-pivot order."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return _rows(ns)


def rref(rows, ncols=None):
    if not rows:
        return [], ()
    m, pivots = _dm(rows, ncols).rref()
    return _rows(m), tuple(pivots)


def solve(rows, rhs, ncols):
    """One solution x of rows @ x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = red[r][ncols]
    return x


def inverse(rows):
    n = len(rows)
    m = _dm(rows, n)
    if m.rank() < n:
        raise SingularMatrixError("matrix is singular")
    return _rows(m.inv())


def det(rows):
    return _frac(_dm(rows, len(rows)).det())


def matmul(a, b):
    return _rows(_dm(a) * _dm(b))


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
