"""Small exact linear algebra over the rationals.

Vectors are LinCombs over arbitrary sortable keys; matrices are built on
demand.  Everything is dense fraction-exact Gaussian elimination, which is
plenty for the graded pieces handled here.
"""

from .lincomb import Fraction, LinComb

__all__ = ["rank_of", "kernel_coefficients"]


def _echelon(rows):
    """In-place row echelon; returns the list of pivot column indices."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def _matrix(vectors):
    keys = sorted({k for v in vectors for k in v.keys()})
    rows = [[v.get(k) for v in vectors] for k in keys]
    return rows


def rank_of(vectors):
    """Rank of a family of LinComb vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    rows = _matrix(vectors)
    if not rows:
        return 0
    return len(_echelon(rows))


def kernel_coefficients(vectors):
    """Basis of { x : sum_i x_i * vectors[i] = 0 }, as coefficient tuples.

    Deterministic: echelon form with sorted keys, free variables in index
    order, each kernel vector normalized to have its free coordinate 1.
    """
    vectors = list(vectors)
    n = len(vectors)
    if n == 0:
        return []
    rows = _matrix(vectors)
    if not rows:
        rows = [[Fraction(0)] * n]
    pivots = _echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -rows[r][fc]
        basis.append(tuple(x))
    return basis


def kernel_states(states):
    """Kernel of the family as LinComb combinations of the given states."""
    coeffs = kernel_coefficients(states)
    return coeffs


def combine_states(states, coeffs):
    out = LinComb()
    for s, c in zip(states, coeffs):
        out.add_into(s, c)
    return out
