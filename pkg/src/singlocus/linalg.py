"""Exact dense linear algebra over the coefficient fields.

Matrices are plain lists of row lists.  Entries are whatever the field
uses (ints in [0, p) for prime fields, Fraction for the rationals), and
every routine works in place on a copy, so callers keep their inputs.
"""

from __future__ import annotations


def rref(rows, field):
    """Reduced row echelon form.

    Returns (echelon_rows, pivot_columns).  Zero rows are dropped.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if not field.is_zero(mat[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(x, inv) for x in mat[r]]
        for i in range(nrows):
            if i != r and not field.is_zero(mat[i][c]):
                f = mat[i][c]
                mat[i] = [field.sub(a, field.mul(f, b)) for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def rank(rows, field):
    if not rows:
        return 0
    return len(rref(rows, field)[0])


def in_span(vector, rows, field):
    """Whether `vector` lies in the row span of `rows`."""
    if all(field.is_zero(x) for x in vector):
        return True
    if not rows:
        return False
    base = rank(rows, field)
    return rank(list(rows) + [list(vector)], field) == base


def solve_in_span(vector, rows, field):
    """Coefficients c with sum(c_i * rows[i]) = vector, or None.

    Used to express a linear form in a flat's echelon basis.
    """
    n = len(rows)
    if n == 0:
        return None
    ncols = len(vector)
    # augmented transpose system: columns are the rows, target is vector
    aug = [[rows[i][c] for i in range(n)] + [vector[c]] for c in range(ncols)]
    ech, pivots = rref(aug, field)
    coeffs = [field.zero for _ in range(n)]
    for row, p in zip(ech, pivots):
        if p == n:
            return None  # inconsistent
        coeffs[p] = row[n]
    # verify (guards against underdetermined junk)
    for c in range(ncols):
        acc = field.zero
        for i in range(n):
            acc = field.add(acc, field.mul(coeffs[i], rows[i][c]))
        if not field.is_zero(field.sub(acc, vector[c])):
            return None
    return coeffs
