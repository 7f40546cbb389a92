"""Exact Gaussian elimination over any field.

Entries may be ``Fraction`` or ``CycloNumber``; the only operations used are
field arithmetic and truth testing. Pivots are the first nonzero entry found
scanning columns left to right, so results are deterministic.
"""
from fractions import Fraction


def _exact(value):
    return Fraction(value) if isinstance(value, int) else value


def _field_units(rows):
    """A (zero, one) pair in the field of the entries."""
    for row in rows:
        for entry in row:
            if entry:
                entry = _exact(entry)
                return entry - entry, entry / entry
    return Fraction(0), Fraction(1)


def row_echelon(rows, reduced=True):
    """Return (echelon_rows, pivot_columns) for a list of rows.

    With ``reduced`` the pivots are normalised to one and cleared above.
    The input is not modified.
    """
    m = [[_exact(entry) for entry in row] for row in rows]
    if not m:
        return [], []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c]:
                break
        else:
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
        fp = m[piv_r][piv_c]
        if reduced:
            inverse = 1 / fp
            m[piv_r] = [entry * inverse for entry in m[piv_r]]
            fp = m[piv_r][piv_c]
        targets = range(n_rows) if reduced else range(piv_r + 1, n_rows)
        for r in targets:
            if r == piv_r:
                continue
            fr = m[r][piv_c]
            if not fr:
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                if m[piv_r][c]:
                    m[r][c] = m[r][c] - m[piv_r][c] * frp
        pivots.append(piv_c)
        piv_r += 1
    return m, pivots


def rank(rows):
    return len(row_echelon(rows, reduced=False)[1])


def nullspace(rows, n_cols=None):
    """Basis of {x : rows . x = 0}, one vector per free column.

    Each basis vector has a one in its free column, zeros in the other free
    columns, and is read off the reduced echelon form.
    """
    if n_cols is None:
        n_cols = len(rows[0])
    if not rows:
        zero, one = Fraction(0), Fraction(1)
        return [[one if c == free else zero for c in range(n_cols)] for free in range(n_cols)]
    zero, one = _field_units(rows)
    echelon, pivots = row_echelon(rows, reduced=True)
    free_columns = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for free in free_columns:
        vector = [zero] * n_cols
        vector[free] = one
        for r, piv_c in enumerate(pivots):
            vector[piv_c] = -echelon[r][free]
        basis.append(vector)
    return basis


def solve(rows, rhs):
    """Unique solution of rows . x = rhs, or None if the system is singular.

    Inconsistent systems also return None.
    """
    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    n_cols = len(rows[0])
    echelon, pivots = row_echelon(augmented, reduced=True)
    if n_cols in pivots or len(pivots) < n_cols:
        return None
    return [echelon[r][n_cols] for r in range(n_cols)]


def transpose(rows):
    return [list(column) for column in zip(*rows)]


def mat_mul(left, right):
    """Exact matrix product of two lists of rows."""
    columns = transpose(right)
    out = []
    for row in left:
        out.append([_dot(row, column) for column in columns])
    return out


def _dot(u, v):
    total = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total
