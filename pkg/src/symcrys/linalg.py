"""Exact linear algebra over Q(q).

Rows are cleared of denominators up front and the forward elimination is
fraction-free (cross-multiplication of Laurent-polynomial rows, with the row
content divided out after each step), so no rational normalization happens in
the inner loop.  Back substitution returns RatFunc entries.
"""

from __future__ import annotations

from .ratfunc import LaurentPoly, RatFunc, poly_gcd


class SingularMatrixError(ValueError):
    pass


def _lcm_poly(a, b):
    g = poly_gcd(a, b)
    return a * b.divmod_poly(g)[0]


def _clear_row(row):
    """list[RatFunc] -> (list[LaurentPoly],) with denominators cleared."""
    den = LaurentPoly.one()
    for x in row:
        if not x.is_zero():
            den = _lcm_poly(den, x.den)
    out = []
    for x in row:
        if x.is_zero():
            out.append(LaurentPoly.zero())
        else:
            out.append(x.num * den.divmod_poly(x.den)[0])
    return out


def _strip_content(row):
    """Divide a Laurent-poly row by the gcd of its entries (and any q-shift)."""
    nonzero = [p for p in row if not p.is_zero()]
    if not nonzero:
        return row
    shift = min(p.min_exp() for p in nonzero)
    g = LaurentPoly.zero()
    for p in nonzero:
        g = poly_gcd(g, p.shift(-p.min_exp())) if not g.is_zero() else p.shift(-p.min_exp())
        if g == LaurentPoly.one():
            break
    if g == LaurentPoly.one() and shift == 0:
        return row
    return [
        p.shift(-shift).divmod_poly(g)[0] if not p.is_zero() else p
        for p in row
    ]


def _complexity(p):
    return len(p.coeffs)


def _echelon(rows, ncols):
    """Fraction-free forward elimination in place.

    Returns the list of (row index, pivot column) in elimination order.
    """
    pivots = []
    used = set()
    for col in range(ncols):
        candidates = [r for r in range(len(rows)) if r not in used and rows[r][col]]
        if not candidates:
            continue
        prow = min(candidates, key=lambda r: _complexity(rows[r][col]))
        used.add(prow)
        pivots.append((prow, col))
        piv = rows[prow][col]
        for r in range(len(rows)):
            if r in used or not rows[r][col]:
                continue
            factor = rows[r][col]
            rows[r] = _strip_content(
                [piv * a - factor * b for a, b in zip(rows[r], rows[prow])]
            )
    return pivots


def echelon_form(matrix, ncols=None):
    """Echelon rows (Laurent cleared) and pivot positions of a RatFunc matrix."""
    rows = [_strip_content(_clear_row(row)) for row in matrix]
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    pivots = _echelon(rows, ncols)
    return rows, pivots


def rank(matrix):
    if not matrix:
        return 0
    return len(echelon_form(matrix)[1])


def solve(matrix, rhs_columns):
    """Solve A X = B exactly; A square nonsingular.

    `rhs_columns` is a list of columns; returns the list of solution columns.
    """
    n = len(matrix)
    k = len(rhs_columns)
    aug = [list(row) + [col[r] for col in rhs_columns] for r, row in enumerate(matrix)]
    rows, pivots = echelon_form(aug, ncols=n)
    if len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    solutions = [[RatFunc.zero()] * n for _ in range(k)]
    for prow, col in reversed(pivots):
        row = rows[prow]
        piv = RatFunc(row[col])
        for t in range(k):
            acc = RatFunc(row[n + t])
            for col2 in range(col + 1, n):
                if row[col2]:
                    acc = acc - RatFunc(row[col2]) * solutions[t][col2]
            solutions[t][col] = acc / piv
    return solutions


def solve_vector(matrix, rhs):
    return solve(matrix, [rhs])[0]


def inverse(matrix):
    n = len(matrix)
    eye = [[RatFunc(1) if i == j else RatFunc.zero() for i in range(n)] for j in range(n)]
    cols = solve(matrix, eye)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def nullspace(matrix, ncols=None):
    """Basis of the right kernel of A, as RatFunc vectors."""
    if not matrix:
        return []
    if ncols is None:
        ncols = len(matrix[0])
    rows, pivots = echelon_form(matrix, ncols)
    pivot_cols = {col: prow for prow, col in pivots}
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    order = sorted(pivots, key=lambda pc: pc[1], reverse=True)
    for free in free_cols:
        vec = [RatFunc.zero()] * ncols
        vec[free] = RatFunc(1)
        for prow, col in order:
            row = rows[prow]
            acc = RatFunc.zero()
            for col2 in range(col + 1, ncols):
                if row[col2] and vec[col2]:
                    acc = acc - RatFunc(row[col2]) * vec[col2]
            vec[col] = acc / RatFunc(row[col])
        basis.append(vec)
    return basis


def solve_rect(matrix, rhs):
    """One exact solution of a (possibly rectangular) consistent system.

    Raises SingularMatrixError when inconsistent.  The solution is unique
    when the matrix has full column rank (free variables are set to 0).
    """
    if not matrix:
        if any(x for x in rhs):
            raise SingularMatrixError("inconsistent empty system")
        return []
    ncols = len(matrix[0])
    aug = [list(row) + [rhs[r]] for r, row in enumerate(matrix)]
    rows, pivots = echelon_form(aug, ncols=ncols)
    # consistency: no row of the form (0 ... 0 | nonzero)
    pivot_rows = {prow for prow, _ in pivots}
    for r, row in enumerate(rows):
        if r not in pivot_rows and row[ncols] and not any(row[c] for c in range(ncols)):
            raise SingularMatrixError("inconsistent system")
    x = [RatFunc.zero()] * ncols
    for prow, col in sorted(pivots, key=lambda pc: pc[1], reverse=True):
        row = rows[prow]
        acc = RatFunc(row[ncols])
        for col2 in range(col + 1, ncols):
            if row[col2] and x[col2]:
                acc = acc - RatFunc(row[col2]) * x[col2]
        x[col] = acc / RatFunc(row[col])
    return x


def mat_mul(A, B):
    return [
        [
            sum((A[i][k] * B[k][j] for k in range(len(B)) if A[i][k]), RatFunc.zero())
            for j in range(len(B[0]))
        ]
        for i in range(len(A))
    ]


def mat_vec(A, v):
    return [
        sum((A[i][k] * v[k] for k in range(len(v)) if A[i][k]), RatFunc.zero())
        for i in range(len(A))
    ]


def identity(n):
    return [[RatFunc(1) if i == j else RatFunc.zero() for j in range(n)] for i in range(n)]


def is_identity(A):
    return all(
        A[i][j] == (RatFunc(1) if i == j else RatFunc.zero())
        for i in range(len(A))
        for j in range(len(A))
    )
