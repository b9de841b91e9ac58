"""Bar-triangular global bases and multiplicity polynomials.

Works per block, uniformly over the two settings (the free algebra graded by
content, and the symmetric module graded by symmetrized content) through a
small BlockContext adapter.  The lower global basis is produced by the
standard recursion up the crystal order: each correction coefficient is the
unique solution of c - bar(c) = r with c in q.Q[q], read off from the
positive-degree part of r.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .linalg import identity, inverse, mat_mul, mat_vec, solve_vector
from .ratfunc import RatFunc
from .wordalg import content_key


@dataclass
class TransitionMatrix:
    """Square matrix against the crystal-ordered multisegment basis of a block."""

    label: str
    basis: list
    entries: list

    def entry(self, m, n):
        r = self.basis.index(m)
        c = self.basis.index(n)
        return self.entries[r][c]

    def size(self):
        return len(self.basis)

    def to_json_obj(self):
        return {
            "label": self.label,
            "basis": [m.to_json_obj() for m in self.basis],
            "entries": [[str(x) for x in row] for row in self.entries],
        }


class BlockContext:
    """One graded block: its basis, bar action, Gram matrix and operator maps."""

    def __init__(self, kind, label, basis, bar_column, gram, e_matrix, f_matrix, shift):
        self.kind = kind
        self.label = label
        self._basis = basis
        self._bar_column = bar_column
        self._gram = gram
        self._e_matrix = e_matrix
        self._f_matrix = f_matrix
        self._shift = shift

    def basis(self):
        return self._basis

    def bar_column(self, idx):
        return self._bar_column(idx)

    def gram(self):
        return self._gram()

    def e_matrix(self, i):
        """Matrix of the lowering-side operator into the smaller block."""
        return self._e_matrix(i)

    def f_matrix(self, i):
        return self._f_matrix(i)

    def shifted(self, i, step):
        """The context one letter up (step=+1) or down (step=-1) along index i."""
        return self._shift(i, step)


def typeA_block(alg, content):
    """Block context for a content block of the free algebra model."""
    key = content_key(content)
    basis = alg.basis_of_content(dict(key))

    def bar_column(idx):
        return alg.coord_vector(alg.pbw_element(basis[idx]).bar(), dict(key))

    def shift(i, step):
        c = Counter(dict(key))
        c[i] += step
        if c[i] < 0:
            raise ValueError(f"content has no letter {i}")
        return typeA_block(alg, c)

    return BlockContext(
        kind="typeA",
        label=f"content {dict(key)}",
        basis=basis,
        bar_column=bar_column,
        gram=lambda: alg.gram_matrix(dict(key)),
        e_matrix=lambda i: alg.eprime_matrix(i, dict(key)),
        f_matrix=lambda i: alg.fmul_matrix(i, dict(key)),
        shift=shift,
    )


def theta_block(module, sym_content):
    """Block context for a symmetrized-content block of the symmetric module."""
    key = content_key(sym_content)
    basis = module.block(key)["theta_basis"]

    def bar_column(idx):
        v = module.bar_theta(module.ptheta_vector(basis[idx]))
        return module.coord_vector(v, key)

    def gram():
        vecs = [module.ptheta_vector(m) for m in basis]
        return [[module.theta_form(u, v) for v in vecs] for u in vecs]

    def shift(i, step):
        c = Counter(dict(key))
        c[abs(i)] += step
        if c[abs(i)] < 0:
            raise ValueError(f"block has no letter of absolute value {abs(i)}")
        return theta_block(module, c)

    return BlockContext(
        kind="theta",
        label=f"symmetrized content {dict(key)}",
        basis=basis,
        bar_column=bar_column,
        gram=gram,
        e_matrix=lambda i: module.E_matrix(i, key),
        f_matrix=lambda i: module.F_matrix(i, key),
        shift=shift,
    )


class TriangularityError(ArithmeticError):
    """The bar matrix of a block failed unitriangularity (transcription bug)."""


def bar_matrix(ctx):
    """B with bar(P(n)) = sum_m B_{mn} P(m); unitriangular with Laurent entries."""
    basis = ctx.basis()
    n = len(basis)
    cols = [ctx.bar_column(c) for c in range(n)]
    B = [[cols[c][r] for c in range(n)] for r in range(n)]
    one = RatFunc(1)
    for c in range(n):
        if B[c][c] != one:
            raise TriangularityError(
                f"{ctx.label}: diagonal bar entry at {basis[c]} is {B[c][c]}"
            )
        for r in range(c):
            if not B[r][c].is_zero():
                raise TriangularityError(
                    f"{ctx.label}: bar({basis[c]}) has a component on the "
                    f"crystal-larger {basis[r]}"
                )
        for r in range(c + 1, n):
            if not B[r][c].in_A():
                raise TriangularityError(
                    f"{ctx.label}: bar entry {B[r][c]} at ({basis[r]}, {basis[c]}) "
                    "is not a Laurent polynomial"
                )
    return TransitionMatrix(ctx.label, basis, B)


def _split_antisymmetric(r):
    """The unique c in q.Q[q] with c - bar(c) = r, for bar-antisymmetric Laurent r."""
    if not r.in_A():
        raise ArithmeticError(f"correction term {r} is not a Laurent polynomial")
    if (r.bar() + r) != RatFunc(0):
        raise ArithmeticError(f"correction term {r} is not bar-antisymmetric")
    return r.positive_part()


def global_lower(ctx, bar=None):
    """C with G(n) = sum_m C_{mn} P(m): bar-invariant, off-diagonal in q.Q[q]."""
    B = bar if bar is not None else bar_matrix(ctx)
    n = B.size()
    M = B.entries
    C = [[RatFunc.zero()] * n for _ in range(n)]
    for col in range(n):
        c = [RatFunc.zero()] * n
        c[col] = RatFunc(1)
        # rows below the diagonal, top down; (B bar(c))_m depends only on rows < m
        for m in range(col + 1, n):
            rho = RatFunc.zero()
            for k in range(col, m):
                if M[m][k] and c[k]:
                    rho = rho + M[m][k] * c[k].bar()
            c[m] = _split_antisymmetric(rho)
        for m in range(n):
            C[m][col] = c[m]
    # exact bar-invariance: B . bar(C) = C
    barC = [[x.bar() for x in row] for row in C]
    if mat_mul(M, barC) != C:
        raise ArithmeticError(f"{ctx.label}: lower global basis is not bar-invariant")
    return TransitionMatrix(ctx.label, B.basis, C)


def global_upper(ctx, lower=None):
    """Coordinates of the form-dual basis: U = (Gram . C)^{-T}."""
    C = lower if lower is not None else global_lower(ctx)
    G = ctx.gram()
    GC = mat_mul(G, C.entries)
    n = len(GC)
    UT = inverse(GC)  # U^T, since U^T (G C) = I is the duality
    U = [[UT[c][r] for c in range(n)] for r in range(n)]
    check = mat_mul([[U[r][c] for r in range(n)] for c in range(n)], GC)
    from .linalg import is_identity

    if not is_identity(check):
        raise ArithmeticError(f"{ctx.label}: upper/lower duality failed")
    return TransitionMatrix(ctx.label, C.basis, U)


def balanced_split(ctx, coords, lower=None):
    """Split an A-coordinate vector along Q[q]-span and q^{-1}Q[q^{-1}]-span of G.

    Returns (positive part coords, negative part coords) in the G basis;
    raises when the expansion leaves the Laurent ring.
    """
    C = lower if lower is not None else global_lower(ctx)
    g = solve_vector(C.entries, coords)
    pos, neg = [], []
    for a in g:
        if not a.in_A():
            raise ArithmeticError("coordinate vector is not A-integral in the G basis")
        p = a.positive_part() + RatFunc(a.laurent().coeffs.get(0, 0))
        pos.append(p)
        neg.append(a - p)
    return pos, neg


class MultiplicityMismatch(ArithmeticError):
    """The direct and adjoint-transpose multiplicity computations disagree."""


def multiplicity_polys(i, ctx, side):
    """Laurent coefficients of the operator action on the upper global basis.

    side "E": the lowering operator (e'_i on the algebra, E_i on the module),
    op G^up(b) = sum_{b'} c_{b,b'} G^up(b') with b' running over the smaller
    block.  side "F": the raising operator, b' over the larger block.  Both
    the direct route (apply the operator to G^up) and the adjoint route
    (expand the partner operator on G^low, transpose) are computed; any
    disagreement raises.
    """
    if side == "E":
        tgt = ctx.shifted(i, -1)
        op_src = ctx.e_matrix(i)
        partner = tgt.f_matrix(i)  # maps tgt back into src
    elif side == "F":
        tgt = ctx.shifted(i, +1)
        op_src = ctx.f_matrix(i)
        partner = tgt.e_matrix(i)
    else:
        raise ValueError(f"side must be 'E' or 'F', got {side!r}")

    C_src = global_lower(ctx)
    C_tgt = global_lower(tgt)
    U_src = global_upper(ctx, C_src)
    U_tgt = global_upper(tgt, C_tgt)

    # route 1: op applied to upper vectors, expanded in the target upper basis
    direct = {}
    for bi, b in enumerate(C_src.basis):
        img = mat_vec(op_src, [U_src.entries[r][bi] for r in range(len(C_src.basis))])
        coeffs = solve_vector(U_tgt.entries, img) if C_tgt.basis else []
        for bj, bp in enumerate(C_tgt.basis):
            if not coeffs[bj].is_zero():
                direct[(b, bp)] = coeffs[bj]

    # route 2: partner operator on the lower basis, read off transposed
    adjoint = {}
    for bj, bp in enumerate(C_tgt.basis):
        img = mat_vec(partner, [C_tgt.entries[r][bj] for r in range(len(C_tgt.basis))])
        coeffs = solve_vector(C_src.entries, img)
        for bi, b in enumerate(C_src.basis):
            if not coeffs[bi].is_zero():
                adjoint[(b, bp)] = coeffs[bi]

    if direct != adjoint:
        raise MultiplicityMismatch(
            f"{ctx.label}, side {side}, index {i}: direct and adjoint "
            "multiplicity computations disagree"
        )
    for (b, bp), c in direct.items():
        if not c.in_A():
            raise ArithmeticError(
                f"multiplicity {c} at ({b}, {bp}) is not a Laurent polynomial"
            )
    return direct


def q1_specialization(polys):
    """q = 1 values of a multiplicity table, with a soft positivity report.

    Returns (table, warnings); a negative or non-integer value is reported,
    never raised.
    """
    table = {}
    warnings = []
    for key, c in polys.items():
        v = c.subs_one()
        table[key] = v
        if v.denominator != 1 or v < 0:
            b, bp = key
            warnings.append(f"q=1 value {v} at ({b}, {bp}) is not a nonnegative integer")
    return table, warnings
