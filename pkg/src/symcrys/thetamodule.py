"""The symmetric-crystal module V_theta(0) = U_q^- / sum_k U_q^-(f_k - f_{-k}).

Class vectors are represented by word vectors; the grading that survives on
the quotient is the symmetrized content (multiset of absolute letter
indices).  Per symmetrized block the module caches a basis of the ideal
subspace and the coordinates of the theta-PBW vectors P_theta(m)phi, so that
class membership and canonical coordinates reduce to one exact linear solve.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

from .linalg import (
    RatFunc,
    SingularMatrixError,
    echelon_form,
    nullspace,
    solve_rect,
    solve_vector,
)
from .multisegment import cry_sort_key
from .ratfunc import qfact, qint
from .theta import symmetrized_content as mseg_symcontent, theta_of_symmetrized_content
from .wordalg import WordAlgebra, WordVector, content_key


def sym_key_of_content(content):
    c = Counter()
    for i, n in content.items():
        c[abs(i)] += n
    return content_key(c)


class ThetaClassVector:
    """A class in V_theta(0), held as a word-vector representative."""

    __slots__ = ("rep", "module")

    def __init__(self, rep, module):
        self.rep = rep
        self.module = module

    def is_zero(self):
        return self.module.is_zero_class(self)

    def __add__(self, other):
        return ThetaClassVector(self.rep + other.rep, self.module)

    def __sub__(self, other):
        return ThetaClassVector(self.rep - other.rep, self.module)

    def __neg__(self):
        return ThetaClassVector(-self.rep, self.module)

    def scale(self, c):
        return ThetaClassVector(self.rep.scale(c), self.module)

    def __eq__(self, other):
        if not isinstance(other, ThetaClassVector):
            return NotImplemented
        return self.module.is_zero_class(self - other)

    def __hash__(self):
        raise TypeError("theta class vectors are not hashable")

    def sym_key(self):
        keys = {sym_key_of_content(dict(ck)) for ck in self.rep.contents()}
        if len(keys) > 1:
            raise ValueError("class vector is not homogeneous in symmetrized content")
        return keys.pop() if keys else ()

    def __str__(self):
        return f"[{self.rep}]phi"

    def __repr__(self):
        return f"ThetaClassVector({self})"


class ThetaModule:
    """V_theta(0) over a negation-symmetric window of odd indices."""

    def __init__(self, window):
        win = tuple(sorted(set(window)))
        if set(win) != {-i for i in win}:
            raise ValueError(f"window must be symmetric under negation, got {window}")
        self.alg = WordAlgebra(win)
        self.window = self.alg.window
        self._blocks = {}
        self._ptheta_cache = {}
        self._E_mat = {}
        self._F_mat = {}

    # -- constructors -----------------------------------------------------

    def phi(self):
        return ThetaClassVector(self.alg.one(), self)

    def from_words(self, x):
        if isinstance(x, WordVector):
            return ThetaClassVector(x, self)
        return ThetaClassVector(self.alg.vector(x), self)

    # -- module operations ---------------------------------------------------

    def F_op(self, i, v):
        """F_i: left multiplication by f_i on representatives."""
        self.alg.check_index(i)
        return ThetaClassVector(self.alg.mul(self.alg.f(i), v.rep), self)

    def E_op(self, i, v):
        """E_i = e'_i + Ad(t_i) e*_{-i} on representatives (lambda = 0)."""
        self.alg.check_index(i)
        rep = self.alg.eprime(i, v.rep) + self.alg.ad_t(i, self.alg.estar(-i, v.rep))
        return ThetaClassVector(rep, self)

    def T_op(self, i, v):
        """T_i: scaling by q^{-(alpha_i + alpha_{-i}, beta)} on each word."""
        self.alg.check_index(i)
        return ThetaClassVector(self.alg.ad_t(i, self.alg.ad_t(-i, v.rep)), self)

    def bar_theta(self, v):
        """Bar involution: conjugate the coefficients of any representative."""
        return ThetaClassVector(v.rep.bar(), self)

    # -- theta PBW basis --------------------------------------------------------

    def ptheta_vector(self, m):
        """P_theta(m)phi with the modified divided powers of the <-j,j> segments."""
        key = m
        hit = self._ptheta_cache.get(key)
        if hit is not None:
            return ThetaClassVector(hit, self)
        out = self.alg.one()
        for seg in m.segments_desc_pbw():
            if not seg.is_theta_restricted():
                raise ValueError(f"{seg} is not theta-restricted")
            mult = m.entries[seg]
            piece = self.alg.pbw_segment(seg.i, seg.j)
            for _ in range(mult):
                out = self.alg.mul(out, piece)
            if seg.i == -seg.j:
                norm = RatFunc(1)
                for nu in range(1, mult + 1):
                    norm = norm * RatFunc(qint(2 * nu))
            else:
                norm = RatFunc(qfact(mult))
            out = out.scale(RatFunc(1) / norm)
        self._ptheta_cache[key] = out
        return ThetaClassVector(out, self)

    # -- block machinery -------------------------------------------------------

    def fiber_contents(self, sym_key):
        """All genuine contents over the window with the given symmetrized content."""
        items = [(k, n) for k, n in sym_key]
        choice_sets = []
        for k, n in items:
            if k not in self.window:
                raise ValueError(f"index {k} outside window {self.window}")
            choice_sets.append([(k, a) for a in range(n + 1)])
        out = []
        for combo in product(*choice_sets):
            c = Counter()
            for (k, a), (_, n) in zip(combo, items):
                if a:
                    c[k] += a
                if n - a:
                    c[-k] += n - a
            out.append(content_key(c))
        return sorted(out)

    def ideal_generators(self, sym_key):
        """Word-vector generators w (f_k - f_{-k}) spanning the ideal in the fiber."""
        gens = []
        total = sum(n for _, n in sym_key)
        if total == 0:
            return gens
        for k in self.window:
            if k <= 0:
                continue
            sub = Counter(dict(sym_key))
            if sub[k] == 0:
                continue
            sub[k] -= 1
            for ck in self.fiber_contents(content_key(sub)):
                for w in self.alg.words_of_content(dict(ck)):
                    rep = self.alg.mul(
                        self.alg.vector({w: RatFunc(1)}),
                        self.alg.f(k) - self.alg.f(-k),
                    )
                    gens.append(rep)
        return gens

    def _fiber_vector(self, rep, block):
        vec = [RatFunc.zero()] * block["dim"]
        for ck, part in rep.homogeneous_parts().items():
            if ck not in block["offsets"]:
                raise ValueError(f"content {dict(ck)} outside the block")
            off = block["offsets"][ck]
            col = self.alg.coord_vector(part, dict(ck))
            for r, c in enumerate(col):
                vec[off + r] = c
        return vec

    def block(self, sym_key):
        hit = self._blocks.get(sym_key)
        if hit is not None:
            return hit
        contents = self.fiber_contents(sym_key)
        offsets = {}
        dim = 0
        for ck in contents:
            offsets[ck] = dim
            dim += len(self.alg.basis_of_content(dict(ck)))
        block = {"contents": contents, "offsets": offsets, "dim": dim}
        theta_basis = sorted(
            theta_of_symmetrized_content(self.window, dict(sym_key)),
            key=cry_sort_key,
            reverse=True,
        )
        block["theta_basis"] = theta_basis
        ptheta_cols = [
            self._fiber_vector(self.ptheta_vector(m).rep, block) for m in theta_basis
        ]
        gen_rows = [self._fiber_vector(g, block) for g in self.ideal_generators(sym_key)]
        if gen_rows:
            rows, pivots = echelon_form(gen_rows, ncols=dim)
            ideal_basis = [
                [RatFunc(p) for p in rows[prow]] for prow, _ in pivots
            ]
        else:
            ideal_basis = []
        if len(theta_basis) + len(ideal_basis) != dim:
            raise ArithmeticError(
                f"block {dict(sym_key)}: {len(theta_basis)} theta multisegments + "
                f"ideal rank {len(ideal_basis)} != quotient ambient dim {dim}"
            )
        cols = ptheta_cols + ideal_basis
        block["matrix"] = [[cols[c][r] for c in range(dim)] for r in range(dim)]
        self._blocks[sym_key] = block
        return block

    def quotient_dimension(self, sym_key):
        block = self.block(sym_key)
        return block["dim"] - (block["dim"] - len(block["theta_basis"]))

    # -- coordinates and equality ------------------------------------------------

    def theta_coords(self, v):
        """Coordinates of v in the basis {P_theta(m)phi}, as an mseg -> RatFunc map."""
        sym_key = v.sym_key()
        if v.rep.is_zero():
            return {}
        block = self.block(sym_key)
        target = self._fiber_vector(v.rep, block)
        sol = solve_vector(block["matrix"], target)
        out = {}
        for m, c in zip(block["theta_basis"], sol[: len(block["theta_basis"])]):
            if not c.is_zero():
                out[m] = c
        return out

    def coord_vector(self, v, sym_key):
        block = self.block(sym_key)
        coords = self.theta_coords(v)
        pos = {m: r for r, m in enumerate(block["theta_basis"])}
        col = [RatFunc.zero()] * len(block["theta_basis"])
        for m, c in coords.items():
            col[pos[m]] = c
        return col

    def from_coords(self, coords):
        out = self.alg.zero()
        for m, c in coords.items():
            out = out + self.ptheta_vector(m).rep.scale(c)
        return ThetaClassVector(out, self)

    def is_zero_class(self, v):
        if v.rep.is_zero():
            return True
        keys = {sym_key_of_content(dict(ck)) for ck in v.rep.contents()}
        for key in keys:
            block = self.block(key)
            part = self.alg.zero()
            for ck, p in v.rep.homogeneous_parts().items():
                if sym_key_of_content(dict(ck)) == key:
                    part = part + p
            target = self._fiber_vector(part, block)
            sol = solve_vector(block["matrix"], target)
            if any(not c.is_zero() for c in sol[: len(block["theta_basis"])]):
                return False
        return True

    # -- the bilinear form ---------------------------------------------------------

    def theta_form(self, u, v):
        """(phi,phi) = 1 and (E_i u, v) = (u, F_i v), computed by peeling v."""
        if u.sym_key() != v.sym_key():
            return RatFunc.zero()
        total = RatFunc.zero()
        for w, c in v.rep.terms.items():
            total = total + c * self._form_against_word(u, w)
        return total

    def _form_against_word(self, u, w):
        if not w:
            return u.rep.terms.get((), RatFunc.zero())
        return self._form_against_word(self.E_op(w[0], u), w[1:])

    # -- block matrices of E_i and F_i ----------------------------------------------

    def E_matrix(self, i, sym_key):
        """Matrix of E_i from the block to the block with one |i| letter fewer."""
        key = (i, sym_key)
        hit = self._E_mat.get(key)
        if hit is None:
            src = self.block(sym_key)["theta_basis"]
            sub = Counter(dict(sym_key))
            sub[abs(i)] -= 1
            if sub[abs(i)] < 0:
                raise ValueError(f"block has no letter of absolute value {abs(i)}")
            tgt_key = content_key(sub)
            cols = [
                self.coord_vector(self.E_op(i, self.ptheta_vector(m)), tgt_key)
                for m in src
            ]
            nrows = len(self.block(tgt_key)["theta_basis"])
            hit = [[cols[c][r] for c in range(len(src))] for r in range(nrows)]
            self._E_mat[key] = hit
        return hit

    def F_matrix(self, i, sym_key):
        key = (i, sym_key)
        hit = self._F_mat.get(key)
        if hit is None:
            src = self.block(sym_key)["theta_basis"]
            sup = Counter(dict(sym_key))
            sup[abs(i)] += 1
            tgt_key = content_key(sup)
            cols = [
                self.coord_vector(self.F_op(i, self.ptheta_vector(m)), tgt_key)
                for m in src
            ]
            nrows = len(self.block(tgt_key)["theta_basis"])
            hit = [[cols[c][r] for c in range(len(src))] for r in range(nrows)]
            self._F_mat[key] = hit
        return hit

    def T_scalar(self, i, sym_key):
        """T_i eigenvalue on the block: q^{-(alpha_i + alpha_{-i}, beta)}."""
        e = 0
        # (alpha_i + alpha_{-i}, alpha_k) is invariant under k -> -k, so any
        # genuine content in the fiber gives the same exponent; use all-positive.
        for k, n in sym_key:
            e -= n * (_cartan(i, k) + _cartan(-i, k))
        return RatFunc.q_power(e)

    # -- modified root operators ---------------------------------------------------

    def _qboson_components(self, i, v):
        sym_key = v.sym_key()
        if v.rep.is_zero():
            return []
        if not sym_key:
            return [(0, v)]
        t = dict(sym_key).get(abs(i), 0)
        target = self.coord_vector(v, sym_key)
        columns = []
        tags = []
        for n in range(t + 1):
            sub = Counter(dict(sym_key))
            sub[abs(i)] -= n
            sub_key = content_key(sub)
            nbasis = len(self.block(sub_key)["theta_basis"])
            if nbasis == 0:
                continue
            if sub[abs(i)] > 0:
                kern = nullspace(self.E_matrix(i, sub_key), ncols=nbasis)
            else:
                kern = [
                    [RatFunc(1) if r == s else RatFunc.zero() for r in range(nbasis)]
                    for s in range(nbasis)
                ]
            for vec in kern:
                lifted = vec
                cur = Counter(sub)
                for _ in range(n):
                    mat = self.F_matrix(i, content_key(cur))
                    lifted = [
                        sum(
                            (mat[r][c] * lifted[c] for c in range(len(lifted)) if lifted[c]),
                            RatFunc.zero(),
                        )
                        for r in range(len(mat))
                    ]
                    cur[abs(i)] += 1
                scale = RatFunc(1) / RatFunc(qfact(n))
                columns.append([scale * x for x in lifted])
                tags.append((n, vec, sub_key))
        matrix = [[columns[c][r] for c in range(len(columns))] for r in range(len(target))]
        lam = solve_rect(matrix, target)
        comps = {}
        for coef, (n, vec, sub_key) in zip(lam, tags):
            if coef.is_zero():
                continue
            acc = comps.setdefault(n, [[RatFunc.zero()] * len(vec), sub_key])
            acc[0] = [a + coef * b for a, b in zip(acc[0], vec)]
        out = []
        for n, (coords, sub_key) in sorted(comps.items()):
            basis = self.block(sub_key)["theta_basis"]
            u = self.alg.zero()
            for m, c in zip(basis, coords):
                if not c.is_zero():
                    u = u + self.ptheta_vector(m).rep.scale(c)
            cls = ThetaClassVector(u, self)
            if not u.is_zero():
                out.append((n, cls))
        return out

    def theta_mod_etilde(self, i, v):
        out = ThetaClassVector(self.alg.zero(), self)
        for n, u in self._qboson_components(i, v):
            if n < 1:
                continue
            piece = u
            for _ in range(n - 1):
                piece = self.F_op(i, piece)
            out = out + piece.scale(RatFunc(1) / RatFunc(qfact(n - 1)))
        return out

    def theta_mod_ftilde(self, i, v):
        out = ThetaClassVector(self.alg.zero(), self)
        for n, u in self._qboson_components(i, v):
            piece = u
            for _ in range(n + 1):
                piece = self.F_op(i, piece)
            out = out + piece.scale(RatFunc(1) / RatFunc(qfact(n + 1)))
        return out

    def theta_mod_ops(self, i, v):
        return self.theta_mod_etilde(i, v), self.theta_mod_ftilde(i, v)


def _cartan(i, j):
    from .multisegment import cartan

    return cartan(i, j)


def theta_sym_key(m):
    return content_key(mseg_symcontent(m))
