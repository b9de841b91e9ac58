"""Theta-restricted multisegments and the symmetric-crystal operators.

A multisegment is theta-restricted when every segment <i,j> satisfies
-j <= i <= j (the involution being i -> -i).  For k > 0 the operators at
index -k follow the four-case closed formulas; the plus-minus signature
algorithm is implemented independently as an oracle.  Operators at positive
index k are the ordinary type-A ones.
"""

from __future__ import annotations

from collections import Counter

from .multisegment import (
    Multisegment,
    Segment,
    enumerate_multisegments,
    epsilon as a_epsilon,
    etilde as a_etilde,
    ftilde as a_ftilde,
    signature_ops as a_signature_ops,
    window_segments,
)


def check_theta_restricted(m):
    """Raise ValueError naming the first offending segment, if any."""
    for seg, _ in m:
        if not seg.is_theta_restricted():
            raise ValueError(
                f"segment <{seg.i},{seg.j}> violates the theta restriction -j <= i"
            )
    return m


def symmetrized_content(m):
    """Multiset of absolute letter indices, as a Counter."""
    c = Counter()
    for k, n in m.content().items():
        c[abs(k)] += n
    return c


# ---------------------------------------------------------------------------
# closed formulas (Def-style route)
# ---------------------------------------------------------------------------

def _selection_order(k, top):
    """Candidate indices, largest first: ..., k+2, k, -k+2, -k+4, ..., k-2."""
    order = list(range(top, k, -2))  # ell > k, descending
    order.append(k)
    order.extend(range(-k + 2, k - 1, 2))  # -k+2 down to k-2 in rank
    return order


def _theta_A_values(k, m):
    if k <= 0 or k % 2 == 0:
        raise ValueError(f"index must be positive odd, got {k}")
    top = k
    for seg, _ in m:
        top = max(top, seg.j + 2, -seg.i + 2)
    vals = {}
    # ell > k
    acc = 0
    for ell in range(top, k, -2):
        acc += m.mult(-k, ell) - m.mult(-k + 2, ell + 2)
        vals[ell] = acc
    head = (
        sum(m.mult(-k, ell) - m.mult(-k + 2, ell) for ell in range(k + 2, top + 1, 2))
        + 2 * m.mult(-k, k)
    )
    vals[k] = head + (m.mult(-k + 2, k) % 2)
    # -k+2 <= j <= k-2
    base = head - 2 * m.mult(-k + 2, k - 2)
    run = 0
    for j in range(-k + 2, k - 1, 2):
        run += m.mult(j + 2, k)
        if j > -k + 2:
            run -= m.mult(j, k - 2)
        vals[j] = base + run
    return vals, _selection_order(k, top)


def theta_epsilon(k, m):
    """epsilon_{-k}(m) for k > 0, clamped at 0."""
    vals, _ = _theta_A_values(k, m)
    return max(0, max(vals.values()))


def theta_Ftilde(k, m):
    """The operator at index -k (always defined)."""
    vals, order = _theta_A_values(k, m)
    eps = max(0, max(vals.values()))
    n_f = next(ell for ell in reversed(order) if vals[ell] == eps)
    if n_f > k:
        out = m.remove(Segment(-k + 2, n_f)).add(Segment(-k, n_f))
    elif n_f == k and m.mult(-k + 2, k) % 2 == 1:
        out = m.remove(Segment(-k + 2, k)).add(Segment(-k, k))
    elif n_f == k:
        out = m.add(Segment(-k + 2, k))
        if k != 1:
            out = out.remove(Segment(-k + 2, k - 2))
    else:
        out = m.add(Segment(n_f + 2, k))
        if n_f != k - 2:
            out = out.remove(Segment(n_f + 2, k - 2))
    return check_theta_restricted(out)


def theta_Etilde(k, m):
    """The operator at index -k; None when epsilon_{-k}(m) = 0."""
    vals, order = _theta_A_values(k, m)
    eps = max(0, max(vals.values()))
    if eps == 0:
        return None
    n_e = next(ell for ell in order if vals[ell] == eps)
    if n_e > k:
        out = m.remove(Segment(-k, n_e)).add(Segment(-k + 2, n_e))
    elif n_e == k and m.mult(-k + 2, k) % 2 == 0:
        out = m.remove(Segment(-k, k)).add(Segment(-k + 2, k))
    elif n_e == k:
        out = m.remove(Segment(-k + 2, k))
        if k != 1:
            out = out.add(Segment(-k + 2, k - 2))
    else:
        out = m.remove(Segment(n_e + 2, k))
        if n_e != k - 2:
            out = out.add(Segment(n_e + 2, k - 2))
    return check_theta_restricted(out)


# ---------------------------------------------------------------------------
# signature algorithm (Remark-style route, independent oracle)
# ---------------------------------------------------------------------------

def _theta_signature(k, m):
    """Reduced sign sequence as a list of (sign, segment) pairs."""
    top = k
    for seg, _ in m:
        top = max(top, seg.j)
    signs = []

    def emit(sign, seg, copies=1):
        signs.extend((sign, seg) for _ in range(copies))

    for j in range(top, k, -2):
        lo = Segment(-k, j)
        hi = Segment(-k + 2, j)
        emit("-", lo, m.entries.get(lo, 0))
        emit("+", hi, m.entries.get(hi, 0))
    center = Segment(-k, k)
    emit("-", center, 2 * m.entries.get(center, 0))
    odd_seg = Segment(-k + 2, k)
    if m.entries.get(odd_seg, 0) % 2 == 1:
        emit("-", odd_seg)
        emit("+", odd_seg)
    if k > 1:
        dbl = Segment(-k + 2, k - 2)
        emit("+", dbl, 2 * m.entries.get(dbl, 0))
    for i in range(-k + 4, k + 1, 2):
        upper = Segment(i, k)
        emit("-", upper, m.entries.get(upper, 0))
        if i <= k - 2:
            lower = Segment(i, k - 2)
            emit("+", lower, m.entries.get(lower, 0))
    reduced = []
    for item in signs:
        if reduced and reduced[-1][0] == "+" and item[0] == "-":
            reduced.pop()
        else:
            reduced.append(item)
    return reduced


def theta_signature_ops(k, m):
    """(epsilon, Etilde result, Ftilde result) via the signature algorithm."""
    if k <= 0 or k % 2 == 0:
        raise ValueError(f"index must be positive odd, got {k}")
    reduced = _theta_signature(k, m)
    minus = [seg for sign, seg in reduced if sign == "-"]
    plus = [seg for sign, seg in reduced if sign == "+"]
    eps = len(minus)

    if minus:
        seg = minus[-1]  # rightmost -
        if seg.i == -k:
            e_out = m.remove(seg).add(Segment(-k + 2, seg.j))
        elif seg == Segment(-k + 2, k):
            e_out = m.remove(seg)
            if k != 1:
                e_out = e_out.add(Segment(-k + 2, k - 2))
        else:  # <j,k> with j > -k+2; drop to <j,k-2> when that is a segment
            e_out = m.remove(seg)
            if seg.i <= k - 2:
                e_out = e_out.add(Segment(seg.i, k - 2))
    else:
        e_out = None

    if plus:
        seg = plus[0]  # leftmost +
        if seg.j > k:  # <-k+2, j>
            f_out = m.remove(seg).add(Segment(-k, seg.j))
        elif seg.j == k:  # the + of the odd <-k+2,k> pair
            f_out = m.remove(seg).add(Segment(-k, k))
        else:  # <j, k-2>, including the ++ segment
            f_out = m.remove(seg).add(Segment(seg.i, k))
    else:
        f_out = m.add(Segment(k, k))
    if e_out is not None:
        check_theta_restricted(e_out)
    return eps, e_out, check_theta_restricted(f_out)


# ---------------------------------------------------------------------------
# positive indices and the full crystal interface
# ---------------------------------------------------------------------------

def theta_ops_positive(k, m):
    """(epsilon, Etilde result, Ftilde result) at positive index k (type-A rule)."""
    if k <= 0 or k % 2 == 0:
        raise ValueError(f"index must be positive odd, got {k}")
    eps, e_out, f_out = a_signature_ops(k, m)
    if e_out is not None:
        check_theta_restricted(e_out)
    return eps, e_out, check_theta_restricted(f_out)


def crystal_eps(i, m):
    """epsilon_i on the theta crystal, any odd i."""
    return theta_epsilon(-i, m) if i < 0 else a_epsilon(i, m)


def crystal_E(i, m):
    return theta_Etilde(-i, m) if i < 0 else a_etilde(i, m)


def crystal_F(i, m):
    out = theta_Ftilde(-i, m) if i < 0 else a_ftilde(i, m)
    return check_theta_restricted(out)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def theta_window_segments(window):
    if set(window) != {-i for i in window}:
        raise ValueError("theta enumeration needs a negation-symmetric window")
    return [s for s in window_segments(window) if s.is_theta_restricted()]


def enumerate_theta(window, max_degree):
    """All theta-restricted multisegments in the window, degree <= max_degree."""
    segs = theta_window_segments(window)
    return enumerate_multisegments(window, max_degree, segments=segs)


def theta_of_symmetrized_content(window, content):
    """Theta-restricted multisegments in the window of a given symmetrized content."""
    content = {k: v for k, v in content.items() if v}
    degree = sum(content.values())
    return [
        m for m in enumerate_theta(window, degree)
        if m.degree() == degree and dict(symmetrized_content(m)) == content
    ]
