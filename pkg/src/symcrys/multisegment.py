"""Segments, multisegments, PBW/crystal orderings and the type-A crystal on them.

Indices are odd integers.  The crystal operators come in two independent
implementations: the closed formulas (epsilon / etilde / ftilde) and the
plus-minus signature algorithm (signature_ops); they must agree everywhere
and the test suite cross-checks them exhaustively.
"""

from __future__ import annotations

import functools
import json
from collections import Counter
from dataclasses import dataclass


def cartan(i, j):
    """The pairing (alpha_i, alpha_j) on odd indices."""
    if i == j:
        return 2
    if abs(i - j) == 2:
        return -1
    return 0


@dataclass(frozen=True, order=False)
class Segment:
    """The interval of odd integers from i to j, denoted <i,j>."""

    i: int
    j: int

    def __post_init__(self):
        if self.i % 2 == 0 or self.j % 2 == 0:
            raise ValueError(f"segment endpoints must be odd: <{self.i},{self.j}>")
        if self.i > self.j:
            raise ValueError(f"segment needs i <= j: <{self.i},{self.j}>")

    def indices(self):
        return range(self.i, self.j + 1, 2)

    def length(self):
        return (self.j - self.i) // 2 + 1

    def is_theta_restricted(self):
        return -self.j <= self.i

    def pbw_key(self):
        """Sort key realizing the PBW ordering (bigger key = bigger segment)."""
        return (self.j, self.i)

    def cry_key(self):
        """Sort key realizing the crystal ordering."""
        return (self.j, -self.i)

    def __str__(self):
        return f"<{self.i}>" if self.i == self.j else f"<{self.i},{self.j}>"


def cmp_pbw(s1, s2):
    """PBW ordering: -1, 0 or 1."""
    a, b = s1.pbw_key(), s2.pbw_key()
    return (a > b) - (a < b)


def cmp_cry(s1, s2):
    """Crystal ordering on segments: -1, 0 or 1."""
    a, b = s1.cry_key(), s2.cry_key()
    return (a > b) - (a < b)


class Multisegment:
    """A finite multiset of segments (immutable)."""

    __slots__ = ("entries", "_hash")

    def __init__(self, entries=None):
        d = {}
        if entries is not None:
            items = entries.items() if isinstance(entries, dict) else entries
            for seg, mult in items:
                if not isinstance(seg, Segment):
                    seg = Segment(*seg)
                if mult < 0:
                    raise ValueError(f"negative multiplicity for {seg}")
                if mult:
                    d[seg] = d.get(seg, 0) + mult
        self.entries = d
        self._hash = hash(frozenset(d.items()))

    @staticmethod
    def empty():
        return Multisegment()

    @staticmethod
    def single(i, j=None, mult=1):
        return Multisegment({Segment(i, j if j is not None else i): mult})

    def __eq__(self, other):
        if not isinstance(other, Multisegment):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def mult(self, i, j=None):
        """Multiplicity of <i,j>; 0 for formally invalid index pairs."""
        if j is None:
            j = i
        if i > j or i % 2 == 0 or j % 2 == 0:
            return 0
        return self.entries.get(Segment(i, j), 0)

    def add(self, seg, n=1):
        d = dict(self.entries)
        d[seg] = d.get(seg, 0) + n
        if d[seg] < 0:
            raise ValueError(f"removing absent segment {seg}")
        return Multisegment(d)

    def remove(self, seg, n=1):
        return self.add(seg, -n)

    def content(self):
        """Letter count per index: <i,j> contributes 1 to each of i, i+2, ..., j."""
        c = Counter()
        for seg, mult in self.entries.items():
            for k in seg.indices():
                c[k] += mult
        return c

    def degree(self):
        return sum(seg.length() * mult for seg, mult in self.entries.items())

    def segments_desc_cry(self):
        """Segments present, largest first in the crystal ordering."""
        return sorted(self.entries, key=Segment.cry_key, reverse=True)

    def segments_desc_pbw(self):
        return sorted(self.entries, key=Segment.pbw_key, reverse=True)

    def is_theta_restricted(self):
        return all(seg.is_theta_restricted() for seg in self.entries)

    def __str__(self):
        if not self.entries:
            return "0"
        parts = []
        for seg in self.segments_desc_pbw():
            m = self.entries[seg]
            parts.append(str(seg) if m == 1 else f"{m}{seg}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Multisegment({str(self)})"

    # -- JSON wire format --------------------------------------------------

    def to_json_obj(self):
        return [
            {"i": seg.i, "j": seg.j, "mult": mult}
            for seg, mult in sorted(self.entries.items(), key=lambda kv: kv[0].pbw_key(), reverse=True)
        ]

    def to_json(self):
        return json.dumps(self.to_json_obj())

    @staticmethod
    def from_json_obj(obj):
        if not isinstance(obj, list):
            raise ValueError("multisegment JSON must be an array")
        entries = {}
        for rec in obj:
            seg = Segment(rec["i"], rec["j"])
            entries[seg] = entries.get(seg, 0) + rec["mult"]
        return Multisegment(entries)

    @staticmethod
    def from_json(text):
        return Multisegment.from_json_obj(json.loads(text))


def cmp_cry_multiseg_raw(m1, m2):
    """Lexicographic crystal comparison, scanning segments in decreasing
    crystal order; no content precondition (used for theta blocks)."""
    segs = sorted(set(m1.entries) | set(m2.entries), key=Segment.cry_key, reverse=True)
    for seg in segs:
        a, b = m1.entries.get(seg, 0), m2.entries.get(seg, 0)
        if a != b:
            return 1 if a > b else -1
    return 0


def cmp_cry_multiseg(m1, m2):
    """Crystal ordering on multisegments of one weight block."""
    if m1.content() != m2.content():
        raise ValueError("crystal comparison requires equal content")
    return cmp_cry_multiseg_raw(m1, m2)


cry_sort_key = functools.cmp_to_key(cmp_cry_multiseg_raw)


# ---------------------------------------------------------------------------
# crystal operators, closed-formula route
# ---------------------------------------------------------------------------

def _A_values(i, m):
    """A_k^{(i)}(m) for odd k from i up to beyond the support of m."""
    top = i
    for seg in m.entries:
        if seg.i == i:
            top = max(top, seg.j)
        if seg.i == i + 2:
            top = max(top, seg.j - 2)
    ks = list(range(i, top + 3, 2))
    out = {}
    acc = 0
    for k in reversed(ks):
        acc += m.mult(i, k) - m.mult(i + 2, k + 2)
        out[k] = acc
    return out


def epsilon(i, m):
    """epsilon_i(m) = max(0, max_k A_k^{(i)}(m))."""
    vals = _A_values(i, m)
    return max(0, max(vals.values()))


def etilde(i, m):
    """The modified root operator, or None when epsilon_i(m) = 0."""
    vals = _A_values(i, m)
    eps = max(0, max(vals.values()))
    if eps == 0:
        return None
    k_e = max(k for k, v in vals.items() if v == eps)
    out = m.remove(Segment(i, k_e))
    if k_e != i:
        out = out.add(Segment(i + 2, k_e))
    return out


def ftilde(i, m):
    vals = _A_values(i, m)
    eps = max(0, max(vals.values()))
    k_f = min(k for k, v in vals.items() if v == eps)
    out = m.add(Segment(i, k_f))
    if k_f != i:
        out = out.remove(Segment(i + 2, k_f))
    return out


# ---------------------------------------------------------------------------
# crystal operators, signature-algorithm route (independent oracle)
# ---------------------------------------------------------------------------

def signature_ops(i, m):
    """(epsilon, etilde result, ftilde result) via the +/- signature algorithm.

    Scans the segments <i,j> (sign -) and <i+2,j> (sign +) in decreasing
    crystal order and cancels +- pairs.
    """
    signs = []  # (sign, segment)
    relevant = []
    for seg in m.entries:
        if seg.i == i:
            relevant.append((seg, "-"))
        elif seg.i == i + 2:
            relevant.append((seg, "+"))
    relevant.sort(key=lambda sv: sv[0].cry_key(), reverse=True)
    for seg, sign in relevant:
        signs.extend((sign, seg) for _ in range(m.entries[seg]))
    reduced = []
    for item in signs:
        if reduced and reduced[-1][0] == "+" and item[0] == "-":
            reduced.pop()
        else:
            reduced.append(item)
    minus = [seg for sign, seg in reduced if sign == "-"]
    plus = [seg for sign, seg in reduced if sign == "+"]
    eps = len(minus)

    if minus:
        seg = minus[-1]  # rightmost -
        e_out = m.remove(seg).add(Segment(i + 2, seg.j)) if seg.j != i else m.remove(seg)
    else:
        e_out = None

    if plus:
        seg = plus[0]  # leftmost +
        f_out = m.remove(seg).add(Segment(i, seg.j))
    else:
        f_out = m.add(Segment(i, i))
    return eps, e_out, f_out


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def window_segments(window):
    """All segments whose index set lies inside the window."""
    win = sorted(window)
    out = []
    for a in range(len(win)):
        for b in range(a, len(win)):
            i, j = win[a], win[b]
            if all(k in set(win) for k in range(i, j + 1, 2)):
                out.append(Segment(i, j))
    return out


def enumerate_multisegments(window, max_degree, segments=None):
    """All multisegments supported on the window with degree <= max_degree."""
    segs = segments if segments is not None else window_segments(window)
    out = []

    def rec(idx, remaining, acc):
        if idx == len(segs):
            out.append(Multisegment(dict(acc)))
            return
        seg = segs[idx]
        size = seg.length()
        n = 0
        while n * size <= remaining:
            if n:
                acc[seg] = n
            rec(idx + 1, remaining - n * size, acc)
            n += 1
        acc.pop(seg, None)

    rec(0, max_degree, {})
    return out


def multisegments_of_content(window, content):
    """All window multisegments with the given content (an index->count map)."""
    content = {k: v for k, v in content.items() if v}
    degree = sum(content.values())
    return [
        m for m in enumerate_multisegments(window, degree)
        if m.degree() == degree and dict(m.content()) == content
    ]
