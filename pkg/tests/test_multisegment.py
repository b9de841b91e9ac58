import pytest
from hypothesis import given, settings, strategies as st

from symcrys.multisegment import (
    Multisegment,
    Segment,
    cmp_cry,
    cmp_cry_multiseg,
    cmp_cry_multiseg_raw,
    cmp_pbw,
    enumerate_multisegments,
    epsilon,
    etilde,
    ftilde,
    multisegments_of_content,
    signature_ops,
)


def M(*pairs):
    return Multisegment({Segment(i, j): m for (i, j, m) in pairs})


# -- segments and orderings --------------------------------------------------

def test_segment_validation():
    with pytest.raises(ValueError):
        Segment(2, 4)
    with pytest.raises(ValueError):
        Segment(3, 1)


def test_pbw_ordering_examples():
    assert cmp_pbw(Segment(1, 1), Segment(-1, 1)) == 1
    assert cmp_pbw(Segment(-1, 1), Segment(-1, -1)) == 1
    assert cmp_pbw(Segment(3, 3), Segment(3, 3)) == 0


def test_crystal_ordering_examples():
    assert cmp_cry(Segment(-1, 1), Segment(1, 1)) == 1
    assert cmp_cry(Segment(1, 1), Segment(-1, -1)) == 1
    s = Segment(-3, 5)
    assert cmp_cry(s, s) == 0


def test_orderings_differ():
    # the two orders disagree on segments with equal right end
    assert cmp_pbw(Segment(1, 1), Segment(-1, 1)) == 1
    assert cmp_cry(Segment(1, 1), Segment(-1, 1)) == -1


def test_cry_multiseg_requires_equal_content():
    with pytest.raises(ValueError):
        cmp_cry_multiseg(M((1, 1, 1)), M((3, 3, 1)))
    assert cmp_cry_multiseg(M((1, 3, 1)), M((1, 1, 1), (3, 3, 1))) == 1
    # the raw comparator tolerates distinct contents (used for symmetric blocks)
    assert cmp_cry_multiseg_raw(M((1, 1, 1)), M((3, 3, 1))) != 0


segments = st.builds(
    lambda a, b: Segment(2 * min(a, b) + 1, 2 * max(a, b) + 1),
    st.integers(-3, 3),
    st.integers(-3, 3),
)


@given(segments, segments, segments)
@settings(max_examples=100, deadline=None)
def test_orders_are_total(a, b, c):
    for cmp in (cmp_pbw, cmp_cry):
        assert cmp(a, b) == -cmp(b, a)
        if cmp(a, b) >= 0 and cmp(b, c) >= 0:
            assert cmp(a, c) >= 0
        assert (cmp(a, b) == 0) == (a == b)


# -- multisegment basics -----------------------------------------------------

def test_content_and_degree():
    m = M((-1, 3, 1), (3, 3, 2))
    assert dict(m.content()) == {-1: 1, 1: 1, 3: 3}
    assert m.degree() == 5


def test_json_round_trip():
    m = M((-1, 1, 2), (1, 1, 1))
    assert Multisegment.from_json(m.to_json()) == m
    assert Multisegment.from_json("[]") == Multisegment.empty()


# -- crystal operators: frozen examples -------------------------------------

def test_epsilon_examples():
    assert epsilon(1, Multisegment.empty()) == 0
    assert epsilon(1, M((1, 1, 1))) == 1
    assert epsilon(1, M((3, 3, 1))) == 0


def test_etilde_ftilde_examples():
    assert ftilde(1, Multisegment.empty()) == M((1, 1, 1))
    assert ftilde(1, M((3, 3, 1))) == M((1, 3, 1))
    assert etilde(1, M((1, 3, 1))) == M((3, 3, 1))
    assert etilde(1, Multisegment.empty()) is None


def test_signature_examples():
    assert signature_ops(1, Multisegment.empty()) == (0, None, M((1, 1, 1)))
    assert signature_ops(1, M((3, 3, 1))) == (0, None, M((1, 3, 1)))


# -- oracle cross-check and axioms at test scale -----------------------------

SCALE = enumerate_multisegments(range(-5, 6, 2), 4)


def test_formulas_agree_with_signature():
    for m in SCALE:
        for i in range(-5, 6, 2):
            assert (epsilon(i, m), etilde(i, m), ftilde(i, m)) == signature_ops(i, m), (
                f"mismatch at {m}, index {i}"
            )


def test_crystal_axioms():
    for m in SCALE:
        for i in range(-5, 6, 2):
            f = ftilde(i, m)
            assert etilde(i, f) == m
            e = etilde(i, m)
            if e is not None:
                assert ftilde(i, e) == m
            n, cur = 0, m
            while (cur := etilde(i, cur)) is not None:
                n += 1
            assert n == epsilon(i, m)


def test_operators_shift_content_by_one():
    for m in SCALE[:120]:
        for i in (-1, 1, 3):
            f = ftilde(i, m)
            c, cf = m.content(), f.content()
            assert cf[i] == c[i] + 1
            del cf[i], c[i]
            assert c == cf


# -- enumeration -------------------------------------------------------------

def test_enumerate_small_windows():
    got = {str(m) for m in enumerate_multisegments([1], 2)}
    assert got == {"0", "<1>", "2<1>"}
    got = {str(m) for m in enumerate_multisegments([1, 3], 1)}
    assert got == {"0", "<1>", "<3>"}
    assert len(enumerate_multisegments([1, 3], 2)) == 7


def test_multisegments_of_content():
    ms = multisegments_of_content([1, 3], {1: 1, 3: 1})
    assert set(ms) == {M((1, 3, 1)), M((1, 1, 1), (3, 3, 1))}
