import random

import pytest

from symcrys.linalg import (
    SingularMatrixError,
    identity,
    inverse,
    is_identity,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    solve,
    solve_rect,
    solve_vector,
)
from symcrys.ratfunc import RatFunc, parse_ratfunc


def R(text):
    return parse_ratfunc(text)


def random_matrix(rng, n, m=None):
    m = n if m is None else m
    return [
        [
            RatFunc(rng.randint(-3, 3)) * RatFunc.q_power(rng.randint(-2, 2))
            for _ in range(m)
        ]
        for _ in range(n)
    ]


def test_solve_known_system():
    A = [[R("q"), R("1")], [R("0"), R("q^-1")]]
    x = solve_vector(A, [R("q^2 + 1"), R("q^-1")])
    assert x == [R("q"), R("1")]


def test_solve_random_round_trip():
    rng = random.Random(5)
    for n in (1, 2, 3, 4):
        for _ in range(4):
            A = random_matrix(rng, n)
            if rank(A) < n:
                continue
            x = [RatFunc(rng.randint(-4, 4)) for _ in range(n)]
            b = mat_vec(A, x)
            assert solve_vector(A, b) == x


def test_singular_detected():
    A = [[R("1"), R("q")], [R("q"), R("q^2")]]
    assert rank(A) == 1
    with pytest.raises(SingularMatrixError):
        solve_vector(A, [R("1"), R("0")])


def test_inverse():
    rng = random.Random(9)
    for _ in range(5):
        A = random_matrix(rng, 3)
        if rank(A) < 3:
            continue
        assert is_identity(mat_mul(A, inverse(A)))


def test_nullspace():
    A = [[R("1"), R("q"), R("0")], [R("0"), R("0"), R("1")]]
    basis = nullspace(A, ncols=3)
    assert len(basis) == 1
    v = basis[0]
    assert mat_vec(A, v) == [RatFunc.zero(), RatFunc.zero()]
    assert any(not x.is_zero() for x in v)


def test_solve_rect_consistent_and_not():
    A = [[R("1")], [R("q")]]
    x = solve_rect(A, [R("q^-1"), R("1")])
    assert x == [R("q^-1")]
    with pytest.raises(SingularMatrixError):
        solve_rect(A, [R("1"), R("1")])


def test_identity_helpers():
    assert is_identity(identity(3))
    bad = identity(2)
    bad[0][1] = R("q")
    assert not is_identity(bad)
