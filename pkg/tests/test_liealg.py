import itertools
from fractions import Fraction

import pytest

from paratorsion.corpus import ENTRIES, W1_MODIFIED, algebras
from paratorsion.exalg import Form, ParseError, e
from paratorsion.linalg import inverse
from paratorsion.liealg import (LieAlgebra, algebra_flags, change_coframe, check_jacobi,
                                instantiate, parse_salamon)


def test_parse_goldberg():
    L = parse_salamon("0,0,0,12")
    assert L.dim == 4
    assert L.d(e(4, 4)) == e(4, 1, 2)
    assert not any(L.d(e(4, k)) for k in (1, 2, 3))


def test_parse_fractional_coefficients():
    L = parse_salamon("0,0,0,-1/3*23,-1/3*31,-1/3*12")
    assert L.d(e(6, 5)) == e(6, 1, 3) * Fraction(1, 3)


def test_parse_abelian():
    L = parse_salamon("0,0,0,0")
    assert L == LieAlgebra.abelian(4)


def test_parse_dotted_indices_above_nine():
    L = parse_salamon("0,0,0,0,0,0,0,0,0,1.2")
    assert L.d(e(10, 10)) == e(10, 1, 2)


@pytest.mark.parametrize("bad", ["0,0,1x2", "0,0,0,123", "0,,0,0", "0,0,0,1/0*12"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_salamon(bad)


def test_d_on_forms():
    L = parse_salamon("0,0,0,12")
    assert not L.d(Form.const(4, 7))
    assert L.d(e(4, 3, 4)) == e(4, 1, 2, 3) * -1


def test_jacobi_ok():
    assert check_jacobi(parse_salamon("0,0,0,12")).ok
    assert check_jacobi(LieAlgebra.abelian(6)).ok


def test_jacobi_witness():
    rep = check_jacobi(parse_salamon("23,31,12,14"))
    assert not rep.ok
    k, w = rep.witness
    assert k == 4 and w == e(4, 2, 3, 4)


def test_flags():
    assert algebra_flags(parse_salamon("0,0,0,12")) == {"nilpotent": True, "unimodular": True}
    assert algebra_flags(parse_salamon("14,25,36,14,25,36")) == {"nilpotent": False, "unimodular": False}
    assert algebra_flags(LieAlgebra.abelian(4)) == {"nilpotent": True, "unimodular": True}


def test_d_squared_vanishes_on_corpus(rng):
    for name, L in algebras():
        m = L.dim
        keys = list(itertools.combinations(range(1, m + 1), 2))
        for _ in range(5):
            a = Form(m, 2, {k: rng.randint(-3, 3) for k in rng.sample(keys, 4)})
            assert not L.d(L.d(a)), name


def test_salamon_round_trip():
    for entry in ENTRIES:
        L = parse_salamon(entry.salamon)
        assert parse_salamon(L.to_salamon()) == L


def test_change_coframe_identity_and_inverse(rng):
    L = parse_salamon("0,0,0,0,12,34,13,0")
    eye = [[Fraction(int(i == j)) for j in range(8)] for i in range(8)]
    assert change_coframe(L, eye) == L
    from paratorsion.corpus import random_coframe
    M = random_coframe(rng, 8)
    assert change_coframe(change_coframe(L, M), inverse(M)) == L


def test_change_coframe_singular():
    L = parse_salamon("0,0,0,12")
    with pytest.raises(ValueError):
        change_coframe(L, [[1, 0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


@pytest.mark.parametrize("l2,l3", [(0, 0), (1, 2), (Fraction(1, 2), -1)])
def test_w1_modification_is_nilpotent(l2, l3):
    L = parse_salamon(instantiate(W1_MODIFIED, {"l2": l2, "l3": l3}))
    M = [[l2, -1, 0, 0, 0, 0],
         [-l3, 0, 1, 0, 0, 0],
         [Fraction(-1, 6), 0, 0, 1, l2, l3],
         [Fraction(1, 3), 0, 0, 1, l2, l3],
         [0, 0, 0, 0, 0, -1],
         [0, 0, 0, 0, -1, 0]]
    M = [[Fraction(x) for x in row] for row in M]
    assert change_coframe(L, M) == parse_salamon("0,0,0,12,14,24")
