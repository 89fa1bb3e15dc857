import itertools
from fractions import Fraction

import pytest

from paratorsion.corpus import table1_family
from paratorsion.curvature import metric_matrix
from paratorsion.exalg import Form, Tensor, e
from paratorsion.liealg import LieAlgebra, parse_salamon
from paratorsion.pstruct import (NotDirectError, PreconditionError, Structure, bidegree_basis,
                                 identify_S2, lambda_closed, lambda_op, primitive_part,
                                 split_F_trace)


def test_standard_structure_goldberg():
    S = Structure(parse_salamon("0,0,0,12"))
    assert S.n == 2
    assert S.F == e(4, 1, 3) + e(4, 2, 4)
    assert S.alpha == e(4, 1, 2)
    assert S.beta == e(4, 3, 4)


def test_standard_structure_abelian():
    assert Structure(LieAlgebra.abelian(6)).F == e(6, 1, 4) + e(6, 2, 5) + e(6, 3, 6)


def test_table1_row1_wraps():
    S = Structure(table1_family(1, 1, 1, 0))
    assert S.n == 4 and S.dim == 8


def test_odd_dimension_rejected():
    with pytest.raises(PreconditionError):
        Structure(parse_salamon("0,0,12"))


def test_jacobi_failure_rejected():
    with pytest.raises(PreconditionError):
        Structure(parse_salamon("23,31,12,14"))


def test_type_decomposition_examples():
    assert e(4, 1, 2).components() == {(2, 0): e(4, 1, 2)}
    F = Structure(LieAlgebra.abelian(4)).F
    assert F.components() == {(1, 1): F}


def test_goldberg_derivatives_by_type():
    S = Structure(parse_salamon("0,0,0,12"))
    assert not S.d(S.F)
    db = S.d(S.beta)
    assert db == e(4, 1, 2, 3) * -1
    assert set(db.components()) == {(2, 1)}


def test_lambda_F_is_one():
    for n in (2, 3, 4):
        F = Structure(LieAlgebra.abelian(2 * n)).F
        assert lambda_op(F) == Form.const(2 * n, 1)


def test_lambda_hand_value_n3():
    assert lambda_op(e(6, 1, 4, 5)) == e(6, 5) * Fraction(1, 2)


def test_lambda_primitive_is_zero():
    assert not lambda_op(e(6, 1, 5))


def test_split_F_trace():
    F = e(4, 1, 3) + e(4, 2, 4)
    assert split_F_trace(F) == (Form.zero(4, 2), 1)
    assert split_F_trace(e(4, 1, 4)) == (e(4, 1, 4), 0)
    assert split_F_trace(e(4, 1, 3)) == (e(4, 1, 3) - F * Fraction(1, 2), Fraction(1, 2))


@pytest.mark.parametrize("n", [3, 4])
def test_lambda_closed_form_on_basis(n):
    for pq in ((2, 1), (1, 2)):
        for key in bidegree_basis(n, *pq):
            a = Form.basis(2 * n, *key)
            assert lambda_op(a) == lambda_closed(a), key


@pytest.mark.parametrize("n,pq", [(2, (1, 1)), (3, (1, 1)), (3, (2, 1)), (3, (1, 2)),
                                  (3, (2, 2)), (4, (2, 2)), (4, (2, 1))])
def test_lambda_reconstruction(n, pq, rng):
    m = 2 * n
    F = Structure(LieAlgebra.abelian(m)).F
    keys = bidegree_basis(n, *pq)
    for _ in range(5):
        a = Form(m, sum(pq), {k: rng.randint(-3, 3) for k in rng.sample(keys, min(5, len(keys)))})
        a0 = primitive_part(a)
        assert a == a0 + F.wedge(lambda_op(a))
        assert not lambda_op(a0)


def test_lambda_not_direct_for_n2_bidegree_22():
    with pytest.raises(NotDirectError):
        lambda_op(e(4, 1, 2, 3, 4))


def test_lambda_unsupported_bidegree():
    with pytest.raises(ValueError):
        lambda_op(e(8, 1, 2, 3, 5))


def test_identify_S2_example():
    S = Structure(LieAlgebra.abelian(4))
    x = S.alpha.contract(1).wedge(e(4, 3))
    assert x == e(4, 2, 3)
    assert identify_S2(x, S, "V") == Tensor.parse("d|d:2*3|3", 4)


def test_identify_S2_zero_and_antisymmetric():
    S = Structure(LieAlgebra.abelian(6))
    assert not identify_S2(Form.zero(6, 3), S, "V")
    v, w = 1, 2
    img = lambda i, j: S.alpha.contract(i).wedge(e(6, 3 + j))
    assert not identify_S2(img(v, w) - img(w, v), S, "V")
    imgs = lambda i, j: S.beta.contract(3 + i).wedge(e(6, j))
    assert not identify_S2(imgs(v, w) - imgs(w, v), S, "V*")


def test_identify_S2_wrong_bidegree():
    with pytest.raises(ValueError):
        identify_S2(e(6, 1, 2, 3), Structure(LieAlgebra.abelian(6)), "V")


def test_K_anti_isometry():
    for n in (2, 3, 4):
        S = Structure(LieAlgebra.abelian(2 * n))
        g = metric_matrix(n)
        for i, j in itertools.product(range(2 * n), repeat=2):
            x = [Fraction(int(k == i)) for k in range(2 * n)]
            y = [Fraction(int(k == j)) for k in range(2 * n)]
            gxy = sum(x[a] * g[a][b] * y[b] for a in range(2 * n) for b in range(2 * n))
            kx, ky = S.K(x), S.K(y)
            gk = sum(kx[a] * g[a][b] * ky[b] for a in range(2 * n) for b in range(2 * n))
            assert gk == -gxy
