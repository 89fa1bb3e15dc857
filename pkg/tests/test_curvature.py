from fractions import Fraction

import pytest

from paratorsion.corpus import EINSTEIN_S
from paratorsion.curvature import (check_connection, curvature_data, levi_civita, predicates,
                                   ricci_contraction, s2_of_forms)
from paratorsion.exalg import Tensor, e
from paratorsion.liealg import LieAlgebra, parse_salamon
from paratorsion.pstruct import Structure, metric_tensor


def data(text):
    S = Structure(parse_salamon(text))
    return curvature_data(S), S


def test_abelian_connection_vanishes():
    C = levi_civita(Structure(LieAlgebra.abelian(4)))
    assert not any(x for plane in C.gamma for row in plane for x in row)


def test_connection_is_levi_civita():
    for text in ("0,0,0,12", "14,25,36,2*14,2*25,2*36", "0,0,46,0,12,0"):
        S = Structure(parse_salamon(text))
        assert check_connection(levi_civita(S), S)


def test_parakahler_curvature():
    D, S = data("24,0,0,0,0,35")
    assert D.riemann == Tensor.parse("[dd]|[dd]:-34|34", 6)
    p = predicates(D, S)
    assert p["ricci_flat"] and not p["flat"]


def test_w2w6_curvature():
    D, _ = data("0,0,46,0,12,0")
    assert D.riemann == Tensor.parse("[dd]|[dd]:26|26", 6)


def test_w3_8dim_curvature():
    D, _ = data("0,0,0,0,0,0,56,57")
    assert D.riemann == s2_of_forms(e(8, 5, 6), e(8, 4, 5)) * Fraction(-1, 4)


def test_nearly_parakahler_flat():
    D, S = data("0,0,0,-1/3*23,-1/3*31,-1/3*12")
    assert predicates(D, S)["flat"]


def test_ricci_examples():
    D, _ = data("0,0,0,0,45,46")
    assert D.ric_full == Tensor.parse("d|d:-4|4", 6)
    # e^4 = e^{n+1}: both examples live in the S²V block
    assert D.ric_second_V == D.ric_full and not D.ric_second_Vs and not D.ric_prime
    D, _ = data("-14,0,0,0,45,46")
    assert D.ric_full == Tensor.parse("d|d:4|4", 6)
    assert D.ric_second_V == D.ric_full


def test_abelian_all_zero():
    D, S = data("0,0,0,0")
    assert not D.riemann and not D.ric_full and D.s == 0


@pytest.mark.parametrize("t", sorted(EINSTEIN_S))
def test_einstein_family(t):
    D, S = data(f"14,25,36,{t}*14,{t}*25,{t}*36")
    s = predicates(D, S)["einstein"]
    assert s == EINSTEIN_S[t]
    assert (s == 0) == (t == 0)


def test_ricci_contraction_matches_oracle():
    for text in ("0,0,46,0,12,0", "14,25,36,14,25,36", "0,0,0,0,0,0,56,57"):
        D, S = data(text)
        assert ricci_contraction(D.riemann, S.n) == D.ric_full


def _b(m, i, j):
    return e(m, i, j) if i != j else e(m, 1, 1)


def _sum(terms, m):
    from paratorsion.curvature import S2L2
    return sum(terms, Tensor.zero(m, S2L2))


def generators(n):
    """The six highest-weight test vectors, with free indices summed over 1..n."""
    from paratorsion.curvature import tensor_of_forms

    m, r = 2 * n, range(1, n + 1)
    w1 = _sum([s2_of_forms(_b(m, n + i, n + j), _b(m, i, j)) for i in r for j in r], m)
    w2 = _sum([tensor_of_forms(_b(m, i, n + i), _b(m, j, n + j)) for i in r for j in r], m)
    w3 = _sum([tensor_of_forms(_b(m, j, n + i), _b(m, i, n + j)) for i in r for j in r], m)
    v1 = _sum([s2_of_forms(_b(m, n, k + n), _b(m, k, n + 1)) for k in r], m)
    v2 = _sum([s2_of_forms(_b(m, n, n + 1), _b(m, k, n + k)) for k in r], m)
    v3 = _sum([s2_of_forms(_b(m, n + 1, k + n), _b(m, k, n)) for k in r], m)
    return {"w1": w1, "w2": w2, "w3": w3, "v1": v1, "v2": v2, "v3": v3}


def generator_ricci(n):
    g = metric_tensor(n)
    E = Tensor(2 * n, g.shape, {((n,), (n + 1,)): 1, ((n + 1,), (n,)): 1})
    return {"w1": g * (-2 * (n - 1)), "w2": g, "w3": g * n,
            "v1": E * n, "v2": E * 2, "v3": E * (n - 2)}


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("name", ["w1", "w2", "w3", "v1", "v2", "v3"])
def test_generator_calibration(n, name):
    assert ricci_contraction(generators(n)[name], n) == generator_ricci(n)[name]
