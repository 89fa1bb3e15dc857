import itertools
from fractions import Fraction

import pytest

from paratorsion import exalg
from paratorsion.exalg import Form, ParseError, Tensor, e, pair


def test_wedge_basis():
    assert e(4, 1).wedge(e(4, 2)) == e(4, 1, 2)
    assert e(4, 2).wedge(e(4, 1)) == e(4, 1, 2) * -1


def test_wedge_repeated_index():
    assert not e(4, 1, 2).wedge(e(4, 1, 2))


def test_F_squared_n3():
    F = e(6, 1, 4) + e(6, 2, 5) + e(6, 3, 6)
    assert F.wedge(F) == (e(6, 1, 4, 2, 5) + e(6, 1, 4, 3, 6) + e(6, 2, 5, 3, 6)) * 2


def test_unsorted_keys_normalize_sign():
    assert Form(4, 2, {(2, 1): 3}) == Form(4, 2, {(1, 2): -3})
    assert not Form(4, 2, {(1, 1): 5})


def test_contract_first_slot():
    assert e(6, 1, 4, 5).contract(4) == e(6, 1, 5) * -1
    assert e(6, 1).contract(1) == Form.const(6, 1)


def test_bivector_hook():
    assert e(6, 1, 4, 5).hook(4, 5) == e(6, 1)


def test_contract_is_antiderivation(rng):
    m = 6
    for _ in range(30):
        a = _random_form(rng, m, rng.randint(1, 3))
        b = _random_form(rng, m, rng.randint(1, 3))
        i = rng.randint(1, m)
        lhs = a.wedge(b).contract(i)
        rhs = a.contract(i).wedge(b) + a.wedge(b.contract(i)) * (-1) ** a.deg
        assert lhs == rhs


def test_pair_one_forms():
    n = 3
    f4 = Form(6, 1, {(4,): 2, (5,): -1, (6,): Fraction(1, 2)})
    f8 = Form(6, 1, {(1,): 3, (2,): 5, (3,): 4})
    assert pair(f4, f8) == 2 * 3 - 5 + 2


def test_pair_zero():
    t = Tensor.parse("d|[dd]:1|23", 6)
    assert pair(t, Tensor.zero(6, t.shape)) == 0


def test_form_text_round_trip(rng):
    for m in (4, 6, 8, 10):
        for _ in range(10):
            a = _random_form(rng, m, rng.randint(0, 3))
            assert Form.parse(a.to_text(), m, a.deg) == a


def test_tensor_text_round_trip():
    t = Tensor.parse("[dd]|[dd]:-1/4*45|56-1/4*56|45", 8)
    assert Tensor.parse(t.to_text(), 8) == t


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        Form.parse("12+1x", 4, 2)
    assert info.value.pos is not None


def test_type_components_sum(rng):
    for _ in range(20):
        a = _random_form(rng, 6, rng.randint(1, 4))
        parts = a.components()
        assert sum(parts.values(), Form.zero(6, a.deg)) == a
        for (p, q), c in parts.items():
            assert c.component(p, q) == c


def test_fraction_coefficients_exact():
    a = Form.parse("1/3*12-2/6*12", 4, 2)
    assert not a


def test_kernel_is_reported():
    assert exalg.KERNEL in ("python", "compiled")


def _random_form(rng, m, k):
    keys = list(itertools.combinations(range(1, m + 1), k))
    chosen = rng.sample(keys, min(len(keys), rng.randint(1, 4)))
    return Form(m, k, {key: Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for key in chosen})


def test_kernels_agree(rng):
    compiled = pytest.importorskip("paratorsion._kernel")
    from paratorsion import _kernel_py as pure

    for _ in range(200):
        a = _random_form(rng, 8, rng.randint(0, 4))
        b = _random_form(rng, 8, rng.randint(0, 4))
        i = rng.randint(1, 8)
        assert compiled.wedge_terms(a._t, b._t) == pure.wedge_terms(a._t, b._t)
        assert compiled.contract_terms(i, a._t) == pure.contract_terms(i, a._t)
