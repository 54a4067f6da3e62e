"""Field tower arithmetic, embeddings, text grammar and JSON round-trips."""

from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hesse_lab.field import (
    ComplexBall,
    ExtensionSpec,
    FieldTower,
    GFElement,
    PrimeField,
    TowerError,
    element_to_str,
    embed_complex,
    field_arith,
    parse_element,
    tower_create,
    tower_eps,
    tower_eps_i,
    tower_eps_i_cbrt2,
    tower_rationals,
    tower_zeta9,
)


def test_minpoly_reduction_kills_eps_relation():
    t = tower_eps()
    eps = t.symbol_element("eps")
    assert eps ** 2 + eps + 1 == 0


def test_eps_difference_squared_is_minus_three():
    t = tower_eps()
    eps = t.symbol_element("eps")
    assert (eps - eps ** 2) ** 2 == -3


def test_total_degree_multiplicative():
    assert tower_eps_i_cbrt2().total_degree == 12
    assert tower_eps_i().total_degree == 4
    assert tower_zeta9().total_degree == 6
    assert tower_rationals().total_degree == 1


def test_inverse_of_one_minus_eps():
    t = tower_eps()
    eps = t.symbol_element("eps")
    lhs = field_arith(t.one(), t.one() - eps, "div")
    assert lhs == (1 - eps ** 2) / 3


def test_eps_times_eps_squared_is_one():
    eps = tower_eps().symbol_element("eps")
    assert eps * eps ** 2 == 1


def test_sqrt3_squares_to_three():
    t = tower_eps_i()
    eps = t.symbol_element("eps")
    i = t.symbol_element("i")
    sqrt3 = -i * (eps - eps ** 2)
    assert sqrt3 ** 2 == 3
    # the chosen embeddings make this the positive square root
    val, rad = embed_complex(sqrt3, 96)
    with mp.workprec(128):
        assert abs(val - mp.sqrt(3)) < mp.mpf(2) ** -80


def test_embed_eps_128_bits():
    eps = tower_eps().symbol_element("eps")
    val, rad = embed_complex(eps, 128)
    with mp.workprec(160):
        ref = mp.mpc(mp.mpf(-1) / 2, mp.sqrt(3) / 2)
        assert abs(val - ref) < mp.mpf(2) ** -120
    assert rad < mp.mpf(2) ** -120


def test_embed_zero_is_exact():
    t = tower_eps()
    val, rad = embed_complex(t.zero(), 64)
    assert val == 0 and rad == 0


def test_embed_eps_difference_is_i_sqrt3():
    eps = tower_eps().symbol_element("eps")
    val, _ = embed_complex(eps - eps ** 2, 96)
    with mp.workprec(128):
        assert abs(val - mp.mpc(0, mp.sqrt(3))) < mp.mpf(2) ** -80


def test_embedding_refines_with_precision():
    x = tower_eps_i_cbrt2().symbol_element("cbrt2")
    _, rad_lo = embed_complex(x ** 2 + 5, 64)
    _, rad_hi = embed_complex(x ** 2 + 5, 256)
    assert rad_hi < rad_lo


def test_embedding_is_multiplicative_within_bounds():
    t = tower_eps_i_cbrt2()
    eps = t.symbol_element("eps")
    i = t.symbol_element("i")
    c = t.symbol_element("cbrt2")
    a = eps * 3 - i * c + 7
    b = c ** 2 - eps * i * Fraction(5, 3)
    va, ra = embed_complex(a, 128)
    vb, rb = embed_complex(b, 128)
    vab, rab = embed_complex(a * b, 128)
    with mp.workprec(192):
        slack = ra * abs(vb) + rb * abs(va) + ra * rb + rab
        assert abs(vab - va * vb) <= slack + mp.mpf(2) ** -100


def test_zeta9_tower():
    t = tower_zeta9()
    z = t.symbol_element("zeta9")
    assert z ** 6 + z ** 3 + 1 == 0
    assert z ** 9 == 1
    cube = z ** 3
    assert cube ** 2 + cube + 1 == 0
    val, _ = embed_complex(z, 96)
    with mp.workprec(128):
        ref = mp.expjpi(mp.mpf(2) / 9)
        assert abs(val - ref) < mp.mpf(2) ** -80


def test_division_by_zero_raises():
    t = tower_eps()
    with pytest.raises(ZeroDivisionError):
        t.one() / t.zero()


def test_mixed_tower_arithmetic_raises():
    a = tower_eps().symbol_element("eps")
    b = tower_zeta9().symbol_element("zeta9")
    with pytest.raises(TowerError):
        a + b


def test_non_monic_minpoly_rejected():
    with pytest.raises(TowerError):
        tower_create([ExtensionSpec("a", [1, 1, 2], complex(0, 1))])


def test_ambiguous_hint_rejected():
    # x^2 - 10^-8 has two roots within 1e-3 of 0
    with pytest.raises(TowerError):
        tower_create(
            [ExtensionSpec("a", [Fraction(-1, 10 ** 8), 0, 1], complex(0, 0))]
        )


def test_equality_is_structural():
    t = tower_eps()
    eps = t.symbol_element("eps")
    a = (eps + 1) * (eps - 1)
    b = eps ** 2 - 1
    assert a == b
    assert a.coords == b.coords
    assert hash(a) == hash(b)
    assert a != eps


def test_rational_detection():
    t = tower_eps_i()
    x = t.from_rational(Fraction(22, 7))
    assert x.is_rational() and x.rational_value() == Fraction(22, 7)
    assert not t.symbol_element("i").is_rational()


def test_text_grammar_round_trip():
    t = tower_eps_i_cbrt2()
    eps = t.symbol_element("eps")
    i = t.symbol_element("i")
    c = t.symbol_element("cbrt2")
    x = (eps + i * c) ** 3 - Fraction(7, 5) * c + 1
    s = element_to_str(x)
    assert parse_element(s, t) == x
    assert parse_element("(1-eps)/3", t) == (1 - eps) / 3
    assert element_to_str(t.zero()) == "0"
    assert parse_element("0", t) == t.zero()


def test_tower_json_round_trip():
    for t in (tower_eps(), tower_eps_i(), tower_eps_i_cbrt2(), tower_zeta9()):
        assert FieldTower.from_json(t.to_json()) == t


def test_prime_field():
    f3 = PrimeField(3)
    a = f3.coerce(2)
    assert a + a == 1
    assert a * a == 1
    assert a.inverse() == 2
    assert f3.coerce(Fraction(1, 2)) == 2
    with pytest.raises(ZeroDivisionError):
        f3.zero().inverse()


_RAT = st.fractions(
    min_value=-10, max_value=10, max_denominator=7
)


def _elem(draw):
    t = tower_eps_i()
    eps = t.symbol_element("eps")
    i = t.symbol_element("i")
    coeffs = [draw(_RAT) for _ in range(4)]
    return (
        t.from_rational(coeffs[0])
        + eps * coeffs[1]
        + i * coeffs[2]
        + eps * i * coeffs[3]
    )


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_field_axioms(data):
    a = _elem(data.draw)
    b = _elem(data.draw)
    c = _elem(data.draw)
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == 1


@settings(max_examples=20, deadline=None)
@given(st.data())
def test_embedding_additive(data):
    a = _elem(data.draw)
    b = _elem(data.draw)
    va, ra = embed_complex(a, 96)
    vb, rb = embed_complex(b, 96)
    vs, rs = embed_complex(a + b, 96)
    with mp.workprec(160):
        assert abs(vs - (va + vb)) <= ra + rb + rs + mp.mpf(2) ** -80
