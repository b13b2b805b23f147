from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hhlie.errors import BadField, FieldMismatch
from hhlie.fields import GF, QQ, Mod, field_from_string, is_prime

PRIMES = [2, 3, 5, 7, 11, 101]


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_gf_rejects_composite():
    with pytest.raises(BadField):
        GF(4)
    with pytest.raises(BadField):
        GF(1)


def test_gf_is_cached():
    assert GF(7) is GF(7)


@given(st.sampled_from(PRIMES), st.integers(), st.integers(), st.integers())
def test_mod_ring_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0
    assert int(x + y) == (a + b) % p


@given(st.sampled_from(PRIMES), st.integers())
def test_mod_inverse(p, a):
    F = GF(p)
    x = F(a)
    if a % p:
        assert x * (1 / x) == 1
        assert (x / x) == F.one
    else:
        with pytest.raises(ZeroDivisionError):
            1 / x


@given(st.sampled_from(PRIMES), st.integers(), st.integers(min_value=0, max_value=50))
def test_mod_power_matches_int_pow(p, a, k):
    assert GF(p)(a) ** k == pow(a, k, p)


def test_fermat():
    F = GF(7)
    assert all(x ** 7 == x for x in F.elements())


def test_mixing_fields_raises():
    with pytest.raises(FieldMismatch):
        Mod(1, 5) + Mod(1, 7)
    with pytest.raises(FieldMismatch):
        Mod(1, 5) * Fraction(1, 2)
    with pytest.raises(FieldMismatch):
        QQ(Mod(1, 5))
    with pytest.raises(FieldMismatch):
        GF(3)(Mod(1, 5))


def test_int_coercion():
    F = GF(5)
    assert F(7) == 2
    assert 3 + F(4) == F(2)
    assert 1 - F(3) == F(3)
    assert F(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F(Fraction(1, 5))


def test_rationals():
    assert QQ(3) == Fraction(3)
    assert QQ.contains(Fraction(1, 2))
    assert not QQ.contains(Mod(1, 5))
    assert QQ.characteristic == 0


@pytest.mark.parametrize("text,expected", [("Q", QQ), ("F5", GF(5)), ("F 5", GF(5)), ("GF7", GF(7))])
def test_field_from_string(text, expected):
    assert field_from_string(text) is expected


def test_field_from_string_bad():
    with pytest.raises(BadField):
        field_from_string("R")
    with pytest.raises(BadField):
        field_from_string("F6")


def test_descriptor():
    assert QQ.descriptor() == "Q"
    assert GF(3).descriptor() == "F 3"
