"""Finite field arithmetic against independent oracles.

Prime fields are checked against plain integer arithmetic mod p.
Extension fields are checked against hand-expanded products in the pinned
modulus, brute-force inverse search, and exhaustive subgroup enumeration
for the (p-1)-st power subgroup.
"""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from socle_verify import GF, DomainError, FieldMismatch
from socle_verify.ffield import (
    format_field_literal,
    format_modulus,
    parse_field_literal,
    parse_polynomial_literal,
)


def test_prime_field_matches_integer_arithmetic():
    k = GF(3)
    for a in range(3):
        for b in range(3):
            x, y = k.element(a), k.element(b)
            assert (x + y).coeffs == ((a + b) % 3,)
            assert (x * y).coeffs == ((a * b) % 3,)
            assert (x - y).coeffs == ((a - b) % 3,)


def test_default_moduli_are_smallest_lexicographic():
    # low-degree coefficients compare first, so these are pinned
    assert format_modulus(GF(2, 2)) == "t^2+t+1"
    assert format_modulus(GF(2, 3)) == "t^3+t^2+1"
    assert format_modulus(GF(3, 2)) == "t^2+1"
    assert format_modulus(GF(3, 3)) == "t^3+2*t^2+1"
    assert format_modulus(GF(5, 2)) == "t^2+t+1"
    assert format_modulus(GF(5, 3)) == "t^3+t^2+1"
    assert format_modulus(GF(7, 2)) == "t^2+1"


def test_gf4_generator_square():
    k = GF(2, 2)
    t = k.t()
    # t^2 = t + 1 in GF(4) with modulus t^2+t+1
    assert t * t == t + k.one()


def test_gf9_inverse_of_t():
    k = GF(3, 2)
    t = k.t()
    # t^2 = -1 with modulus t^2+1, so t * 2t = 2*t^2 = -2 = 1
    assert t.inverse() == k.parse("2*t")
    assert (t * t.inverse()).is_one()


def test_gf9_t_plus_one_is_primitive():
    k = GF(3, 2)
    z = k.parse("t+1")
    powers = []
    e = k.one()
    for _ in range(8):
        e = e * z
        powers.append(e)
    assert powers[-1].is_one()
    assert len(set(str(x) for x in powers)) == 8
    assert str(z * z) == "2*t"


@pytest.mark.parametrize(
    "p,n",
    [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3)],
)
def test_pm1_power_subgroup_membership(p, n):
    # is_pm1_power must agree with the exhaustive image of u -> u^(p-1)
    k = GF(p, n)
    units = list(k.units())
    subgroup = set()
    for u in units:
        acc = k.one()
        for _ in range(p - 1):
            acc = acc * u
        subgroup.add(str(acc))
    for u in units:
        assert u.is_pm1_power() == (str(u) in subgroup)
    assert len(subgroup) == (k.q - 1) // (p - 1)
    with pytest.raises(DomainError):
        k.zero().is_pm1_power()


def test_pm1_sets_frozen():
    k9 = GF(3, 2)
    assert sorted(str(u) for u in k9.units() if u.is_pm1_power()) == ["1", "2", "2*t", "t"]
    k25 = GF(5, 2)
    got = sorted(str(u) for u in k25.units() if u.is_pm1_power())
    assert got == ["1", "4", "4*t", "4*t+4", "t", "t+1"]


def test_inverse_by_brute_force_gf27():
    k = GF(3, 3)
    for u in k.units():
        found = [v for v in k.units() if (u * v).is_one()]
        assert len(found) == 1
        assert u.inverse() == found[0]


def test_code_roundtrip_gf27():
    k = GF(3, 3)
    seen = set()
    for e in k.elements():
        c = k.code_of(e)
        assert 0 <= c < 27
        assert k.element_from_code(c) == e
        seen.add(c)
    assert len(seen) == 27


def test_literal_roundtrip():
    k = GF(5, 2)
    for text in ("0", "1", "t", "2*t+3", "4*t+4"):
        e = parse_field_literal(k, text)
        assert parse_field_literal(k, format_field_literal(e)) == e


def test_parse_polynomial_literal():
    assert parse_polynomial_literal("t^2+2*t+1", 3) == [1, 2, 1]
    assert parse_polynomial_literal("t^3+t^2+1", 5) == [1, 0, 1, 1]


def test_division_by_zero_raises():
    k = GF(3, 2)
    with pytest.raises(ZeroDivisionError):
        k.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        k.one() / k.zero()


def test_field_mismatch_raises():
    with pytest.raises(FieldMismatch):
        GF(3, 2).one() + GF(3).one()
    with pytest.raises(FieldMismatch):
        GF(3, 2).t() * GF(3, 2, "t^2+t+2").t()


def test_bad_constructions_rejected():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(3, 9)
    with pytest.raises(ValueError):
        GF(3, 2, "t^2+2")  # (t-1)(t+1), reducible
    with pytest.raises(ValueError):
        GF(3, 2, "2*t^2+1")  # not monic


@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_gf9_ring_axioms(a, b, c):
    k = GF(3, 2)
    x, y, z = (k.element_from_code(v) for v in (a, b, c))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x


@settings(max_examples=60)
@given(st.integers(0, 24))
def test_gf25_frobenius_is_additive(code):
    k = GF(5, 2)
    x = k.element_from_code(code)
    y = k.element_from_code((code * 7 + 3) % 25)
    frob = lambda e: e**5
    assert frob(x + y) == frob(x) + frob(y)
    assert frob(x * y) == frob(x) * frob(y)


@given(st.integers(1, 26))
def test_gf27_inverse_roundtrip(code):
    k = GF(3, 3)
    x = k.element_from_code(code)
    assert (x * x.inverse()).is_one()
    assert x.inverse().inverse() == x
