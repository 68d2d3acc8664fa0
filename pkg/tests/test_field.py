import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from footprint.errors import (
    DivisionByZero,
    InfiniteField,
    NonPrimeCharacteristic,
    ParseError,
    ReducibleModulus,
    SpecMismatch,
    UnsupportedDegree,
)
from footprint.field import (
    DEFAULT_MODULI,
    GF,
    RATIONAL,
    FieldElem,
    field_enumerate,
    field_make,
    is_irreducible,
    parse_element,
    parse_field,
    render_element,
    render_field,
)

import oracles

SMALL_Q = [2, 3, 4, 5, 7, 8, 9]


def elem(F, text):
    return FieldElem(F, parse_element(F, text))


# -- construction --

def test_make_prime():
    F = field_make("prime", 2)
    assert F.q == 2 and F.kind == "prime"


def test_make_gf8():
    F = field_make("extension", 2, 3, (1, 0, 1, 1))
    assert F.q == 8 and F == GF(8)


def test_reducible_modulus():
    with pytest.raises(ReducibleModulus):
        field_make("extension", 2, 2, (1, 0, 1))


def test_nonprime_characteristic():
    with pytest.raises(NonPrimeCharacteristic):
        field_make("prime", 6)
    with pytest.raises(NonPrimeCharacteristic):
        GF(6)


def test_degree_limit():
    with pytest.raises(UnsupportedDegree):
        field_make("extension", 2, 9, (1,) + (0,) * 8 + (1,))


def test_default_moduli_irreducible():
    for q, (p, e, mod) in DEFAULT_MODULI.items():
        F = GF(q)
        assert (F.p, F.e, F.modulus) == (p, e, tuple(mod))
        assert is_irreducible(F.modulus, F.p)


def test_other_extension_gets_some_irreducible_modulus():
    F = GF(32)
    assert F.q == 32 and is_irreducible(F.modulus, 2)


# -- arithmetic examples --

def test_gf8_x_times_x2():
    F = GF(8)
    assert str(elem(F, "x") * elem(F, "x^2")) == "x+1"


def test_gf5_add():
    F = GF(5)
    assert (elem(F, 3) + elem(F, 4)).value == 2


def test_gf8_inverse_of_x():
    F = GF(8)
    assert str(elem(F, "x").inv()) == "x^2+1"
    # exhaustive search oracle
    x = parse_element(F, "x")
    found = [y for y in range(8) if oracles.ext_mul(x, y, 2, 3, F.modulus) == 1]
    assert render_element(F, found[0]) == "x^2+1"


def test_division_by_zero():
    for F in (GF(5), GF(8), RATIONAL):
        with pytest.raises(DivisionByZero):
            F.inv(F.zero)
        with pytest.raises(ZeroDivisionError):
            F.div(F.one, F.zero)


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        elem(GF(5), 1) + elem(GF(7), 1)


# -- enumeration --

def test_enumerate_gf2():
    assert [e.value for e in field_enumerate(GF(2))] == [0, 1]


@pytest.mark.parametrize("q", SMALL_Q)
def test_enumerate_cardinality(q):
    els = field_enumerate(GF(q))
    assert len(els) == q and len({e.value for e in els}) == q
    assert els[0].value == 0 and els[1].value == 1


def test_enumerate_gf8_inverses():
    F = GF(8)
    els = field_enumerate(F)
    for a in els[1:]:
        assert any((a * b).value == 1 for b in els)


def test_enumerate_rational_raises():
    with pytest.raises(InfiniteField):
        field_enumerate(RATIONAL)


# -- tables against schoolbook arithmetic --

@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_extension_tables_match_schoolbook(q):
    F = GF(q)
    for a in range(q):
        for b in range(q):
            assert F.mul(a, b) == oracles.ext_mul(a, b, F.p, F.e, F.modulus)
            assert F.add(a, b) == oracles.ext_add(a, b, F.p, F.e)


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_full_tables(q):
    F = GF(q)
    els = range(q)
    add = np.array([[F.add(a, b) for b in els] for a in els])
    mul = np.array([[F.mul(a, b) for b in els] for a in els])
    assert (add == add.T).all() and (mul == mul.T).all()
    for a, b, c in itertools.product(els, repeat=3):
        assert add[add[a, b], c] == add[a, add[b, c]]
        assert mul[mul[a, b], c] == mul[a, mul[b, c]]
        assert mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", SMALL_Q + [16, 25, 27])
def test_frobenius(q):
    F = GF(q)
    for a in range(q):
        assert F.pow(a, q) == a


def test_extension_degree_one_matches_prime():
    P = GF(5)
    E = field_make("extension", 5, 1, (1, 2))
    for a in range(5):
        for b in range(5):
            assert E.add(a, b) == P.add(a, b)
            assert E.mul(a, b) == P.mul(a, b)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_rational_agrees_with_integers(a, b):
    F = RATIONAL
    x, y = F.from_int(a), F.from_int(b)
    assert F.add(x, y) == a + b
    assert F.mul(x, y) == a * b
    assert F.sub(x, y) == a - b


@given(st.fractions(), st.fractions())
def test_rational_canonical(a, b):
    F = RATIONAL
    s = F.add(a, b)
    assert isinstance(s, Fraction) and s.denominator > 0
    if b:
        assert F.mul(F.div(a, b), b) == a


# -- vectorized ops agree with scalars --

@pytest.mark.parametrize("q", [3, 4, 8, 9])
def test_vector_ops_match_scalar(q):
    F = GF(q)
    a = np.array([x for x in range(q) for _ in range(q)])
    b = np.array([y for _ in range(q) for y in range(q)])
    assert list(F.vadd(a, b)) == [F.add(x, y) for x, y in zip(a, b)]
    assert list(F.vmul(a, b)) == [F.mul(x, y) for x, y in zip(a, b)]
    assert list(F.vsub(a, b)) == [F.sub(x, y) for x, y in zip(a, b)]
    nz = a[a != 0]
    assert list(F.vinv(nz)) == [F.inv(x) for x in nz]


# -- text forms --

@pytest.mark.parametrize("text", ["gf(2)", "gf(5)", "gf(2^3)", "gf(3^2)", "rational", "gf(2^3):1,1,0,1"])
def test_field_round_trip(text):
    F = parse_field(text)
    assert parse_field(render_field(F)) == F


def test_field_syntax_aliases():
    assert parse_field("gf(8)") == GF(8)
    assert parse_field("gf(2^3):1,0,1,1") == GF(8)
    assert parse_field("gf(9)") == GF(9)


def test_bad_field_text():
    with pytest.raises(ParseError):
        parse_field("gf(x)")
    with pytest.raises(NonPrimeCharacteristic):
        parse_field("gf(6)")


@pytest.mark.parametrize("q", [2, 4, 8, 9, 27])
def test_element_round_trip(q):
    F = GF(q)
    for v in range(q):
        assert parse_element(F, render_element(F, v)) == v


def test_integer_embedding():
    F = GF(4)
    assert parse_element(F, 2) == 0  # characteristic 2
    assert parse_element(GF(9), 4) == 1
    assert parse_element(GF(5), "-1") == 4
    assert parse_element(GF(7), "1/2") == 4
    assert parse_element(RATIONAL, "-3/6") == Fraction(-1, 2)
