import itertools

import pytest
from hypothesis import given, strategies as st

from duadic.errors import DomainError, UsageError
from duadic.gf import SUPPORTED_ORDERS, add, conjugate, field, inv, mul, neg, parse_symbol, symbol


def _gf4_poly_mul(a, b):
    """Multiply in GF(2)[x]/(x^2+x+1), bits (c0, c1) meaning c0 + c1*x."""
    a0, a1, b0, b1 = a & 1, a >> 1, b & 1, b >> 1
    c0 = (a0 & b0) ^ (a1 & b1)
    c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
    return c0 | (c1 << 1)


def _oracle(q):
    if q == 4:
        return (lambda a, b: a ^ b), _gf4_poly_mul
    return (lambda a, b: (a + b) % q), (lambda a, b: a * b % q)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_tables_match_independent_arithmetic(q):
    t = field(q).tables
    o_add, o_mul = _oracle(q)
    for a, b in itertools.product(range(q), repeat=2):
        assert t.add[a, b] == o_add(a, b)
        assert t.mul[a, b] == o_mul(a, b)


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_field_axioms_exhaustive(q):
    t = field(q).tables
    r = range(q)
    for a, b, c in itertools.product(r, repeat=3):
        assert t.add[t.add[a, b], c] == t.add[a, t.add[b, c]]
        assert t.mul[t.mul[a, b], c] == t.mul[a, t.mul[b, c]]
        assert t.mul[a, t.add[b, c]] == t.add[t.mul[a, b], t.mul[a, c]]
    for a in r:
        assert t.add[a, 0] == a and t.mul[a, 1] == a
        assert t.add[a, t.neg[a]] == 0
        if a:
            assert t.mul[a, t.inv[a]] == 1
        for b in r:
            assert t.add[a, b] == t.add[b, a] and t.mul[a, b] == t.mul[b, a]


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_characteristic(q):
    f = field(q)
    for x in f.elements():
        acc = f.zero
        for _ in range(f.characteristic):
            acc = acc + x
        assert acc == f.zero


def test_worked_values():
    g3, g4, g5, g7, g2 = field(3), field(4), field(5), field(7), field(2)
    w, w2 = g4("w"), g4("w2")
    assert add(g3(2), g3(2)) == g3(1)
    assert add(w, g4(1)) == w2
    assert add(g7(0), g7(5)) == g7(5)
    assert mul(w, w) == w2
    assert mul(g5(3), g5(4)) == g5(2)
    assert inv(g7(3)) == g7(5)
    assert inv(w) == w2
    assert inv(g2(1)) == g2(1)
    assert conjugate(w) == w2 and conjugate(w2) == w and conjugate(g4(1)) == g4(1)


def test_errors():
    with pytest.raises(DomainError):
        field(6)
    with pytest.raises(DomainError):
        inv(field(5)(0))
    with pytest.raises(UsageError):
        conjugate(field(3)(1))
    with pytest.raises(UsageError):
        add(field(3)(1), field(5)(1))
    with pytest.raises(UsageError):
        mul(field(2)(1), field(4)(1))
    with pytest.raises(DomainError):
        field(3)(3)
    with pytest.raises(DomainError):
        parse_symbol(field(4), "w3")


def test_conjugation_is_involutive_frobenius():
    f = field(4)
    for x in f.elements():
        assert conjugate(conjugate(x)) == x
        assert conjugate(x) == x * x


@pytest.mark.parametrize("q", SUPPORTED_ORDERS)
def test_symbols_round_trip(q):
    f = field(q)
    for v in range(q):
        assert parse_symbol(f, symbol(f, v)) == v


@given(st.sampled_from(SUPPORTED_ORDERS), st.data())
def test_subtraction_inverts_addition(q, data):
    f = field(q)
    a = f(data.draw(st.integers(0, q - 1)))
    b = f(data.draw(st.integers(0, q - 1)))
    assert (a + b) - b == a
    assert neg(neg(a)) == a
