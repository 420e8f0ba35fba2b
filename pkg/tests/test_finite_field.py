import itertools

import pytest

from folclass.errors import EmbeddingError, FieldMismatchError, ParseError
from folclass.finite_field import (
    GF,
    FieldSpec,
    canonical_modulus,
    embed,
    enumerate_elements,
    format_element,
    format_modulus,
    parse_element,
    parse_field,
)


def test_canonical_moduli():
    # least monic irreducibles under the base-p integer encoding
    assert canonical_modulus(2, 2) == (1, 1, 1)  # u^2+u+1
    assert canonical_modulus(2, 3) == (1, 1, 0, 1)  # x^3+x+1
    assert canonical_modulus(2, 4) == (1, 1, 0, 0, 1)  # x^4+x+1
    assert canonical_modulus(3, 2) == (1, 0, 1)  # x^2+1
    assert format_modulus(canonical_modulus(2, 3)) == "x3+x+1"


def test_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (0, 0, 1))  # x^2 = x*x
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))  # x^2+1 = (x+1)^2


def test_rejects_unsupported_characteristic():
    with pytest.raises(ValueError):
        FieldSpec(7, 1)


@pytest.mark.parametrize("q", [2, 4, 8, 9])
def test_field_axioms_exhaustive(q):
    spec = GF(q)
    xs = spec.elements()
    zero, one = spec.zero, spec.one
    for x in xs:
        assert x + zero == x
        assert x * one == x
        assert x + (-x) == zero
        if x:
            assert x * x.inverse() == one
    for x, y in itertools.product(xs, xs):
        assert x + y == y + x
        assert x * y == y * x
    for x, y, z in itertools.product(xs, xs, xs):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z


@pytest.mark.parametrize("q", [2, 4, 8])
def test_char_two_self_cancellation(q):
    spec = GF(q)
    for x in spec.elements():
        assert not (x + x)


def test_gf4_sample_products(F4):
    u = F4.generator
    one = F4.one
    assert u * (u + one) == one  # u^2+u reduces to 1 mod u^2+u+1
    assert one.inverse() == one
    with pytest.raises(ZeroDivisionError):
        F4.zero.inverse()


def test_mixed_field_operands_rejected(F4, F8):
    with pytest.raises(FieldMismatchError):
        F4.one + F8.one
    with pytest.raises(FieldMismatchError):
        F4.generator * F8.generator


@pytest.mark.parametrize("q", [4, 8, 9])
def test_frobenius_is_additive(q):
    spec = GF(q)
    xs = spec.elements()
    for x, y in itertools.product(xs, xs):
        assert (x + y).frobenius() == x.frobenius() + y.frobenius()


@pytest.mark.parametrize("q", [2, 4, 8, 9, 25])
def test_pth_root_inverts_frobenius(q):
    spec = GF(q)
    p = spec.p
    for x in spec.elements():
        assert x.pth_root() ** p == x


def test_pth_root_examples(F4):
    u = F4.generator
    assert F4.zero.pth_root() == F4.zero
    assert F4.one.pth_root() == F4.one
    assert u.pth_root() == u + F4.one  # (u+1)^2 = u^2+1 = u


def test_enumeration_order_and_counts():
    assert [str(x) for x in enumerate_elements(GF(2))] == ["0", "1"]
    assert [str(x) for x in enumerate_elements(GF(4))] == ["0", "1", "u", "u+1"]
    eights = enumerate_elements(GF(8))
    assert len(eights) == 8 == len(set(eights))


def test_embed_prime_field(F2, F4):
    assert embed(F2.zero, F4) == F4.zero
    assert embed(F2.one, F4) == F4.one


def test_embed_gf4_into_gf16(F4, F16):
    u = F4.generator
    img = embed(u, F16)
    one = F16.one
    assert img * img + img + one == F16.zero  # image satisfies the source modulus
    xs = F4.elements()
    for x, y in itertools.product(xs, xs):
        assert embed(x + y, F16) == embed(x, F16) + embed(y, F16)
        assert embed(x * y, F16) == embed(x, F16) * embed(y, F16)
    images = {embed(x, F16) for x in xs}
    assert len(images) == 4


def test_embed_without_root_fails(F4, F8):
    with pytest.raises(EmbeddingError):
        embed(F4.generator, F8)  # 3 is not a multiple of 2


def test_field_literals_round_trip():
    assert parse_field("GF(4)").literal() == "GF(4)"
    assert parse_field("GF(8;mod=x3+x+1)") == parse_field("GF(8)")
    assert parse_field("GF(9)").p == 3
    with pytest.raises(ParseError):
        parse_field("GF(6)")
    with pytest.raises(ParseError):
        parse_field("field(4)")


@pytest.mark.parametrize("q", [4, 8, 9])
def test_element_literals_round_trip(q):
    spec = GF(q)
    for x in spec.elements():
        assert parse_element(format_element(x), spec) == x


def test_element_literal_errors(F4):
    with pytest.raises(ParseError):
        parse_element("", F4)
    with pytest.raises(ParseError):
        parse_element("u+", F4)
    err = None
    try:
        parse_element("u?1", F4)
    except ParseError as exc:
        err = exc
    assert err is not None and err.position == 1


def test_tables_match_direct_arithmetic(F8):
    q, add, mul, inv = F8.tables()
    xs = F8.elements()
    for x, y in itertools.product(xs, xs):
        assert add[x.index * q + y.index] == (x + y).index
        assert mul[x.index * q + y.index] == (x * y).index
    for x in xs:
        if x:
            assert inv[x.index] == x.inverse().index
