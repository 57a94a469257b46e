import pytest

from frobreal.scalars import FieldError, FieldSpec, PrimeField, Rationals


def test_rationals_arithmetic_is_exact():
    Q = Rationals()
    a = Q.parse("1/3")
    b = Q.parse("1/6")
    assert Q.serialize(Q.add(a, b)) == "1/2"
    assert Q.serialize(Q.mul(a, Q.inv(a))) == "1/1"
    assert Q.sub(a, a) == Q.zero
    assert Q.characteristic == 0


def test_rationals_serialization_round_trip():
    Q = Rationals()
    for text in ("0/1", "-7/3", "5/1", "2/9"):
        assert Q.serialize(Q.parse(text)) == text


def test_prime_field_inverses():
    for p in (2, 3, 5, 7, 11):
        F = PrimeField(p)
        for a in range(1, p):
            assert F.mul(a, F.inv(a)) == F.one
    with pytest.raises(FieldError):
        PrimeField(3).inv(0)


def test_prime_field_rejects_composite_characteristic():
    for bad in (0, 1, 4, 6, 9, 100):
        with pytest.raises(FieldError):
            PrimeField(bad)


def test_field_equality_and_json_round_trip():
    assert Rationals() == Rationals()
    assert PrimeField(5) == PrimeField(5)
    assert PrimeField(5) != PrimeField(3)
    assert PrimeField(5) != Rationals()
    for field in (Rationals(), PrimeField(7)):
        back = FieldSpec.from_json(field.to_json())
        assert back == field
    with pytest.raises(FieldError):
        FieldSpec.from_json({"kind": "galois-tower"})


def test_prime_field_reduction_and_parse():
    F = PrimeField(5)
    assert F.from_int(-1) == 4
    assert F.parse("12") == 2
    assert F.serialize(F.neg(2)) == "3"
