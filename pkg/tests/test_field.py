"""Field construction and arithmetic."""

import pytest

from fqinv import FieldElement, enumerate_elements, make_field
from fqinv.errors import (
    DivisionByZero,
    EvenCharacteristic,
    FieldTooLarge,
    MissingModulus,
    NotPrime,
    ReducibleModulus,
)

from conftest import ALL_FIELDS, F3, F9, F25, F27


def test_make_field_rejects_bad_parameters():
    with pytest.raises(NotPrime):
        make_field(4)
    with pytest.raises(NotPrime):
        make_field(1)
    with pytest.raises(EvenCharacteristic):
        make_field(2)
    with pytest.raises(FieldTooLarge):
        make_field(127)
    with pytest.raises(ValueError):
        make_field(3, 0)
    with pytest.raises(ValueError):
        make_field(3, 4)
    with pytest.raises(MissingModulus):
        make_field(3, 2)
    with pytest.raises(ReducibleModulus):
        make_field(3, 2, [2, 0, 1])  # t^2 + 2 = (t+1)(t+2)


def test_make_field_caches_instances():
    assert make_field(3) is F3
    assert make_field(3, 2, [1, 0, 1]) is F9


def test_field_sizes():
    assert (F3.p, F3.e, F3.q) == (3, 1, 3)
    assert (F9.p, F9.e, F9.q) == (3, 2, 9)
    assert (F27.p, F27.e, F27.q) == (3, 3, 27)
    assert F25.q == 25


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f"q{f.q}")
def test_raw_arithmetic_laws(field, rng):
    q = field.q
    for _ in range(200):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert field.add(a, b) == field.add(b, a)
        assert field.mul(a, b) == field.mul(b, a)
        assert field.add(field.add(a, b), c) == field.add(a, field.add(b, c))
        assert field.mul(field.mul(a, b), c) == field.mul(a, field.mul(b, c))
        assert field.mul(a, field.add(b, c)) == \
            field.add(field.mul(a, b), field.mul(a, c))
        assert field.add(a, field.neg(a)) == 0
        assert field.sub(a, b) == field.add(a, field.neg(b))


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f"q{f.q}")
def test_inverses_exhaustive(field):
    for a in range(1, field.q):
        inv = field.inv(a)
        assert field.mul(a, inv) == field.one
        assert field.pow_(a, field.q - 1) == field.one
    with pytest.raises(DivisionByZero):
        field.inv(0)
    with pytest.raises(DivisionByZero):
        field.div(1, 0)


@pytest.mark.parametrize("field", ALL_FIELDS, ids=lambda f: f"q{f.q}")
def test_frobenius_is_additive(field, rng):
    p = field.p
    for _ in range(100):
        a, b = rng.randrange(field.q), rng.randrange(field.q)
        lhs = field.pow_(field.add(a, b), p)
        rhs = field.add(field.pow_(a, p), field.pow_(b, p))
        assert lhs == rhs


def test_pow_handles_zero_and_negative_exponents():
    assert F9.pow_(5, 0) == F9.one
    a = 7
    assert F9.mul(F9.pow_(a, -1), a) == F9.one
    assert F9.pow_(a, -2) == F9.inv(F9.mul(a, a))


def test_enumerate_elements_counts():
    for field in (F3, F9, F27):
        els = list(enumerate_elements(field))
        assert len(els) == field.q
        assert len({el.raw for el in els}) == field.q
        assert all(isinstance(el, FieldElement) for el in els)


def test_element_coercion_prime_subfield():
    # ints always mean prime-subfield residues, in every representation
    assert F9.element(5).raw == F9.element(2).raw == 2
    assert F3.element(-1).raw == 2
    a = F9.element([1, 2])  # 1 + 2t
    assert a.coeffs == (1, 2)
    assert F9.element(a) == a


def test_element_operator_algebra():
    a = F9.element([1, 1])
    b = F9.element([0, 2])
    assert (a + b).coeffs == (1, 0)
    assert (a - a).is_zero()
    assert (a * a.inverse()) == F9.element(1)
    assert (-a) + a == F9.element(0)
    assert a ** (F9.q - 1) == F9.element(1)
    assert 1 - F3.element(2) == F3.element(2)
    assert 2 / F3.element(2) == F3.element(1)


def test_extension_modulus_is_respected():
    # in F9 = F3[t]/(t^2+1) the generator squares to -1
    t = F9.from_raw(3)
    assert (t * t).coeffs == (2, 0)
    # in F27 = F3[t]/(t^3+2t+2) the generator cubes to t+1
    t = F27.from_raw(3)
    assert (t * t * t).coeffs == (1, 1, 0)


def test_mixed_field_operations_are_rejected():
    from fqinv.errors import FieldMismatch

    with pytest.raises(FieldMismatch):
        F3.element(1) + F9.element(1)
