# -*- coding: utf-8 -*-
import pytest

from errors import NotDivisibleError
from polynomial import ONE, T, ZERO, IntPolynomial, parse_factored


def test_normalisation_and_degree():
    p = IntPolynomial([1, 2, 0, 0])
    assert p.coefficients == (1, 2)
    assert p.degree == 1
    assert ZERO.degree == -1 and ZERO.is_zero() and not ZERO
    assert IntPolynomial.constant(5).coefficients == (5,)


def test_arithmetic():
    assert (T + 1) ** 2 == IntPolynomial([1, 2, 1])
    assert (T + 1) * (T - 1) == T * T - 1
    assert 3 - T == IntPolynomial([3, -1])
    assert -(T + 2) == IntPolynomial([-2, -1])
    assert 2 * T == IntPolynomial([0, 2])
    assert (T - T).is_zero()
    assert ONE == 1


def test_power_requires_natural_exponent():
    with pytest.raises(ValueError):
        T ** -1


def test_exact_division():
    assert (T * T - 1).divexact(T - 1) == T + 1
    with pytest.raises(NotDivisibleError) as info:
        (T * T + 1).divexact(T - 1)
    assert info.value.remainder == IntPolynomial([2])
    assert info.value.quotient == T + 1


def test_divmod():
    q, r = (T * T + 1).divmod(T + 2)
    assert q == T - 2
    assert r == IntPolynomial([5])
    with pytest.raises(ZeroDivisionError):
        T.divmod(ZERO)


def test_evaluate_and_reverse():
    p = IntPolynomial([1, 2])
    assert p.evaluate(3) == 7
    assert p.reversed(3).coefficients == (0, 0, 2, 1)
    assert IntPolynomial([1, -3, 2]).reversed() == IntPolynomial([2, -3, 1])


def test_format():
    assert IntPolynomial([1, -4, 6]).format() == "1 - 4*t + 6*t^2"
    assert IntPolynomial([0, -1, 0, 1]).format("x") == "-x + x^3"
    assert str(ZERO) == "0"


def test_json_values_are_decimal_strings():
    p = IntPolynomial([1, -2, 3 ** 40])
    assert p.to_json() == ["1", "-2", str(3 ** 40)]
    assert IntPolynomial.from_json(p.to_json()) == p


def test_hash_follows_value():
    assert len({T + 1, IntPolynomial([1, 1])}) == 1


@pytest.mark.parametrize("text, coeffs", [
    ("(1-t^2)^2", [1, 0, -2, 0, 1]),
    ("x^2(x^2-16)", [0, 0, -16, 0, 1]),
    ("2(t+1)", [2, 2]),
    ("(3t^2+1)", [1, 0, 3]),
    ("(t−1)·(t+1)", [-1, 0, 1]),
    ("(1 - 3t)(1 - t)", [1, -4, 3]),
    ("(t-1)^0", [1]),
])
def test_parse_factored(text, coeffs):
    assert parse_factored(text) == IntPolynomial(coeffs)


@pytest.mark.parametrize("text", ["", "(1-t", "(1-t)(1-x)", "(1+)", "()", "(1-t)^"])
def test_parse_factored_rejects(text):
    with pytest.raises(ValueError):
        parse_factored(text)


def test_parse_long_factorisation():
    p = parse_factored("(1-t^2)^4(t-1)(3t-1)(3t^2+1)(9t^4-2t^2+1)")
    assert p.degree == 16
    assert p.coefficient(0) == 1
    assert p.evaluate(1) == 0
