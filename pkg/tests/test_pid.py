import pytest

from nsemiprimary.config import Budgets
from nsemiprimary.errors import BudgetExceededError, InvalidParameterError
from nsemiprimary.pid import PidIdeal, finite_delta, pid_delta


def test_prime_power_integer() -> None:
    result = pid_delta(PidIdeal.integer(8))
    assert result.delta == 3
    assert result.prime_base == "(2)"
    assert result.factorization == "2^3"
    assert result.ideal == "(8) in Z"


def test_two_prime_factors_give_infinity() -> None:
    result = pid_delta(PidIdeal.integer(-6))
    assert result.delta is None
    assert result.prime_base is None
    assert result.factorization == "2 * 3"
    assert result.to_dict()["delta"] == "inf"


def test_prime_integer_is_one() -> None:
    assert pid_delta(PidIdeal.integer(13)).delta == 1


def test_polynomial_square_of_linear() -> None:
    result = pid_delta(PidIdeal.polynomial("t^2 + 1", 2))
    assert result.delta == 2
    assert result.prime_base == "(t + 1)"
    assert result.factorization == "(t + 1)^2"


def test_polynomial_irreducible_and_split() -> None:
    assert pid_delta(PidIdeal.polynomial("t^2 + t + 1", 2)).delta == 1
    split = pid_delta(PidIdeal.polynomial("t^2 + t", 2))
    assert split.delta is None
    assert split.factorization.count("(") == 2


@pytest.mark.parametrize(
    ("build", "match"),
    [
        (lambda: PidIdeal.integer(1), "nonunit"),
        (lambda: PidIdeal.integer(0), "nonunit"),
        (lambda: PidIdeal.polynomial("t", 4), "prime p"),
        (lambda: PidIdeal.polynomial("1", 3), "degree"),
        (lambda: PidIdeal.polynomial("t^2 + t + 1", 9), "prime powers are not supported"),
    ],
)
def test_invalid_generators(build, match: str) -> None:
    with pytest.raises(InvalidParameterError, match=match):
        build()


def test_factor_limit() -> None:
    with pytest.raises(BudgetExceededError):
        pid_delta(PidIdeal.integer(10_007), Budgets(factor_limit=1000))


@pytest.mark.parametrize(("m", "expected"), [(8, 3), (6, None), (9, 2), (7, 1)])
def test_finite_delta_agrees_with_factorization(m: int, expected: int | None) -> None:
    assert finite_delta(m) == expected
    assert pid_delta(PidIdeal.integer(m)).delta == expected
