"""pytest for factorization over the integers."""
import pytest

from resonant_blocks.rb_integer_factor import (
    factor_over_integers,
    factorization_text,
    int_exact_divide,
    int_mul,
    is_irreducible_over_q,
    is_squarefree,
    squarefree_decomposition,
    univariate_text,
)


def expand(factors: list[tuple[list[int], int]]) -> list[int]:
    result = [1]
    for factor, multiplicity in factors:
        for _ in range(multiplicity):
            result = int_mul(result, factor)
    return result


def test_factor_over_integers():
    # (t - 1)(t + 2)(t^2 + 1)
    f = int_mul(int_mul([-1, 1], [2, 1]), [1, 0, 1])
    factors = factor_over_integers(f)
    assert factors == [([-1, 1], 1), ([2, 1], 1), ([1, 0, 1], 1)], "Three irreducible factors sorted by degree"
    assert expand(factors) == f, "Factors multiply back"


def test_swinnerton_dyer_polynomial():
    """t^4 - 10t^2 + 1 is irreducible over Q but splits modulo every prime."""
    assert is_irreducible_over_q([1, 0, -10, 0, 1]), "Irreducible over Z though it splits modulo every prime"


def test_repeated_factors():
    f = int_mul(int_mul([1, 1], [1, 1]), [-3, 0, 1])
    assert squarefree_decomposition(f) == [([-3, 0, 1], 1), ([1, 1], 2)], "Squarefree parts by multiplicity"
    assert not is_squarefree(f), "(t + 1)^2 is a square factor"
    assert expand(factor_over_integers(f)) == f, "Product with multiplicities"
    assert factorization_text(factor_over_integers(f)) == "(t + 1)^2*(t^2 - 3)", "Readable factorization"


def test_exact_division():
    assert int_exact_divide([-1, 0, 1], [1, 1]) == [-1, 1], "t^2 - 1 = (t + 1)(t - 1)"
    assert int_exact_divide([1, 0, 1], [1, 1]) is None, "t + 1 does not divide t^2 + 1"
    with pytest.raises(ValueError, match="monic"):
        int_exact_divide([1, 0, 1], [1, 2])


def test_text_and_errors():
    assert univariate_text([2, -3, 1]) == "t^2 - 3*t + 2", "Highest degree first"
    assert univariate_text([]) == "0", "Zero polynomial"
    with pytest.raises(ValueError, match="monic"):
        factor_over_integers([1, 2])
