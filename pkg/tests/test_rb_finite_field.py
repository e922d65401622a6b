"""pytest for polynomial factorization over prime fields."""
import itertools

import pytest
from sympy import isprime

from resonant_blocks.rb_finite_field import (
    PRIMES,
    UniPolyModP,
    degree_pattern,
    factor_unipoly_modp,
)


def product_of(factors: list[tuple[UniPolyModP, int]], p: int) -> UniPolyModP:
    result = UniPolyModP(p, (1,))
    for factor, multiplicity in factors:
        result *= factor**multiplicity
    return result


def test_small_factorizations():
    """Test the factorizations that can be checked by hand."""
    factors = factor_unipoly_modp(UniPolyModP.from_ints([0, 1, 1], 2))
    assert [(f.coeffs, k) for f, k in factors] == [((0, 1), 1), ((1, 1), 1)], "t^2 + t = t(t + 1) mod 2"

    factors = factor_unipoly_modp(UniPolyModP.from_ints([1, 0, 1], 3))
    assert len(factors) == 1, "t^2 + 1 is irreducible mod 3"
    assert UniPolyModP.from_ints([1, 0, 1], 3).is_irreducible(), "Irreducibility test agrees"

    factors = factor_unipoly_modp(UniPolyModP.from_ints([1, 0, 0, 0, 1], 5))
    assert [(f.coeffs, k) for f, k in factors] == [((2, 0, 1), 1), ((3, 0, 1), 1)], "t^4 + 1 = (t^2 + 2)(t^2 + 3) mod 5"


def test_factor_product_and_irreducibility():
    """Test that factors multiply back to the monic input and are irreducible, over a small grid."""
    for p in (2, 3, 7):
        for coeffs in itertools.islice(itertools.product(range(p), repeat=4), 0, None, 5):
            poly = UniPolyModP.from_ints([*coeffs, 1], p)
            factors = factor_unipoly_modp(poly)
            assert product_of(factors, p) == poly.make_monic(), f"Product of the factors of {poly}"
            assert all(f.monic and f.is_irreducible() for f, _ in factors), f"Factors of {poly} must be monic irreducible"


def test_repeated_factors():
    poly = UniPolyModP.from_ints([1, 1], 5) ** 3 * UniPolyModP.from_ints([2, 0, 1], 5)
    factors = factor_unipoly_modp(poly)
    assert ((1, 1), 3) in [(f.coeffs, k) for f, k in factors], "(t + 1)^3 keeps its multiplicity"
    assert product_of(factors, 5) == poly, "Product matches"


def test_factorization_is_deterministic():
    poly = UniPolyModP.from_ints([3, 5, 0, 2, 1, 0, 1], 101)
    assert factor_unipoly_modp(poly) == factor_unipoly_modp(poly), "Same input, same factors"


def test_reduction_and_arithmetic():
    assert UniPolyModP.from_ints([8, -1, 7], 7).coeffs == (1, 6), "Residues reduced and the zero leading term dropped"
    product = UniPolyModP.from_ints([1, 1], 7) * UniPolyModP.from_ints([2, 0, 1], 7)
    assert product.coeffs == (2, 2, 1, 1), "(t + 1)(t^2 + 2) = t^3 + t^2 + 2t + 2"
    assert UniPolyModP.from_ints([6, 3], 7).make_monic().coeffs == (2, 1), "3t + 6 = 3(t + 2) mod 7"
    assert str(product) == "t^3 + t^2 + 2*t + 2 (mod 7)"

    with pytest.raises(ValueError, match="F_7 and F_5"):
        _ = product * UniPolyModP.from_ints([1, 1], 5)


def test_low_degree_factors_have_no_roots():
    """A factor of degree 2 or 3 is irreducible exactly when it has no root in F_p."""
    p = 7
    for coeffs in itertools.islice(itertools.product(range(p), repeat=3), 0, None, 3):
        poly = UniPolyModP.from_ints([*coeffs, 1], p)
        for factor, _ in factor_unipoly_modp(poly):
            if factor.degree in {2, 3}:
                roots = [a for a in range(p) if sum(c * a**k for k, c in enumerate(factor.coeffs)) % p == 0]
                assert roots == [], f"{factor} is a factor of {poly} and must have no root"


def test_degree_pattern():
    assert degree_pattern([-2, 0, 1], 7) == [1, 1], "t^2 - 2 splits mod 7 (3^2 = 2)"
    assert degree_pattern([1, 0, 1], 3) == [2], "t^2 + 1 stays irreducible mod 3"
    assert degree_pattern([1, 2, 1], 5) is None, "Squares are not squarefree"
    assert degree_pattern([1, 0, 3], 3) is None, "p divides the leading coefficient"
    assert degree_pattern([1, 0, -10, 0, 1], 101) in ([1, 1, 1, 1], [2, 2]), "t^4 - 10t^2 + 1 splits modulo every prime"


def test_primes_and_zero():
    assert all(isprime(p) for p in PRIMES), "Default primes"
    assert list(PRIMES) == sorted(PRIMES) and PRIMES[0] == 101 and len(PRIMES) == 8, "First eight primes above 100"

    with pytest.raises(ValueError, match="zero"):
        factor_unipoly_modp(UniPolyModP.from_ints([3, 6], 3))
