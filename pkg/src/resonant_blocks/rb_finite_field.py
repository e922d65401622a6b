"""Univariate polynomials over prime fields and their complete factorization.

UniPolyModP keeps its residues lowest degree first. The factorization itself is done by
sympy.polys.galoistools, which works on dense lists highest degree first, so every call
reverses the coefficients on the way in and on the way out.
"""
from dataclasses import dataclass

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_ddf_zassenhaus,
    gf_degree,
    gf_factor,
    gf_from_int_poly,
    gf_irreducible_p,
    gf_monic,
    gf_mul,
    gf_sqf_p,
)

# The first eight primes above 100.
PRIMES = (101, 103, 107, 109, 113, 127, 131, 137)


def _to_gf(coeffs, p: int) -> list:
    """Residues of an integer coefficient list (lowest degree first) in galoistools order."""
    return gf_from_int_poly([int(c) for c in reversed(list(coeffs))], p)


def _from_gf(f) -> tuple[int, ...]:
    return tuple(int(c) for c in reversed(f))


def degree_pattern(coeffs, p: int) -> list[int] | None:
    """Degrees of the irreducible factors of an integer polynomial mod p.

    Args:
        coeffs: Integer coefficients, lowest degree first.
        p: The prime.

    Returns:
        list[int] | None: Sorted factor degrees, or None when p divides the leading coefficient
        or the reduction is not squarefree.
    """
    coeffs = [int(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    f = _to_gf(coeffs, p)
    if gf_degree(f) != len(coeffs) - 1:
        return None
    _, f = gf_monic(f, p, ZZ)
    if not gf_sqf_p(f, p, ZZ):
        return None
    return sorted(d for product, d in gf_ddf_zassenhaus(f, p, ZZ) for _ in range(gf_degree(product) // d))


@dataclass(frozen=True)
class UniPolyModP:
    """A univariate polynomial in t over F_p, coefficients lowest degree first."""
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _from_gf(_to_gf(self.coeffs, self.p)))

    @classmethod
    def from_ints(cls, coeffs, p: int) -> "UniPolyModP":
        return cls(p, tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_gf(self) -> list:
        """The dense galoistools list, highest degree first."""
        return _to_gf(self.coeffs, self.p)

    def make_monic(self) -> "UniPolyModP":
        _, f = gf_monic(self.to_gf(), self.p, ZZ)
        return UniPolyModP(self.p, _from_gf(f))

    def __mul__(self, other: "UniPolyModP") -> "UniPolyModP":
        if other.p != self.p:
            msg = f"Cannot multiply polynomials over F_{self.p} and F_{other.p}."
            raise ValueError(msg)
        return UniPolyModP(self.p, _from_gf(gf_mul(self.to_gf(), other.to_gf(), self.p, ZZ)))

    def __pow__(self, exponent: int) -> "UniPolyModP":
        result = UniPolyModP(self.p, (1,))
        for _ in range(exponent):
            result *= self
        return result

    def is_irreducible(self) -> bool:
        if self.degree < 1:
            return False
        return bool(gf_irreducible_p(self.to_gf(), self.p, ZZ))

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if not c:
                continue
            monomial = "" if power == 0 else ("t" if power == 1 else f"t^{power}")
            if not monomial:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(monomial)
            else:
                pieces.append(f"{c}*{monomial}")
        return " + ".join(pieces) + f" (mod {self.p})"


def factor_unipoly_modp(poly: UniPolyModP) -> list[tuple[UniPolyModP, int]]:
    """Factor a polynomial over F_p into monic irreducibles.

    The product of factor**multiplicity equals poly.make_monic(). The factors come back in
    galoistools' sorted order, so the result does not depend on the randomized splitting.

    Args:
        poly: A polynomial that is non-zero mod p.

    Raises:
        ValueError: If poly is zero mod p.

    Returns:
        list[tuple[UniPolyModP, int]]: The irreducible factors with multiplicities.
    """
    if poly.is_zero():
        msg = "Cannot factor the zero polynomial."
        raise ValueError(msg)
    _, factors = gf_factor(poly.to_gf(), poly.p, ZZ)
    result = [(UniPolyModP(poly.p, _from_gf(f)), int(k)) for f, k in factors]
    result.sort(key=lambda item: (item[0].degree, item[0].coeffs[::-1], item[1]))
    return result
