"""Factorization of monic univariate integer polynomials.

Used to certify that an integer specialization of a characteristic polynomial is
irreducible over Q, and to supply factor candidates for multivariate reconstruction.
Coefficient lists are lowest degree first; the arithmetic is sympy's Poly over ZZ.
"""
from sympy import Poly, Symbol
from sympy.polys.domains import ZZ

T = Symbol("t")
# Coefficient count of a linear polynomial.
LINEAR_LENGTH = 2


def int_trim(f) -> list[int]:
    f = [int(c) for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def as_poly(f) -> Poly:
    """The sympy Poly in t for an integer coefficient list."""
    return Poly(list(reversed(int_trim(f))) or [0], T, domain=ZZ)


def from_poly(poly: Poly) -> list[int]:
    return int_trim(reversed(poly.all_coeffs()))


def int_mul(f: list[int], g: list[int]) -> list[int]:
    return from_poly(as_poly(f) * as_poly(g))


def int_exact_divide(f: list[int], g: list[int]) -> list[int] | None:
    """Quotient f / g over Z for monic g, or None if g does not divide f."""
    if not g or g[-1] != 1:
        msg = "Divisor must be a monic integer polynomial."
        raise ValueError(msg)
    quotient, remainder = as_poly(f).div(as_poly(g), auto=False)
    if not remainder.is_zero:
        return None
    return from_poly(quotient)


def squarefree_decomposition(f) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of a monic integer polynomial: [(g_i, i)] with f = prod g_i^i."""
    _, parts = as_poly(f).sqf_list()
    return sorted(((from_poly(g), int(k)) for g, k in parts), key=lambda item: (item[1], len(item[0])))


def is_squarefree(f) -> bool:
    return bool(as_poly(f).is_sqf)


def factor_over_integers(f) -> list[tuple[list[int], int]]:
    """Complete factorization of a monic integer polynomial into monic irreducibles over Z.

    Args:
        f: Integer coefficients, lowest degree first, leading coefficient 1.

    Raises:
        ValueError: If f is not monic of degree >= 1.

    Returns:
        list[tuple[list[int], int]]: (factor, multiplicity) pairs sorted by degree then coefficients.
    """
    f = int_trim(f)
    if len(f) < LINEAR_LENGTH or f[-1] != 1:
        msg = f"factor_over_integers() needs a monic polynomial of degree >= 1, got {f}."
        raise ValueError(msg)
    _, factors = as_poly(f).factor_list()
    result = [(from_poly(g), int(k)) for g, k in factors]
    result.sort(key=lambda item: (len(item[0]), item[0][::-1], item[1]))
    return result


def is_irreducible_over_q(f) -> bool:
    """True when the monic integer polynomial f has exactly one irreducible factor of multiplicity one."""
    factors = factor_over_integers(f)
    return len(factors) == 1 and factors[0][1] == 1


def univariate_text(f) -> str:
    """Text of an integer polynomial in t, highest degree first, e.g. `t^2 - 3*t + 2`."""
    f = int_trim(f)
    if not f:
        return "0"
    pieces = []
    for power in range(len(f) - 1, -1, -1):
        c = f[power]
        if not c:
            continue
        monomial = "" if power == 0 else ("t" if power == 1 else f"t^{power}")
        magnitude = abs(c)
        if not monomial:
            body = str(magnitude)
        elif magnitude == 1:
            body = monomial
        else:
            body = f"{magnitude}*{monomial}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)


def factorization_text(factors: list[tuple[list[int], int]]) -> str:
    """Readable form such as `(t + 1)^2*(t^2 - 3)` for logging."""
    return "*".join(f"({univariate_text(f)})" + (f"^{k}" if k > 1 else "") for f, k in factors)
