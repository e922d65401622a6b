"""Exact multivariate polynomials over the integers.

Variables are y_1..y_m (standing for sqrt(xi_i)), xi_1..xi_m and t. A polynomial is
stored as a map from exponent tuples (y_1..y_m, xi_1..xi_m, t) to non-zero Python
integers, so coefficients never overflow.
"""
import math
import re
from collections.abc import Sequence
from functools import lru_cache

from resonant_blocks.rb_errors import (
    DimensionMismatchError,
    NonPositiveXiError,
    OddExponentError,
    PolynomialParseError,
    VariableUniverseError,
)

_TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(t)|(\^)|(\*)|([+-]))")


class MultiPoly:
    """An element of Z[y_1..y_m, xi_1..xi_m, t].

    Instances are treated as immutable values: every operation returns a new polynomial.
    """

    __slots__ = ("_hash", "m", "terms")

    def __init__(self, m: int, terms: dict[tuple[int, ...], int] | None = None):
        """Create a polynomial in m variable pairs.

        Args:
            m (int): Number of xi variables (and y variables).
            terms (dict, optional): Map from exponent tuples of length 2m+1 to integers.

        Raises:
            DimensionMismatchError: If an exponent tuple has the wrong length.
        """
        self.m = m
        clean = {}
        for exponents, coefficient in (terms or {}).items():
            if len(exponents) != 2 * m + 1:
                msg = f"Exponent tuple {exponents} does not have length {2 * m + 1}."
                raise DimensionMismatchError(msg)
            if coefficient:
                clean[tuple(exponents)] = int(coefficient)
        self.terms = clean
        self._hash = None

    # Constructors -----------------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "MultiPoly":
        return cls(m)

    @classmethod
    def constant(cls, m: int, value: int) -> "MultiPoly":
        return cls(m, {(0,) * (2 * m + 1): value})

    @classmethod
    def one(cls, m: int) -> "MultiPoly":
        return cls.constant(m, 1)

    @classmethod
    def _variable(cls, m: int, position: int, power: int = 1) -> "MultiPoly":
        exponents = [0] * (2 * m + 1)
        exponents[position] = power
        return cls(m, {tuple(exponents): 1})

    @classmethod
    def t(cls, m: int, power: int = 1) -> "MultiPoly":
        return cls._variable(m, 2 * m, power)

    @classmethod
    def xi(cls, m: int, i: int, power: int = 1) -> "MultiPoly":
        """The variable xi_{i+1} (0-based index i)."""
        _check_index(m, i)
        return cls._variable(m, m + i, power)

    @classmethod
    def y(cls, m: int, i: int, power: int = 1) -> "MultiPoly":
        """The variable y_{i+1} = sqrt(xi_{i+1}) (0-based index i)."""
        _check_index(m, i)
        return cls._variable(m, i, power)

    @classmethod
    def linear_xi(cls, m: int, coeffs: Sequence[int]) -> "MultiPoly":
        """The linear form sum coeffs[i] * xi_i, i.e. u(xi) for a vector u."""
        if len(coeffs) != m:
            msg = f"Linear form needs {m} coefficients, got {len(coeffs)}."
            raise DimensionMismatchError(msg)
        terms = {}
        for i, c in enumerate(coeffs):
            exponents = [0] * (2 * m + 1)
            exponents[m + i] = 1
            terms[tuple(exponents)] = c
        return cls(m, terms)

    @classmethod
    def from_t_coefficients(cls, coefficients: Sequence["MultiPoly"]) -> "MultiPoly":
        """Build sum coefficients[k] * t^k from t-free coefficient polynomials."""
        if not coefficients:
            msg = "At least one coefficient is required."
            raise ValueError(msg)
        m = coefficients[0].m
        result = cls.zero(m)
        for power, coefficient in enumerate(coefficients):
            result += coefficient * cls.t(m, power)
        return result

    # Basic properties -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree_t(self) -> int:
        """Degree in t; -1 for the zero polynomial."""
        return max((e[-1] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def weighted_degree(self, exponents: tuple[int, ...]) -> int:
        """Weighted degree of one monomial where y counts 1 and xi, t count 2."""
        m = self.m
        return sum(exponents[:m]) + 2 * sum(exponents[m:])

    def is_homogeneous(self) -> bool:
        """True when all terms share one degree, with y_i counted as half of xi_i."""
        return len({self.weighted_degree(e) for e in self.terms}) <= 1

    def has_roots(self) -> bool:
        """True when some term contains a y variable."""
        return any(any(e[: self.m]) for e in self.terms)

    def uses_xi(self, i: int) -> bool:
        return any(e[self.m + i] or e[i] for e in self.terms)

    def leading_coefficient_t(self) -> "MultiPoly":
        return self.coefficients_in_t()[-1] if self.terms else MultiPoly.zero(self.m)

    def is_monic_t(self) -> bool:
        return self.leading_coefficient_t() == MultiPoly.one(self.m)

    def coefficients_in_t(self) -> list["MultiPoly"]:
        """Return [c_0, c_1, ..., c_d] with self = sum c_k t^k and every c_k free of t."""
        degree = self.degree_t()
        buckets = [{} for _ in range(max(degree, 0) + 1)]
        for exponents, c in self.terms.items():
            buckets[exponents[-1]][exponents[:-1] + (0,)] = c
        return [MultiPoly(self.m, bucket) for bucket in buckets]

    def constant_value(self) -> int:
        """The integer value of a constant polynomial.

        Raises:
            ValueError: If the polynomial is not constant.

        Returns:
            int: The constant.
        """
        if any(any(e) for e in self.terms):
            msg = f"Polynomial {self} is not a constant."
            raise ValueError(msg)
        return self.terms.get((0,) * (2 * self.m + 1), 0)

    # Arithmetic -------------------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.m != self.m:
                msg = f"Cannot combine polynomials in {self.m} and {other.m} variable pairs."
                raise VariableUniverseError(msg)
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.m, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for exponents, c in other.terms.items():
            terms[exponents] = terms.get(exponents, 0) + c
        return MultiPoly(self.m, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.m, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2, strict=True))
                terms[key] = terms.get(key, 0) + c1 * c2
        return MultiPoly(self.m, terms)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if power < 0:
            msg = "Negative powers are not polynomials."
            raise ValueError(msg)
        result = MultiPoly.one(self.m)
        base = self
        while power:
            if power & 1:
                result *= base
            base *= base
            power >>= 1
        return result

    def scale_exact(self, divisor: int) -> "MultiPoly":
        """Divide every coefficient by an integer that divides it exactly."""
        terms = {}
        for e, c in self.terms.items():
            q, r = divmod(c, divisor)
            if r:
                msg = f"{divisor} does not divide coefficient {c}."
                raise ValueError(msg)
            terms[e] = q
        return MultiPoly(self.m, terms)

    def reduce_mod(self, modulus: int) -> "MultiPoly":
        """Reduce all coefficients into [0, modulus)."""
        return MultiPoly(self.m, {e: c % modulus for e, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.m, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"MultiPoly({self.m}, '{self}')"

    # Substitutions ---------------------------------------------------------------

    def divmod_monic_t(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Divide by a polynomial monic in t, as polynomials in t over Z[y, xi].

        Args:
            divisor: A polynomial whose leading t coefficient is 1.

        Raises:
            ValueError: If the divisor is not monic in t.

        Returns:
            tuple[MultiPoly, MultiPoly]: Quotient and remainder with deg_t(remainder) < deg_t(divisor).
        """
        divisor = self._coerce(divisor)
        if divisor.is_zero() or not divisor.is_monic_t():
            msg = f"Divisor {divisor} is not monic in t."
            raise ValueError(msg)
        d = divisor.degree_t()
        divisor_coeffs = divisor.coefficients_in_t()
        remainder = self.coefficients_in_t() if self.terms else [MultiPoly.zero(self.m)]
        quotient = [MultiPoly.zero(self.m) for _ in range(max(len(remainder) - d, 1))]
        for power in range(len(remainder) - 1, d - 1, -1):
            lead = remainder[power]
            if lead.is_zero():
                continue
            quotient[power - d] = lead
            for k in range(d + 1):
                remainder[power - d + k] -= lead * divisor_coeffs[k]
        rem = MultiPoly.from_t_coefficients(remainder[:d] or [MultiPoly.zero(self.m)])
        return MultiPoly.from_t_coefficients(quotient), rem

    def shift_t(self, shift: "MultiPoly") -> "MultiPoly":
        """Substitute t -> t + shift, where shift does not contain t."""
        shift = self._coerce(shift)
        if shift.degree_t() > 0:
            msg = "The shift must not contain t."
            raise ValueError(msg)
        moved = MultiPoly.t(self.m) + shift
        result = MultiPoly.zero(self.m)
        for coefficient in reversed(self.coefficients_in_t()):
            result = result * moved + coefficient
        return result

    def negate_t(self) -> "MultiPoly":
        """Substitute t -> -t."""
        return MultiPoly(self.m, {e: (-c if e[-1] % 2 else c) for e, c in self.terms.items()})

    def insert_variable(self, i: int) -> "MultiPoly":
        """Embed into m+1 variable pairs with a new, unused pair at 0-based position i."""
        if not 0 <= i <= self.m:
            msg = f"Insert position {i} outside 0..{self.m}."
            raise IndexError(msg)
        m = self.m
        terms = {}
        for e, c in self.terms.items():
            ys, xs = list(e[:m]), list(e[m : 2 * m])
            ys.insert(i, 0)
            xs.insert(i, 0)
            terms[(*ys, *xs, e[-1])] = c
        return MultiPoly(m + 1, terms)

    def remove_variable(self, i: int) -> "MultiPoly":
        """Drop the unused variable pair at 0-based position i.

        Raises:
            ValueError: If y_i or xi_i still occurs.

        Returns:
            MultiPoly: The same polynomial in m-1 variable pairs.
        """
        _check_index(self.m, i)
        if self.uses_xi(i):
            msg = f"Variable pair {i + 1} still occurs in {self}."
            raise ValueError(msg)
        m = self.m
        terms = {}
        for e, c in self.terms.items():
            ys = e[:i] + e[i + 1 : m]
            xs = e[m : m + i] + e[m + i + 1 : 2 * m]
            terms[(*ys, *xs, e[-1])] = c
        return MultiPoly(m - 1, terms)

    def evaluate_integer(self, point: Sequence[int]) -> list[int]:
        """Substitute xi = point (integers) into a y-free polynomial.

        Args:
            point: One integer per xi variable.

        Raises:
            DimensionMismatchError: If the point has the wrong length.
            ValueError: If the polynomial still contains y variables.

        Returns:
            list[int]: Coefficients of the resulting univariate polynomial in t, lowest degree first.
        """
        if len(point) != self.m:
            msg = f"Point of length {len(point)} given for {self.m} variables."
            raise DimensionMismatchError(msg)
        if self.has_roots():
            msg = "Eliminate the square root variables before integer evaluation."
            raise ValueError(msg)
        coefficients = [0] * (max(self.degree_t(), 0) + 1)
        for e, c in self.terms.items():
            value = c
            for i, z in enumerate(point):
                value *= z ** e[self.m + i]
            coefficients[e[-1]] += value
        return coefficients

    def evaluate_t(self, value: int) -> "MultiPoly":
        """Substitute the integer value for t."""
        terms = {}
        for e, c in self.terms.items():
            key = e[:-1] + (0,)
            terms[key] = terms.get(key, 0) + c * value ** e[-1]
        return MultiPoly(self.m, terms)

    # Text --------------------------------------------------------------------------

    def _sort_key(self, exponents: tuple[int, ...]):
        m = self.m
        ordered = (exponents[-1], *exponents[m : 2 * m], *exponents[:m])
        return (-sum(exponents), tuple(-e for e in ordered))

    def _monomial_text(self, exponents: tuple[int, ...]) -> str:
        m = self.m
        names = [f"y{i + 1}" for i in range(m)] + [f"x{i + 1}" for i in range(m)] + ["t"]
        factors = []
        for name, power in zip(names, exponents, strict=True):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for position, exponents in enumerate(sorted(self.terms, key=self._sort_key)):
            c = self.terms[exponents]
            monomial = self._monomial_text(exponents)
            magnitude = abs(c)
            if not monomial:
                body = str(magnitude)
            elif magnitude == 1:
                body = monomial
            else:
                body = f"{magnitude}*{monomial}"
            if position == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces)

    def to_text(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str, m: int | None = None) -> "MultiPoly":
        """Parse polynomial text such as `t^2 + x1*t + x2*t + 4*x1*x2`.

        Args:
            text: Sum of signed products of integers and the variables y<k>, x<k>, t with optional ^power.
            m: Number of variable pairs. Defaults to the largest index that occurs.

        Raises:
            PolynomialParseError: If the text is malformed or refers to an index above m.

        Returns:
            MultiPoly: The parsed polynomial.
        """
        tokens = _tokenize(text)
        largest = max((int(tok[1]) for tok in tokens if tok[0] in {"x", "y"}), default=0)
        if m is None:
            m = largest
        elif largest > m:
            msg = f"Variable index {largest} exceeds {m} in '{text}'."
            raise PolynomialParseError(msg)
        result = {}
        position = 0
        expect_term = True
        sign = 1
        while position < len(tokens):
            kind = tokens[position][0]
            if kind == "sign":
                sign = sign * (-1 if tokens[position][1] == "-" else 1)
                position += 1
                expect_term = True
                continue
            if not expect_term:
                msg = f"Missing operator before token {position + 1} in '{text}'."
                raise PolynomialParseError(msg)
            coefficient, exponents, position = _parse_product(tokens, position, m, text)
            key = tuple(exponents)
            result[key] = result.get(key, 0) + sign * coefficient
            sign = 1
            expect_term = False
            if position < len(tokens) and tokens[position][0] != "sign":
                msg = f"Unexpected token {position + 1} in '{text}'."
                raise PolynomialParseError(msg)
        if expect_term:
            msg = f"Polynomial text '{text}' ends without a term."
            raise PolynomialParseError(msg)
        return cls(m, result)


def _check_index(m: int, i: int) -> None:
    if not 0 <= i < m:
        msg = f"Variable index {i} outside 0..{m - 1}."
        raise IndexError(msg)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN_PATTERN.match(stripped, position)
        if match is None or match.end() == position:
            msg = f"Unexpected character at column {position + 1} in '{text}'."
            raise PolynomialParseError(msg)
        number, var, index, t_var, caret, star, sign = match.groups()
        if number is not None:
            tokens.append(("int", number))
        elif var is not None:
            if int(index) < 1:
                msg = f"Variable indices start at 1, got {var}{index}."
                raise PolynomialParseError(msg)
            tokens.append((var, index))
        elif t_var is not None:
            tokens.append(("t", ""))
        elif caret is not None:
            tokens.append(("^", ""))
        elif star is not None:
            tokens.append(("*", ""))
        else:
            tokens.append(("sign", sign))
        position = match.end()
    if not tokens:
        msg = "Empty polynomial text."
        raise PolynomialParseError(msg)
    return tokens


def _parse_product(tokens, position, m, text):
    """Parse factor ('*' factor)* starting at position."""
    coefficient = 1
    exponents = [0] * (2 * m + 1)
    while True:
        if position >= len(tokens):
            msg = f"Polynomial text '{text}' ends inside a product."
            raise PolynomialParseError(msg)
        kind, value = tokens[position]
        position += 1
        if kind == "int":
            coefficient *= int(value)
        elif kind in {"x", "y", "t"}:
            power = 1
            if position < len(tokens) and tokens[position][0] == "^":
                if position + 1 >= len(tokens) or tokens[position + 1][0] != "int":
                    msg = f"Exponent missing after '^' in '{text}'."
                    raise PolynomialParseError(msg)
                power = int(tokens[position + 1][1])
                position += 2
            if kind == "t":
                slot = 2 * m
            else:
                slot = int(value) - 1 + (m if kind == "x" else 0)
            exponents[slot] += power
        else:
            msg = f"Unexpected '{value or kind}' in '{text}'."
            raise PolynomialParseError(msg)
        if position < len(tokens) and tokens[position][0] == "*":
            position += 1
            continue
        return coefficient, exponents, position


def arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """Exact ring operation on two polynomials over the same variables.

    Args:
        a: Left operand.
        b: Right operand.
        op: One of "add", "sub", "mul".

    Raises:
        ValueError: If op is unknown.
        VariableUniverseError: If the operands use different variable sets.

    Returns:
        MultiPoly: The result.
    """
    if a.m != b.m:
        msg = f"Cannot combine polynomials in {a.m} and {b.m} variable pairs."
        raise VariableUniverseError(msg)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    msg = f"Unknown operation '{op}', expected add, sub or mul."
    raise ValueError(msg)


def determinant(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Exact determinant by Laplace expansion along rows, memoized on the set of used columns.

    Args:
        matrix: A square matrix of polynomials over a common variable set.

    Raises:
        DimensionMismatchError: If the matrix is not square or empty.

    Returns:
        MultiPoly: The determinant.
    """
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        msg = "determinant() needs a non-empty square matrix."
        raise DimensionMismatchError(msg)
    m = matrix[0][0].m

    @lru_cache(maxsize=None)
    def minor(used: int) -> MultiPoly:
        row = used.bit_count()
        if row == size:
            return MultiPoly.one(m)
        total = MultiPoly.zero(m)
        sign = 1
        for col in range(size):
            if used & (1 << col):
                continue
            entry = matrix[row][col]
            if not entry.is_zero():
                part = entry * minor(used | (1 << col))
                total = total + part if sign > 0 else total - part
            sign = -sign
        return total

    return minor(0)


def det_charpoly(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Return det(t*Id - matrix), exactly.

    Args:
        matrix: A square matrix of t-free polynomials.

    Returns:
        MultiPoly: The characteristic polynomial, monic of degree len(matrix) in t.
    """
    size = len(matrix)
    if size == 0:
        msg = "det_charpoly() needs a non-empty square matrix."
        raise DimensionMismatchError(msg)
    m = matrix[0][0].m
    t = MultiPoly.t(m)
    shifted = [[(t - entry) if r == c else -entry for c, entry in enumerate(row)] for r, row in enumerate(matrix)]
    return determinant(shifted)


def eliminate_roots(poly: MultiPoly) -> MultiPoly:
    """Replace y_i^2 by xi_i after checking that every y exponent is even.

    Args:
        poly: A polynomial in y, xi and t.

    Raises:
        OddExponentError: If some term has an odd power of a y variable.

    Returns:
        MultiPoly: The same polynomial written in xi and t only.
    """
    m = poly.m
    terms = {}
    for e, c in poly.terms.items():
        if any(power % 2 for power in e[:m]):
            raise OddExponentError(str(MultiPoly(m, {e: c})))
        key = (*([0] * m), *(e[m + i] + e[i] // 2 for i in range(m)), e[-1])
        terms[key] = terms.get(key, 0) + c
    return MultiPoly(m, terms)


def specialize(poly: MultiPoly, i: int, value: int) -> MultiPoly:
    """Substitute xi_i := value (0-based i), accounting for y_i = sqrt(xi_i).

    Terms containing y_i vanish when value is 0. Otherwise an even power y_i^(2k) becomes
    value^k, and odd powers need value to be a perfect square.

    Args:
        poly: The polynomial.
        i: 0-based variable index.
        value: The integer to substitute.

    Raises:
        OddExponentError: If an odd power of y_i meets a value that is not a perfect square.

    Returns:
        MultiPoly: The specialized polynomial, still over m variable pairs.
    """
    _check_index(poly.m, i)
    m = poly.m
    root = math.isqrt(value) if value >= 0 else None
    terms = {}
    for e, c in poly.terms.items():
        y_power, x_power = e[i], e[m + i]
        factor = value**x_power
        if y_power:
            if value == 0:
                continue
            if y_power % 2 == 0:
                factor *= value ** (y_power // 2)
            elif root is not None and root * root == value:
                factor *= root**y_power
            else:
                raise OddExponentError(str(MultiPoly(m, {e: c})))
        key = list(e)
        key[i] = 0
        key[m + i] = 0
        key = tuple(key)
        terms[key] = terms.get(key, 0) + c * factor
    return MultiPoly(m, terms)


def eval_numeric(poly: MultiPoly, xi: Sequence[float], t: complex) -> complex | float:
    """Evaluate with floats, using y_i = sqrt(xi_i).

    Args:
        poly: The polynomial.
        xi: Positive values for xi_1..xi_m.
        t: Real or complex value of t.

    Raises:
        NonPositiveXiError: If some xi_i <= 0.
        DimensionMismatchError: If xi has the wrong length.

    Returns:
        complex | float: The value; real when t is real.
    """
    if len(xi) != poly.m:
        msg = f"Got {len(xi)} xi values for {poly.m} variables."
        raise DimensionMismatchError(msg)
    if any(value <= 0 for value in xi):
        msg = f"eval_numeric(): all xi must be positive, got {list(xi)}."
        raise NonPositiveXiError(msg)
    roots = [math.sqrt(value) for value in xi]
    m = poly.m
    total = 0
    for e, c in poly.terms.items():
        value = c * t ** e[-1]
        for k in range(m):
            if e[k]:
                value *= roots[k] ** e[k]
            if e[m + k]:
                value *= xi[k] ** e[m + k]
        total += value
    if isinstance(total, complex) and not isinstance(t, complex):
        return total.real
    return total


def numeric_scale(poly: MultiPoly, xi: Sequence[float], t: complex) -> float:
    """Sum of absolute values of all terms at the point, used to normalise residuals."""
    m = poly.m
    scale = 0.0
    for e, c in poly.terms.items():
        value = abs(c) * abs(t) ** e[-1]
        for k in range(m):
            value *= math.sqrt(xi[k]) ** e[k] * xi[k] ** e[m + k]
        scale += value
    return max(scale, 1.0)

