"""Elements and maps of the group G = Z^m x| Z/2.

An element (a, sigma) has coefficients a in Z^m and a twist sigma. The twist tau
acts on Z^m by a -> -a, so the product is (c, rho)(a, sigma) = (c + rho*a, rho*sigma).
Combinatorial vertices are plain vectors whose color is derived from the mass:
mass 0 is black (untwisted), mass -2 is red (twisted).
"""
import itertools
import re
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from resonant_blocks.rb_errors import BadMassError, DimensionMismatchError

BLACK_MASS = 0
RED_MASS = -2
# Generators e_i - e_j and -e_i - e_j touch two coordinates.
EDGE_SUPPORT = 2

_ELEMENT_PATTERN = re.compile(r"^\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]\s*(t?)\s*$")


class EdgeColor(StrEnum):
    BLACK = "Black"
    RED = "Red"


@dataclass(frozen=True, order=True)
class Edge:
    """An edge descriptor: a color and the unordered index pair {i, j} (0-based, i < j)."""
    color: EdgeColor
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            msg = f"Edge indices must differ, got {self.i} twice."
            raise ValueError(msg)
        if self.i > self.j:
            first, second = self.j, self.i
            object.__setattr__(self, "i", first)
            object.__setattr__(self, "j", second)

    def contains(self, index: int) -> bool:
        return index in {self.i, self.j}

    def __str__(self) -> str:
        return f"{self.color.value}{{{self.i + 1},{self.j + 1}}}"


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element (a, sigma) of Z^m x| Z/2. twist=True means the element carries tau."""
    coeffs: tuple[int, ...]
    twist: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @classmethod
    def zero(cls, m: int) -> "GroupElement":
        return cls((0,) * m)

    @classmethod
    def tau(cls, m: int) -> "GroupElement":
        return cls((0,) * m, True)

    @classmethod
    def from_vertex(cls, vertex) -> "GroupElement":
        """Build the element of a combinatorial vertex, deriving the twist from its mass.

        Args:
            vertex: An integer vector with mass 0 or -2.

        Raises:
            BadMassError: If the mass is neither 0 nor -2.

        Returns:
            GroupElement: The untwisted (mass 0) or twisted (mass -2) element.
        """
        return cls(tuple(vertex), vertex_twist(vertex))

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        """Parse the textual form `[a1,...,am]` or `[a1,...,am]t`.

        Args:
            text: The element text.

        Raises:
            ValueError: If the text is not a valid element.

        Returns:
            GroupElement: The parsed element.
        """
        match = _ELEMENT_PATTERN.match(text)
        if match is None:
            msg = f"Cannot parse group element '{text}', expected [a1,...,am] or [a1,...,am]t."
            raise ValueError(msg)
        body = match.group(1)
        coeffs = tuple(int(part) for part in body.split(",")) if body else ()
        return cls(coeffs, match.group(2) == "t")

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @property
    def sign(self) -> int:
        return -1 if self.twist else 1

    @property
    def mass(self) -> int:
        return sum(self.coeffs)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.m != self.m:
            msg = f"Cannot multiply elements of Z^{self.m} and Z^{other.m}."
            raise DimensionMismatchError(msg)
        coeffs = tuple(c + self.sign * a for c, a in zip(self.coeffs, other.coeffs, strict=True))
        return GroupElement(coeffs, self.twist != other.twist)

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(-self.sign * a for a in self.coeffs), self.twist)

    def signed(self) -> tuple[int, ...]:
        """Return sigma*a, the vector the element contributes to the separation list."""
        return tuple(self.sign * a for a in self.coeffs)

    def act(self, point, sites: "TangentialSites") -> tuple:
        """Apply the affine action on R^n: a.k = -pi(a) + k and tau.k = -k.

        Args:
            point: A point of R^n (ints, Fractions or floats).
            sites: The tangential sites defining pi.

        Returns:
            tuple: The image point sigma*k - pi(a).
        """
        image = sites.pi(self.coeffs)
        return tuple(self.sign * k - p for k, p in zip(point, image, strict=True))

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.coeffs)
        return f"[{body}]{'t' if self.twist else ''}"


@dataclass(frozen=True)
class QuadForm:
    """An integer quadratic form in e_1..e_m: diagonal e_i^2 and cross e_ie_j (i < j) coefficients."""
    diag: tuple[int, ...]
    cross: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "diag", tuple(int(c) for c in self.diag))
        clean = {}
        for (i, j), value in self.cross.items():
            if i == j:
                msg = f"Cross term key ({i}, {j}) must join distinct indices."
                raise ValueError(msg)
            key = (min(i, j), max(i, j))
            clean[key] = clean.get(key, 0) + int(value)
        object.__setattr__(self, "cross", {k: v for k, v in sorted(clean.items()) if v != 0})

    def __hash__(self):
        return hash((self.diag, tuple(self.cross.items())))

    @classmethod
    def zero(cls, m: int) -> "QuadForm":
        return cls((0,) * m)

    @classmethod
    def outer(cls, u, v) -> "QuadForm":
        """The product uv of two linear forms u = sum u_i e_i and v = sum v_i e_i."""
        if len(u) != len(v):
            msg = f"Vectors of length {len(u)} and {len(v)} cannot be multiplied."
            raise DimensionMismatchError(msg)
        m = len(u)
        diag = tuple(u[i] * v[i] for i in range(m))
        cross = {(i, j): u[i] * v[j] + u[j] * v[i] for i, j in itertools.combinations(range(m), 2)}
        return cls(diag, cross)

    @property
    def m(self) -> int:
        return len(self.diag)

    def is_zero(self) -> bool:
        return not any(self.diag) and not self.cross

    def _check(self, other: "QuadForm") -> None:
        if other.m != self.m:
            msg = f"Quadratic forms over {self.m} and {other.m} variables cannot be combined."
            raise DimensionMismatchError(msg)

    def __add__(self, other: "QuadForm") -> "QuadForm":
        self._check(other)
        cross = dict(self.cross)
        for key, value in other.cross.items():
            cross[key] = cross.get(key, 0) + value
        return QuadForm(tuple(a + b for a, b in zip(self.diag, other.diag, strict=True)), cross)

    def __neg__(self) -> "QuadForm":
        return self.scale(-1)

    def __sub__(self, other: "QuadForm") -> "QuadForm":
        return self + (-other)

    def scale(self, factor: int) -> "QuadForm":
        return QuadForm(tuple(factor * c for c in self.diag), {k: factor * v for k, v in self.cross.items()})

    def evaluate(self, sites: "TangentialSites") -> int:
        """Apply pi: e_i^2 -> |v_i|^2 and e_ie_j -> (v_i, v_j).

        Args:
            sites: Tangential sites with exactly m vectors.

        Raises:
            DimensionMismatchError: If the number of sites differs from m.

        Returns:
            int: The integer pi(q).
        """
        if sites.m != self.m:
            msg = f"Quadratic form over {self.m} variables cannot be evaluated on {sites.m} sites."
            raise DimensionMismatchError(msg)
        total = sum(c * sites.dot(i, i) for i, c in enumerate(self.diag))
        total += sum(c * sites.dot(i, j) for (i, j), c in self.cross.items())
        return total

    def __str__(self) -> str:
        terms = [(c, f"e{i + 1}^2") for i, c in enumerate(self.diag) if c]
        terms.extend((c, f"e{i + 1}*e{j + 1}") for (i, j), c in self.cross.items())
        if not terms:
            return "0"
        pieces = []
        for position, (c, name) in enumerate(terms):
            magnitude = "" if abs(c) == 1 else f"{abs(c)}*"
            if position == 0:
                pieces.append(f"{'-' if c < 0 else ''}{magnitude}{name}")
            else:
                pieces.append(f" {'-' if c < 0 else '+'} {magnitude}{name}")
        return "".join(pieces)


@dataclass(frozen=True)
class TangentialSites:
    """The tangential sites S = {v_1, ..., v_m} in Z^n."""
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        vectors = tuple(tuple(int(c) for c in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if not vectors:
            msg = "At least one tangential site is required."
            raise ValueError(msg)
        lengths = {len(v) for v in vectors}
        if len(lengths) != 1:
            msg = f"Tangential sites must share one dimension, got lengths {sorted(lengths)}."
            raise DimensionMismatchError(msg)
        if len(set(vectors)) != len(vectors):
            msg = "Tangential sites must be pairwise distinct."
            raise ValueError(msg)

    @property
    def m(self) -> int:
        return len(self.vectors)

    @property
    def n(self) -> int:
        return len(self.vectors[0])

    def dot(self, i: int, j: int) -> int:
        return sum(a * b for a, b in zip(self.vectors[i], self.vectors[j], strict=True))

    def pi(self, coeffs) -> tuple[int, ...]:
        """The momentum map e_i -> v_i applied to an integer vector."""
        if len(coeffs) != self.m:
            msg = f"Vector of length {len(coeffs)} cannot be mapped with {self.m} sites."
            raise DimensionMismatchError(msg)
        return tuple(sum(c * v[k] for c, v in zip(coeffs, self.vectors, strict=True)) for k in range(self.n))

    def contains(self, point) -> bool:
        """Exact membership test of a point (ints or Fractions) in S."""
        for v in self.vectors:
            if all(Fraction(p) == c for p, c in zip(point, v, strict=True)):
                return True
        return False

    def is_generic(self) -> bool:
        """Check distinctness and affine independence of the sites (when m-1 <= n).

        The Gram determinant of the differences v_i - v_1 must be nonzero.
        """
        if len(set(self.vectors)) != self.m:
            return False
        differences = [tuple(a - b for a, b in zip(v, self.vectors[0], strict=True)) for v in self.vectors[1:]]
        if not differences or len(differences) > self.n:
            return True
        gram = [[sum(a * b for a, b in zip(u, w, strict=True)) for w in differences] for u in differences]
        return _integer_determinant(gram) != 0


def _integer_determinant(matrix: list[list[int]]) -> Fraction:
    rows = [[Fraction(c) for c in row] for row in matrix]
    size = len(rows)
    det = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col], strict=True)]
    return det


def unit_vector(m: int, i: int) -> tuple[int, ...]:
    return tuple(1 if k == i else 0 for k in range(m))


def mass(element) -> int:
    """Return eta(a) = sum of the coefficients; the twist is ignored.

    Args:
        element: A GroupElement or a plain integer vector.

    Returns:
        int: The mass.
    """
    if isinstance(element, GroupElement):
        return element.mass
    return sum(element)


def vertex_twist(vertex) -> bool:
    """Color of a combinatorial vertex from its mass: False (black) for 0, True (red) for -2."""
    value = sum(vertex)
    if value == BLACK_MASS:
        return False
    if value == RED_MASS:
        return True
    raise BadMassError(vertex)


def cmap(element: GroupElement, sign: int | None = None) -> QuadForm:
    """The quadratic energy C((a, sigma)) = (sigma/2)(a^2 + a^(2)).

    The coefficient of e_i^2 is sigma*a_i(a_i+1)/2 and that of e_ie_j is sigma*a_i*a_j,
    so the result always has integer coefficients.

    Args:
        element: The group element.
        sign: +1 (black) or -1 (red). Defaults to the element's twist.

    Raises:
        ValueError: If sign is not +1 or -1.

    Returns:
        QuadForm: The form C(element).
    """
    sigma = element.sign if sign is None else sign
    if sigma not in {1, -1}:
        msg = f"cmap(): sign must be +1 or -1, got {sign}."
        raise ValueError(msg)
    a = element.coeffs
    diag = tuple(sigma * c * (c + 1) // 2 for c in a)
    cross = {(i, j): sigma * a[i] * a[j] for i, j in itertools.combinations(range(len(a)), 2)}
    return QuadForm(diag, cross)


def kenergy(element: GroupElement, sites: TangentialSites, sign: int | None = None) -> int:
    """The energy K((a, sigma)) = pi(C((a, sigma))) = (sigma/2)(|sum a_i v_i|^2 + sum a_i |v_i|^2).

    Args:
        element: The group element.
        sites: The tangential sites; their number must equal m.
        sign: +1 or -1. Defaults to the element's twist.

    Raises:
        DimensionMismatchError: If the number of sites differs from m.

    Returns:
        int: The integer energy.
    """
    if sites.m != element.m:
        msg = f"Element in Z^{element.m} cannot be evaluated on {sites.m} tangential sites."
        raise DimensionMismatchError(msg)
    return cmap(element, sign).evaluate(sites)


def _generator_edge(difference: tuple[int, ...], color: EdgeColor) -> Edge | None:
    """Match a difference against e_i - e_j (black) or a sum against -e_i - e_j (red)."""
    support = [(k, c) for k, c in enumerate(difference) if c != 0]
    if len(support) != EDGE_SUPPORT:
        return None
    (i, ci), (j, cj) = support
    if color == EdgeColor.BLACK and {ci, cj} == {1, -1}:
        return Edge(color, i, j)
    if color == EdgeColor.RED and ci == cj == -1:
        return Edge(color, i, j)
    return None


def element_edge(first: GroupElement, second: GroupElement) -> Edge | None:
    """Return the Cayley edge joining two group elements, or None.

    Same twist: black edge when the coefficient difference is +-(e_i - e_j).
    Opposite twists: red edge when the coefficient sum is -e_i - e_j.

    Args:
        first: One element.
        second: The other element.

    Raises:
        DimensionMismatchError: If the elements live in different Z^m.

    Returns:
        Edge | None: The edge descriptor, or None when not adjacent.
    """
    if first.m != second.m:
        msg = f"Elements of Z^{first.m} and Z^{second.m} cannot be compared."
        raise DimensionMismatchError(msg)
    if first.twist == second.twist:
        difference = tuple(b - a for a, b in zip(first.coeffs, second.coeffs, strict=True))
        return _generator_edge(difference, EdgeColor.BLACK)
    total = tuple(a + b for a, b in zip(first.coeffs, second.coeffs, strict=True))
    return _generator_edge(total, EdgeColor.RED)


def edge_between(a, b) -> Edge | None:
    """Edge predicate on combinatorial vertices, colors derived from mass.

    Args:
        a: A vertex in Z^m with mass 0 or -2.
        b: A vertex in Z^m with mass 0 or -2.

    Raises:
        BadMassError: If either vertex has a mass outside {0, -2}.

    Returns:
        Edge | None: Black{i,j} if same color and b-a = +-(e_i-e_j), Red{i,j} if opposite colors
        and a+b = -e_i-e_j, None otherwise.
    """
    return element_edge(GroupElement.from_vertex(a), GroupElement.from_vertex(b))


def cayley_neighbours(vertex: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All combinatorial vertices joined to vertex by one generator, black moves first."""
    m = len(vertex)
    result = []
    for i, j in itertools.permutations(range(m), 2):
        result.append(tuple(c + (1 if k == i else -1 if k == j else 0) for k, c in enumerate(vertex)))
    for i, j in itertools.combinations(range(m), 2):
        result.append(tuple(-c - (1 if k in {i, j} else 0) for k, c in enumerate(vertex)))
    return result
