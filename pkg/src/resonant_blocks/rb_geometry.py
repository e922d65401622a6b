"""Geometric realizations of colored graphs for given tangential sites.

A root x in R^n realizes a combinatorial graph when, for every non-root vertex h = (a, sigma),

    (x, pi(a)) = K(h)            if h is black,
    |x|^2 + (x, pi(a)) = K(h)    if h is red.

The realized vertices are the points h.x = sigma*x - pi(a). All classification is done
over Q; floats are only used to produce a witness on a sphere of irrational radius.
"""
import itertools
import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from resonant_blocks.rb_errors import DimensionMismatchError, NotDegenerateError
from resonant_blocks.rb_graphs import ColoredGraph, relation_basis
from resonant_blocks.rb_lattice import Edge, EdgeColor, GroupElement, TangentialSites, kenergy
from resonant_blocks.rb_rational import solve_affine

WITNESS_TOLERANCE = 1e-9
# A float witness this close to an exact special solution counts as special.
SPECIAL_POINT_DISTANCE = 1e-6


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v, strict=True))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v, strict=True))


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v, strict=True))


def _scale(k, u):
    return tuple(k * a for a in u)


def geometric_edge(p: Sequence, q: Sequence, sites: TangentialSites) -> list[Edge]:
    """All edges of the geometric graph joining p and q.

    Black{i,j}: q = p + v_j - v_i and (p - v_i, v_i - v_j) = 0, in either orientation.
    Red{i,j}: p + q = v_i + v_j and (p - v_i, p - v_j) = 0.

    Args:
        p: A point of Q^n (ints or Fractions).
        q: Another point of Q^n.
        sites: The tangential sites.

    Raises:
        DimensionMismatchError: If the points do not live in R^n.

    Returns:
        list[Edge]: The edges that hold, empty when none does.
    """
    if len(p) != sites.n or len(q) != sites.n:
        msg = f"Points must have {sites.n} coordinates."
        raise DimensionMismatchError(msg)
    p = tuple(Fraction(c) for c in p)
    q = tuple(Fraction(c) for c in q)
    v = sites.vectors
    edges = set()
    for i, j in itertools.permutations(range(sites.m), 2):
        difference = _sub(v[i], v[j])
        if q == _add(p, _sub(v[j], v[i])) and _dot(_sub(p, v[i]), difference) == 0:
            edges.add(Edge(EdgeColor.BLACK, i, j))
        if i < j and _add(p, q) == _add(v[i], v[j]) and _dot(_sub(p, v[i]), _sub(p, v[j])) == 0:
            edges.add(Edge(EdgeColor.RED, i, j))
    return sorted(edges)


def realize_vertices(g: ColoredGraph, x: Sequence, sites: TangentialSites) -> list[tuple]:
    """The points h.x for every vertex h of g, in vertex order."""
    return [v.act(x, sites) for v in g.vertices]


@dataclass(frozen=True)
class LinearRow:
    """(x, normal) = rhs, from a black vertex."""
    vertex: GroupElement
    normal: tuple[int, ...]
    rhs: int


@dataclass(frozen=True)
class QuadraticRow:
    """|x|^2 + (x, normal) = rhs, from a red vertex."""
    vertex: GroupElement
    normal: tuple[int, ...]
    rhs: int

    def center(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(-c, 2) for c in self.normal)

    def radius_squared(self) -> Fraction:
        return self.rhs + Fraction(_dot(self.normal, self.normal), 4)

    def residual(self, x) -> Fraction:
        return _dot(x, x) + _dot(x, self.normal) - self.rhs


@dataclass(frozen=True)
class RealizationSystem:
    graph: ColoredGraph
    sites: TangentialSites
    linear: tuple[LinearRow, ...]
    quadratic: tuple[QuadraticRow, ...]

    def describe(self) -> list[str]:
        """The equations as text, one per non-root vertex."""
        lines = [f"(x, {list(row.normal)}) = {row.rhs}" for row in self.linear]
        lines.extend(f"|x|^2 + (x, {list(row.normal)}) = {row.rhs}" for row in self.quadratic)
        return lines


class RealizationClass(StrEnum):
    GENERIC_SOLUTIONS = "generic_solutions"
    ONLY_IN_S = "only_in_S"
    ONLY_COMPLEX = "only_complex"
    EMPTY_REAL = "empty_real"
    INCONSISTENT = "inconsistent"


@dataclass
class RealizationVerdict:
    """Classification of a realization system with its witness.

    exact is True when the witness is a rational point satisfying every equation exactly.
    """
    classification: RealizationClass
    witness: tuple | None = None
    exact: bool = False
    dimension: int | None = None
    radius_squared: Fraction | None = None
    integer_witness: tuple[int, ...] | None = None
    detail: str = ""
    special_points: list[tuple] = field(default_factory=list)


def build_system(g: ColoredGraph, sites: TangentialSites) -> RealizationSystem:
    """One equation per non-root vertex: linear for black vertices, quadratic for red ones.

    Args:
        g: A graph rooted at the identity.
        sites: Tangential sites with as many vectors as g has coordinates.

    Raises:
        DimensionMismatchError: If the number of sites differs from m.
        ValueError: If g is not rooted at the identity.

    Returns:
        RealizationSystem: The system.
    """
    if sites.m != g.m:
        msg = f"Graph in Z^{g.m} needs {g.m} tangential sites, got {sites.m}."
        raise DimensionMismatchError(msg)
    if g.vertices[0] != GroupElement.zero(g.m):
        msg = f"build_system() needs a graph rooted at 0, got root {g.vertices[0]}."
        raise ValueError(msg)
    linear, quadratic = [], []
    for v in g.vertices[1:]:
        normal = sites.pi(v.coeffs)
        rhs = kenergy(v, sites)
        if v.twist:
            quadratic.append(QuadraticRow(v, normal, rhs))
        else:
            linear.append(LinearRow(v, normal, rhs))
    return RealizationSystem(g, sites, tuple(linear), tuple(quadratic))


def _satisfies(system: RealizationSystem, x) -> bool:
    return all(_dot(x, row.normal) == row.rhs for row in system.linear) and all(row.residual(x) == 0 for row in system.quadratic)


def _touches_sites(system: RealizationSystem, x) -> bool:
    return any(system.sites.contains(point) for point in realize_vertices(system.graph, x, system.sites))


def _special_solutions(system: RealizationSystem) -> list[tuple[Fraction, ...]]:
    """The exact solutions x whose realized graph meets S: x = h^-1 . v for a vertex h and a site v."""
    found = set()
    for h in system.graph.vertices:
        inverse = h.inverse()
        for v in system.sites.vectors:
            x = tuple(Fraction(c) for c in inverse.act(v, system.sites))
            if _satisfies(system, x):
                found.add(x)
    return sorted(found)


def _integer_point(x) -> tuple[int, ...] | None:
    if all(Fraction(c).denominator == 1 for c in x):
        return tuple(int(c) for c in x)
    return None


def _exact_point_verdict(system: RealizationSystem, x, dimension: int) -> RealizationVerdict:
    special = _special_solutions(system)
    if _touches_sites(system, x):
        return RealizationVerdict(RealizationClass.ONLY_IN_S, x, True, dimension, integer_witness=_integer_point(x), special_points=special)
    return RealizationVerdict(RealizationClass.GENERIC_SOLUTIONS, x, True, dimension, integer_witness=_integer_point(x), special_points=special)


def _float_residual_ok(system: RealizationSystem, x: Sequence[float]) -> bool:
    for row in system.linear:
        scale = 1 + abs(row.rhs) + math.sqrt(_dot(row.normal, row.normal)) * math.sqrt(_dot(x, x))
        if abs(_dot(x, row.normal) - row.rhs) > WITNESS_TOLERANCE * scale:
            return False
    for row in system.quadratic:
        scale = 1 + abs(row.rhs) + _dot(x, x) + math.sqrt(_dot(row.normal, row.normal)) * math.sqrt(_dot(x, x))
        if abs(_dot(x, x) + _dot(x, row.normal) - row.rhs) > WITNESS_TOLERANCE * scale:
            return False
    return True


def _orthogonal_directions(basis: list[tuple[Fraction, ...]]) -> list[tuple[float, ...]]:
    """Gram-Schmidt over Q, then normalized to float unit vectors."""
    orthogonal = []
    for b in basis:
        w = b
        for u in orthogonal:
            w = _sub(w, _scale(_dot(w, u) / _dot(u, u), u))
        if any(w):
            orthogonal.append(w)
    units = []
    for w in orthogonal:
        norm = math.sqrt(float(_dot(w, w)))
        units.append(tuple(float(c) / norm for c in w))
    return units


def _project(point, x0, basis) -> tuple[Fraction, ...]:
    """Orthogonal projection of point onto the affine space x0 + span(basis), exactly."""
    size = len(basis)
    gram = [[_dot(basis[r], basis[c]) for c in range(size)] for r in range(size)]
    rhs = [_dot(basis[r], _sub(point, x0)) for r in range(size)]
    solution = solve_affine(gram, rhs)
    coefficients = solution[0] if solution is not None else (Fraction(0),) * size
    result = x0
    for k, b in zip(coefficients, basis, strict=True):
        result = _add(result, _scale(k, b))
    return result


def _linear_only(system: RealizationSystem) -> RealizationVerdict:
    n = system.sites.n
    if not system.linear:
        x0, basis = (Fraction(0),) * n, [tuple(Fraction(int(k == j)) for k in range(n)) for j in range(n)]
    else:
        solution = solve_affine([row.normal for row in system.linear], [row.rhs for row in system.linear])
        if solution is None:
            return RealizationVerdict(RealizationClass.INCONSISTENT, detail="the linear equations are contradictory")
        x0, basis = solution
    if not basis:
        return _exact_point_verdict(system, x0, 0)
    for k in itertools.count():
        candidate = _add(x0, _scale(k, basis[0]))
        if not _touches_sites(system, candidate):
            return RealizationVerdict(
                RealizationClass.GENERIC_SOLUTIONS, candidate, True, len(basis), integer_witness=_integer_point(candidate)
            )
    return None  # pragma: no cover


def solve_realization(system: RealizationSystem) -> RealizationVerdict:
    """Classify the real solutions of a realization system.

    Order of the checks: a red equation whose own sphere has negative squared radius gives
    EMPTY_REAL; contradictory linear equations give INCONSISTENT; completing the square on
    the affine solution space gives r^2 with ONLY_COMPLEX for r^2 < 0, a single point for
    r^2 = 0 and a sphere otherwise. Solutions whose realized vertices meet S are ONLY_IN_S.

    Args:
        system: The system built by build_system().

    Returns:
        RealizationVerdict: The classification and its witness.
    """
    for row in system.quadratic:
        radius_squared = row.radius_squared()
        if radius_squared < 0:
            return RealizationVerdict(
                RealizationClass.EMPTY_REAL,
                radius_squared=radius_squared,
                detail=f"|x - c|^2 = {radius_squared} for vertex {row.vertex}",
            )
    if not system.quadratic:
        return _linear_only(system)

    first = system.quadratic[0]
    n = system.sites.n
    rows = [list(row.normal) for row in system.linear]
    rhs = [row.rhs for row in system.linear]
    for row in system.quadratic[1:]:
        rows.append(list(_sub(row.normal, first.normal)))
        rhs.append(row.rhs - first.rhs)
    if rows:
        solution = solve_affine(rows, rhs)
        if solution is None:
            return RealizationVerdict(RealizationClass.INCONSISTENT, detail="the linear equations are contradictory")
        x0, basis = solution
    else:
        x0, basis = (Fraction(0),) * n, [tuple(Fraction(int(k == j)) for k in range(n)) for j in range(n)]

    if not basis:
        if first.residual(x0) != 0:
            return RealizationVerdict(RealizationClass.INCONSISTENT, detail="the unique linear solution misses the sphere", dimension=0)
        return _exact_point_verdict(system, x0, 0)

    center = first.center()
    foot = _project(center, x0, basis)
    offset = _sub(foot, center)
    radius_squared = first.radius_squared() - _dot(offset, offset)
    dimension = len(basis)
    if radius_squared < 0:
        return RealizationVerdict(RealizationClass.ONLY_COMPLEX, dimension=dimension, radius_squared=radius_squared)
    if radius_squared == 0:
        verdict = _exact_point_verdict(system, foot, dimension)
        verdict.radius_squared = radius_squared
        return verdict

    special = _special_solutions(system)
    directions = _orthogonal_directions(basis)
    radius = math.sqrt(float(radius_squared))
    base = [float(c) for c in foot]
    candidates = [(u, sign) for u in directions for sign in (1.0, -1.0)]
    if dimension > 1:
        mixed = tuple(a + b for a, b in zip(directions[0], directions[1], strict=True))
        norm = math.sqrt(sum(c * c for c in mixed))
        candidates.append((tuple(c / norm for c in mixed), 1.0))
    for u, sign in candidates:
        witness = tuple(b + sign * radius * c for b, c in zip(base, u, strict=True))
        near_special = any(max(abs(w - float(s)) for w, s in zip(witness, point, strict=True)) < SPECIAL_POINT_DISTANCE for point in special)
        if not near_special and _float_residual_ok(system, witness):
            return RealizationVerdict(
                RealizationClass.GENERIC_SOLUTIONS, witness, False, dimension, radius_squared, special_points=special
            )
    # every real solution is one of the special points (a 0-sphere inside the special component)
    return RealizationVerdict(
        RealizationClass.ONLY_IN_S, special[0] if special else None, bool(special), dimension, radius_squared, special_points=special
    )


def avoidable_constraint(g: ColoredGraph, sites: TangentialSites) -> list[int]:
    """For each basis relation n, the integer sum n_a K(g_a); non-zero values certify an avoidable resonance.

    Raises:
        NotDegenerateError: If g has no relations.

    Returns:
        list[int]: One value per basis relation.
    """
    basis = relation_basis(g)
    if basis.is_empty():
        msg = f"Graph {g.label()} is not degenerate."
        raise NotDegenerateError(msg)
    energies = [kenergy(v, sites) for v in g.vertices]
    return [sum(n * k for n, k in zip(relation, energies, strict=True)) for relation in basis.relations]


def random_generic_sites(m: int, n: int, box: int, rng: random.Random, max_tries: int = 1000) -> TangentialSites:
    """Draw m integer sites uniformly in [-box, box]^n, rejecting coincident or affinely dependent draws.

    Raises:
        RuntimeError: If no generic draw is found within max_tries.

    Returns:
        TangentialSites: The generic sites.
    """
    for _ in range(max_tries):
        vectors = [tuple(rng.randint(-box, box) for _ in range(n)) for _ in range(m)]
        if len(set(vectors)) != m:
            continue
        sites = TangentialSites(tuple(vectors))
        if sites.is_generic():
            return sites
    msg = f"No generic choice of {m} sites in [-{box},{box}]^{n} after {max_tries} draws."
    raise RuntimeError(msg)
