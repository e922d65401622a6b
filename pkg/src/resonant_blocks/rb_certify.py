"""Irreducibility certificates, the parity test and the separation check for characteristic polynomials.

Every characteristic polynomial handled here is monic in t and homogeneous in (xi, t),
so any factorization over Z has monic homogeneous factors. Two consequences are used:

* if some integer specialization xi -> z is irreducible over Q, so is the polynomial;
* a factor of t-degree d shows up as a degree d factor of every specialization, and its
  coefficient of t^(d-k) is a homogeneous form of degree k that can be interpolated.
"""
import itertools
import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

from resonant_blocks.rb_blocks import charpoly_block
from resonant_blocks.rb_common import RBCommon
from resonant_blocks.rb_finite_field import PRIMES, degree_pattern
from resonant_blocks.rb_graphs import ColoredGraph, canonical_form, project_components
from resonant_blocks.rb_integer_factor import factor_over_integers, int_mul, is_squarefree
from resonant_blocks.rb_multipoly import MultiPoly, specialize
from resonant_blocks.rb_rational import fraction_matrix, rref

SPECIALIZATION_RANGE = (1, 50)
MAX_BACKTRACK = 4096


class Verdict(StrEnum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    INCONCLUSIVE = "inconclusive"


@dataclass
class SpecializationEvidence:
    """One integer specialization chi(z, t) and what it says about the factor degrees of chi.

    `degree_patterns[k]` is the factor degree pattern modulo `primes[k]`. `factor_degrees`
    holds the degrees of the irreducible factors over Z, when the specialization was factored.
    """
    point: list[int]
    primes: list[int] = field(default_factory=list)
    degree_patterns: list[list[int]] = field(default_factory=list)
    factor_degrees: list[int] | None = None

    def possible_degrees(self, n: int) -> set[int]:
        """Proper factor degrees of chi that this specialization leaves open."""
        possible = set(range(1, n))
        for pattern in self.degree_patterns:
            possible &= _subset_sums(pattern, n)
        if self.factor_degrees is not None:
            possible &= _subset_sums(self.factor_degrees, n)
        return possible


@dataclass
class Certificate:
    """The outcome of certify_irreducible() and the evidence behind it.

    For IRREDUCIBLE `evidence` lists the specializations whose combined degree information
    leaves no proper factor degree; `specialization`, `primes` and `degree_patterns` repeat
    the last of them. For REDUCIBLE `factors` holds [g, chi/g] whose product is the input.
    """
    verdict: Verdict
    method: str
    primes: list[int] = field(default_factory=list)
    degree_patterns: list[list[int]] = field(default_factory=list)
    specialization: list[int] | None = None
    factors: list[MultiPoly] | None = None
    candidate_degrees: list[int] = field(default_factory=list)
    attempts: int = 0
    evidence: list[SpecializationEvidence] = field(default_factory=list)


def _irreducible(method: str, evidence: list[SpecializationEvidence], attempts: int) -> Certificate:
    last = evidence[-1]
    return Certificate(
        Verdict.IRREDUCIBLE,
        method,
        list(last.primes),
        [list(p) for p in last.degree_patterns],
        list(last.point),
        attempts=attempts,
        evidence=list(evidence),
    )


@dataclass
class ParityReport:
    ell: int
    base_matches: bool
    wrong_parity_value_odd: bool
    accepted: list[tuple[int, ...]] = field(default_factory=list)
    rejected: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.base_matches and self.wrong_parity_value_odd


def linear_factor_coefficients(poly: MultiPoly) -> tuple[int, ...]:
    """The vector c of a linear factor t + sum c_i xi_i.

    Raises:
        ValueError: If poly is not of that form.

    Returns:
        tuple[int, ...]: The coefficients c.
    """
    m = poly.m
    coefficients = [0] * m
    for e, c in poly.terms.items():
        if e == (0,) * (2 * m) + (1,) and c == 1:
            continue
        degree_xi = [k for k in range(m) if e[m + k]]
        if any(e[:m]) or e[-1] or len(degree_xi) != 1 or e[m + degree_xi[0]] != 1:
            msg = f"{poly} is not of the form t + sum c_i*x_i."
            raise ValueError(msg)
        coefficients[degree_xi[0]] = c
    if poly.degree_t() != 1 or not poly.is_monic_t():
        msg = f"{poly} is not monic linear in t."
        raise ValueError(msg)
    return tuple(coefficients)


def parity_test(chi: MultiPoly, ell: int, candidates: Sequence[Sequence[int]] = ()) -> ParityReport:
    """Check the parity structure of chi at xi = 1 and filter linear factor candidates.

    At xi = 1 the matrix is diagonal mod 2 with every diagonal entry congruent to ell, so
    chi(1, t) = (t + ell)^n mod 2 and chi(1, g) is odd for every g of parity different from ell.
    A linear factor t + sum c_i xi_i is admissible only if sum c_i = ell mod 2.

    Args:
        chi: A characteristic polynomial, monic in t.
        ell: The mass of an untwisted vertex of the block.
        candidates: Coefficient vectors c of candidate linear factors.

    Returns:
        ParityReport: Both structural checks and the accepted/rejected candidates.
    """
    n = chi.degree_t()
    values = chi.evaluate_integer([1] * chi.m)
    expected = [math.comb(n, k) * ell ** (n - k) for k in range(n + 1)]
    base_matches = all((a - b) % 2 == 0 for a, b in zip(values, expected, strict=True))
    g = ell + 1
    wrong_parity_value = sum(c * g**k for k, c in enumerate(values))
    report = ParityReport(ell, base_matches, wrong_parity_value % 2 == 1)
    for c in candidates:
        (report.accepted if (sum(c) - ell) % 2 == 0 else report.rejected).append(tuple(c))
    return report


def _subset_sums(degrees: Sequence[int], n: int) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return {s for s in sums if 0 < s < n}


def _monomials(m: int, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all monomials of degree k in m variables."""
    result = []
    for combo in itertools.combinations_with_replacement(range(m), k):
        exponents = [0] * m
        for index in combo:
            exponents[index] += 1
        result.append(tuple(exponents))
    return result


def _monomial_value(exponents: tuple[int, ...], point: Sequence[int]) -> int:
    return math.prod(z**e for z, e in zip(point, exponents, strict=True))


def _divisors_of_degree(factors: list[tuple[list[int], int]], d: int) -> list[tuple[int, ...]]:
    """All distinct monic divisors of degree d built from an integer factorization."""
    pool = [f for f, k in factors for _ in range(k)]
    found = set()
    for size in range(1, len(pool) + 1):
        for subset in itertools.combinations(range(len(pool)), size):
            if sum(len(pool[s]) - 1 for s in subset) != d:
                continue
            product = [1]
            for s in subset:
                product = int_mul(product, pool[s])
            found.add(tuple(product))
    return sorted(found)


@dataclass
class _Specialization:
    point: list[int]
    values: list[int]
    factors: list[tuple[list[int], int]]


def _interpolate(
    m: int, d: int, points: list[_Specialization], choice: Sequence[tuple[int, ...]]
) -> MultiPoly | None:
    """Interpolate a monic homogeneous candidate factor from one chosen divisor per point."""
    t = MultiPoly.t(m)
    result = t**d
    for k in range(1, d + 1):
        monomials = _monomials(m, k)
        rows = [[_monomial_value(e, p.point) for e in monomials] + [c[d - k]] for p, c in zip(points, choice, strict=True)]
        reduced, pivots = rref(fraction_matrix(rows))
        if len(monomials) in pivots or len(pivots) < len(monomials):
            return None
        for row, e in zip(reduced, monomials, strict=False):
            value = row[len(monomials)]
            if value.denominator != 1:
                return None
            if value:
                exponents = (0,) * m + e + (d - k,)
                result += MultiPoly(m, {exponents: value.numerator})
    return result


def _reconstruct_factor(
    chi: MultiPoly, d: int, points: list[_Specialization], ell_parity: int, zero_specializations: list[MultiPoly]
) -> MultiPoly | None:
    """Search for a monic factor of t-degree d, verified by exact division."""
    m = chi.m
    needed = len(_monomials(m, d))
    if len(points) < needed + 1:
        return None
    solve_points = points[:needed]
    check_points = points[needed:]
    options = [_divisors_of_degree(p.factors, d) for p in solve_points]
    check_options = [set(_divisors_of_degree(p.factors, d)) for p in check_points]
    if any(not o for o in options):
        return None
    for tried, choice in enumerate(itertools.product(*options)):
        if tried >= MAX_BACKTRACK:
            return None
        candidate = _interpolate(m, d, solve_points, choice)
        if candidate is None:
            continue
        if d == 1:
            coefficient_sum = sum(c for e, c in candidate.terms.items() if e[-1] == 0)
            if (coefficient_sum - ell_parity) % 2:
                continue
        if any(tuple(candidate.evaluate_integer(p.point)) not in allowed for p, allowed in zip(check_points, check_options, strict=True)):
            continue
        if any(not special.divmod_monic_t(_zero_out(candidate, i))[1].is_zero() for i, special in enumerate(zero_specializations)):
            continue
        if chi.divmod_monic_t(candidate)[1].is_zero():
            return candidate
    return None


def _zero_out(poly: MultiPoly, i: int) -> MultiPoly:
    return specialize(poly, i, 0)


def certify_irreducible(
    chi: MultiPoly,
    attempts: int = 64,
    primes: Sequence[int] = PRIMES,
    seed: int | None = None,
) -> Certificate:
    """Certify that a monic polynomial in Z[xi, t] is irreducible, or find an exact factorization.

    Args:
        chi: The polynomial, monic in t, without square root variables.
        attempts: Number of integer specializations drawn from the seeded schedule.
        primes: Primes used for the degree patterns.
        seed: Seed of the schedule. Defaults to a hash of the canonical text of chi.

    Raises:
        ValueError: If chi is not monic in t or still contains y variables.

    Returns:
        Certificate: IRREDUCIBLE, REDUCIBLE (with factors) or INCONCLUSIVE.
    """
    if chi.has_roots() or not chi.is_monic_t():
        msg = f"certify_irreducible() needs a polynomial monic in t over xi, got {chi}."
        raise ValueError(msg)
    n, m = chi.degree_t(), chi.m
    if n <= 1:
        return Certificate(Verdict.IRREDUCIBLE, "degree")
    rng = random.Random(RBCommon.stable_seed(str(chi)) if seed is None else seed)
    low, high = SPECIALIZATION_RANGE
    candidates = set(range(1, n))
    evidence: list[SpecializationEvidence] = []
    collected: list[_Specialization] = []
    used = 0
    for used in range(1, attempts + 1):  # noqa: B007
        point = [rng.randint(low, high) for _ in range(m)]
        values = chi.evaluate_integer(point)
        if not is_squarefree(values):
            continue
        item = SpecializationEvidence(point)
        for p in primes:
            pattern = degree_pattern(values, p)
            if pattern is not None:
                item.primes.append(p)
                item.degree_patterns.append(pattern)
        if not item.possible_degrees(n):
            return _irreducible("degree-patterns", [item], used)
        factors = factor_over_integers(values)
        item.factor_degrees = _factor_degrees(factors)
        if len(factors) == 1:
            return _irreducible("degree-combination", [item], used)
        candidates = _narrow(candidates, item, n, evidence)
        collected.append(_Specialization(point, values, factors))
        if not candidates:
            return _irreducible("degree-intersection", evidence, used)

    # Setting xi_i = 0 splits chi into component polynomials; their factors bound the degrees further.
    zero_specializations = []
    for i in range(min(m, 2)):
        zero_specializations.append(specialize(chi, i, 0))
        point = [rng.randint(low, high) for _ in range(m)]
        point[i] = 0
        values = chi.evaluate_integer(point)
        if is_squarefree(values):
            item = SpecializationEvidence(point, factor_degrees=_factor_degrees(factor_over_integers(values)))
            candidates = _narrow(candidates, item, n, evidence)
    if not candidates:
        return _irreducible("degree-intersection", evidence, used)

    ell_parity = chi.evaluate_integer([1] * m)[0] % 2
    for d in sorted(c for c in candidates if 2 * c <= n):
        factor = _reconstruct_factor(chi, d, collected, ell_parity, zero_specializations)
        if factor is not None:
            quotient = chi.divmod_monic_t(factor)[0]
            return Certificate(Verdict.REDUCIBLE, "interpolation", factors=[factor, quotient], candidate_degrees=sorted(candidates), attempts=used)
    return Certificate(Verdict.INCONCLUSIVE, "exhausted", candidate_degrees=sorted(candidates), attempts=used)


def _factor_degrees(factors: list[tuple[list[int], int]]) -> list[int]:
    return sorted(len(f) - 1 for f, k in factors for _ in range(k))


def _narrow(candidates: set[int], item: SpecializationEvidence, n: int, evidence: list[SpecializationEvidence]) -> set[int]:
    """Intersect the open degrees with what item allows, keeping item as evidence when it removes any."""
    narrowed = candidates & item.possible_degrees(n)
    if narrowed != candidates:
        evidence.append(item)
    return narrowed


def check_certificate(chi: MultiPoly, certificate: Certificate) -> bool:
    """Re-derive the evidence of a certificate from chi alone.

    IRREDUCIBLE: every recorded degree pattern and factor degree list is recomputed at its
    specialization, and together they must leave no proper factor degree. REDUCIBLE: the factors
    are proper and multiply back to chi. INCONCLUSIVE claims nothing and always checks.

    Args:
        chi: The polynomial the certificate was issued for.
        certificate: The certificate.

    Returns:
        bool: True if the certificate holds for chi.
    """
    n = chi.degree_t()
    if certificate.verdict == Verdict.INCONCLUSIVE:
        return True
    if certificate.verdict == Verdict.REDUCIBLE:
        if not certificate.factors:
            return False
        product = MultiPoly.one(chi.m)
        for factor in certificate.factors:
            product *= factor
        return product == chi and all(factor.degree_t() >= 1 for factor in certificate.factors)
    if n <= 1:
        return True
    if not certificate.evidence:
        return False
    possible = set(range(1, n))
    for item in certificate.evidence:
        values = chi.evaluate_integer(item.point)
        if [degree_pattern(values, p) for p in item.primes] != item.degree_patterns:
            return False
        if item.factor_degrees is not None and _factor_degrees(factor_over_integers(values)) != item.factor_degrees:
            return False
        possible &= item.possible_degrees(n)
    return not possible


@dataclass
class Collision:
    chi: MultiPoly
    keys: list[tuple]
    labels: list[str]


def separation_check(family: Sequence[tuple[ColoredGraph, MultiPoly]]) -> list[Collision]:
    """Group a family by exact characteristic polynomial and report groups with distinct canonical keys."""
    groups: dict[MultiPoly, dict[tuple, str]] = {}
    for graph, chi in family:
        groups.setdefault(chi, {}).setdefault(canonical_form(graph), graph.label())
    collisions = []
    for chi, members in groups.items():
        if len(members) > 1:
            keys = sorted(members)
            collisions.append(Collision(chi, keys, [members[k] for k in keys]))
    collisions.sort(key=lambda c: str(c.chi))
    return collisions


@dataclass
class IndexSpecialization:
    """chi at xi_index = 0 next to the characteristic polynomials of the projected components."""
    index: int
    specialized: MultiPoly
    components: list[str]
    component_polys: list[MultiPoly]
    product_matches: bool


@dataclass
class CongruentBlocks:
    """Two blocks of a projection whose polynomials agree modulo xi_i = xi_j = 0."""
    i: int
    j: int
    projected_index: int
    first: str
    second: str


@dataclass
class SpecializationReport:
    indices: list[IndexSpecialization]
    congruences: list[CongruentBlocks]

    @property
    def consistent(self) -> bool:
        return all(entry.product_matches for entry in self.indices)


def _component_polys(g: ColoredGraph, i: int) -> tuple[list[ColoredGraph], list[MultiPoly]]:
    components = project_components(g, i)
    return components, [charpoly_block(c).insert_variable(i) for c in components]


def specialization_tree(chi: MultiPoly, g: ColoredGraph) -> SpecializationReport:
    """For each index, factor chi at xi_i = 0 into component polynomials, and flag congruent blocks for index pairs.

    Args:
        chi: The characteristic polynomial of g.
        g: The graph.

    Returns:
        SpecializationReport: One record per index and the congruent block pairs.
    """
    indices = []
    projections = {}
    for i in range(g.m):
        components, polys = _component_polys(g, i)
        projections[i] = (components, polys)
        product = MultiPoly.one(g.m)
        for poly in polys:
            product *= poly
        specialized = specialize(chi, i, 0)
        indices.append(IndexSpecialization(i, specialized, [c.label() for c in components], polys, product == specialized))
    congruences = []
    for i, j in itertools.combinations(range(g.m), 2):
        for projected in (i, j):
            other = j if projected == i else i
            components, polys = projections[projected]
            reduced = [specialize(poly, other, 0) for poly in polys]
            for a, b in itertools.combinations(range(len(components)), 2):
                if reduced[a] == reduced[b]:
                    congruences.append(CongruentBlocks(i, j, projected, components[a].label(), components[b].label()))
    return SpecializationReport(indices, congruences)
