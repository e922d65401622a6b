"""pytest for the realization systems of graphs at given tangential sites."""
import random
from fractions import Fraction

import pytest

from resonant_blocks import (
    DimensionMismatchError,
    Edge,
    EdgeColor,
    NotDegenerateError,
    RealizationClass,
    TangentialSites,
    avoidable_constraint,
    build_system,
    complete_closure,
    geometric_edge,
    random_generic_sites,
    realize_vertices,
    solve_realization,
)
from resonant_blocks.rb_verify import DEGENERATE_VERTICES, EMPTY_SPHERE_VERTICES, MINIGRAPH_VERTICES

UNIT_SITES = TangentialSites(((1, 0), (0, 1)))
PLANE_SITES = TangentialSites(((1, 2, 0), (3, -1, 1)))


def test_geometric_edges():
    v1, v2 = UNIT_SITES.vectors
    # p = v1 lies on the sphere with diameter v1 v2, and q = p + v2 - v1
    assert Edge(EdgeColor.BLACK, 0, 1) in geometric_edge(v1, v2, UNIT_SITES), "Black edge from v1 to v2"
    assert Edge(EdgeColor.RED, 0, 1) in geometric_edge(v1, v2, UNIT_SITES), "v1 + v2 = v1 + v2 and (0, v1 - v2) = 0"
    assert geometric_edge((5, 5), (0, 0), UNIT_SITES) == [], "No edge between unrelated points"

    with pytest.raises(DimensionMismatchError):
        geometric_edge((0, 0, 0), (0, 0), UNIT_SITES)


def test_realized_graph_has_the_combinatorial_edges():
    """A generic solution realizes every combinatorial edge geometrically."""
    g = complete_closure([[0, 0], [-1, -1]])
    verdict = solve_realization(build_system(g, PLANE_SITES))
    assert verdict.classification == RealizationClass.GENERIC_SOLUTIONS, "The red pair is realizable"
    root, image = realize_vertices(g, verdict.witness, PLANE_SITES)
    v1, v2 = PLANE_SITES.vectors
    assert [a + b for a, b in zip(root, image, strict=True)] == pytest.approx([a + b for a, b in zip(v1, v2, strict=True)]), "p + q = v1 + v2"
    gap = sum((x - a) * (x - b) for x, a, b in zip(root, v1, v2, strict=True))
    assert gap == pytest.approx(0.0, abs=1e-9), "(p - v1, p - v2) = 0"
    assert verdict.special_points == [(1, 2, 0), (3, -1, 1)], "The solutions x = v1 and x = v2 meet S"


def test_minigraph_only_in_sites():
    """The minigraph forces x = v1, so its realization meets S."""
    g = complete_closure(MINIGRAPH_VERTICES)
    for sites in (UNIT_SITES, PLANE_SITES):
        system = build_system(g, sites)
        assert len(system.linear) == 1, "One black non-root vertex"
        assert len(system.quadratic) == 2, "Two red non-root vertices"
        verdict = solve_realization(system)
        assert verdict.classification == RealizationClass.ONLY_IN_S, "Every solution touches S"
        assert verdict.exact, "The forced point is exact"
        assert verdict.witness == tuple(Fraction(c) for c in sites.vectors[0]), "x = v1"


def test_negative_radius_has_no_real_solution():
    """The red vertex -3e1+e2 gives a sphere of squared radius -3/4 |v1 - v2|^2."""
    g = complete_closure(EMPTY_SPHERE_VERTICES)
    sites = TangentialSites(((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)))
    verdict = solve_realization(build_system(g, sites))
    assert verdict.classification == RealizationClass.EMPTY_REAL, "Negative squared radius"
    assert verdict.radius_squared == Fraction(-3, 4) * 2, "|v1 - v2|^2 = 2"


def test_linear_only_systems():
    g = complete_closure([[0, 0], [1, -1]])
    verdict = solve_realization(build_system(g, PLANE_SITES))
    assert verdict.classification == RealizationClass.GENERIC_SOLUTIONS, "A hyperplane has points off S"
    assert verdict.exact, "Linear witnesses are exact"
    assert verdict.dimension == PLANE_SITES.n - 1, "One equation in R^3"
    assert not any(PLANE_SITES.contains(p) for p in realize_vertices(g, verdict.witness, PLANE_SITES)), "Witness avoids S"

    line = complete_closure(DEGENERATE_VERTICES)
    collinear = TangentialSites(((0, 0), (1, 0)))
    assert solve_realization(build_system(line, collinear)).classification == RealizationClass.INCONSISTENT, (
        "(x, v1 - v2) must equal K for both multiples"
    )


def test_system_text():
    system = build_system(complete_closure([[0, 0], [-1, -1]]), UNIT_SITES)
    assert system.describe() == ["|x|^2 + (x, [-1, -1]) = 0"], "One quadratic equation"


def test_build_system_errors():
    g = complete_closure([[0, 0], [1, -1]])
    with pytest.raises(DimensionMismatchError):
        build_system(g, TangentialSites(((1, 0), (0, 1), (1, 1))))


def test_avoidable_constraint():
    g = complete_closure(DEGENERATE_VERTICES)
    sites = TangentialSites(((1, 2), (3, -1)))
    values = avoidable_constraint(g, sites)
    assert values == [-13], "2K(e2-e1) - K(2e2-2e1) = -|v1 - v2|^2"

    assert avoidable_constraint(complete_closure(MINIGRAPH_VERTICES), sites) == [0], "Degenerate-resonant relations vanish"
    with pytest.raises(NotDegenerateError):
        avoidable_constraint(complete_closure([[0, 0], [1, -1]]), sites)


def test_random_generic_sites():
    rng = random.Random(3)
    sites = random_generic_sites(4, 4, 6, rng)
    assert sites.m == 4, "Four sites"
    assert sites.n == 4, "In R^4"
    assert sites.is_generic(), "Affinely independent"
    assert random_generic_sites(4, 4, 6, random.Random(3)) == sites, "Seeded draws repeat"

    with pytest.raises(RuntimeError):
        random_generic_sites(4, 1, 1, random.Random(0), max_tries=5)
