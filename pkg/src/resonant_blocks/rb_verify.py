"""Desk-scale verification suite: one check per acceptance property, each returning a CheckResult."""
import math
import random
import time
from collections.abc import Callable
from dataclasses import dataclass

from resonant_blocks.rb_blocks import build_matrix, charpoly_block, translate_block
from resonant_blocks.rb_certify import Verdict, certify_irreducible, check_certificate, separation_check, specialization_tree
from resonant_blocks.rb_common import RBCommon
from resonant_blocks.rb_config_mgr import RunConfig, VerifyConfig
from resonant_blocks.rb_errors import OddExponentError
from resonant_blocks.rb_geometry import RealizationClass, build_system, random_generic_sites, solve_realization
from resonant_blocks.rb_graphs import (
    ColoredGraph,
    ResonanceClass,
    complete_closure,
    enumerate_graphs,
    is_allowable,
    is_resonant,
    rank_and_degeneracy,
)
from resonant_blocks.rb_lattice import GroupElement
from resonant_blocks.rb_logging import RBLogger
from resonant_blocks.rb_multipoly import MultiPoly, specialize
from resonant_blocks.rb_spectral import homogeneity_check, quadratic_discriminant, search_elliptic, translation_check

BLACK_PAIR_TEXT = "t^2 + x1*t + x2*t - 3*x1*x2"
RED_PAIR_TEXT = "t^2 + x1*t + x2*t + 4*x1*x2"
RED_CHAIN_VERTICES = [[0, 0, 0], [-1, -1, 0], [-1, -2, 1], [-2, -2, 2]]
MIXED_CHAIN_VERTICES = [[0, 0, 0], [-1, 1, 0], [1, -2, -1], [2, -2, -2]]
DEGENERATE_VERTICES = [[0, 0], [-1, 1], [-2, 2]]
MINIGRAPH_VERTICES = [[0, 0], [1, -1], [-2, 0], [-1, -1]]
EMPTY_SPHERE_VERTICES = [[-3, 1, 0, 0], [2, -1, 0, -1], [1, -1, 0, 0], [0, 0, 0, 0], [0, 1, -1, 0], [0, -1, -1, 0]]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


def _timed(name: str, func: Callable[[], tuple[bool, str]]) -> CheckResult:
    start = time.perf_counter()
    passed, detail = func()
    return CheckResult(name, passed, detail, round(time.perf_counter() - start, 3))


def black_pair() -> ColoredGraph:
    """The block on {e_1, e_2} joined by one black edge."""
    return ColoredGraph.from_elements([GroupElement((1, 0)), GroupElement((0, 1))])


def red_pair() -> ColoredGraph:
    """The block on {0, -e_1-e_2} joined by one red edge."""
    return complete_closure([[0, 0], [-1, -1]])


def three_vertex_example() -> ColoredGraph:
    return ColoredGraph.from_elements([GroupElement((-1, -1), True), GroupElement((0, 0)), GroupElement((1, -1))])


THREE_VERTEX_MATRIX = [
    ["-x1 - x2", "2*y1*y2", "0"],
    ["-2*y1*y2", "0", "2*y1*y2"],
    ["0", "2*y1*y2", "-x1 + x2"],
]
# the same block translated by u = (2, -1), u(xi) = 2*x1 - x2
THREE_VERTEX_TRANSLATED = [
    ["-3*x1", "2*y1*y2", "0"],
    ["-2*y1*y2", "-2*x1 + x2", "2*y1*y2"],
    ["0", "2*y1*y2", "-3*x1 + 2*x2"],
]


def _equal_entries(actual: list[list[MultiPoly]], expected: list[list[str]], m: int) -> bool:
    return all(a == MultiPoly.parse(e, m) for row_a, row_e in zip(actual, expected, strict=True) for a, e in zip(row_a, row_e, strict=True))


def check_pair_polynomials() -> tuple[bool, str]:
    chi1, chi2 = charpoly_block(black_pair()), charpoly_block(red_pair())
    expected1, expected2 = MultiPoly.parse(BLACK_PAIR_TEXT, 2), MultiPoly.parse(RED_PAIR_TEXT, 2)
    zero1, zero2 = specialize(chi1, 0, 0), specialize(chi2, 0, 0)
    passed = chi1 == expected1 and chi2 == expected2 and zero1 == zero2 == MultiPoly.parse("t^2 + x2*t", 2)
    return passed, f"chi1 = {chi1}; chi2 = {chi2}; at x1 = 0: {zero1} and {zero2}"


def check_three_vertex_example() -> tuple[bool, str]:
    mat = build_matrix(three_vertex_example())
    u = (2, -1)
    moved = translate_block(mat, u)
    plain = _equal_entries([list(row) for row in mat.entries], THREE_VERTEX_MATRIX, 2)
    shifted = _equal_entries([list(row) for row in moved.entries], THREE_VERTEX_TRANSLATED, 2)
    order = [str(v) for v in moved.order] == ["[-3,0]t", "[2,-1]", "[3,-2]"]
    return plain and shifted and order, f"C_A ok: {plain}; translate by {list(u)} ok: {shifted}; order ok: {order}"


def _sweep_graph(g: ColoredGraph) -> dict:
    """Exact per-graph facts for the enumeration sweep."""
    result = {"label": g.label(), "even": True, "components": True, "counts": True}
    try:
        chi = charpoly_block(g)
    except OddExponentError:
        result.update(even=False, components=False)
        chi = None
    if chi is not None:
        result["components"] = specialization_tree(chi, g).consistent
    resonance = is_resonant(g)
    result["resonance"] = resonance
    if resonance != ResonanceClass.AVOIDABLE:
        report = rank_and_degeneracy(g)
        result["counts"] = report.black_count <= report.black_rank and report.red_count <= report.red_rank
    result["allowable"] = bool(is_allowable(g))
    return result


def _enumerate_range(max_m: int, max_vertices: int, bound: int) -> list[ColoredGraph]:
    graphs = []
    for m in range(1, max_m + 1):
        graphs.extend(enumerate_graphs(m, max_vertices, bound))
    return graphs


def _first_failures(rows: list[dict], key: str, limit: int = 3) -> str:
    bad = [row["label"] for row in rows if not row[key]]
    if not bad:
        return ""
    return f"; failures ({len(bad)}): " + " | ".join(bad[:limit])


def run_sweep(verify: VerifyConfig, threads: int | None = None) -> tuple[list[ColoredGraph], list[dict]]:
    graphs = _enumerate_range(verify.sweep_m, verify.sweep_max_vertices, verify.sweep_bound)
    return graphs, RBCommon.parallel_map(_sweep_graph, graphs, threads)


def check_realization_avoidance(graphs: list[ColoredGraph], rows: list[dict], verify: VerifyConfig, seed: int) -> tuple[bool, str]:
    """Degenerate resonant graphs are never allowable and never realized outside the special component."""
    rng = random.Random(seed)
    targets = [g for g, row in zip(graphs, rows, strict=True) if row["resonance"] == ResonanceClass.DEGENERATE_RESONANT]
    problems = [g.label() for g, row in zip(graphs, rows, strict=True) if row["resonance"] == ResonanceClass.DEGENERATE_RESONANT and row["allowable"]]
    generic_hits = []
    for g in targets:
        for sample in range(verify.site_samples):
            sites = random_generic_sites(g.m, 4 + sample % 3, 6, rng)
            verdict = solve_realization(build_system(g, sites))
            if verdict.classification == RealizationClass.GENERIC_SOLUTIONS:
                generic_hits.append(g.label())
                break

    minigraph = complete_closure(MINIGRAPH_VERTICES)
    empty_sphere = complete_closure(EMPTY_SPHERE_VERTICES)
    pair_ok = True
    for sample in range(verify.site_samples):
        sites = random_generic_sites(2, 4 + sample % 3, 6, rng)
        verdict = solve_realization(build_system(minigraph, sites))
        site = tuple(sites.vectors[0])
        pair_ok &= verdict.classification == RealizationClass.ONLY_IN_S and verdict.exact and tuple(verdict.witness) == site
        sites4 = random_generic_sites(4, 4 + sample % 3, 6, rng)
        pair_ok &= solve_realization(build_system(empty_sphere, sites4)).classification == RealizationClass.EMPTY_REAL
    passed = not problems and not generic_hits and pair_ok
    detail = (
        f"{len(targets)} degenerate resonant graphs, {len(problems)} allowable, {len(generic_hits)} with generic solutions; "
        f"forbidden pair examples ok: {pair_ok}"
    )
    return passed, detail


def _separation_family(verify: VerifyConfig) -> list[ColoredGraph]:
    graphs = _enumerate_range(verify.separation_m, verify.separation_max_vertices, verify.separation_bound)
    return [g for g in graphs if is_resonant(g) == ResonanceClass.NONDEGENERATE and is_allowable(g)]


def _family_charpoly(g: ColoredGraph) -> tuple[ColoredGraph, MultiPoly]:
    return g, charpoly_block(g)


def check_separation(family: list[tuple[ColoredGraph, MultiPoly]]) -> tuple[bool, str]:
    collisions = []
    for m in sorted({g.m for g, _ in family}):
        collisions.extend(separation_check([(g, chi) for g, chi in family if g.m == m]))
    detail = f"{len(family)} graphs, {len(collisions)} collisions"
    if collisions:
        detail += ": " + " | ".join(" / ".join(c.labels) for c in collisions[:3])
    return not collisions, detail


def _certify_member(job: tuple) -> tuple[str, bool]:
    chi, attempts, primes = job
    certificate = certify_irreducible(chi, attempts, primes)
    return certificate.verdict.value, check_certificate(chi, certificate)


def check_irreducibility_sweep(family: list[tuple[ColoredGraph, MultiPoly]], cfg: RunConfig, verify: VerifyConfig) -> tuple[bool, str]:
    results = RBCommon.parallel_map(_certify_member, [(chi, cfg.attempts, cfg.primes) for _, chi in family])
    verdicts = [v for v, _ in results]
    unchecked = [g.label() for (g, _), (_, ok) in zip(family, results, strict=True) if not ok]
    reducible = [g.label() for (g, _), v in zip(family, verdicts, strict=True) if v == Verdict.REDUCIBLE]
    inconclusive = sum(1 for v in verdicts if v == Verdict.INCONCLUSIVE)
    rate = inconclusive / len(verdicts) if verdicts else 0.0
    detail = f"{len(verdicts)} graphs, {len(reducible)} reducible, inconclusive rate {rate:.3f}"
    if reducible:
        detail += ": " + " | ".join(reducible[:3])
    if unchecked:
        detail += "; certificates that do not re-check: " + " | ".join(unchecked[:3])
    return not reducible and not unchecked and rate <= verify.max_inconclusive_rate, detail


def check_irreducibility_base_cases(cfg: RunConfig) -> tuple[bool, str]:
    named = {
        "red-chain": complete_closure(RED_CHAIN_VERTICES),
        "mixed-chain": complete_closure(MIXED_CHAIN_VERTICES),
        "black-pair": black_pair(),
        "red-pair": red_pair(),
    }
    verdicts = {}
    checked = True
    for name, g in named.items():
        chi = charpoly_block(g)
        certificate = certify_irreducible(chi, cfg.attempts, cfg.primes)
        verdicts[name] = certificate.verdict
        checked = checked and check_certificate(chi, certificate)
    chi = charpoly_block(complete_closure(DEGENERATE_VERTICES))
    certificate = certify_irreducible(chi, cfg.attempts, cfg.primes)
    witness_ok = certificate.verdict == Verdict.REDUCIBLE and check_certificate(chi, certificate)
    passed = all(v == Verdict.IRREDUCIBLE for v in verdicts.values()) and checked and witness_ok
    summary = ", ".join(f"{name}: {v.value}" for name, v in verdicts.items())
    return passed, f"{summary}; evidence re-checked: {checked}; degenerate example: {certificate.verdict.value}, factors verified: {witness_ok}"


def check_elliptic_region(cfg: RunConfig) -> tuple[bool, str]:
    graphs = list(enumerate_graphs(2, 4, 2))
    report = search_elliptic(graphs, 2, cfg.samples, cfg.seed, cfg.tolerance, cfg.log_ratio_span)
    g2 = red_pair()
    single = search_elliptic([g2], 2, cfg.samples, cfg.seed, cfg.tolerance, cfg.log_ratio_span)
    low, high = 7 - 4 * math.sqrt(3), 7 + 4 * math.sqrt(3)
    single_ok = single.found and single.point is not None and not low < single.point[0] / single.point[1] < high and single.n_samples > 1
    discriminant_ok = quadratic_discriminant(g2) == MultiPoly.parse("x1^2 - 14*x1*x2 + x2^2", 2)
    detail = (
        f"{len(graphs)} graphs: found={report.found} after {report.n_samples} samples at {report.point}; "
        f"single red pair point {single.point}, outside ({low:.4f}, {high:.4f}): {single_ok}"
    )
    return report.found and single_ok and discriminant_ok, detail


def check_spectral_covariance(verify: VerifyConfig, seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    pool = list(enumerate_graphs(2, 4, 2)) + list(enumerate_graphs(3, 3, 2))
    failures = []
    for _ in range(verify.spectral_triples):
        g = rng.choice(pool)
        xi = [rng.uniform(0.1, 10.0) for _ in range(g.m)]
        u = [rng.randint(-3, 3) for _ in range(g.m)]
        twisted = rng.choice((False, True))
        lam = rng.uniform(0.5, 4.0)
        if not (homogeneity_check(g, xi, lam) and translation_check(g, xi, u, twisted)):
            failures.append(g.label())
    detail = f"{verify.spectral_triples} triples, {len(failures)} failures"
    return not failures, detail


def run_all(cfg: RunConfig, verify: VerifyConfig, logger: RBLogger | None = None) -> list[CheckResult]:
    """Run every check in order.

    Args:
        cfg: Run settings (seed, primes, attempts, sampling).
        verify: Sweep ranges.
        logger: Receives one summary line per check.

    Returns:
        list[CheckResult]: The results.
    """
    results = []

    def record(result: CheckResult) -> None:
        results.append(result)
        if logger is not None:
            status = "PASS" if result.passed else "FAIL"
            logger.log_message(f"{status} {result.name} ({result.elapsed}s): {result.detail}", "summary" if result.passed else "error")

    record(_timed("pair-polynomials", check_pair_polynomials))
    record(_timed("three-vertex-example", check_three_vertex_example))

    start = time.perf_counter()
    graphs, rows = run_sweep(verify)
    sweep_time = round(time.perf_counter() - start, 3)
    if logger is not None:
        logger.log_message(f"Sweep over {len(graphs)} graphs took {sweep_time}s", "detailed")
    record(CheckResult("even-root-exponents", all(r["even"] for r in rows), f"{len(rows)} graphs{_first_failures(rows, 'even')}", sweep_time))
    record(CheckResult("component-factorization", all(r["components"] for r in rows), f"{len(rows)} graphs{_first_failures(rows, 'components')}", 0.0))
    record(CheckResult("count-equals-rank", all(r["counts"] for r in rows), f"{len(rows)} graphs{_first_failures(rows, 'counts')}", 0.0))

    start = time.perf_counter()
    family = RBCommon.parallel_map(_family_charpoly, _separation_family(verify))
    family_time = round(time.perf_counter() - start, 3)
    result = _timed("separation", lambda: check_separation(family))
    record(CheckResult(result.name, result.passed, result.detail, round(result.elapsed + family_time, 3)))
    record(_timed("irreducibility-base-cases", lambda: check_irreducibility_base_cases(cfg)))
    record(_timed("irreducibility-sweep", lambda: check_irreducibility_sweep(family, cfg, verify)))
    record(_timed("realization-avoidance", lambda: check_realization_avoidance(graphs, rows, verify, cfg.seed)))
    record(_timed("elliptic-region", lambda: check_elliptic_region(cfg)))
    record(_timed("spectral-covariance", lambda: check_spectral_covariance(verify, cfg.seed)))
    return results
