"""Numerical spectra of blocks at sampled xi > 0 and the search for the elliptic region."""
import functools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linear_sum_assignment
from scipy.stats import qmc

from resonant_blocks.rb_blocks import BlockMatrix, build_matrix, charpoly_block, translate_block
from resonant_blocks.rb_common import RBCommon
from resonant_blocks.rb_errors import NonPositiveXiError
from resonant_blocks.rb_graphs import ColoredGraph
from resonant_blocks.rb_multipoly import MultiPoly, eval_numeric, numeric_scale

REAL_TOLERANCE = 1e-8
RESIDUAL_TOLERANCE = 1e-6
DEFAULT_SPAN = 4.0
# The discriminant window is computed for two vertex blocks in two variables only.
PAIR_SIZE = 2
BINARY = 2
QUADRATIC = 2


@dataclass
class SpectrumReport:
    """Eigenvalues of one block at one xi.

    margin is the smallest gap between eigenvalues when all of them are real, and minus the
    largest imaginary part otherwise.
    """
    graph: str
    xi: tuple[float, ...]
    eigenvalues: list[complex]
    n_real: int
    distinct: bool
    margin: float
    max_residual: float
    agrees: bool

    @property
    def all_real(self) -> bool:
        return self.n_real == len(self.eigenvalues)

    @property
    def elliptic(self) -> bool:
        return self.all_real and self.distinct


def _is_real(value: complex) -> bool:
    return abs(value.imag) <= REAL_TOLERANCE * (1 + abs(value))


@functools.lru_cache(maxsize=4096)
def _charpoly(g: ColoredGraph) -> MultiPoly:
    return charpoly_block(g)


def _check_xi(xi: Sequence[float]) -> tuple[float, ...]:
    if any(value <= 0 for value in xi):
        msg = f"Spectra need xi > 0, got {list(xi)}."
        raise NonPositiveXiError(msg)
    return tuple(float(value) for value in xi)


def matrix_eigenvalues(mat: BlockMatrix, xi: Sequence[float]) -> np.ndarray:
    """Eigenvalues of the numeric block, sorted by real then imaginary part."""
    numeric = mat.evaluate(_check_xi(xi))
    values = scipy.linalg.eigvalsh(numeric).astype(complex) if mat.is_symmetric() else scipy.linalg.eigvals(numeric)
    return np.array(sorted(values, key=lambda z: (round(z.real, 12), z.imag)))


def eigenvalues_at(g: ColoredGraph, xi: Sequence[float], tolerance: float = 1e-6) -> SpectrumReport:
    """Compute the spectrum of the block of g at xi and cross-check it against the exact polynomial.

    Args:
        g: The graph.
        xi: Positive values, one per coordinate.
        tolerance: Minimum gap for the eigenvalues to count as distinct.

    Raises:
        NonPositiveXiError: If some xi_i <= 0.

    Returns:
        SpectrumReport: The report.
    """
    xi = _check_xi(xi)
    values = matrix_eigenvalues(build_matrix(g), xi)
    chi = _charpoly(g)
    residuals = [abs(eval_numeric(chi, xi, complex(z))) / numeric_scale(chi, xi, complex(z)) for z in values]
    max_residual = max(residuals, default=0.0)
    n_real = sum(1 for z in values if _is_real(z))
    if n_real == len(values):
        reals = sorted(z.real for z in values)
        margin = min((b - a for a, b in zip(reals, reals[1:], strict=False)), default=math.inf)
    else:
        margin = -max(abs(z.imag) for z in values)
    return SpectrumReport(
        graph=g.label(),
        xi=xi,
        eigenvalues=[complex(z) for z in values],
        n_real=n_real,
        distinct=margin > tolerance,
        margin=margin,
        max_residual=max_residual,
        agrees=max_residual <= RESIDUAL_TOLERANCE,
    )


def _max_mismatch(first: Sequence[complex], second: Sequence[complex]) -> float:
    """Largest relative distance under the best one to one matching of the two spectra."""
    first, second = np.asarray(first, dtype=complex), np.asarray(second, dtype=complex)
    if len(first) != len(second):
        return math.inf
    if len(first) == 0:
        return 0.0
    cost = np.abs(first[:, None] - second[None, :]) / (1 + np.abs(second[None, :]))
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def homogeneity_check(g: ColoredGraph, xi: Sequence[float], lam: float, tolerance: float = REAL_TOLERANCE) -> bool:
    """Check spectrum(lam * xi) = lam * spectrum(xi).

    Raises:
        ValueError: If lam <= 0.
    """
    if lam <= 0:
        msg = f"homogeneity_check() needs lam > 0, got {lam}."
        raise ValueError(msg)
    mat = build_matrix(g)
    base = matrix_eigenvalues(mat, xi)
    scaled = matrix_eigenvalues(mat, [lam * value for value in xi])
    return _max_mismatch(lam * base, scaled) <= tolerance


def translation_check(g: ColoredGraph, xi: Sequence[float], u: Sequence[int], twisted: bool = False, tolerance: float = REAL_TOLERANCE) -> bool:
    """Check that the translated block has the spectrum shifted by -u(xi), negated for a twisted translation."""
    mat = build_matrix(g)
    base = matrix_eigenvalues(mat, xi)
    shift = sum(c * value for c, value in zip(u, xi, strict=True))
    expected = base - shift
    if twisted:
        expected = -expected
    moved = matrix_eigenvalues(translate_block(mat, u, twisted), xi)
    return _max_mismatch(expected, moved) <= tolerance


def quadratic_discriminant(g: ColoredGraph) -> MultiPoly | None:
    """b^2 - 4c for a two vertex block with polynomial t^2 + b*t + c, None for other sizes."""
    if g.size != PAIR_SIZE:
        return None
    c, b, _ = _charpoly(g).coefficients_in_t()
    return b * b - c * 4


def _ratio_window(discriminant: MultiPoly) -> tuple[float, float] | None:
    """For m = 2, the interval of x1/x2 where a binary quadratic discriminant is negative."""
    if discriminant.m != BINARY:
        return None
    coefficients = [0, 0, 0]
    for exponents, c in discriminant.terms.items():
        x1, x2 = exponents[2], exponents[3]
        if x1 + x2 != QUADRATIC or any(exponents[:2]) or exponents[-1]:
            return None
        coefficients[2 - x1] = c
    roots = np.roots(coefficients)
    real_roots = sorted(r.real for r in roots if abs(r.imag) < REAL_TOLERANCE and r.real > 0)
    if len(real_roots) != QUADRATIC or coefficients[0] <= 0:
        return None
    return real_roots[0], real_roots[1]


@dataclass
class EllipticReport:
    """Outcome of search_elliptic().

    margins maps graph labels to the margin at the reported point (or at the best candidate).
    """
    found: bool
    point: tuple[float, ...] | None
    margins: dict[str, float]
    n_samples: int
    best_point: tuple[float, ...] | None = None
    best_passing: int = 0
    notes: list[str] = field(default_factory=list)


def sample_points(m: int, samples: int, seed: int, span: float = DEFAULT_SPAN) -> list[tuple[float, ...]]:
    """The simplex centroid followed by scrambled Sobol points on the simplex.

    Each Sobol coordinate u is mapped to exp(span * (2u - 1)) before normalising the sum to 1,
    so ratios between coordinates range up to exp(2 * span).
    """
    points = [tuple(1.0 / m for _ in range(m))]
    if samples <= 1:
        return points[:samples]
    sampler = qmc.Sobol(d=m, scramble=True, seed=seed)
    raw = sampler.random_base2(max(math.ceil(math.log2(samples - 1)), 0))[: samples - 1]
    for row in raw:
        weights = np.exp(span * (2 * row - 1))
        weights = weights / weights.sum()
        points.append(tuple(float(w) for w in weights))
    return points


def _evaluate_point(job: tuple) -> tuple[int, dict[str, float]]:
    graphs, point, tolerance = job
    margins = {}
    passing = 0
    for g in graphs:
        report = eigenvalues_at(g, point, tolerance)
        margins[report.graph] = report.margin
        passing += int(report.all_real and report.margin >= tolerance)
    return passing, margins


def search_elliptic(
    gs: Sequence[ColoredGraph],
    m: int,
    samples: int = 256,
    seed: int = 0,
    tolerance: float = 1e-6,
    span: float = DEFAULT_SPAN,
    threads: int | None = None,
) -> EllipticReport:
    """Look for xi > 0 where every block of gs has real, pairwise distinct eigenvalues.

    Points are tried in the order of sample_points() and evaluated in batches (in parallel when
    RB_THREADS allows); the first passing point in that order is reported.

    Args:
        gs: The graphs, all in Z^m.
        m: Number of coordinates.
        samples: Number of points to try, the centroid included.
        seed: Seed of the scrambled Sobol sequence.
        tolerance: Required margin between eigenvalues.
        span: Log-ratio span of the sampling.
        threads: Worker count, defaults to RB_THREADS.

    Returns:
        EllipticReport: The point and its margins, or the best candidate on failure.
    """
    gs = list(gs)
    notes = []
    for g in gs:
        discriminant = quadratic_discriminant(g)
        if discriminant is None:
            continue
        note = f"{g.label()}: discriminant {discriminant} must be positive"
        window = _ratio_window(discriminant)
        if window is not None:
            note += f"; real eigenvalues need x1/x2 outside ({window[0]:.6g}, {window[1]:.6g})"
        notes.append(note)

    points = sample_points(m, samples, seed, span)
    workers = RBCommon.get_thread_count() if threads is None else max(threads, 1)
    batch = max(4 * workers, 1)
    best_point, best_passing, best_margins = None, -1, {}
    tried = 0
    for start in range(0, len(points), batch):
        chunk = points[start : start + batch]
        results = RBCommon.parallel_map(_evaluate_point, [(gs, p, tolerance) for p in chunk], workers)
        for point, (passing, margins) in zip(chunk, results, strict=True):
            tried += 1
            if passing == len(gs):
                return EllipticReport(True, point, margins, tried, point, passing, notes)
            if passing > best_passing:
                best_point, best_passing, best_margins = point, passing, margins
    return EllipticReport(False, None, best_margins, tried, best_point, max(best_passing, 0), notes)
