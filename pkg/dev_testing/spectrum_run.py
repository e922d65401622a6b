"""Manual testing code for the numerical spectra. Should not be included in the distribution."""

import time

from resonant_blocks import RBLogger, complete_closure, eigenvalues_at, search_elliptic
from resonant_blocks.rb_spectral import sample_points


def main():
    logger = RBLogger({"console_verbosity": "detailed"})
    g2 = complete_closure([[0, 0], [-1, -1]])

    # Walk x1/x2 through the window where the red pair has a complex spectrum
    for ratio in (0.01, 0.05, 0.1, 1.0, 10.0, 15.0, 100.0):
        report = eigenvalues_at(g2, [ratio, 1.0])
        logger.log_message(f"x1/x2 = {ratio}: n_real={report.n_real} margin={report.margin:.6g}", "detailed")

    start = time.perf_counter()
    for samples in (16, 64, 256):
        report = search_elliptic([g2], 2, samples=samples, seed=3)
        logger.log_message(f"{samples} samples: found={report.found} at {report.point} after {report.n_samples}", "summary")
    logger.log_message(f"Searches took {time.perf_counter() - start:.3f}s", "summary")
    logger.log_message(f"First Sobol points: {sample_points(2, 4, seed=3)}", "debug")


if __name__ == "__main__":
    main()
