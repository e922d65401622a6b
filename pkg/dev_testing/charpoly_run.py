"""Manual testing code for the resonant_blocks library. Should not be included in the distribution."""

import platform
import sys

from config_schemas import ConfigSchema

from resonant_blocks import (
    JSONEncoder,
    RBCommon,
    RBConfigManager,
    RBLogger,
    build_matrix,
    certify_irreducible,
    charpoly_block,
    complete_closure,
    enumerate_graphs,
    is_allowable,
    is_resonant,
)

CONFIG_FILE = "dev_testing/dev_testing_config.yaml"


def print_block(logger: RBLogger, vertices: list[list[int]]):
    g = complete_closure(vertices)
    mat = build_matrix(g)
    logger.log_message(f"Block of {g.label()}:", "summary")
    for row in mat.rows_text():
        logger.log_message("  " + " | ".join(row), "summary")
    chi = charpoly_block(g)
    certificate = certify_irreducible(chi)
    logger.log_message(f"chi = {chi} ({certificate.verdict.value}, {certificate.method})", "summary")


def enumerate_summary(logger: RBLogger, m: int, max_vertices: int, bound: int):
    counts: dict[str, int] = {}
    for g in enumerate_graphs(m, max_vertices, bound):
        key = f"{is_resonant(g).value}/{'allowable' if is_allowable(g) else 'forbidden'}"
        counts[key] = counts.get(key, 0) + 1
    logger.log_message(f"m={m}, up to {max_vertices} vertices, bound {bound}: {counts}", "summary")
    return counts


def main():
    """Main function to run the example code."""
    print(f"Hello from resonant-blocks running on {platform.system()}")

    # Get our default schema, validation schema, and placeholders
    schemas = ConfigSchema()

    # Initialize the RBConfigManager class
    try:
        config = RBConfigManager(
            config_file=CONFIG_FILE,
            default_config=schemas.default,
            validation_schema=schemas.validation,
            placeholders=schemas.placeholders
        )
    except RuntimeError as e:
        print(f"Configuration file error: {e}", file=sys.stderr)
        return

    # Initialize the RBLogger class
    try:
        logger_settings = config.get_logger_settings()
        logger = RBLogger(logger_settings)
    except RuntimeError as e:
        print(f"Logger initialisation error: {e}", file=sys.stderr)
        return

    cfg = config.get_run_settings()
    print_block(logger, [[0, 0], [1, -1]])
    print_block(logger, [[0, 0], [-1, -1]])
    print_block(logger, [[-1, -1], [0, 0], [1, -1]])
    counts = enumerate_summary(logger, cfg.m, cfg.max_vertices, cfg.coord_bound)

    output_folder = RBCommon.select_folder_location(cfg.output_folder, create_folder=True)
    JSONEncoder.save_to_file({"m": cfg.m, "counts": counts}, output_folder / "dev_counts.json")


if __name__ == "__main__":
    main()
