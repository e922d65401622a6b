"""Command line entry point: batch runs with JSON reports.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
import argparse
import random
import sys
from pathlib import Path

from resonant_blocks.rb_blocks import block_mass, build_matrix, charpoly_block
from resonant_blocks.rb_certify import Verdict, certify_irreducible, check_certificate, parity_test, separation_check, specialization_tree
from resonant_blocks.rb_common import RBCommon
from resonant_blocks.rb_config_mgr import RBConfigManager, RunConfig
from resonant_blocks.rb_errors import ResonantBlocksError
from resonant_blocks.rb_geometry import avoidable_constraint, build_system, random_generic_sites, solve_realization
from resonant_blocks.rb_graphs import (
    ColoredGraph,
    ResonanceClass,
    enumerate_graphs,
    graph_line,
    is_allowable,
    is_resonant,
    rank_and_degeneracy,
    read_graph_file,
)
from resonant_blocks.rb_json_encoder import JSONEncoder
from resonant_blocks.rb_lattice import TangentialSites
from resonant_blocks.rb_logging import RBLogger
from resonant_blocks.rb_spectral import search_elliptic
from resonant_blocks.rb_verify import run_all

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resonant-blocks", description="Colored graphs, their blocks and characteristic polynomials.")
    parser.add_argument("--config", help="YAML configuration file (defaults are used when omitted)")
    parser.add_argument("--output", help="folder for the JSON reports, overrides Run.OutputFolder")
    parser.add_argument("--seed", type=int, help="random seed, overrides Run.Seed")
    commands = parser.add_subparsers(dest="command", required=True)

    enumerate_cmd = commands.add_parser("enumerate", help="list the combinatorial graphs in a range")
    enumerate_cmd.add_argument("--m", type=int)
    enumerate_cmd.add_argument("--max-vertices", type=int)
    enumerate_cmd.add_argument("--bound", type=int)
    enumerate_cmd.add_argument("--symmetric", action="store_true", help="quotient by coordinate permutations")

    charpoly_cmd = commands.add_parser("charpoly", help="characteristic polynomials of the graphs in a file")
    charpoly_cmd.add_argument("--graph", required=True)
    charpoly_cmd.add_argument("--matrix", action="store_true", help="also print the block")

    certify_cmd = commands.add_parser("certify", help="irreducibility certificates")
    certify_cmd.add_argument("--graph", required=True)
    certify_cmd.add_argument("--attempts", type=int)

    separate_cmd = commands.add_parser("separate", help="look for distinct graphs with equal polynomials")
    separate_cmd.add_argument("--family", help="graph file; the enumeration range is used when omitted")

    realize_cmd = commands.add_parser("realize", help="classify the root equations for given sites")
    realize_cmd.add_argument("--graph", required=True)
    realize_cmd.add_argument("--sites", help="JSON list of integer vectors; random generic sites when omitted")
    realize_cmd.add_argument("--samples", type=positive_int, help="number of random generic site draws (default 1 without --sites, 0 with it)")

    spectrum_cmd = commands.add_parser("spectrum", help="search for xi with real distinct eigenvalues in every block")
    spectrum_cmd.add_argument("--family", help="graph file; the enumeration range is used when omitted")
    spectrum_cmd.add_argument("--grid", type=int, help="number of sample points")
    spectrum_cmd.add_argument("--tol", type=float, help="required eigenvalue gap")

    commands.add_parser("verify-all", help="run the full verification suite")
    return parser


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        msg = f"expected a positive integer, got {text}"
        raise argparse.ArgumentTypeError(msg)
    return value


def read_sites(file_path: str) -> TangentialSites:
    """Read a JSON list of integer vectors.

    Raises:
        RuntimeError: If the file cannot be read, does not hold a list of integer vectors, or the
            vectors are not distinct sites of one dimension.

    Returns:
        TangentialSites: The sites.
    """
    data = JSONEncoder.read_from_file(Path(file_path))
    if not isinstance(data, list) or not all(isinstance(v, list) and all(isinstance(c, int) for c in v) for v in data):
        msg = f"Sites file {file_path} must hold a JSON list of integer vectors."
        raise RuntimeError(msg)
    try:
        return TangentialSites(tuple(tuple(v) for v in data))
    except ValueError as e:
        msg = f"Sites file {file_path}: {e}"
        raise RuntimeError(msg) from e


class CommandRunner:
    """Runs one subcommand with the resolved settings and writes its report."""

    def __init__(self, cfg: RunConfig, config: RBConfigManager, logger: RBLogger, output_folder: Path):
        self.cfg = cfg
        self.config = config
        self.logger = logger
        self.output_folder = output_folder

    def write_report(self, name: str, data) -> Path:
        path = self.output_folder / f"{name}.json"
        JSONEncoder.save_to_file(data, path)
        self.logger.log_message(f"Report written to {path}", "detailed")
        return path

    def _family(self, file_name: str | None) -> list[ColoredGraph]:
        if file_name:
            return read_graph_file(file_name)
        return list(enumerate_graphs(self.cfg.m, self.cfg.max_vertices, self.cfg.coord_bound, self.cfg.symmetry_quotient))

    def run_enumerate(self, args) -> int:
        graphs = list(enumerate_graphs(self.cfg.m, self.cfg.max_vertices, self.cfg.coord_bound, args.symmetric or self.cfg.symmetry_quotient))
        entries = []
        for g in graphs:
            print(graph_line(g))
            entries.append({
                "graph": g.label(),
                "size": g.size,
                "rank": rank_and_degeneracy(g).rank,
                "resonance": is_resonant(g),
                "allowable": bool(is_allowable(g)),
            })
        self.logger.log_message(f"{len(graphs)} graphs with m={self.cfg.m}, at most {self.cfg.max_vertices} vertices, bound {self.cfg.coord_bound}", "summary")
        self.write_report("enumerate", {"m": self.cfg.m, "max_vertices": self.cfg.max_vertices, "bound": self.cfg.coord_bound, "count": len(graphs), "graphs": entries})
        return EXIT_OK

    def run_charpoly(self, args) -> int:
        entries = []
        for g in read_graph_file(args.graph):
            chi = charpoly_block(g)
            print(chi)
            entry = {"graph": g.label(), "chi": chi, "mass": block_mass(g)}
            if args.matrix:
                mat = build_matrix(g)
                for row in mat.rows_text():
                    print("  " + " | ".join(row))
                entry["matrix"] = mat.to_dict()
            entry["parity_ok"] = parity_test(chi, block_mass(g)).passed
            entry["components_ok"] = specialization_tree(chi, g).consistent
            entries.append(entry)
        self.write_report("charpoly", entries)
        return EXIT_OK

    def run_certify(self, args) -> int:
        attempts = args.attempts or self.cfg.attempts
        entries = []
        failures = []
        for g in read_graph_file(args.graph):
            chi = charpoly_block(g)
            certificate = certify_irreducible(chi, attempts, self.cfg.primes)
            expected = is_resonant(g) == ResonanceClass.NONDEGENERATE and bool(is_allowable(g))
            checked = check_certificate(chi, certificate)
            print(f"{g.label()}: {certificate.verdict.value} ({certificate.method})")
            if (expected and certificate.verdict == Verdict.REDUCIBLE) or not checked:
                failures.append(g.label())
                self.logger.log_message(f"{g.label()} is non-degenerate and allowable but certified {certificate.verdict.value}, evidence re-checked: {checked}", "error")
            entries.append({"graph": g.label(), "expected_irreducible": expected, "checked": checked, "certificate": certificate})
        self.write_report("certify", entries)
        return EXIT_OK if not failures else EXIT_FAILED

    def run_separate(self, args) -> int:
        graphs = [g for g in self._family(args.family) if is_resonant(g) == ResonanceClass.NONDEGENERATE and is_allowable(g)]
        family = list(zip(graphs, RBCommon.parallel_map(charpoly_block, graphs), strict=True))
        collisions = []
        for m in sorted({g.m for g in graphs}):
            collisions.extend(separation_check([(g, chi) for g, chi in family if g.m == m]))
        for collision in collisions:
            print(f"{collision.chi}: {' / '.join(collision.labels)}")
        self.logger.log_message(f"{len(family)} graphs, {len(collisions)} collisions", "summary")
        self.write_report("separate", {"graphs": len(family), "collisions": collisions})
        return EXIT_OK if not collisions else EXIT_FAILED

    def run_realize(self, args) -> int:
        file_sites = read_sites(args.sites) if args.sites else None
        samples = args.samples if args.samples is not None else (0 if file_sites else 1)
        rng = random.Random(self.cfg.seed)
        entries = []
        for g in read_graph_file(args.graph):
            degenerate = is_resonant(g) != ResonanceClass.NONDEGENERATE
            site_sets = [("file", file_sites)] if file_sites else []
            site_sets += [("sample", random_generic_sites(g.m, self.cfg.sites_dimension, self.cfg.sites_box, rng)) for _ in range(samples)]
            realizations = []
            counts: dict[str, int] = {}
            for source, sites in site_sets:
                system = build_system(g, sites)
                verdict = solve_realization(system)
                print(f"{g.label()}: {verdict.classification.value}")
                counts[verdict.classification.value] = counts.get(verdict.classification.value, 0) + 1
                realization = {"source": source, "sites": [list(v) for v in sites.vectors], "equations": system.describe(), "verdict": verdict}
                if degenerate:
                    realization["avoidable_constraint"] = avoidable_constraint(g, sites)
                realizations.append(realization)
            if samples > 1:
                self.logger.log_message(f"{g.label()}: {', '.join(f'{k} {v}' for k, v in sorted(counts.items()))} over {len(site_sets)} site sets", "summary")
            entries.append({"graph": g.label(), "classes": counts, "realizations": realizations})
        self.write_report("realize", entries)
        return EXIT_OK

    def run_spectrum(self, args) -> int:
        graphs = self._family(args.family)
        if not graphs:
            self.logger.log_message("No graphs to search.", "error")
            return EXIT_USAGE
        report = search_elliptic(
            graphs,
            graphs[0].m,
            args.grid or self.cfg.samples,
            self.cfg.seed,
            args.tol or self.cfg.tolerance,
            self.cfg.log_ratio_span,
        )
        if report.found:
            print(f"found xi = {list(report.point)} after {report.n_samples} samples")
        else:
            print(f"no point found in {report.n_samples} samples; best {report.best_passing}/{len(graphs)} at {report.best_point}")
        for note in report.notes:
            self.logger.log_message(note, "detailed")
        self.write_report("spectrum", report)
        return EXIT_OK if report.found else EXIT_FAILED

    def run_verify_all(self, args) -> int:  # noqa: ARG002
        results = run_all(self.cfg, self.config.get_verify_settings(), self.logger)
        failed = [r.name for r in results if not r.passed]
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
        self.write_report("verify-all", {"passed": not failed, "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]})
        return EXIT_OK if not failed else EXIT_FAILED


def main(argv: list[str] | None = None) -> int:
    """Parse the arguments, run the command and return the exit status.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:].

    Returns:
        int: 0 on success, 1 when a check failed, 2 on usage or input errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        config = RBConfigManager(args.config)
        logger = RBLogger(config.get_logger_settings(), console_stream=sys.stderr)
        cfg = config.get_run_settings(
            m=getattr(args, "m", None),
            max_vertices=getattr(args, "max_vertices", None),
            coord_bound=getattr(args, "bound", None),
            seed=args.seed,
            output_folder=args.output,
        )
        output_folder = RBCommon.select_folder_location(cfg.output_folder, create_folder=True)
    except (RuntimeError, ValueError) as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE

    runner = CommandRunner(cfg, config, logger, output_folder)
    handler = getattr(runner, "run_" + args.command.replace("-", "_"))
    try:
        return handler(args)
    except (ResonantBlocksError, RuntimeError, ValueError) as e:
        logger.log_message(str(e), "error")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
