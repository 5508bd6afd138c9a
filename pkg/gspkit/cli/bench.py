"""
bench: run algorithms over a corpus of instance files and write a CSV report
"""

import argparse
import csv
import io
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from gspkit.cli.common import EXIT_OK, parse_epsilon
from gspkit.core.config import settings
from gspkit.core.errors import GspkitError, ParameterError
from gspkit.core.oracle import exact_oracle
from gspkit.core.portfolio import ALGORITHMS, run_algorithm
from gspkit.storage.formats import load_instance, write_text

logger = logging.getLogger(__name__)

COLUMNS = ["instance", "n", "algorithm", "height", "lower_bound", "ratio_lb", "oracle", "ratio_oracle", "time", "status"]


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="benchmark algorithms on a corpus")
    parser.add_argument("corpus", help="directory of *.inst files")
    parser.add_argument("--alg", default="nfdh,pptas,three-halves", help="comma separated algorithms")
    parser.add_argument("--oracle", action="store_true", help="add the exact optimum where n is small enough")
    parser.add_argument("--eps", default=None)
    parser.add_argument("--jobs", type=int, default=settings.bench_jobs, help="worker processes")
    parser.add_argument("-o", "--output", default=None, help="CSV report (default: stdout)")
    parser.set_defaults(handler=run)


def _ratio(height: int, reference: Optional[int]) -> str:
    if not reference:
        return ""
    return f"{float(Fraction(height, reference)):.4f}"


def bench_instance(path: str, algorithms: Sequence[str], epsilon: Fraction, with_oracle: bool) -> List[Dict[str, str]]:
    """Report rows for one instance file; failures become rows, never exceptions"""
    name = Path(path).name
    try:
        instance = load_instance(path)
    except GspkitError as exc:
        return [dict.fromkeys(COLUMNS, "") | {"instance": name, "status": f"error: {exc}"}]

    optimum: Optional[int] = None
    if with_oracle and instance.n <= settings.oracle_item_limit:
        optimum = exact_oracle(instance).height

    rows: List[Dict[str, str]] = []
    for algorithm in algorithms:
        row = dict.fromkeys(COLUMNS, "")
        row.update(instance=name, n=str(instance.n), algorithm=algorithm,
                   oracle="" if optimum is None else str(optimum))
        started = time.perf_counter()
        try:
            result = run_algorithm(algorithm, instance, epsilon)
        except GspkitError as exc:
            row["status"] = f"error: {exc}"
        else:
            row.update(
                height=str(result.height),
                lower_bound=str(result.lower_bound),
                ratio_lb=_ratio(result.height, result.lower_bound),
                ratio_oracle=_ratio(result.height, optimum),
                status="ok",
            )
        row["time"] = f"{time.perf_counter() - started:.4f}"
        rows.append(row)
    return rows


def run_bench(
    corpus: str,
    algorithms: Sequence[str],
    epsilon: Fraction,
    with_oracle: bool = False,
    jobs: int = 1,
) -> List[Dict[str, str]]:
    """Rows ordered by file name then algorithm order, whatever the job count"""
    unknown = [a for a in algorithms if a not in ALGORITHMS]
    if unknown:
        raise ParameterError(f"unknown algorithms: {', '.join(unknown)}")
    paths = sorted(str(p) for p in Path(corpus).glob("*.inst"))
    logger.info(f"Benchmarking {len(paths)} instances with {list(algorithms)} ({jobs} jobs)")
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(bench_instance, paths, [algorithms] * len(paths),
                                   [epsilon] * len(paths), [with_oracle] * len(paths)))
    else:
        chunks = [bench_instance(path, algorithms, epsilon, with_oracle) for path in paths]
    return [row for chunk in chunks for row in chunk]


def to_csv(rows: Sequence[Dict[str, str]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def summarize(rows: Sequence[Dict[str, str]]) -> List[str]:
    lines = []
    for algorithm in dict.fromkeys(row["algorithm"] for row in rows if row["algorithm"]):
        ratios = [float(r["ratio_lb"]) for r in rows if r["algorithm"] == algorithm and r["ratio_lb"]]
        failures = sum(1 for r in rows if r["algorithm"] == algorithm and r["status"] != "ok")
        if ratios:
            lines.append(f"{algorithm}: {len(ratios)} solved, mean ratio {sum(ratios) / len(ratios):.4f}, "
                         f"max ratio {max(ratios):.4f}, {failures} failed")
        else:
            lines.append(f"{algorithm}: nothing solved, {failures} failed")
    return lines


def run(args: argparse.Namespace) -> int:
    algorithms = [a.strip() for a in args.alg.split(",") if a.strip()]
    rows = run_bench(args.corpus, algorithms, parse_epsilon(args.eps), args.oracle, max(1, args.jobs))
    report = to_csv(rows)
    if args.output:
        write_text(args.output, report)
    else:
        print(report, end="")
    for line in summarize(rows):
        logger.info(line)
    return EXIT_OK
