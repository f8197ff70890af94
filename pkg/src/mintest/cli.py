"""Command-line interface.

Verbs: analyze, enumerate, verify, oracle, gen, bench.  Inputs are matrix
files (one '0'/'1' row per line) or class-set files (see the data format
docs); bundled fixture names are accepted wherever a path is.  Exit codes:
0 success, 1 input error, 2 verification mismatch, 3 resource ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .bench import BenchResult, StreamConfig, bench_matrix, csv_text, run_benchmark, summarize
from .fixtures import fixture_text, list_fixtures
from .generate import GenerationError, GeneratorConfig, generate_matrix
from .heuristic import column_pair_stats, estimate_length, union_pair_stats
from .mandatory import (
    ClassSet,
    candidate_pairs,
    class_views,
    find_mandatory,
    partition_by_mandatory,
)
from .matrix import (
    BooleanMatrix,
    MatrixFormatError,
    is_test,
    sort_rows_by_binary_value,
)
from .oracle import OracleCeilingError, oracle_deadend_tests, oracle_minimal_tests
from .pruning import bijective_column_pairs, multiplicity_seeds
from .search import (
    SearchCeilingError,
    SearchConfig,
    enumerate_local_minimal_tests,
    enumerate_minimal_tests,
    verify_test,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MISMATCH = 2
EXIT_CEILING = 3


def _read_input(source: str) -> str:
    if source in list_fixtures():
        return fixture_text(source)
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read input {source!r}: {exc}") from exc


def _load_any(source: str) -> BooleanMatrix | ClassSet:
    """Load a matrix or a class-set file, deciding by the header line."""
    from .mandatory import parse_class_set
    from .matrix import parse_matrix

    text = _read_input(source)
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("columns:"):
            return parse_class_set(text)
        break
    return parse_matrix(text)


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _columns_str(columns) -> str:
    return ",".join(str(c) for c in columns)


def _estimate_lines(title: str, est) -> list[str]:
    lines = [f"{title}: t0 = {est.t0}" + (" (degenerate)" if est.degenerate else "")]
    lines.append(
        "  column order by undistinguished pairs: "
        + " ".join(str(c) for c in est.sorted_columns)
    )
    lines.append(
        "  ratios: " + " ".join(f"{r:.6f}" for r in est.ratio_list)
    )
    lines.append(
        "  beta sequence: " + " ".join(f"{b:.7f}" for b in est.beta_sequence)
    )
    lines.append(
        f"  bracket: {est.beta_t:.7f} > {est.threshold:.7f} >= {est.beta_next:.7f}"
    )
    return lines


def _cmd_analyze(args) -> int:
    data = _load_any(args.input)
    if isinstance(data, ClassSet):
        return _analyze_class_set(args, data)
    matrix = data
    sorted_matrix = sort_rows_by_binary_value(matrix)
    mandatory = find_mandatory(sorted_matrix)
    partition = partition_by_mandatory(sorted_matrix, mandatory.columns)
    stats = column_pair_stats(sorted_matrix)
    estimate = estimate_length(stats)
    cand = candidate_pairs(sorted_matrix)
    cs = class_views(sorted_matrix, partition) if partition.classes else None
    local = union_pair_stats(cs) if cs else None
    local_est = estimate_length(local) if local else None

    if args.json:
        doc = {
            "rows": matrix.row_count,
            "cols": matrix.col_count,
            "total_pairs": matrix.total_pairs,
            "candidate_pairs": len(cand),
            "mandatory": list(mandatory.columns),
            "witnesses": {
                str(c): [list(p) for p in ws]
                for c, ws in mandatory.witnesses.items()
            },
            "classes": [
                {"name": c.name, "key": c.key_string, "members": list(c.members)}
                for c in partition.classes
            ],
            "dropped_singletons": list(partition.dropped_singletons),
            "within_pair_total": partition.within_pair_total,
            "undistinguished_pairs": list(stats.undistinguished),
            "estimate": asdict(estimate),
            "local_estimate": asdict(local_est) if local_est else None,
            "bijective_column_pairs": [
                list(p) for p in bijective_column_pairs(matrix)
            ],
        }
        if args.seeds and cs:
            doc["seeds"] = [
                {
                    "columns": list(s.columns),
                    "class": s.class_name,
                    "rows": list(s.rows),
                }
                for s in multiplicity_seeds(cs, args.seed_size)
            ]
        _emit(args, json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK

    lines = [
        f"matrix: {matrix.row_count} rows x {matrix.col_count} columns "
        f"({matrix.total_pairs} row pairs)",
        f"candidate pairs (popcount diff 1): {len(cand)} "
        f"({100.0 * len(cand) / matrix.total_pairs:.1f}%)",
        "mandatory columns: "
        + (" ".join(str(c) for c in mandatory.columns) or "(none)"),
    ]
    for c in mandatory.columns:
        pairs = " ".join(f"({a},{b})" for a, b in mandatory.witnesses[c])
        lines.append(f"  x{c}: {pairs}")
    lines.append(
        "classes over mandatory columns "
        f"({' '.join(str(c) for c in mandatory.columns) or '-'}):"
    )
    free = cs.columns if cs else ()
    for cls in partition.classes:
        lines.append(f"  {cls.name} [{cls.key_string}] rows: "
                     + " ".join(str(x) for x in cls.members))
    if partition.dropped_singletons:
        lines.append(
            "  singletons dropped: "
            + " ".join(str(x) for x in partition.dropped_singletons)
        )
    if cs:
        lines.append(
            f"pairs left inside classes: {partition.within_pair_total} "
            f"of {matrix.total_pairs}"
        )
        lines.append("class rows over free columns "
                     + " ".join(str(c) for c in free) + ":")
        for view in cs.classes:
            for lab, row in zip(view.row_labels, view.rows):
                bits = format(row, f"0{len(free)}b")
                lines.append(f"  {view.name} {lab:>3}: {' '.join(bits)}")
    lines.append("undistinguished pairs per column:")
    lines.append(
        "  " + " ".join(f"x{c}={u}" for c, u in zip(stats.columns, stats.undistinguished))
    )
    lines.extend(_estimate_lines("length estimate", estimate))
    if local_est:
        lines.extend(_estimate_lines("local estimate (two largest classes)", local_est))
        lines.append(
            f"integral estimate: {len(mandatory.columns)} + {local_est.t0} = "
            f"{len(mandatory.columns) + local_est.t0}"
        )
    bij = bijective_column_pairs(matrix)
    if bij:
        lines.append(
            "paired (equal/complementary) columns: "
            + " ".join(f"({a},{b})" for a, b in bij)
        )
    if args.seeds and cs:
        lines.append(f"multiplicity seeds (k={args.seed_size}, p>=3):")
        for s in multiplicity_seeds(cs, args.seed_size):
            lines.append(
                f"  ({_columns_str(s.columns)}) -> {s.class_name}: "
                f"({_columns_str(s.rows)})"
            )
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _analyze_class_set(args, cs: ClassSet) -> int:
    if args.json:
        doc = {
            "columns": list(cs.columns),
            "mandatory": list(cs.mandatory),
            "parent_rows": cs.total_rows,
            "within_pair_total": cs.within_pair_total,
            "parent_pair_total": cs.parent_pair_total,
            "classes": [
                {
                    "name": v.name,
                    "key": "".join(str(b) for b in v.key),
                    "members": list(v.row_labels),
                }
                for v in cs.classes
            ],
        }
        if args.seeds:
            doc["seeds"] = [
                {"columns": list(s.columns), "class": s.class_name, "rows": list(s.rows)}
                for s in multiplicity_seeds(cs, args.seed_size)
            ]
        _emit(args, json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    lines = [
        f"class set: {len(cs.classes)} classes over columns "
        + " ".join(str(c) for c in cs.columns),
        "mandatory columns of the parent matrix: "
        + (" ".join(str(c) for c in cs.mandatory) or "(unknown)"),
    ]
    for view in cs.classes:
        key = "".join(str(b) for b in view.key)
        lines.append(f"  {view.name} [{key}] rows: "
                     + " ".join(str(x) for x in view.row_labels))
    total = cs.parent_pair_total
    lines.append(f"pairs left inside classes: {cs.within_pair_total}")
    if total:
        lines.append(
            f"parent matrix pairs: {total} "
            f"(reduction x{total / cs.within_pair_total:.1f})"
        )
    if args.seeds:
        lines.append(f"multiplicity seeds (k={args.seed_size}, p>=3):")
        for s in multiplicity_seeds(cs, args.seed_size):
            lines.append(
                f"  ({_columns_str(s.columns)}) -> {s.class_name}: "
                f"({_columns_str(s.rows)})"
            )
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        use_heuristic=not args.no_heuristic,
        seed_prune=not args.no_theorem2,
        pair_prune=not args.no_bijective_prune,
        first_only=args.first,
    )


def _write_tests_csv(path: str, tests) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for t in tests:
            fh.write(_columns_str(t) + "\n")


def _cmd_enumerate(args) -> int:
    data = _load_any(args.input)
    config = _search_config(args)
    if isinstance(data, ClassSet):
        report = enumerate_local_minimal_tests(data, config)
        tests = report.integral_tests if data.mandatory else report.local_tests
        if args.report:
            _write_tests_csv(args.report, tests)
        if args.json:
            doc = {
                "local_length": report.local_length,
                "local_tests": [list(t) for t in report.local_tests],
                "mandatory": list(report.mandatory),
                "integral_length": report.integral_length,
                "integral_tests": [list(t) for t in report.integral_tests],
                "within_pair_total": report.within_pair_total,
                "parent_pair_total": report.parent_pair_total,
                "corrections": [asdict(c) for c in report.corrections],
            }
            _emit(args, json.dumps(doc, indent=2, sort_keys=True))
            return EXIT_OK
        lines = [
            f"local minimal test length: {report.local_length}",
            "local minimal tests: "
            + "; ".join(f"({_columns_str(t)})" for t in report.local_tests),
        ]
        if data.mandatory:
            lines.append(
                f"integral length: {len(report.mandatory)} + {report.local_length}"
                f" = {report.integral_length}"
            )
            for t in report.integral_tests:
                lines.append(f"  integral test: {_columns_str(t)}")
        _emit(args, "\n".join(lines))
        return EXIT_OK

    report = enumerate_minimal_tests(data, config)
    if args.report:
        _write_tests_csv(args.report, report.minimal_tests)
    if args.json:
        _emit(args, report.to_json())
        return EXIT_OK
    lines = [
        f"minimal test length: {report.minimal_length}",
        f"mandatory columns: {_columns_str(report.mandatory) or '(none)'}",
        f"minimal tests: {len(report.minimal_tests)}",
    ]
    for t, ok in zip(report.minimal_tests, report.deadend_verified):
        flag = "dead-end" if ok else "NOT DEAD-END"
        lines.append(f"  {_columns_str(t)} ({flag})")
    for corr in report.corrections:
        lines.append(
            f"correction: {corr.old_length} -> {corr.new_length} ({corr.reason})"
        )
    st = report.stats
    lines.append(
        f"stats: {st.candidates_checked} candidates checked, "
        f"{st.sweep_checked} sweep checks, "
        f"{st.pruned_by_seeds} pruned by seeds, "
        f"{st.pruned_by_pairs} pruned by paired columns"
    )
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _cmd_verify(args) -> int:
    data = _load_any(args.input)
    if isinstance(data, ClassSet):
        raise MatrixFormatError("verify needs a full matrix input")
    try:
        columns = tuple(int(t) for t in args.test.replace(",", " ").split())
    except ValueError:
        raise MatrixFormatError(f"bad column list {args.test!r}") from None
    verdict = verify_test(data, columns, oracle_ceiling=args.ceiling)
    if args.json:
        _emit(args, json.dumps(asdict(verdict), indent=2, sort_keys=True))
    else:
        lines = [
            f"columns: {_columns_str(verdict.columns)}",
            f"test: {'yes' if verdict.test else 'no'}",
            f"dead-end: {'-' if verdict.deadend is None else ('yes' if verdict.deadend else 'no')}",
            f"minimal: {verdict.minimal}"
            + (f" (minimal length {verdict.min_length})" if verdict.min_length else ""),
        ]
        if verdict.note:
            lines.append(f"note: {verdict.note}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    data = _load_any(args.input)
    if isinstance(data, ClassSet):
        raise MatrixFormatError("the oracle needs a full matrix input")
    if args.deadend:
        result = oracle_deadend_tests(data, n_ceiling=args.ceiling_deadend)
    else:
        result = oracle_minimal_tests(data, n_ceiling=args.ceiling)
    if args.report:
        _write_tests_csv(args.report, result.minimal_tests)
    if args.json:
        doc = {
            "min_length": result.min_length,
            "minimal_tests": [list(t) for t in result.minimal_tests],
            "deadend_tests": (
                None
                if result.deadend_tests is None
                else [list(t) for t in result.deadend_tests]
            ),
            "subsets_checked": result.subsets_checked,
        }
        _emit(args, json.dumps(doc, indent=2, sort_keys=True))
        return EXIT_OK
    lines = [
        f"minimal test length: {result.min_length}",
        f"minimal tests: {len(result.minimal_tests)}",
    ]
    for t in result.minimal_tests:
        lines.append(f"  {_columns_str(t)}")
    if result.deadend_tests is not None:
        lines.append(f"dead-end tests: {len(result.deadend_tests)}")
        for t in result.deadend_tests:
            lines.append(f"  {_columns_str(t)}")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def _cmd_gen(args) -> int:
    config = GeneratorConfig(
        rows=args.rows, cols=args.cols, ones_density=args.density, seed=args.seed
    )
    matrix = generate_matrix(config)
    lines = [
        f"# generated: rows={args.rows} cols={args.cols} "
        f"density={args.density:g} seed={args.seed}"
    ]
    lines.extend(matrix.row_string(lab) for lab in matrix.row_labels)
    text = "\n".join(lines)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.fixture:
        from .fixtures import load_fixture_matrix

        matrix = load_fixture_matrix(args.fixture)
        record = bench_matrix(matrix, oracle_ceiling=args.oracle_ceiling)
        if args.deterministic:
            from dataclasses import replace

            record = replace(record, ms_analyze=0.0, ms_search=0.0, ms_oracle=0.0)
        result = BenchResult(
            records=(record,),
            mismatches=1 if record.mismatch else 0,
            failures=0,
        )
    else:
        config = StreamConfig(
            count=args.count,
            rows=tuple(args.rows),
            cols=tuple(args.cols),
            densities=tuple(args.densities),
            seed=args.seed,
            deterministic=args.deterministic,
            oracle_ceiling=args.oracle_ceiling,
            workers=args.workers,
        )
        result = run_benchmark(config)
    text = csv_text(result, args.deterministic)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.json:
        print(json.dumps(summarize(result), indent=2, sort_keys=True), file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mintest",
        description=(
            "Minimal distinguishing column sets (diagnostic tests) of Boolean "
            "matrices.  Bundled fixtures: " + ", ".join(list_fixtures())
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, input_required=True):
        p.add_argument(
            "--input",
            required=input_required,
            help="matrix or class-set file, or a bundled fixture name",
        )
        p.add_argument("--output", help="write the result to this file")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("analyze", help="mandatory columns, classes, estimates")
    add_common(p)
    p.add_argument("--seeds", action="store_true", help="print multiplicity seeds")
    p.add_argument(
        "--seed-size", type=int, default=2, help="seed subset size (default 2)"
    )
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("enumerate", help="enumerate all minimal tests")
    add_common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--all", action="store_true", default=True, help="all minimal tests (default)"
    )
    group.add_argument(
        "--first", action="store_true", help="stop after the first minimal test"
    )
    p.add_argument("--no-heuristic", action="store_true")
    p.add_argument("--no-theorem2", action="store_true")
    p.add_argument("--no-bijective-prune", action="store_true")
    p.add_argument("--report", help="CSV file: one minimal test per line")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="check one column set")
    add_common(p)
    p.add_argument("--test", required=True, help="column list, e.g. 1,2,4,5,6,8,10")
    p.add_argument("--ceiling", type=int, default=22, help="oracle column ceiling")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive enumeration (ground truth)")
    add_common(p)
    p.add_argument("--deadend", action="store_true", help="also list dead-end tests")
    p.add_argument("--ceiling", type=int, default=22)
    p.add_argument("--ceiling-deadend", type=int, default=16)
    p.add_argument("--report", help="CSV file: one minimal test per line")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("gen", help="generate a seeded random matrix")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write the matrix to this file")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="random-matrix stream benchmark")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--rows", type=int, nargs="+", default=[10])
    p.add_argument("--cols", type=int, nargs="+", default=[8])
    p.add_argument("--densities", type=float, nargs="+", default=[0.3, 0.5, 0.7])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true")
    p.add_argument("--oracle-ceiling", type=int, default=22)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fixture", help="replay a bundled matrix as a 1-record stream")
    p.add_argument("--output", help="write the CSV to this file")
    p.add_argument("--json", action="store_true", help="summary JSON on stderr")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixFormatError, GenerationError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OracleCeilingError, SearchCeilingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING


if __name__ == "__main__":
    sys.exit(main())
