"""
Output rendering for the seq, verify and bench commands.
stdout carries only these strings; diagnostics go through logging to stderr.
"""
import csv
import io
import json
from typing import Any, Dict, Iterable, List

from models import BenchCell, RunReport, VerifyOutcome
from utils.helpers import format_bytes, format_count, truncate_text

BEST_EFFORT_NOTICE = "note: approx field results are best-effort; singularity is not certified"

BENCH_COLUMNS = ['k', 'n', 'algo', 'field', 'wall_ms', 'generate_mul_div', 'eliminate_mul',
                 'checks', 'predicted', 'rss_bytes']


def format_bits(report: RunReport) -> str:
    return report.bits


def format_runs(report: RunReport) -> str:
    """Run-length pairs, e.g. ``(1,2)(0,1)(1,2)``"""
    return ''.join(f"({bit},{count})" for bit, count in report.sequence.runs())


def format_json(report: RunReport) -> str:
    return json.dumps(report.to_dict())


FORMATTERS = {
    'bits': format_bits,
    'runs': format_runs,
    'json': format_json,
}


def format_report(report: RunReport, output_format: str) -> str:
    return FORMATTERS[output_format](report)


def format_bench_csv(cells: Iterable[BenchCell]) -> str:
    """RFC 4180 rows with a header line"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=BENCH_COLUMNS, lineterminator='\r\n')
    writer.writeheader()
    for cell in cells:
        writer.writerow(cell.to_row())
    return buffer.getvalue()


def format_bench_table(cells: Iterable[BenchCell]) -> str:
    """Aligned plain-text table"""
    header = ['k', 'n', 'algo', 'wall ms', 'gen mul+div', 'elim mul', 'checks', 'predicted', 'rss']
    rows: List[List[str]] = [header]
    for cell in cells:
        rows.append([
            str(cell.k),
            format_count(cell.n),
            cell.algo,
            f"{cell.wall_ms:.1f}",
            format_count(cell.generate_mul_div),
            format_count(cell.eliminate_muls),
            format_count(cell.checks),
            '-' if cell.predicted is None else format_count(cell.predicted),
            format_bytes(cell.rss_bytes),
        ])
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = ['  '.join(value.rjust(width) for value, width in zip(row, widths)) for row in rows]
    lines.insert(1, '  '.join('-' * width for width in widths))
    return '\n'.join(lines)


def format_verify_ok(outcome: VerifyOutcome, single: bool) -> str:
    if single:
        return "OK (3 algorithms agree, blocks match)"
    return f"OK {outcome.passed}/{outcome.instances}"


def format_counterexample(counterexample: Dict[str, Any]) -> str:
    """Multi-line dump of a minimised disagreement"""
    lines = ["MISMATCH"]
    for key in ('reason', 'stencil', 'field', 'order', 'sliding', 'naive', 'dense', 'instance'):
        if key in counterexample:
            lines.append(f"  {key}: {truncate_text(str(counterexample[key]), 200)}")
    return '\n'.join(lines)
