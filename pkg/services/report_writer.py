import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Dict, List, Union

from models.sweep import SweepReport

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    'schedule', 'ebn0_db', 'frames', 'bit_errors', 'frame_errors', 'ber', 'fer', 'avg_iters',
    'sums', 'products', 'comparisons', 'selections', 'undetected_stops',
]

_INT_COLUMNS = {'frames', 'bit_errors', 'frame_errors', 'sums', 'products', 'comparisons',
                'selections', 'undetected_stops'}
_FLOAT_COLUMNS = {'ebn0_db', 'ber', 'fer', 'avg_iters'}


def emit_csv(report: SweepReport) -> str:
    """One row per (schedule, Eb/N0); floats written with repr precision"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for p in report.points:
        writer.writerow([
            p.schedule.value,
            repr(float(p.eb_n0_db)),
            p.frames,
            p.bit_errors,
            p.frame_errors,
            repr(p.ber),
            repr(p.fer),
            repr(p.avg_iterations),
            p.counters.sums,
            p.counters.products,
            p.counters.comparisons,
            p.counters.selections,
            p.undetected_stops,
        ])
    return buffer.getvalue()


def parse_csv(text: str) -> List[Dict[str, Union[str, int, float]]]:
    rows = []
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_COLUMNS:
        raise ValueError(f"Unexpected CSV header: {reader.fieldnames}")
    for raw in reader:
        row: Dict[str, Union[str, int, float]] = {}
        for name, value in raw.items():
            if name in _INT_COLUMNS:
                row[name] = int(value)
            elif name in _FLOAT_COLUMNS:
                row[name] = float(value)
            else:
                row[name] = value
        rows.append(row)
    return rows


def emit_json(report: SweepReport) -> str:
    return json.dumps(report.to_dict(), indent=2) + '\n'


def write_text(path, text: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text)
    logger.info(f"Wrote {target}")


def check_ber_monotonic(report: SweepReport) -> List[str]:
    """
    BER must not increase with Eb/N0 for any schedule. One inversion per
    schedule is tolerated when the two points differ by less than two
    standard errors. Returns a description of each violation.
    """
    violations = []
    for schedule in report.schedules():
        points = sorted((p for p in report.points if p.schedule == schedule), key=lambda p: p.eb_n0_db)
        tolerated = 0
        for lo, hi in zip(points, points[1:]):
            if hi.ber <= lo.ber:
                continue
            se = math.sqrt(_ber_variance(lo) + _ber_variance(hi))
            if tolerated == 0 and hi.ber - lo.ber < 2.0 * se:
                tolerated += 1
                continue
            violations.append(
                f"{schedule.value}: BER rises from {lo.ber:.3e} at {lo.eb_n0_db} dB "
                f"to {hi.ber:.3e} at {hi.eb_n0_db} dB"
            )
    return violations


def _ber_variance(point) -> float:
    bits = point.frames * point.n_variables
    if bits == 0:
        return 0.0
    return point.ber * (1.0 - point.ber) / bits


def format_summary(report: SweepReport) -> str:
    """Fixed-width table for terminal output"""
    lines = [
        f"{report.snr_convention} sweep: N={report.n_variables} M={report.n_checks} "
        f"E={report.n_edges} rate={report.code_rate:.4f} seed={report.seed}",
        f"{'schedule':<11} {'ebn0_db':>8} {'frames':>8} {'fe':>6} {'ber':>11} {'fer':>11} {'avg_iters':>10}",
    ]
    for p in report.points:
        lines.append(
            f"{p.schedule.value:<11} {p.eb_n0_db:>8.3f} {p.frames:>8} {p.frame_errors:>6} "
            f"{p.ber:>11.4e} {p.fer:>11.4e} {p.avg_iterations:>10.3f}"
        )
    return "\n".join(lines)
