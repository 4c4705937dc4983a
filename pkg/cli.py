"""
Command-line front door.

    python cli.py construct --n 1024 --m 512 --regular 3,6 --seed 1 --out code.alist
    python cli.py decode --code code.alist --schedule cbp --ebn0 2.0 --seed 7 --frame 0
    python cli.py sweep --code code.alist --schedules cbp,lbp --ebn0 1.0,1.5,2.0 --seed 7 --csv out.csv
    python cli.py complexity-report --regular 3,6 --n 1024 --schedules fbp,lbp,rbp,cbp

Exit codes: 0 success, 1 usage error, 2 IO/parse error, 3 internal invariant violation.
"""
import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

import config
from decoders.cbp import TraceRow, decode_cbp, decode_cbp_minsum
from decoders.dispatcher import DecoderDispatcher, decode
from models.channel_config import ChannelConfig
from models.code_graph import CodeGraph, DegreeDistribution
from models.decoding import DecoderConfig, Schedule, StopWindow
from models.errors import (
    AlistFormatError,
    DegreeDistributionError,
    InvariantViolation,
    LlrFileError,
    SpecValidationError,
)
from models.sweep import SweepSpec
from services.alist_io import read_alist_file, write_alist_file
from services.channel import frame_llr
from services.code_construction import peg_construct
from services.complexity_model import complexity_report
from services.report_writer import check_ber_monotonic, emit_csv, emit_json, format_summary, write_text
from services.sweep_runner import SweepRunner
from utils.logging_config import setup_logging
from utils.processing_logger import processing_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_INVARIANT = 3

TRACE_COLUMNS = list(TraceRow._fields)


def _float_list(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'")


def _distribution(args) -> DegreeDistribution:
    if args.regular is not None:
        if args.lambda_spec is not None or args.rho_spec is not None:
            raise SpecValidationError("--regular cannot be combined with --lambda/--rho")
        return DegreeDistribution.parse_regular(args.regular)
    if args.lambda_spec is None or args.rho_spec is None:
        raise SpecValidationError("give --regular dv,dc or both --lambda and --rho")
    return DegreeDistribution.parse(args.lambda_spec, args.rho_spec)


def read_llr_file(path, n_variables: int) -> np.ndarray:
    """One real per line, exactly `n_variables` lines (blank lines ignored)"""
    values = []
    with open(path) as handle:
        for line_no, line in enumerate(handle, start=1):
            token = line.strip()
            if not token:
                continue
            try:
                values.append(float(token))
            except ValueError:
                raise LlrFileError(f"{path}: line {line_no}: not a number: '{token}'")
    if len(values) != n_variables:
        raise LlrFileError(f"{path}: expected {n_variables} values, got {len(values)}")
    llr = np.asarray(values, dtype=np.float64)
    if np.isnan(llr).any():
        raise LlrFileError(f"{path}: NaN LLR values are not allowed")
    return llr


def format_trace(rows: Sequence[TraceRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(TRACE_COLUMNS)
    for row in rows:
        writer.writerow([row.sweep, row.check, repr(float(row.omega)), int(row.satisfied), row.consec_ok])
    return buffer.getvalue()


def cmd_construct(args) -> int:
    dist = _distribution(args)
    graph = peg_construct(args.n, args.m, dist, args.seed)
    write_alist_file(graph, args.out)

    girth = graph.girth()
    print(f"N={graph.n_variables} M={graph.n_checks} E={graph.n_edges} "
          f"girth={girth if girth is not None else 'inf'}")
    return EXIT_OK


def cmd_decode(args) -> int:
    graph = read_alist_file(args.code)
    schedule = Schedule.parse(args.schedule)
    cfg = DecoderConfig(
        schedule=schedule,
        max_iterations=args.max_iterations,
        alpha=args.alpha,
        stop_window=StopWindow.parse(args.stop_window),
    )

    if args.llr is not None:
        if args.ebn0 is not None:
            raise SpecValidationError("--llr cannot be combined with --ebn0")
        llr = read_llr_file(args.llr, graph.n_variables)
    elif args.ebn0 is not None and args.seed is not None:
        channel = ChannelConfig(eb_n0_db=args.ebn0, code_rate=graph.design_rate, seed=args.seed)
        llr = frame_llr(graph.n_variables, channel, args.frame)
    else:
        raise SpecValidationError("give --llr FILE or both --ebn0 and --seed")

    if args.trace is not None:
        if schedule not in (Schedule.CBP, Schedule.CBP_MINSUM):
            raise SpecValidationError("--trace is only available for cbp and cbp-minsum")
        rows: List[TraceRow] = []
        decoder = decode_cbp if schedule == Schedule.CBP else decode_cbp_minsum
        result = DecoderDispatcher.verify(graph, decoder(graph, llr, cfg, trace=rows))
        write_text(args.trace, format_trace(rows))
    else:
        result = decode(graph, llr, cfg)

    processing_logger.log_frame_decoded(
        schedule.value, result.success, result.iterations_used, result.stop_reason.value
    )
    summary = result.to_dict()
    summary.pop('hard_bits')
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _sweep_spec(args) -> SweepSpec:
    data = {}
    if args.spec is not None:
        data = json.loads(Path(args.spec).read_text())
        if not isinstance(data, dict):
            raise SpecValidationError(f"{args.spec}: expected a JSON object")

    # Flags override the bundle
    overrides = {
        'code': args.code,
        'schedules': args.schedules,
        'eb_n0_points': args.ebn0,
        'min_frame_errors': args.min_errors,
        'max_frames': args.max_frames,
        'seed': args.seed,
        'alpha': args.alpha,
        'max_iterations': args.max_iterations,
        'threads': args.threads,
    }
    for key, value in overrides.items():
        if value is not None:
            data[key] = value
    if args.code is not None:
        data.pop('peg', None)
    return SweepSpec.from_dict(data)


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    report = SweepRunner(spec).run()

    if args.csv is not None:
        write_text(args.csv, emit_csv(report))
    if args.json is not None:
        write_text(args.json, emit_json(report))

    print(format_summary(report))
    for violation in check_ber_monotonic(report):
        logger.warning(f"BER monotonicity: {violation}")
    return EXIT_OK


def _format_complexity(report: dict) -> str:
    lines = [f"N={report['n_variables']} M={report['n_checks']} E={report['n_edges']}"]
    for entry in report['schedules']:
        per_edge = entry['total_per_edge']
        lines.append(
            f"{entry['schedule']:<11} sums={per_edge['sums']:.4g}E products={per_edge['products']:.4g}E "
            f"comparisons={per_edge['comparisons']:.4g}E selections={per_edge['selections']:.4g}E"
        )
        memory = entry.get('memory')
        if memory:
            lines.append(
                f"{'':<11} general={memory['general_cells']} registers={memory['register_cells']} "
                f"register_equivalent={memory['register_equivalent_total']}"
            )
            lines.append(f"{'':<11} bits " + ' '.join(f"{column}={bits}" for column, bits in memory['bits'].items()))
    for baseline, saving in report.get('register_saving_vs', {}).items():
        lines.append(f"register saving of cbp vs {baseline}: {saving}")
    return "\n".join(lines)


def cmd_complexity_report(args) -> int:
    if args.code is not None:
        if args.regular is not None or args.lambda_spec is not None or args.rho_spec is not None:
            raise SpecValidationError("--code cannot be combined with a distribution")
        graph: CodeGraph = read_alist_file(args.code)
        dist = graph.degree_distribution()
        n_variables, n_checks = graph.n_variables, graph.n_checks
    else:
        dist = _distribution(args)
        if args.n is None:
            raise SpecValidationError("--n is required with a distribution")
        n_variables, n_checks = args.n, args.m

    schedules = [Schedule.parse(s) for s in args.schedules.split(',') if s.strip()]
    report = complexity_report(
        dist,
        n_variables,
        schedules,
        n_checks=n_checks,
        parallelism=args.parallelism,
        q_bits=args.qbits,
        register_area_factor=args.area_factor,
    )
    if args.json is not None:
        write_text(args.json, json.dumps(report, indent=2) + '\n')
    print(_format_complexity(report))
    return EXIT_OK


def _add_distribution_flags(parser: argparse.ArgumentParser):
    parser.add_argument('--regular', help="regular degrees 'dv,dc'")
    parser.add_argument('--lambda', dest='lambda_spec', help="variable edge fractions 'deg:frac,...'")
    parser.add_argument('--rho', dest='rho_spec', help="check edge fractions 'deg:frac,...'")


def _add_decoder_flags(parser: argparse.ArgumentParser, defaults: bool = True):
    parser.add_argument('--alpha', type=float, default=config.MIN_SUM_ALPHA if defaults else None,
                        help="normalized min-sum factor")
    parser.add_argument('--max-iterations', type=int, default=config.MAX_ITERATIONS if defaults else None,
                        help="iteration budget")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='cli.py', description="LDPC decoding toolkit")
    parser.add_argument('--log-level', default=config.LOG_LEVEL, help="DEBUG, INFO, PRODUCTION, WARNING, ERROR")
    parser.add_argument('--log-file', default=config.LOG_FILE)
    sub = parser.add_subparsers(dest='command', required=True)

    construct = sub.add_parser('construct', help="build a code with PEG and write it as alist")
    construct.add_argument('--n', type=int, required=True, help="variable nodes")
    construct.add_argument('--m', type=int, required=True, help="check nodes")
    _add_distribution_flags(construct)
    construct.add_argument('--seed', type=int, required=True)
    construct.add_argument('--out', required=True, help="alist output path")
    construct.set_defaults(handler=cmd_construct)

    dec = sub.add_parser('decode', help="decode a single frame")
    dec.add_argument('--code', required=True, help="alist path")
    dec.add_argument('--schedule', default=Schedule.CBP.value)
    dec.add_argument('--llr', help="file with one LLR per line")
    dec.add_argument('--ebn0', type=float, help="Eb/N0 in dB for a simulated frame")
    dec.add_argument('--seed', type=int)
    dec.add_argument('--frame', type=int, default=0, help="frame index of the simulated frame")
    dec.add_argument('--stop-window', default=config.STOP_WINDOW, help="cbp stop window: n or m")
    dec.add_argument('--trace', help="write the per-check belief trajectory as CSV")
    _add_decoder_flags(dec)
    dec.set_defaults(handler=cmd_decode)

    sweep = sub.add_parser('sweep', help="Monte-Carlo error-rate sweep")
    sweep.add_argument('--spec', help="JSON sweep bundle; flags override its fields")
    sweep.add_argument('--code', help="alist path")
    sweep.add_argument('--schedules', help="comma-separated schedules")
    sweep.add_argument('--ebn0', type=_float_list, help="comma-separated Eb/N0 points in dB")
    sweep.add_argument('--min-errors', type=int)
    sweep.add_argument('--max-frames', type=int)
    sweep.add_argument('--seed', type=int)
    sweep.add_argument('--threads', type=int)
    sweep.add_argument('--csv', help="CSV output path")
    sweep.add_argument('--json', help="JSON output path")
    _add_decoder_flags(sweep, defaults=False)
    sweep.set_defaults(handler=cmd_sweep)

    report = sub.add_parser('complexity-report', help="predicted operations and memory per schedule")
    report.add_argument('--code', help="alist path; its realized distribution is used")
    _add_distribution_flags(report)
    report.add_argument('--n', type=int, help="variable nodes (with a distribution)")
    report.add_argument('--m', type=int, help="check nodes (default: from the design rate)")
    report.add_argument('--schedules', default=','.join(s.value for s in Schedule))
    report.add_argument('--parallelism', type=int, help="decoder parallelism P; enables the memory model")
    report.add_argument('--qbits', type=int, default=8)
    report.add_argument('--area-factor', type=float, default=config.REGISTER_AREA_FACTOR)
    report.add_argument('--json', help="JSON output path")
    report.set_defaults(handler=cmd_complexity_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        setup_logging(args.log_level, args.log_file)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args)
    except (SpecValidationError, json.JSONDecodeError) as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, AlistFormatError, LlrFileError, DegreeDistributionError) as e:
        logger.error(f"Command failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except InvariantViolation as e:
        logger.error(f"Internal invariant violated: {e}")
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as e:
        logger.error(f"Invalid input: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
