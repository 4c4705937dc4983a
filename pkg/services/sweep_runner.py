import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterator, List, Optional, Tuple

from decoders.dispatcher import DecoderDispatcher
from models.channel_config import ChannelConfig
from models.code_graph import CodeGraph, DegreeDistribution
from models.decoding import DecoderConfig, Schedule
from models.sweep import PointStats, SweepReport, SweepSpec
from services.alist_io import read_alist_file
from services.channel import frame_llr
from services.code_construction import peg_construct
from utils.processing_logger import processing_logger

logger = logging.getLogger(__name__)

# (bit_errors, success, iterations_used, counters, criterion_false_fires) per schedule
FrameOutcome = Dict[Schedule, tuple]

_worker_state: Dict[str, object] = {}


def build_graph(spec: SweepSpec) -> CodeGraph:
    """Load the alist file or run PEG, whichever the sweep bundle names"""
    if spec.code is not None:
        return read_alist_file(spec.code)

    peg = spec.peg
    if peg.regular is not None:
        dist = DegreeDistribution.parse_regular(peg.regular)
    else:
        dist = DegreeDistribution.parse(peg.lambda_spec, peg.rho_spec)
    return peg_construct(peg.n, peg.m, dist, peg.seed)


def decode_frame(
    graph: CodeGraph,
    schedules: List[Schedule],
    cfg: DecoderConfig,
    channel: ChannelConfig,
    frame_index: int,
) -> FrameOutcome:
    """Decode one noise realization with every schedule (paired comparison)"""
    llr = frame_llr(graph.n_variables, channel, frame_index)
    results = DecoderDispatcher.decode_paired(graph, llr, schedules, cfg)
    return {
        s: (r.bit_errors, r.success, r.iterations_used, r.counters, r.criterion_false_fires)
        for s, r in results.items()
    }


def _init_worker(graph: CodeGraph, schedules: List[Schedule], cfg: DecoderConfig):
    _worker_state['graph'] = graph
    _worker_state['schedules'] = schedules
    _worker_state['cfg'] = cfg


def _worker_decode(job: Tuple[ChannelConfig, int]) -> FrameOutcome:
    channel, frame_index = job
    return decode_frame(
        _worker_state['graph'], _worker_state['schedules'], _worker_state['cfg'], channel, frame_index
    )


class SweepRunner:
    """
    Monte-Carlo sweep over Eb/N0 points.

    Every schedule decodes the same frames. Frames are decoded in batches
    (possibly in worker processes) but folded into the statistics strictly
    in frame-index order, and a point stops at the first frame index where
    every schedule has min_frame_errors errors, so results do not depend on
    the thread count or batch size.
    """

    def __init__(self, spec: SweepSpec, graph: Optional[CodeGraph] = None):
        self.spec = spec
        self.graph = graph or build_graph(spec)
        self.cfg = DecoderConfig(
            schedule=spec.schedules[0],
            max_iterations=spec.max_iterations,
            alpha=spec.alpha,
            count_ops=True,
            stop_window=spec.stop_window,
        )

    def _outcomes(self, channel: ChannelConfig, pool: Optional[ProcessPoolExecutor]) -> Iterator[FrameOutcome]:
        step = self.spec.batch_size * self.spec.threads
        start = 0
        while start < self.spec.max_frames:
            stop = min(start + step, self.spec.max_frames)
            jobs = [(channel, i) for i in range(start, stop)]
            if pool is None:
                batch = [decode_frame(self.graph, self.spec.schedules, self.cfg, channel, i) for _, i in jobs]
            else:
                batch = pool.map(_worker_decode, jobs, chunksize=self.spec.batch_size)
            for outcome in batch:
                yield outcome
            start = stop

    def run_point(self, eb_n0_db: float, pool: Optional[ProcessPoolExecutor]) -> List[PointStats]:
        channel = ChannelConfig(eb_n0_db=eb_n0_db, code_rate=self.graph.design_rate, seed=self.spec.seed)
        stats = {s: PointStats(schedule=s, eb_n0_db=eb_n0_db, n_variables=self.graph.n_variables)
                 for s in self.spec.schedules}

        for outcome in self._outcomes(channel, pool):
            for schedule, (bit_errors, success, iterations, counters, false_fires) in outcome.items():
                point = stats[schedule]
                point.frames += 1
                point.bit_errors += bit_errors
                point.frame_errors += 1 if bit_errors else 0
                point.successes += 1 if success else 0
                point.iterations_total += iterations
                point.undetected_stops += false_fires
                point.counters.merge(counters)
            if all(p.frame_errors >= self.spec.min_frame_errors for p in stats.values()):
                break

        return [stats[s] for s in self.spec.schedules]

    def run(self) -> SweepReport:
        spec, graph = self.spec, self.graph
        report = SweepReport(
            n_variables=graph.n_variables,
            n_checks=graph.n_checks,
            n_edges=graph.n_edges,
            code_rate=graph.design_rate,
            seed=spec.seed,
        )

        logger.info(
            f"Starting sweep: N={graph.n_variables}, schedules={[s.value for s in spec.schedules]}, "
            f"Eb/N0={spec.eb_n0_points}, threads={spec.threads}"
        )
        processing_logger.log_sweep_started(
            graph.n_variables, graph.n_checks, [s.value for s in spec.schedules],
            list(spec.eb_n0_points), spec.seed, spec.threads
        )

        sweep_start = time.time()
        pool = None
        if spec.threads > 1:
            pool = ProcessPoolExecutor(
                max_workers=spec.threads,
                initializer=_init_worker,
                initargs=(graph, spec.schedules, self.cfg),
            )
        try:
            points_by_snr: List[List[PointStats]] = []
            for eb_n0_db in spec.eb_n0_points:
                point_start = time.time()
                points = self.run_point(eb_n0_db, pool)
                elapsed_ms = int((time.time() - point_start) * 1000)
                for p in points:
                    logger.info(
                        f"Point result {p.schedule.value} @ {eb_n0_db} dB: frames={p.frames}, "
                        f"FER={p.fer:.3e}, BER={p.ber:.3e}, avg iters={p.avg_iterations:.2f}"
                    )
                    processing_logger.log_point_complete(p.to_dict(), elapsed_ms)
                points_by_snr.append(points)
        finally:
            if pool is not None:
                pool.shutdown()

        # Rows grouped by schedule, then Eb/N0 in the order given
        for schedule_index in range(len(spec.schedules)):
            for points in points_by_snr:
                report.points.append(points[schedule_index])

        total_frames = sum(p.frames for p in report.points)
        processing_logger.log_sweep_complete(
            len(report.points), total_frames, int((time.time() - sweep_start) * 1000)
        )
        logger.info(f"Sweep complete: {len(report.points)} point(s), {total_frames} schedule-frames")
        return report


def run_sweep(spec: SweepSpec, graph: Optional[CodeGraph] = None) -> SweepReport:
    return SweepRunner(spec, graph).run()
