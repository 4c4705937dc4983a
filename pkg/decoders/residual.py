import heapq
import logging
from typing import List, Optional, Tuple

import numpy as np

from decoders.common import hard_decision, is_codeword, prepare_llr
from decoders.kernels import check_extrinsic, saturate
from models.code_graph import CodeGraph
from models.decoding import DecodeResult, DecoderConfig, Schedule, StopReason
from models.op_counters import OpCounters, UpdateKind

logger = logging.getLogger(__name__)

# Residuals at or below this carry no information worth scheduling
RESIDUAL_FLOOR = 1e-9


class ResidualEngine:
    """
    Message store shared by the residual schedules.

    Keeps committed C2V messages `r`, precomputed C2V messages `r_pre`, V2C
    messages `q`, residuals |r_pre - r| and the posterior of every variable.
    Committing an edge pushes its message into the posterior, refreshes the
    variable's other V2C messages and recomputes the precomputed messages of
    the checks those reach.
    """

    def __init__(self, graph: CodeGraph, llr: np.ndarray, count_ops: bool):
        self.graph = graph
        self.count_ops = count_ops
        self.ops = OpCounters()

        self.check_edges: List[List[int]] = [list(graph.check_edges(c)) for c in range(graph.n_checks)]
        self.edge_check: List[int] = graph.edge_check.tolist()
        self.edge_variable: List[int] = graph.edge_variable.tolist()
        self.check_degree = graph.check_degrees
        self.variable_degree = graph.variable_degrees

        self.lam: List[float] = llr.tolist()
        self.q: List[float] = [self.lam[v] for v in self.edge_variable]
        self.r: List[float] = [0.0] * graph.n_edges
        self.r_pre: List[float] = [0.0] * graph.n_edges
        self.residual: List[float] = [0.0] * graph.n_edges

        for c in range(graph.n_checks):
            edges = self.check_edges[c]
            for e, out in zip(edges, check_extrinsic([self.q[e] for e in edges])):
                self.r_pre[e] = out
                self.residual[e] = abs(out)

    def _refresh_check(self, c: int, skip: int) -> List[int]:
        """Recompute precomputed C2V of check c for every edge but `skip`"""
        edges = self.check_edges[c]
        outs = check_extrinsic([self.q[e] for e in edges])
        touched = []
        dc = self.check_degree[c]
        for e, out in zip(edges, outs):
            if e == skip:
                continue
            self.r_pre[e] = out
            self.residual[e] = abs(out - self.r[e])
            touched.append(e)
            if self.count_ops:
                self.ops.record(UpdateKind.RESIDUAL, products=dc - 1, operands=dc - 1)
        return touched

    def commit(self, e: int) -> List[int]:
        """Commit edge e; returns the edges whose residual changed"""
        c, v = self.edge_check[e], self.edge_variable[e]
        new = self.r_pre[e]
        self.lam[v] += new - self.r[e]
        self.r[e] = new
        self.residual[e] = 0.0

        E = self.graph.n_edges
        dv = self.variable_degree[v]
        if self.count_ops:
            dc = self.check_degree[c]
            self.ops.record(UpdateKind.C2V, products=dc - 1, operands=dc - 1)
            self.ops.record(UpdateKind.COMPARISON, comparisons=E - 1)

        touched = [e]
        for e2 in self.graph.variable_edges[v]:
            if e2 == e:
                continue
            self.q[e2] = saturate(self.lam[v] - self.r[e2])
            if self.count_ops:
                self.ops.record(UpdateKind.V2C, sums=dv - 1, operands=dv)
            touched.extend(self._refresh_check(self.edge_check[e2], skip=e2))
        return touched

    def hard_bits(self) -> np.ndarray:
        return hard_decision(np.asarray(self.lam))


class _ResidualQueue:
    """Max-residual priority queue with lazy invalidation; ties go to the lowest edge id"""

    def __init__(self, engine: ResidualEngine):
        self.engine = engine
        self.version = [0] * len(engine.residual)
        self.heap: List[Tuple[float, int, int]] = [
            (-res, e, 0) for e, res in enumerate(engine.residual) if res > RESIDUAL_FLOOR
        ]
        heapq.heapify(self.heap)

    def push(self, e: int) -> None:
        self.version[e] += 1
        res = self.engine.residual[e]
        if res > RESIDUAL_FLOOR:
            heapq.heappush(self.heap, (-res, e, self.version[e]))
            self.engine.ops.executed_comparisons += len(self.heap).bit_length()

    def pop(self) -> Optional[int]:
        while self.heap:
            self.engine.ops.executed_comparisons += 2 * len(self.heap).bit_length()
            _, e, version = heapq.heappop(self.heap)
            if version == self.version[e]:
                return e
        return None


def _finish(engine: ResidualEngine, cfg: DecoderConfig, schedule: Schedule, commits: int, success: bool) -> DecodeResult:
    """Failures, stalls included, are charged the full iteration budget"""
    hard = engine.hard_bits()
    if not success and commits > 0:
        success = is_codeword(engine.graph, hard)
    return DecodeResult(
        success=success,
        hard_bits=hard,
        iterations_used=commits / engine.graph.n_edges if success else float(cfg.max_iterations),
        counters=engine.ops,
        stop_reason=StopReason.SYNDROME_ZERO if success else StopReason.MAX_ITER,
        schedule=schedule,
        commits=commits,
    )


def decode_rbp(graph: CodeGraph, llr, cfg: DecoderConfig) -> DecodeResult:
    """Residual schedule: always commit the globally largest pending C2V change"""
    engine = ResidualEngine(graph, prepare_llr(graph, llr), cfg.count_ops)
    queue = _ResidualQueue(engine)
    E = graph.n_edges
    max_commits = cfg.max_iterations * E

    commits = 0
    success = False
    while commits < max_commits:
        e = queue.pop()
        if e is None:
            logger.debug(f"RBP stalled after {commits} commit(s)")
            break
        for touched in engine.commit(e):
            queue.push(touched)
        commits += 1
        if commits % E == 0 and is_codeword(graph, engine.hard_bits()):
            success = True
            break

    return _finish(engine, cfg, Schedule.RBP, commits, success)


def decode_svnf_rbp(graph: CodeGraph, llr, cfg: DecoderConfig) -> DecodeResult:
    """
    Silent-variable-node-free residual schedule: variables take turns in
    index order, each committing its own largest-residual incoming edge, so
    no variable goes a full round without an update.
    """
    engine = ResidualEngine(graph, prepare_llr(graph, llr), cfg.count_ops)
    E, N = graph.n_edges, graph.n_variables
    max_commits = cfg.max_iterations * E
    residual = engine.residual

    commits = 0
    idle = 0
    success = False
    while commits < max_commits:
        v = commits % N
        edges = graph.variable_edges[v]
        best = edges[0]
        for e in edges[1:]:
            if residual[e] > residual[best]:
                best = e
        engine.ops.executed_comparisons += len(edges) - 1

        idle = idle + 1 if residual[best] <= RESIDUAL_FLOOR else 0
        engine.commit(best)
        commits += 1
        if commits % E == 0 and is_codeword(graph, engine.hard_bits()):
            success = True
            break
        if idle >= N:
            logger.debug(f"SVNF-RBP stalled after {commits} commit(s)")
            break

    return _finish(engine, cfg, Schedule.SVNF_RBP, commits, success)
