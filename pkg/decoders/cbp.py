"""
Check-belief propagation.

Each check keeps a single belief Omega (LLR that its parity holds) instead
of per-edge extrinsic bookkeeping. Processing check c_i walks its
neighbours in adjacency order; for each variable v it

  (a) pulls a fresh C2V message from the check v last talked to (B2V),
  (b) forms the new V2C message toward c_i and the posterior (V2C),
  (c) folds the V2C message into c_i's running belief (C2B),
  (d) commits the pulled message and makes c_i v's latest check.

Every update reads at most three scalar message operands. Variables store
one V2C value each (the latest), C2V messages are stored per edge.
"""
import logging
from dataclasses import dataclass
from typing import Any, List, NamedTuple, Optional, Tuple

import numpy as np

from decoders.common import is_codeword, prepare_llr
from decoders.kernels import (
    LLR_MAX,
    MINSUM_EMPTY,
    minsum_extract,
    minsum_value,
    normalized_min_update,
    psi_minus,
    psi_plus,
)
from models.code_graph import CodeGraph
from models.decoding import DecodeResult, DecoderConfig, Schedule, StopReason
from models.op_counters import OpCounters, UpdateKind

logger = logging.getLogger(__name__)


class ExactBelief:
    """Check beliefs kept as LLRs, combined with psi+/psi-"""

    initial = LLR_MAX

    @staticmethod
    def extract(omega: float, q: float, edge: int) -> float:
        return psi_minus(omega, q)

    @staticmethod
    def accumulate(acc: float, q: float, edge: int) -> float:
        return psi_plus(acc, q)

    @staticmethod
    def value(omega: float) -> float:
        return omega


class MinSumBelief:
    """Check beliefs kept as (min, submin, owner edge, sign) summaries"""

    initial = MINSUM_EMPTY

    def __init__(self, alpha: float):
        self.alpha = alpha

    @staticmethod
    def extract(omega, q: float, edge: int) -> float:
        return minsum_extract(omega, q, edge)

    def accumulate(self, acc, q: float, edge: int):
        return normalized_min_update(acc, q, self.alpha, edge)

    @staticmethod
    def value(omega) -> float:
        return minsum_value(omega)


EXACT = ExactBelief()


@dataclass
class CbpState:
    q_latest: List[float]
    r_c2v: List[float]
    omega: List[Any]
    latest_check: List[int]
    # True where the last computed posterior was negative
    posterior_sign: List[bool]
    processed: List[bool]
    consec_ok: int = 0


class TraceRow(NamedTuple):
    sweep: int
    check: int
    omega: float
    satisfied: bool
    consec_ok: int


def cbp_init(graph: CodeGraph, llr, belief=EXACT) -> CbpState:
    """
    Fresh decoder state: every belief at the +LLR_MAX identity, C2V memory
    zeroed, each variable's latest check set to its lowest-index neighbour.
    """
    L = prepare_llr(graph, llr)
    return CbpState(
        q_latest=L.tolist(),
        r_c2v=[0.0] * graph.n_edges,
        omega=[belief.initial] * graph.n_checks,
        latest_check=[col[0] for col in graph.variable_adjacency],
        posterior_sign=(L < 0.0).tolist(),
        processed=[False] * graph.n_checks,
    )


def _pull(state: CbpState, graph: CodeGraph, v: int, belief) -> Tuple[float, int]:
    """B2V from v's latest check: (message, edge id of that check and v)"""
    c_j = state.latest_check[v]
    e_j = graph.edge_index[(c_j, v)]
    if not state.processed[c_j]:
        # The check has no belief yet; its stored message is still current
        return state.r_c2v[e_j], e_j
    return belief.extract(state.omega[c_j], state.q_latest[v], e_j), e_j


def cbp_process_check(
    state: CbpState,
    graph: CodeGraph,
    c_i: int,
    belief=EXACT,
    ops: Optional[OpCounters] = None,
) -> Tuple[bool, bool]:
    """Run one check through the B2V, V2C, C2B pipeline; returns (satisfied, flipped)"""
    acc = belief.initial
    flipped = False
    first = int(graph.row_start[c_i])

    for k, v in enumerate(graph.check_adjacency[c_i]):
        e_i = first + k
        r_new, e_j = _pull(state, graph, v, belief)
        q_old = state.q_latest[v]

        state.r_c2v[e_j] = r_new
        q_new = q_old + r_new - state.r_c2v[e_i]
        if q_new > LLR_MAX:
            q_new = LLR_MAX
        elif q_new < -LLR_MAX:
            q_new = -LLR_MAX

        negative = (q_old + r_new) < 0.0
        if negative != state.posterior_sign[v]:
            flipped = True
            state.posterior_sign[v] = negative

        acc = belief.accumulate(acc, q_new, e_i)

        state.q_latest[v] = q_new
        state.latest_check[v] = c_i

        if ops is not None:
            ops.record(UpdateKind.B2V, products=1, operands=2)
            ops.record(UpdateKind.V2C, sums=2, operands=3)
            ops.record(UpdateKind.C2B, products=1, operands=2)

    state.omega[c_i] = acc
    state.processed[c_i] = True
    return belief.value(acc) > 0.0, flipped


def cbp_posterior(state: CbpState, graph: CodeGraph, belief=EXACT) -> np.ndarray:
    """Posterior of every variable from its latest V2C value and a final pull (no commit)"""
    return np.array(
        [state.q_latest[v] + _pull(state, graph, v, belief)[0] for v in range(graph.n_variables)]
    )


def cbp_hard_decision(state: CbpState, graph: CodeGraph, belief=EXACT) -> np.ndarray:
    return (cbp_posterior(state, graph, belief) < 0.0).astype(np.uint8)


def _decode_check_belief(
    graph: CodeGraph,
    llr,
    cfg: DecoderConfig,
    belief,
    schedule: Schedule,
    trace: Optional[List[TraceRow]],
) -> DecodeResult:
    state = cbp_init(graph, llr, belief)
    ops = OpCounters()
    M = graph.n_checks
    window = cfg.stop_window.length(graph.n_variables, M)
    max_updates = cfg.max_iterations * M

    updates = 0
    false_fires = 0
    success = False
    stop_reason = StopReason.MAX_ITER
    hard = None

    while updates < max_updates:
        c = updates % M
        satisfied, flipped = cbp_process_check(state, graph, c, belief, ops if cfg.count_ops else None)
        updates += 1

        if satisfied and not flipped:
            state.consec_ok = min(state.consec_ok + 1, window)
        else:
            state.consec_ok = 0

        if trace is not None:
            trace.append(TraceRow(
                sweep=(updates - 1) // M,
                check=c,
                omega=belief.value(state.omega[c]),
                satisfied=satisfied,
                consec_ok=state.consec_ok,
            ))

        if state.consec_ok >= window:
            hard = cbp_hard_decision(state, graph, belief)
            if is_codeword(graph, hard):
                success = True
                stop_reason = StopReason.BELIEF_CRITERION
                break
            # Soft evidence only; keep decoding
            false_fires += 1
            state.consec_ok = 0

    if not success:
        hard = cbp_hard_decision(state, graph, belief)
        if is_codeword(graph, hard):
            success = True
            stop_reason = StopReason.SYNDROME_ZERO

    logger.debug(
        f"{schedule.value} finished after {updates} check update(s), success={success}, "
        f"false fires={false_fires}"
    )
    return DecodeResult(
        success=success,
        hard_bits=hard,
        iterations_used=updates / M,
        counters=ops,
        stop_reason=stop_reason,
        schedule=schedule,
        commits=updates,
        criterion_false_fires=false_fires,
    )


def decode_cbp(graph: CodeGraph, llr, cfg: DecoderConfig, trace: Optional[List[TraceRow]] = None) -> DecodeResult:
    return _decode_check_belief(graph, llr, cfg, EXACT, Schedule.CBP, trace)


def decode_cbp_minsum(
    graph: CodeGraph, llr, cfg: DecoderConfig, trace: Optional[List[TraceRow]] = None
) -> DecodeResult:
    return _decode_check_belief(graph, llr, cfg, MinSumBelief(cfg.alpha), Schedule.CBP_MINSUM, trace)
