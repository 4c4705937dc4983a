import logging

import numpy as np

from decoders.common import hard_decision, is_codeword, prepare_llr
from decoders.kernels import phi_array, saturate_array
from models.code_graph import CodeGraph
from models.decoding import DecodeResult, DecoderConfig, Schedule, StopReason
from models.op_counters import OpCounters, UpdateKind

logger = logging.getLogger(__name__)


def flooding_check_update(graph: CodeGraph, q: np.ndarray) -> np.ndarray:
    """
    All C2V messages at once in shared-product form: one phi sum and one
    sign parity per check, then each edge removes its own term.
    """
    starts = graph.row_start[:-1]
    terms = phi_array(np.abs(q))
    total = np.add.reduceat(terms, starts)
    negative = q < 0.0
    odd = (np.add.reduceat(negative.astype(np.int64), starts) & 1).astype(bool)
    sign = np.where(negative ^ odd[graph.edge_check], -1.0, 1.0)
    return sign * phi_array(total[graph.edge_check] - terms)


def posterior(graph: CodeGraph, llr: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Shared sum: L_v plus every incoming C2V"""
    return llr + np.bincount(graph.edge_variable, weights=r, minlength=graph.n_variables)


def decode_fbp(graph: CodeGraph, llr, cfg: DecoderConfig) -> DecodeResult:
    """Flooding schedule: all V2C, then all C2V, then the syndrome test"""
    L = prepare_llr(graph, llr)
    E = graph.n_edges
    ops = OpCounters()
    select = max(graph.max_variable_degree, graph.max_check_degree)

    r = np.zeros(E)
    lam = L.copy()
    hard = hard_decision(lam)
    success = False
    iteration = 0

    for iteration in range(1, cfg.max_iterations + 1):
        q = saturate_array(lam[graph.edge_variable] - r)
        r = flooding_check_update(graph, q)
        lam = posterior(graph, L, r)
        hard = hard_decision(lam)

        if cfg.count_ops:
            ops.record(UpdateKind.V2C, E, sums=2, operands=graph.max_variable_degree + 1)
            ops.record(UpdateKind.C2V, E, products=2, operands=graph.max_check_degree)
            ops.record(UpdateKind.DISPATCH, E, selections=select)

        if is_codeword(graph, hard):
            success = True
            break

    logger.debug(f"FBP finished after {iteration} iteration(s), success={success}")
    return DecodeResult(
        success=success,
        hard_bits=hard,
        iterations_used=float(iteration),
        counters=ops,
        stop_reason=StopReason.SYNDROME_ZERO if success else StopReason.MAX_ITER,
        schedule=Schedule.FBP,
    )
