import logging

import numpy as np

from decoders.common import hard_decision, is_codeword, prepare_llr
from decoders.kernels import check_extrinsic_array, saturate_array
from models.code_graph import CodeGraph
from models.decoding import DecodeResult, DecoderConfig, Schedule, StopReason
from models.op_counters import OpCounters, UpdateKind

logger = logging.getLogger(__name__)


def decode_lbp(graph: CodeGraph, llr, cfg: DecoderConfig) -> DecodeResult:
    """
    Layered schedule, one check per layer in ascending index. Each layer
    forms Q = posterior - R, refreshes the check's C2V messages and folds them
    straight back into the posterior, so later layers of the same sweep
    already see them.
    """
    L = prepare_llr(graph, llr)
    E = graph.n_edges
    ops = OpCounters()
    select = graph.max_check_degree
    layers = [np.asarray(row, dtype=np.int64) for row in graph.check_adjacency]

    r = np.zeros(E)
    lam = L.copy()
    hard = hard_decision(lam)
    success = False
    sweep = 0

    for sweep in range(1, cfg.max_iterations + 1):
        for c, variables in enumerate(layers):
            lo, hi = graph.row_start[c], graph.row_start[c + 1]
            q = saturate_array(lam[variables] - r[lo:hi])
            fresh = check_extrinsic_array(q)
            lam[variables] = q + fresh
            r[lo:hi] = fresh

        hard = hard_decision(lam)
        if cfg.count_ops:
            ops.record(UpdateKind.V2C, E, sums=2, operands=2)
            ops.record(UpdateKind.C2V, E, products=2, operands=graph.max_check_degree)
            ops.record(UpdateKind.DISPATCH, E, selections=select)

        if is_codeword(graph, hard):
            success = True
            break

    logger.debug(f"LBP finished after {sweep} sweep(s), success={success}")
    return DecodeResult(
        success=success,
        hard_bits=hard,
        iterations_used=float(sweep),
        counters=ops,
        stop_reason=StopReason.SYNDROME_ZERO if success else StopReason.MAX_ITER,
        schedule=Schedule.LBP,
    )
