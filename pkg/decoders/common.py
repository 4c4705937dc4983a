import numpy as np

from decoders.kernels import saturate_array
from models.code_graph import CodeGraph, syndrome


def prepare_llr(graph: CodeGraph, llr) -> np.ndarray:
    """Validate length, reject NaN, saturate"""
    values = np.asarray(llr, dtype=np.float64)
    if values.shape != (graph.n_variables,):
        raise ValueError(f"Length mismatch: expected {graph.n_variables} LLRs, got {values.shape}")
    if np.isnan(values).any():
        raise ValueError("LLR vector contains NaN")
    return saturate_array(values)


def hard_decision(posterior) -> np.ndarray:
    """0 when the posterior is >= 0, else 1"""
    return (np.asarray(posterior) < 0.0).astype(np.uint8)


def is_codeword(graph: CodeGraph, bits) -> bool:
    return not syndrome(graph, bits).any()
