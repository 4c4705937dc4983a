import logging

import numpy as np

from decoders.kernels import saturate_array
from models.channel_config import ChannelConfig

logger = logging.getLogger(__name__)


def frame_rng(seed: int, frame_index: int) -> np.random.Generator:
    """
    Counter-based generator keyed on (seed, frame_index).

    Philox streams are independent per key, so a frame's noise does not
    depend on which worker draws it or in what order.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, frame_index])))


def transmit(bits, cfg: ChannelConfig, frame_index: int) -> np.ndarray:
    """BPSK (0 -> +1, 1 -> -1) plus i.i.d. Gaussian noise of variance cfg.noise_variance"""
    x = np.asarray(bits, dtype=np.int64)
    noise = frame_rng(cfg.seed, frame_index).standard_normal(x.shape[0])
    return (1.0 - 2.0 * x) + cfg.noise_sigma * noise


def prior_llr(observations, cfg: ChannelConfig) -> np.ndarray:
    """LLR = 2y / sigma^2, saturated"""
    y = np.asarray(observations, dtype=np.float64)
    return saturate_array(2.0 * y / cfg.noise_variance)


def frame_llr(n_variables: int, cfg: ChannelConfig, frame_index: int) -> np.ndarray:
    """Prior LLRs for the all-zero codeword of length n_variables"""
    zeros = np.zeros(n_variables, dtype=np.int64)
    return prior_llr(transmit(zeros, cfg, frame_index), cfg)
