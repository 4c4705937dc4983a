"""
Scalar and vector kernels for log-domain belief propagation.

All messages are natural-log LLRs saturated to [-LLR_MAX, LLR_MAX]. A value
of +LLR_MAX stands in for an infinitely reliable belief. The scalar versions
use `math` because decoders call them once per edge inside Python loops; the
`*_array` versions are the numpy equivalents used by the vectorized
schedules.
"""
import math
from typing import NamedTuple, Optional

import numpy as np

LLR_MAX = 30.0


def _phi_raw(x: float) -> float:
    # -log(tanh(x/2)) == log1p(2e^-x / (1 - e^-x)), stable for small and large x
    return math.log1p(2.0 * math.exp(-x) / -math.expm1(-x))


PHI_MIN = _phi_raw(LLR_MAX)


def saturate(x: float) -> float:
    if x != x:
        raise ValueError("NaN message")
    if x > LLR_MAX:
        return LLR_MAX
    if x < -LLR_MAX:
        return -LLR_MAX
    return x


def phi(x: float) -> float:
    """phi(x) = -log(tanh(x/2)); input and output clamped to [PHI_MIN, LLR_MAX]"""
    if x < PHI_MIN:
        x = PHI_MIN
    elif x > LLR_MAX:
        x = LLR_MAX
    y = _phi_raw(x)
    if y < PHI_MIN:
        return PHI_MIN
    if y > LLR_MAX:
        return LLR_MAX
    return y


def _sign(x: float) -> float:
    return -1.0 if x < 0.0 else 1.0


def psi_plus(x: float, y: float) -> float:
    """Two-input box-plus in the phi domain"""
    return _sign(x) * _sign(y) * phi(phi(abs(x)) + phi(abs(y)))


def psi_minus(total: float, excluded: float) -> float:
    """
    Remove `excluded` from a box-plus accumulation `total`.

    When the two phi terms are closer than PHI_MIN the difference clamps and
    the result saturates at LLR_MAX.
    """
    return _sign(total) * _sign(excluded) * phi(abs(phi(abs(total)) - phi(abs(excluded))))


def boxplus_fold(values) -> float:
    """Recursive accumulation starting from the +LLR_MAX identity"""
    acc = LLR_MAX
    for v in values:
        acc = psi_plus(acc, v)
    return acc


def check_extrinsic(values):
    """
    Leave-one-out check outputs for one check, shared-product form: one phi
    sum over all inputs, then each output removes its own term.
    """
    terms = [phi(abs(v)) for v in values]
    total = sum(terms)
    negative = sum(1 for v in values if v < 0.0) & 1
    out = []
    for v, t in zip(values, terms):
        sign = -1.0 if (negative ^ (v < 0.0)) else 1.0
        out.append(sign * phi(total - t))
    return out


# ==================== NORMALIZED MIN-SUM ====================

class MinSumState(NamedTuple):
    min_mag: float
    submin_mag: float
    min_owner: Optional[int]
    sign_product: float


MINSUM_EMPTY = MinSumState(math.inf, math.inf, None, 1.0)


def normalized_min_update(state: MinSumState, q_new: float, alpha: float, owner: int) -> MinSumState:
    """Fold one input into the (min, submin, owner, sign) summary, magnitudes scaled by alpha"""
    mag = alpha * abs(q_new)
    sign = state.sign_product * _sign(q_new)
    if mag < state.min_mag:
        return MinSumState(mag, state.min_mag, owner, sign)
    if mag < state.submin_mag:
        return MinSumState(state.min_mag, mag, state.min_owner, sign)
    return MinSumState(state.min_mag, state.submin_mag, state.min_owner, sign)


def minsum_extract(state: MinSumState, q_edge: float, edge: int) -> float:
    """Output toward `edge`: submin for the min owner, min otherwise"""
    mag = state.submin_mag if edge == state.min_owner else state.min_mag
    if mag > LLR_MAX:
        mag = LLR_MAX
    return state.sign_product * _sign(q_edge) * mag


def minsum_value(state: MinSumState) -> float:
    return state.sign_product * min(state.min_mag, LLR_MAX)


# ==================== VECTOR FORMS ====================

def saturate_array(x) -> np.ndarray:
    return np.clip(np.asarray(x, dtype=np.float64), -LLR_MAX, LLR_MAX)


def phi_array(x) -> np.ndarray:
    x = np.clip(np.asarray(x, dtype=np.float64), PHI_MIN, LLR_MAX)
    y = np.log1p(2.0 * np.exp(-x) / -np.expm1(-x))
    return np.clip(y, PHI_MIN, LLR_MAX)


def sign_array(x) -> np.ndarray:
    return np.where(np.asarray(x) < 0.0, -1.0, 1.0)


def check_extrinsic_array(q) -> np.ndarray:
    """Vector form of check_extrinsic for a single check"""
    q = np.asarray(q, dtype=np.float64)
    terms = phi_array(np.abs(q))
    negative = q < 0.0
    odd = bool(np.count_nonzero(negative) & 1)
    sign = np.where(negative ^ odd, -1.0, 1.0)
    return sign * phi_array(terms.sum() - terms)
