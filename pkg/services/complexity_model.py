"""
Analytic update, operation and memory models per schedule, and the check
of measured decoder counters against them.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import config
from models.code_graph import DegreeDistribution
from models.decoding import Schedule
from models.op_counters import (
    C2V,
    CHECK_BELIEF,
    LLR,
    POOL,
    RESIDUAL,
    V2C,
    MemoryModel,
    OpCounters,
    UpdateKind,
)

logger = logging.getLogger(__name__)

# Iterations relative to flooding needed to converge
CONVERGENCE_FACTORS: Dict[Schedule, float] = {
    Schedule.FBP: 1.0,
    Schedule.LBP: 0.5,
    Schedule.CBP: 0.5,
    Schedule.CBP_MINSUM: 0.5,
    Schedule.RBP: 0.25,
    Schedule.SVNF_RBP: 0.25,
}

_CHECK_BELIEF = (Schedule.CBP, Schedule.CBP_MINSUM)


def _variable_moment(dist: DegreeDistribution, power: int) -> float:
    """sum_i lambda_i (d_v^i - 1)^power"""
    return sum(f * (d - 1) ** power for d, f in dist.lambda_terms)


def _check_moment(dist: DegreeDistribution, power: int) -> float:
    return sum(f * (d - 1) ** power for d, f in dist.rho_terms)


def predict_updates(dist: DegreeDistribution, E: float, schedule: Schedule) -> Dict[UpdateKind, float]:
    """Updates of each kind in one iteration"""
    if schedule in (Schedule.FBP, Schedule.LBP):
        return {UpdateKind.V2C: E, UpdateKind.C2V: E, UpdateKind.DISPATCH: E}
    if schedule.edge_scheduled:
        return {
            UpdateKind.V2C: E * _variable_moment(dist, 1),
            UpdateKind.C2V: E,
            UpdateKind.RESIDUAL: E * _variable_moment(dist, 1) * _check_moment(dist, 1),
            UpdateKind.COMPARISON: E * (E - 1),
        }
    return {UpdateKind.V2C: E, UpdateKind.B2V: E, UpdateKind.C2B: E}


def predict_total_complexity(dist: DegreeDistribution, E: float, schedule: Schedule) -> Dict[str, float]:
    """
    Operations to convergence: per-iteration updates times per-update cost,
    scaled by the schedule's convergence factor.
    """
    k = CONVERGENCE_FACTORS[schedule]
    if schedule == Schedule.FBP:
        select = max(dist.max_variable_degree, dist.max_check_degree)
        totals = {'sums': 2 * E, 'products': 2 * E, 'comparisons': 0.0, 'selections': E * select}
    elif schedule == Schedule.LBP:
        totals = {'sums': 2 * E, 'products': 2 * E, 'comparisons': 0.0,
                  'selections': E * dist.max_check_degree}
    elif schedule.edge_scheduled:
        totals = {
            'sums': E * _variable_moment(dist, 2),
            'products': E * _check_moment(dist, 1) + E * _variable_moment(dist, 1) * _check_moment(dist, 2),
            'comparisons': E * (E - 1),
            'selections': 0.0,
        }
    else:
        # one V2C of two sums, one B2V and one C2B product per edge
        totals = {'sums': 2 * E, 'products': 2 * E, 'comparisons': 0.0, 'selections': 0.0}
    return {name: value * k for name, value in totals.items()}


def predict_memory(
    N: int,
    M: int,
    E: int,
    P: int,
    q_bits: int,
    max_dv: int,
    max_dc: int,
    schedule: Schedule,
    register_area_factor: float = config.REGISTER_AREA_FACTOR,
) -> MemoryModel:
    """Words per memory column; the variable-depth pool is registers, the rest general memory"""
    for name, value in (('N', N), ('M', M), ('E', E), ('P', P), ('q_bits', q_bits)):
        if value < 1:
            raise ValueError(f"{name} must be positive, got {value}")
    if register_area_factor <= 0:
        raise ValueError(f"register_area_factor must be positive, got {register_area_factor}")

    words = {LLR: N, C2V: E}
    if schedule == Schedule.FBP:
        words.update({V2C: E, POOL: P * max(max_dv, max_dc)})
    elif schedule == Schedule.LBP:
        words[POOL] = P * max_dc
    elif schedule.edge_scheduled:
        words.update({V2C: E, RESIDUAL: E})
    else:
        words[CHECK_BELIEF] = M
    return MemoryModel(
        schedule=schedule.value,
        q_bits=q_bits,
        register_area_factor=register_area_factor,
        words=words,
    )


def register_saving(baseline: MemoryModel, cbp: MemoryModel) -> int:
    """
    Registers freed by moving from `baseline` to `cbp`: the baseline's pool
    registers minus the register equivalent of the extra general memory.
    """
    extra_general = cbp.general_cells - baseline.general_cells
    return baseline.register_cells - cbp.register_cells - math.floor(extra_general / cbp.register_area_factor)


@dataclass
class CounterReport:
    schedule: str
    predicted: Dict[str, float]
    measured: Dict[str, float]
    deviation: Dict[str, float]
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = all(d <= self.tolerance for d in self.deviation.values())

    def to_dict(self) -> Dict:
        return {
            'schedule': self.schedule,
            'predicted': self.predicted,
            'measured': self.measured,
            'deviation': self.deviation,
            'tolerance': self.tolerance,
            'passed': self.passed,
        }


def verify_counters(
    measured: OpCounters,
    predicted: Dict[UpdateKind, float],
    tolerance: float,
    iterations: float = 1.0,
    schedule: str = '',
) -> CounterReport:
    """
    Compare measured update counts (normalized by `iterations`) with the
    per-iteration prediction. Deviation is relative to the prediction; a
    zero prediction tolerates only a zero measurement.
    """
    if iterations <= 0:
        raise ValueError("iterations must be positive")
    measured_rates, deviation = {}, {}
    for kind, expected in predicted.items():
        rate = measured.updates(kind) / iterations
        measured_rates[kind.value] = rate
        if expected == 0:
            deviation[kind.value] = 0.0 if rate == 0 else math.inf
        else:
            deviation[kind.value] = abs(rate - expected) / expected

    report = CounterReport(
        schedule=schedule,
        predicted={k.value: v for k, v in predicted.items()},
        measured=measured_rates,
        deviation=deviation,
        tolerance=tolerance,
    )
    if not report.passed:
        logger.warning(f"Counter check failed for {schedule or 'decoder'}: {deviation}")
    return report


def complexity_report(
    dist: DegreeDistribution,
    n_variables: int,
    schedules: List[Schedule],
    n_checks: Optional[int] = None,
    parallelism: Optional[int] = None,
    q_bits: int = 8,
    register_area_factor: float = config.REGISTER_AREA_FACTOR,
) -> Dict:
    """
    Predicted updates, total operations and (when `parallelism` is given)
    memory for each schedule. Totals are also given per edge, the unit the
    comparison tables use.
    """
    E = int(round(dist.edges_for(n_variables)))
    M = n_checks if n_checks is not None else int(round(n_variables * (1.0 - dist.design_rate())))

    entries = []
    memory: Dict[Schedule, MemoryModel] = {}
    for schedule in schedules:
        totals = predict_total_complexity(dist, E, schedule)
        entry = {
            'schedule': schedule.value,
            'updates_per_iteration': {k.value: v for k, v in predict_updates(dist, E, schedule).items()},
            'total': totals,
            'total_per_edge': {k: v / E for k, v in totals.items()},
        }
        if parallelism is not None:
            memory[schedule] = predict_memory(
                n_variables, M, E, parallelism, q_bits,
                dist.max_variable_degree, dist.max_check_degree, schedule, register_area_factor,
            )
            entry['memory'] = memory[schedule].to_dict()
        entries.append(entry)

    report = {
        'n_variables': n_variables,
        'n_checks': M,
        'n_edges': E,
        'lambda': [list(t) for t in dist.lambda_terms],
        'rho': [list(t) for t in dist.rho_terms],
        'schedules': entries,
    }
    if Schedule.CBP in memory:
        report['register_saving_vs'] = {
            s.value: register_saving(m, memory[Schedule.CBP])
            for s, m in memory.items() if s not in _CHECK_BELIEF
        }
    return report
