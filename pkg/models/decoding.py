from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict

import numpy as np

import config
from models.errors import SpecValidationError
from models.op_counters import OpCounters


class Schedule(str, Enum):
    FBP = 'fbp'
    LBP = 'lbp'
    RBP = 'rbp'
    SVNF_RBP = 'svnf-rbp'
    CBP = 'cbp'
    CBP_MINSUM = 'cbp-minsum'

    @classmethod
    def parse(cls, name: str) -> 'Schedule':
        """Case-insensitive; '-' and '_' are interchangeable"""
        key = name.strip().lower().replace('_', '-')
        for schedule in cls:
            if schedule.value == key:
                return schedule
        valid = ', '.join(s.value for s in cls)
        raise SpecValidationError(f"Unknown schedule '{name}'. Valid schedules: {valid}")

    @property
    def edge_scheduled(self) -> bool:
        return self in (Schedule.RBP, Schedule.SVNF_RBP)


class StopReason(str, Enum):
    SYNDROME_ZERO = 'syndrome_zero'
    BELIEF_CRITERION = 'belief_criterion'
    MAX_ITER = 'max_iter'


class StopWindow(str, Enum):
    """Consecutive satisfied check-belief updates required by CBP"""
    N = 'n'
    M = 'm'

    @classmethod
    def parse(cls, name: str) -> 'StopWindow':
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise SpecValidationError(f"Unknown stop window '{name}', expected 'n' or 'm'")

    def length(self, n_variables: int, n_checks: int) -> int:
        return n_variables if self is StopWindow.N else n_checks


@dataclass(frozen=True)
class DecoderConfig:
    schedule: Schedule = Schedule.CBP
    max_iterations: int = config.MAX_ITERATIONS
    alpha: float = config.MIN_SUM_ALPHA
    count_ops: bool = True
    stop_window: StopWindow = StopWindow.parse(config.STOP_WINDOW)

    def __post_init__(self):
        if self.max_iterations < 1:
            raise SpecValidationError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not 0.0 < self.alpha <= 1.0:
            raise SpecValidationError(f"alpha must be in (0, 1], got {self.alpha}")


@dataclass
class DecodeResult:
    """Outcome of one decode; `success` is always syndrome-verified"""

    success: bool
    hard_bits: np.ndarray
    iterations_used: float
    counters: OpCounters
    stop_reason: StopReason
    schedule: Schedule
    # Edge commits (RBP family) or check updates (CBP), 0 otherwise
    commits: int = 0
    # CBP belief criterion fired while the syndrome was nonzero
    criterion_false_fires: int = 0

    @property
    def bit_errors(self) -> int:
        """Errors against the all-zero codeword"""
        return int(np.count_nonzero(self.hard_bits))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schedule': self.schedule.value,
            'success': self.success,
            'stop_reason': self.stop_reason.value,
            'iterations_used': self.iterations_used,
            'commits': self.commits,
            'criterion_false_fires': self.criterion_false_fires,
            'bit_errors': self.bit_errors,
            'hard_bits': ''.join(str(int(b)) for b in self.hard_bits),
            'counters': self.counters.to_dict(),
        }
