from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

import config
from models.decoding import Schedule, StopWindow
from models.errors import SpecValidationError
from models.op_counters import OpCounters


class PegSource(BaseModel):
    """Construct the code instead of loading it"""

    model_config = ConfigDict(extra='forbid')

    n: int = Field(ge=2)
    m: int = Field(ge=1)
    regular: Optional[str] = None
    lambda_spec: Optional[str] = None
    rho_spec: Optional[str] = None
    seed: int = Field(ge=0)

    @model_validator(mode='after')
    def _one_distribution(self):
        has_regular = self.regular is not None
        has_irregular = self.lambda_spec is not None or self.rho_spec is not None
        if has_regular == has_irregular:
            raise ValueError("give either 'regular' or both 'lambda_spec' and 'rho_spec'")
        if has_irregular and (self.lambda_spec is None or self.rho_spec is None):
            raise ValueError("'lambda_spec' and 'rho_spec' must be given together")
        return self


class SweepSpec(BaseModel):
    """Everything needed to replay a sweep; loadable from a JSON bundle"""

    model_config = ConfigDict(extra='forbid')

    code: Optional[str] = None
    peg: Optional[PegSource] = None
    schedules: List[Schedule]
    eb_n0_points: List[float] = Field(min_length=1)
    min_frame_errors: int = Field(default=config.MIN_FRAME_ERRORS, ge=1)
    max_frames: int = Field(default=config.MAX_FRAMES, ge=1)
    seed: int = Field(ge=0, lt=2 ** 64)
    alpha: float = Field(default=config.MIN_SUM_ALPHA, gt=0.0, le=1.0)
    max_iterations: int = Field(default=config.MAX_ITERATIONS, ge=1)
    stop_window: StopWindow = StopWindow.parse(config.STOP_WINDOW)
    threads: int = Field(default=config.THREADS, ge=1)
    batch_size: int = Field(default=config.SWEEP_BATCH_SIZE, ge=1)

    @field_validator('schedules', mode='before')
    @classmethod
    def _parse_schedules(cls, value):
        if isinstance(value, str):
            value = [v for v in value.split(',') if v.strip()]
        parsed = [v if isinstance(v, Schedule) else Schedule.parse(str(v)) for v in value]
        if not parsed:
            raise ValueError("at least one schedule is required")
        return list(dict.fromkeys(parsed))

    @field_validator('stop_window', mode='before')
    @classmethod
    def _parse_window(cls, value):
        return value if isinstance(value, StopWindow) else StopWindow.parse(str(value))

    @model_validator(mode='after')
    def _one_source(self):
        if (self.code is None) == (self.peg is None):
            raise ValueError("give exactly one of 'code' (alist path) or 'peg'")
        return self

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SweepSpec':
        try:
            return cls.model_validate(data)
        except (ValidationError, SpecValidationError) as e:
            raise SpecValidationError(f"Invalid sweep spec: {e}")


@dataclass
class PointStats:
    """Accumulated results of one schedule at one Eb/N0 point"""

    schedule: Schedule
    eb_n0_db: float
    n_variables: int
    frames: int = 0
    bit_errors: int = 0
    frame_errors: int = 0
    successes: int = 0
    iterations_total: float = 0.0
    undetected_stops: int = 0
    counters: OpCounters = field(default_factory=OpCounters)

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.n_variables) if self.frames else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def avg_iterations(self) -> float:
        return self.iterations_total / self.frames if self.frames else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schedule': self.schedule.value,
            'ebn0_db': self.eb_n0_db,
            'frames': self.frames,
            'bit_errors': self.bit_errors,
            'frame_errors': self.frame_errors,
            'successes': self.successes,
            'ber': self.ber,
            'fer': self.fer,
            'avg_iters': self.avg_iterations,
            'undetected_stops': self.undetected_stops,
            'counters': self.counters.to_dict(),
        }


@dataclass
class SweepReport:
    n_variables: int
    n_checks: int
    n_edges: int
    code_rate: float
    seed: int
    points: List[PointStats] = field(default_factory=list)
    # Sweep axis; every report states it
    snr_convention: str = 'Eb/N0'

    def point(self, schedule: Schedule, eb_n0_db: float) -> Optional[PointStats]:
        for p in self.points:
            if p.schedule == schedule and p.eb_n0_db == eb_n0_db:
                return p
        return None

    def schedules(self) -> List[Schedule]:
        seen: List[Schedule] = []
        for p in self.points:
            if p.schedule not in seen:
                seen.append(p.schedule)
        return seen

    def to_dict(self) -> Dict[str, Any]:
        return {
            'snr_convention': self.snr_convention,
            'n_variables': self.n_variables,
            'n_checks': self.n_checks,
            'n_edges': self.n_edges,
            'code_rate': self.code_rate,
            'seed': self.seed,
            'points': [p.to_dict() for p in self.points],
        }
