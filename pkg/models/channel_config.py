import math
from dataclasses import dataclass

from models.errors import ChannelConfigError


@dataclass(frozen=True)
class ChannelConfig:
    """BPSK over AWGN at a given Eb/N0 (dB) for a code of rate `code_rate`"""

    eb_n0_db: float
    code_rate: float
    seed: int

    def __post_init__(self):
        if not math.isfinite(self.eb_n0_db):
            raise ChannelConfigError(f"eb_n0_db must be finite, got {self.eb_n0_db}")
        if not 0.0 < self.code_rate < 1.0:
            raise ChannelConfigError(f"code_rate must be in (0, 1), got {self.code_rate}")
        if self.seed < 0 or self.seed >= 2 ** 64:
            raise ChannelConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    @property
    def noise_variance(self) -> float:
        return 1.0 / (2.0 * self.code_rate * 10.0 ** (self.eb_n0_db / 10.0))

    @property
    def noise_sigma(self) -> float:
        return math.sqrt(self.noise_variance)
