from dataclasses import dataclass, field
from enum import Enum
from typing import Dict


class UpdateKind(str, Enum):
    V2C = 'v2c'
    C2V = 'c2v'
    B2V = 'b2v'
    C2B = 'c2b'
    RESIDUAL = 'residual'
    COMPARISON = 'comparison'
    DISPATCH = 'dispatch'


@dataclass
class OpCounters:
    """
    Operation tallies for one decode (or an aggregate of many).

    sums/products/comparisons/selections follow the per-update costs of the
    complexity model; `comparisons` is the model charge for the priority
    search, `executed_comparisons` what the engine actually did.
    """

    sums: int = 0
    products: int = 0
    comparisons: int = 0
    selections: int = 0
    executed_comparisons: int = 0
    max_operands: int = 0
    updates_by_kind: Dict[UpdateKind, int] = field(default_factory=dict)

    def record(
        self,
        kind: UpdateKind,
        count: int = 1,
        sums: int = 0,
        products: int = 0,
        comparisons: int = 0,
        selections: int = 0,
        operands: int = 0,
    ) -> None:
        """Charge `count` updates of `kind`, each costing the given amounts"""
        self.updates_by_kind[kind] = self.updates_by_kind.get(kind, 0) + count
        self.sums += count * sums
        self.products += count * products
        self.comparisons += count * comparisons
        self.selections += count * selections
        if operands > self.max_operands:
            self.max_operands = operands

    def updates(self, kind: UpdateKind) -> int:
        return self.updates_by_kind.get(kind, 0)

    def merge(self, other: 'OpCounters') -> None:
        self.sums += other.sums
        self.products += other.products
        self.comparisons += other.comparisons
        self.selections += other.selections
        self.executed_comparisons += other.executed_comparisons
        self.max_operands = max(self.max_operands, other.max_operands)
        for kind, count in other.updates_by_kind.items():
            self.updates_by_kind[kind] = self.updates_by_kind.get(kind, 0) + count

    def to_dict(self) -> Dict:
        return {
            'sums': self.sums,
            'products': self.products,
            'comparisons': self.comparisons,
            'selections': self.selections,
            'executed_comparisons': self.executed_comparisons,
            'max_operands': self.max_operands,
            'updates_by_kind': {k.value: v for k, v in sorted(self.updates_by_kind.items())},
        }


# Memory columns, in message words
LLR = 'llr'
C2V = 'c2v'
V2C = 'v2c'
RESIDUAL = 'residual'
CHECK_BELIEF = 'check_belief'
POOL = 'variable_depth_pool'


@dataclass
class MemoryModel:
    """
    Storage needed by one schedule. `words` holds message-word counts per
    memory column; everything except the variable-depth pool is general
    memory, the pool is registers. Cell counts are in bits (words * q_bits).
    """

    schedule: str
    q_bits: int
    register_area_factor: float
    words: Dict[str, int]

    @property
    def general_cells(self) -> int:
        return sum(w for name, w in self.words.items() if name != POOL) * self.q_bits

    @property
    def register_cells(self) -> int:
        return self.words.get(POOL, 0) * self.q_bits

    @property
    def register_equivalent_total(self) -> int:
        return self.register_cells + int(self.general_cells // self.register_area_factor)

    def bits(self, column: str) -> int:
        return self.words.get(column, 0) * self.q_bits

    def to_dict(self) -> Dict:
        return {
            'schedule': self.schedule,
            'q_bits': self.q_bits,
            'register_area_factor': self.register_area_factor,
            'words': dict(self.words),
            'bits': {column: self.bits(column) for column in self.words},
            'general_cells': self.general_cells,
            'register_cells': self.register_cells,
            'register_equivalent_total': self.register_equivalent_total,
        }
