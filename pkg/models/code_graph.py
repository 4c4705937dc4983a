from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from models.errors import DegreeDistributionError

# Relative slack allowed between the edge counts implied by the variable and
# check sides of a distribution for a given (N, M).
RATE_CONSISTENCY_TOLERANCE = 0.02


@dataclass(frozen=True)
class CodeGraph:
    """
    Tanner graph of a binary LDPC code.

    Neighbour lists are kept in ascending index order. Edge ids are dense in
    [0, E) and assigned row-major: by check, then by position in the check's
    neighbour list, so the edges of check c are row_start[c]..row_start[c+1]-1.
    Instances are immutable and safe to share between decoders.
    """

    n_variables: int
    n_checks: int
    check_adjacency: Tuple[Tuple[int, ...], ...]

    variable_adjacency: Tuple[Tuple[int, ...], ...] = field(init=False)
    n_edges: int = field(init=False)
    edge_check: np.ndarray = field(init=False, repr=False, compare=False)
    edge_variable: np.ndarray = field(init=False, repr=False, compare=False)
    row_start: np.ndarray = field(init=False, repr=False, compare=False)
    variable_edges: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    edge_index: Dict[Tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(sorted(int(v) for v in row)) for row in self.check_adjacency)

        if self.n_variables < 1 or self.n_checks < 1:
            raise ValueError(f"Graph needs N >= 1 and M >= 1, got N={self.n_variables}, M={self.n_checks}")
        if len(rows) != self.n_checks:
            raise ValueError(f"Expected {self.n_checks} check rows, got {len(rows)}")

        columns: List[List[int]] = [[] for _ in range(self.n_variables)]
        for c, row in enumerate(rows):
            if not row:
                raise ValueError(f"Check {c} has no neighbours")
            if len(set(row)) != len(row):
                raise ValueError(f"Check {c} has a duplicate edge")
            for v in row:
                if not 0 <= v < self.n_variables:
                    raise ValueError(f"Check {c} references variable {v} outside [0, {self.n_variables})")
                columns[v].append(c)

        for v, col in enumerate(columns):
            if not col:
                raise ValueError(f"Variable {v} has no neighbours")

        row_start = np.zeros(self.n_checks + 1, dtype=np.int64)
        row_start[1:] = np.cumsum([len(row) for row in rows])
        n_edges = int(row_start[-1])

        edge_check = np.repeat(np.arange(self.n_checks, dtype=np.int64), [len(row) for row in rows])
        edge_variable = np.fromiter((v for row in rows for v in row), dtype=np.int64, count=n_edges)
        edge_index = {(int(c), int(v)): e for e, (c, v) in enumerate(zip(edge_check, edge_variable))}

        # columns were filled in ascending check order
        variable_edges = tuple(
            tuple(edge_index[(c, v)] for c in col) for v, col in enumerate(columns)
        )

        object.__setattr__(self, 'check_adjacency', rows)
        object.__setattr__(self, 'variable_adjacency', tuple(tuple(col) for col in columns))
        object.__setattr__(self, 'n_edges', n_edges)
        object.__setattr__(self, 'edge_check', edge_check)
        object.__setattr__(self, 'edge_variable', edge_variable)
        object.__setattr__(self, 'row_start', row_start)
        object.__setattr__(self, 'variable_edges', variable_edges)
        object.__setattr__(self, 'edge_index', edge_index)

    @classmethod
    def from_dense(cls, matrix) -> 'CodeGraph':
        """Build from an M x N 0/1 parity-check matrix"""
        h = np.asarray(matrix)
        rows = [tuple(int(v) for v in np.flatnonzero(h[c])) for c in range(h.shape[0])]
        return cls(n_variables=h.shape[1], n_checks=h.shape[0], check_adjacency=tuple(rows))

    # ==================== EDGE ACCESS ====================

    def edge_id(self, check: int, variable: int) -> int:
        return self.edge_index[(check, variable)]

    def edge_pair(self, edge: int) -> Tuple[int, int]:
        return int(self.edge_check[edge]), int(self.edge_variable[edge])

    def check_edges(self, check: int) -> range:
        return range(int(self.row_start[check]), int(self.row_start[check + 1]))

    @property
    def check_degrees(self) -> List[int]:
        return [len(row) for row in self.check_adjacency]

    @property
    def variable_degrees(self) -> List[int]:
        return [len(col) for col in self.variable_adjacency]

    @property
    def max_check_degree(self) -> int:
        return max(self.check_degrees)

    @property
    def max_variable_degree(self) -> int:
        return max(self.variable_degrees)

    @property
    def design_rate(self) -> float:
        return 1.0 - self.n_checks / self.n_variables

    # ==================== DERIVED VIEWS ====================

    def to_dense(self) -> np.ndarray:
        h = np.zeros((self.n_checks, self.n_variables), dtype=np.uint8)
        h[self.edge_check, self.edge_variable] = 1
        return h

    def permuted_checks(self, order: Sequence[int]) -> 'CodeGraph':
        """Relabel checks so that new check k is old check order[k]"""
        if sorted(order) != list(range(self.n_checks)):
            raise ValueError("order must be a permutation of the check indices")
        rows = tuple(self.check_adjacency[c] for c in order)
        return CodeGraph(self.n_variables, self.n_checks, rows)

    def degree_distribution(self) -> 'DegreeDistribution':
        """Edge-perspective distribution realized by this graph"""
        return DegreeDistribution(
            lambda_terms=_edge_fractions(self.variable_degrees, self.n_edges),
            rho_terms=_edge_fractions(self.check_degrees, self.n_edges),
        )

    def girth(self, max_sources: Optional[int] = None) -> Optional[int]:
        """
        Length of the shortest cycle, or None for a cycle-free graph.

        Runs a BFS from every variable node (or the first `max_sources`), which
        is exact when all variable nodes are used since every cycle passes
        through one.
        """
        n = self.n_variables
        adjacency: List[Tuple[int, ...]] = [
            tuple(n + c for c in col) for col in self.variable_adjacency
        ]
        adjacency.extend(self.check_adjacency)

        best: Optional[int] = None
        sources = range(n if max_sources is None else min(n, max_sources))
        for root in sources:
            depth = {root: 0}
            parent = {root: -1}
            queue = deque([root])
            while queue:
                node = queue.popleft()
                if best is not None and 2 * depth[node] + 1 >= best:
                    break
                for nxt in adjacency[node]:
                    if nxt not in depth:
                        depth[nxt] = depth[node] + 1
                        parent[nxt] = node
                        queue.append(nxt)
                    elif nxt != parent[node]:
                        length = depth[node] + depth[nxt] + 1
                        if best is None or length < best:
                            best = length
        return best


def _edge_fractions(degrees: Iterable[int], n_edges: int) -> Tuple[Tuple[int, float], ...]:
    edges_by_degree: Dict[int, int] = {}
    for d in degrees:
        edges_by_degree[d] = edges_by_degree.get(d, 0) + d
    return tuple((d, edges_by_degree[d] / n_edges) for d in sorted(edges_by_degree))


@dataclass(frozen=True)
class DegreeDistribution:
    """Edge-perspective degree distribution: (degree, fraction of edges) terms"""

    lambda_terms: Tuple[Tuple[int, float], ...]
    rho_terms: Tuple[Tuple[int, float], ...]

    def __post_init__(self):
        for name in ('lambda_terms', 'rho_terms'):
            terms = tuple(sorted((int(d), float(f)) for d, f in getattr(self, name)))
            if not terms:
                raise DegreeDistributionError(f"{name} is empty")
            for d, f in terms:
                if d < 1:
                    raise DegreeDistributionError(f"{name}: degree {d} must be >= 1")
                if not 0.0 < f <= 1.0:
                    raise DegreeDistributionError(f"{name}: fraction {f} for degree {d} outside (0, 1]")
            if len({d for d, _ in terms}) != len(terms):
                raise DegreeDistributionError(f"{name}: repeated degree")
            total = sum(f for _, f in terms)
            if abs(total - 1.0) > 1e-9:
                raise DegreeDistributionError(f"{name} fractions sum to {total}, expected 1")
            object.__setattr__(self, name, terms)

    @classmethod
    def regular(cls, dv: int, dc: int) -> 'DegreeDistribution':
        return cls(lambda_terms=((dv, 1.0),), rho_terms=((dc, 1.0),))

    @classmethod
    def parse_regular(cls, text: str) -> 'DegreeDistribution':
        """Parse `dv,dc`"""
        try:
            dv, dc = (int(x) for x in text.split(','))
        except ValueError:
            raise DegreeDistributionError(f"Bad regular degrees '{text}', expected 'dv,dc'")
        return cls.regular(dv, dc)

    @classmethod
    def parse(cls, lambda_spec: str, rho_spec: str) -> 'DegreeDistribution':
        """Parse `deg:frac,deg:frac` strings for each side"""
        return cls(lambda_terms=_parse_terms(lambda_spec), rho_terms=_parse_terms(rho_spec))

    @property
    def max_variable_degree(self) -> int:
        return max(d for d, _ in self.lambda_terms)

    @property
    def max_check_degree(self) -> int:
        return max(d for d, _ in self.rho_terms)

    @property
    def edges_per_variable(self) -> float:
        return 1.0 / sum(f / d for d, f in self.lambda_terms)

    @property
    def edges_per_check(self) -> float:
        return 1.0 / sum(f / d for d, f in self.rho_terms)

    def edges_for(self, n_variables: int) -> float:
        return n_variables * self.edges_per_variable

    def design_rate(self) -> float:
        return 1.0 - self.edges_per_variable / self.edges_per_check

    def variable_degree_counts(self, n_variables: int) -> Dict[int, int]:
        """Integer node counts per variable degree (largest remainder rounding)"""
        node_share = {d: f / d for d, f in self.lambda_terms}
        total = sum(node_share.values())
        exact = {d: n_variables * s / total for d, s in node_share.items()}
        counts = {d: int(np.floor(x)) for d, x in exact.items()}
        short = n_variables - sum(counts.values())
        by_remainder = sorted(exact, key=lambda d: (-(exact[d] - counts[d]), d))
        for d in by_remainder[:short]:
            counts[d] += 1
        return {d: c for d, c in counts.items() if c > 0}

    def check_realizable(self, n_variables: int, n_checks: int) -> None:
        if n_variables < 1 or n_checks < 1:
            raise DegreeDistributionError(f"N and M must be positive, got N={n_variables}, M={n_checks}")
        if self.max_variable_degree > n_checks:
            raise DegreeDistributionError(
                f"Variable degree {self.max_variable_degree} exceeds the number of checks {n_checks}"
            )
        counts = self.variable_degree_counts(n_variables)
        e_variable = sum(d * c for d, c in counts.items())
        e_check = n_checks * self.edges_per_check
        if abs(e_variable - e_check) > RATE_CONSISTENCY_TOLERANCE * max(e_variable, e_check):
            raise DegreeDistributionError(
                f"Unrealizable for N={n_variables}, M={n_checks}: variable side implies "
                f"{e_variable} edges, check side {e_check:.1f}"
            )
        if e_variable < n_checks:
            raise DegreeDistributionError(
                f"Only {e_variable} edges for {n_checks} checks; some check would be empty"
            )


def _parse_terms(spec: str) -> Tuple[Tuple[int, float], ...]:
    terms = []
    for chunk in spec.split(','):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            degree, fraction = chunk.split(':')
            terms.append((int(degree), float(fraction)))
        except ValueError:
            raise DegreeDistributionError(f"Bad distribution term '{chunk}', expected degree:fraction")
    return tuple(terms)


# Rate-1/2 irregular distribution used for the irregular-code experiments and
# the irregular complexity table.
IRREGULAR_HALF_RATE = DegreeDistribution(
    lambda_terms=((2, 0.45), (3, 0.3708), (4, 0.0307), (12, 0.1485)),
    rho_terms=((5, 0.5467), (6, 0.4533)),
)


def syndrome(graph: CodeGraph, bits) -> np.ndarray:
    """H·x over GF(2): component c is the XOR of bits over N(c)"""
    x = np.asarray(bits)
    if x.shape != (graph.n_variables,):
        raise ValueError(f"Length mismatch: expected {graph.n_variables} bits, got {x.shape}")
    ones = x[graph.edge_variable].astype(np.int64) & 1
    return (np.add.reduceat(ones, graph.row_start[:-1]) & 1).astype(np.uint8)
