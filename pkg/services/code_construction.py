import logging
from typing import List

import numpy as np

from models.code_graph import CodeGraph, DegreeDistribution
from models.errors import DegreeDistributionError

logger = logging.getLogger(__name__)


def variable_degree_sequence(dist: DegreeDistribution, n_variables: int) -> List[int]:
    """Target degree per variable index, nondecreasing"""
    counts = dist.variable_degree_counts(n_variables)
    return [d for d in sorted(counts) for _ in range(counts[d])]


def check_degree_targets(dist: DegreeDistribution, n_checks: int, n_edges: int) -> List[int]:
    """
    Target degree per check index, nondecreasing, summing to exactly n_edges.

    Node counts come from rho by largest remainder; the leftover edge
    difference is absorbed one unit per check, so targets move by at most
    one from the distribution's degrees.
    """
    share = {d: f / d for d, f in dist.rho_terms}
    total = sum(share.values())
    exact = {d: n_checks * s / total for d, s in share.items()}
    counts = {d: int(np.floor(x)) for d, x in exact.items()}
    short = n_checks - sum(counts.values())
    for d in sorted(exact, key=lambda d: (-(exact[d] - counts[d]), d))[:short]:
        counts[d] += 1

    targets = [d for d in sorted(counts) for _ in range(counts[d])]
    diff = n_edges - sum(targets)
    if abs(diff) > n_checks:
        raise DegreeDistributionError(
            f"Check side cannot absorb {diff} edges with {n_checks} checks"
        )
    if diff > 0:
        for c in range(diff):
            targets[c] += 1
    elif diff < 0:
        for c in range(-diff):
            targets[n_checks - 1 - c] -= 1
    if min(targets) < 1:
        raise DegreeDistributionError("Check degree target fell below 1")
    return sorted(targets)


class PegBuilder:
    """
    Progressive edge growth over a fixed (N, M) node set.

    Each new edge of a variable node goes to a check outside its current
    BFS neighbourhood (or, when the neighbourhood covers every check, to one
    first reached at the deepest level). Ties go to the lowest current check
    degree, then the lowest check index. Checks that already reached their
    target degree are only used when nothing else is available.
    """

    def __init__(self, n_variables: int, n_checks: int, check_targets: List[int]):
        self.n_variables = n_variables
        self.n_checks = n_checks
        self.check_targets = check_targets
        self.check_neighbours: List[List[int]] = [[] for _ in range(n_checks)]
        self.variable_neighbours: List[List[int]] = [[] for _ in range(n_variables)]
        self._check_mark = [0] * n_checks
        self._variable_mark = [0] * n_variables
        self._stamp = 0

    def _candidates(self, v: int) -> List[int]:
        own = self.variable_neighbours[v]
        if not own:
            return list(range(self.n_checks))

        self._stamp += 1
        stamp = self._stamp
        check_mark, variable_mark = self._check_mark, self._variable_mark

        variable_mark[v] = stamp
        for c in own:
            check_mark[c] = stamp
        reached = len(own)
        frontier = list(own)

        while True:
            new: List[int] = []
            for c in frontier:
                for u in self.check_neighbours[c]:
                    if variable_mark[u] == stamp:
                        continue
                    variable_mark[u] = stamp
                    for c2 in self.variable_neighbours[u]:
                        if check_mark[c2] != stamp:
                            check_mark[c2] = stamp
                            new.append(c2)
            if not new:
                return [c for c in range(self.n_checks) if check_mark[c] != stamp]
            if reached + len(new) == self.n_checks:
                return new
            reached += len(new)
            frontier = new

    def _pick(self, v: int) -> int:
        degree = [len(n) for n in self.check_neighbours]
        own = set(self.variable_neighbours[v])

        candidates = [c for c in self._candidates(v) if c not in own]
        open_candidates = [c for c in candidates if degree[c] < self.check_targets[c]]
        if not open_candidates:
            # Give up local girth before giving up the degree profile
            open_candidates = [
                c for c in range(self.n_checks) if c not in own and degree[c] < self.check_targets[c]
            ]
        if not open_candidates:
            open_candidates = candidates or [c for c in range(self.n_checks) if c not in own]
        if not open_candidates:
            raise DegreeDistributionError(
                f"Variable {v} cannot connect to another check (degree exceeds M={self.n_checks})"
            )
        return min(open_candidates, key=lambda c: (degree[c], c))

    def grow(self, v: int, degree: int) -> None:
        for _ in range(degree):
            c = self._pick(v)
            self.variable_neighbours[v].append(c)
            self.check_neighbours[c].append(v)

    def build(self) -> CodeGraph:
        empty = [c for c, n in enumerate(self.check_neighbours) if not n]
        if empty:
            raise DegreeDistributionError(f"{len(empty)} check(s) received no edges")
        return CodeGraph(
            n_variables=self.n_variables,
            n_checks=self.n_checks,
            check_adjacency=tuple(tuple(n) for n in self.check_neighbours),
        )


def peg_construct(n_variables: int, n_checks: int, dist: DegreeDistribution, seed: int) -> CodeGraph:
    """Deterministic PEG construction for the given degree distribution and seed"""
    dist.check_realizable(n_variables, n_checks)

    degrees = variable_degree_sequence(dist, n_variables)
    n_edges = sum(degrees)
    builder = PegBuilder(n_variables, n_checks, check_degree_targets(dist, n_checks, n_edges))

    # Low-degree nodes first; the seed only shuffles nodes inside a degree class
    rng = np.random.default_rng(seed)
    order: List[int] = []
    for d in sorted(set(degrees)):
        members = np.array([v for v, dv in enumerate(degrees) if dv == d], dtype=np.int64)
        order.extend(int(v) for v in rng.permutation(members))

    for v in order:
        builder.grow(v, degrees[v])

    graph = builder.build()
    logger.info(
        f"PEG construction complete: N={graph.n_variables}, M={graph.n_checks}, "
        f"E={graph.n_edges}, seed={seed}"
    )
    return graph
