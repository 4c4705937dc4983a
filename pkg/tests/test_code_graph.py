import numpy as np
import pytest

from models.code_graph import IRREGULAR_HALF_RATE, CodeGraph, DegreeDistribution, syndrome
from models.errors import DegreeDistributionError
from services.code_construction import peg_construct
from tests.conftest import HAMMING_H


def test_edges_are_row_major(hamming) -> None:
    assert hamming.n_edges == 12
    assert hamming.check_adjacency[0] == (0, 1, 3, 4)
    assert [hamming.edge_pair(e) for e in hamming.check_edges(1)] == [(1, 0), (1, 2), (1, 3), (1, 5)]
    assert hamming.edge_id(2, 6) == 11
    assert list(hamming.row_start) == [0, 4, 8, 12]


def test_variable_side_views(hamming) -> None:
    assert hamming.variable_adjacency[3] == (0, 1, 2)
    assert hamming.variable_degrees == [2, 2, 2, 3, 1, 1, 1]
    for v, edges in enumerate(hamming.variable_edges):
        assert [hamming.edge_pair(e) for e in edges] == [(c, v) for c in hamming.variable_adjacency[v]]
    assert sum(hamming.check_degrees) == sum(hamming.variable_degrees) == hamming.n_edges


def test_neighbour_lists_sorted_on_construction() -> None:
    graph = CodeGraph(n_variables=3, n_checks=1, check_adjacency=((2, 0, 1),))
    assert graph.check_adjacency == ((0, 1, 2),)


def test_dense_round_trip(hamming) -> None:
    np.testing.assert_array_equal(hamming.to_dense(), HAMMING_H)


@pytest.mark.parametrize('rows, message', [
    (((0, 0),), "duplicate"),
    (((0, 5),), "outside"),
    (((),), "no neighbours"),
])
def test_invalid_graphs_rejected(rows, message) -> None:
    with pytest.raises(ValueError, match=message):
        CodeGraph(n_variables=2, n_checks=1, check_adjacency=rows)


def test_unconnected_variable_rejected() -> None:
    with pytest.raises(ValueError, match="Variable 2 has no neighbours"):
        CodeGraph(n_variables=3, n_checks=1, check_adjacency=((0, 1),))


def test_girth(hamming, single_parity) -> None:
    assert hamming.girth() == 4
    assert single_parity.girth() is None


def test_girth_of_six_cycle() -> None:
    # v0-c0-v1-c1-v2-c2-v0
    graph = CodeGraph(n_variables=3, n_checks=3, check_adjacency=((0, 1), (1, 2), (0, 2)))
    assert graph.girth() == 6


def test_permuted_checks(hamming) -> None:
    permuted = hamming.permuted_checks([2, 0, 1])
    assert permuted.check_adjacency[0] == hamming.check_adjacency[2]
    np.testing.assert_array_equal(permuted.to_dense(), HAMMING_H[[2, 0, 1]])
    with pytest.raises(ValueError):
        hamming.permuted_checks([0, 0, 1])


def test_syndrome(hamming) -> None:
    assert not syndrome(hamming, np.zeros(7, dtype=np.uint8)).any()
    word = np.array([1, 0, 0, 0, 0, 0, 0])
    np.testing.assert_array_equal(syndrome(hamming, word), [1, 1, 0])
    codeword = np.array([1, 1, 0, 0, 0, 1, 1])
    assert not syndrome(hamming, codeword).any()
    with pytest.raises(ValueError, match="Length mismatch"):
        syndrome(hamming, np.zeros(6))


def _random_dense(rng, n_checks: int, n_variables: int) -> np.ndarray:
    h = (rng.random((n_checks, n_variables)) < 0.15).astype(np.uint8)
    # every row and column gets at least one edge
    h[np.arange(n_checks), rng.integers(n_variables, size=n_checks)] = 1
    h[rng.integers(n_checks, size=n_variables), np.arange(n_variables)] = 1
    return h


def test_syndrome_matches_dense_product(hamming) -> None:
    rng = np.random.default_rng(11)
    graphs = [
        hamming,
        peg_construct(60, 30, DegreeDistribution.regular(3, 6), seed=11),
        CodeGraph.from_dense(_random_dense(rng, 20, 64)),
    ]
    for graph in graphs:
        h = graph.to_dense().astype(np.int64)
        for _ in range(1000):
            x = rng.integers(0, 2, size=graph.n_variables)
            np.testing.assert_array_equal(syndrome(graph, x), h @ x % 2)


def test_realized_degree_distribution(hamming) -> None:
    dist = hamming.degree_distribution()
    assert dist.rho_terms == ((4, 1.0),)
    assert dist.lambda_terms == ((1, 3 / 12), (2, 6 / 12), (3, 3 / 12))


def test_regular_distribution() -> None:
    dist = DegreeDistribution.parse_regular("3,6")
    assert dist.max_variable_degree == 3
    assert dist.max_check_degree == 6
    assert dist.edges_for(1024) == pytest.approx(3072)
    assert dist.design_rate() == pytest.approx(0.5)
    assert dist.variable_degree_counts(1024) == {3: 1024}


def test_irregular_distribution() -> None:
    dist = IRREGULAR_HALF_RATE
    assert dist.max_variable_degree == 12
    assert dist.design_rate() == pytest.approx(0.5, abs=0.01)
    counts = dist.variable_degree_counts(1000)
    assert sum(counts.values()) == 1000
    assert set(counts) == {2, 3, 4, 12}


def test_parse_distribution_strings() -> None:
    dist = DegreeDistribution.parse("2:0.5, 3:0.5", "6:1")
    assert dist.lambda_terms == ((2, 0.5), (3, 0.5))
    assert dist.rho_terms == ((6, 1.0),)


@pytest.mark.parametrize('lam, rho', [
    ("2:0.5,3:0.4", "6:1"),
    ("2:0.5;3:0.5", "6:1"),
    ("0:1", "6:1"),
    ("2:0.5,2:0.5", "6:1"),
    ("", "6:1"),
])
def test_bad_distributions(lam, rho) -> None:
    with pytest.raises(DegreeDistributionError):
        DegreeDistribution.parse(lam, rho)


def test_bad_regular_string() -> None:
    with pytest.raises(DegreeDistributionError, match="dv,dc"):
        DegreeDistribution.parse_regular("3x6")


def test_realizability() -> None:
    DegreeDistribution.regular(3, 6).check_realizable(1024, 512)
    with pytest.raises(DegreeDistributionError, match="Unrealizable"):
        DegreeDistribution.regular(3, 6).check_realizable(1024, 300)
    with pytest.raises(DegreeDistributionError, match="exceeds the number of checks"):
        DegreeDistribution.regular(4, 8).check_realizable(6, 3)
