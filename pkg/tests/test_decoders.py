import numpy as np
import pytest

from decoders.common import is_codeword, prepare_llr
from decoders.dispatcher import DecoderDispatcher, decode
from decoders.kernels import LLR_MAX
from decoders.residual import ResidualEngine, decode_rbp, decode_svnf_rbp
from models.channel_config import ChannelConfig
from models.decoding import DecodeResult, DecoderConfig, Schedule, StopReason, StopWindow
from models.errors import InvariantViolation, SpecValidationError
from models.op_counters import OpCounters, UpdateKind
from services.channel import frame_llr

ALL_SCHEDULES = list(Schedule)


def _noisy(graph, eb_n0_db: float, frame: int, seed: int = 17) -> np.ndarray:
    return frame_llr(graph.n_variables, ChannelConfig(eb_n0_db, graph.design_rate, seed), frame)


@pytest.mark.parametrize('schedule', ALL_SCHEDULES)
def test_noiseless_frame_decodes_immediately(small_peg, schedule) -> None:
    llr = np.full(small_peg.n_variables, LLR_MAX)
    result = decode(small_peg, llr, DecoderConfig(schedule=schedule))
    assert result.success
    assert result.bit_errors == 0
    assert result.schedule == schedule
    if schedule in (Schedule.CBP, Schedule.CBP_MINSUM):
        assert result.stop_reason == StopReason.BELIEF_CRITERION
        assert result.iterations_used <= 1 + small_peg.n_variables / small_peg.n_checks
    else:
        assert result.stop_reason == StopReason.SYNDROME_ZERO
        assert result.iterations_used == 1.0


@pytest.mark.parametrize('schedule', ALL_SCHEDULES)
def test_high_snr_frames_decode(small_peg, schedule) -> None:
    cfg = DecoderConfig(schedule=schedule)
    for frame in range(5):
        result = decode(small_peg, _noisy(small_peg, 7.0, frame), cfg)
        assert result.success
        assert result.bit_errors == 0


@pytest.mark.parametrize('schedule', ALL_SCHEDULES)
def test_success_is_syndrome_verified(small_peg, schedule) -> None:
    cfg = DecoderConfig(schedule=schedule, max_iterations=20)
    for frame in range(10):
        result = decode(small_peg, _noisy(small_peg, 1.0, frame), cfg)
        assert result.success == is_codeword(small_peg, result.hard_bits)
        if not result.success:
            assert result.stop_reason == StopReason.MAX_ITER


def test_paired_decode_shares_llrs(small_peg) -> None:
    llr = _noisy(small_peg, 2.0, 0)
    before = llr.copy()
    results = DecoderDispatcher.decode_paired(small_peg, llr, ALL_SCHEDULES, DecoderConfig())
    assert list(results) == ALL_SCHEDULES
    assert all(r.schedule == s for s, r in results.items())
    np.testing.assert_array_equal(llr, before)


def test_dispatcher_rejects_unsound_success(single_parity) -> None:
    fake = DecodeResult(
        success=True,
        hard_bits=np.array([1, 0], dtype=np.uint8),
        iterations_used=1.0,
        counters=OpCounters(),
        stop_reason=StopReason.SYNDROME_ZERO,
        schedule=Schedule.LBP,
    )
    with pytest.raises(InvariantViolation):
        DecoderDispatcher.verify(single_parity, fake)


@pytest.mark.parametrize('schedule', [Schedule.FBP, Schedule.LBP])
def test_one_iteration_update_counts(small_peg, schedule) -> None:
    E = small_peg.n_edges
    result = decode(small_peg, _noisy(small_peg, 0.0, 1), DecoderConfig(schedule=schedule, max_iterations=1))
    ops = result.counters
    assert ops.updates(UpdateKind.V2C) == E
    assert ops.updates(UpdateKind.C2V) == E
    assert ops.sums == 2 * E
    assert ops.products == 2 * E
    select = small_peg.max_check_degree
    if schedule == Schedule.FBP:
        select = max(select, small_peg.max_variable_degree)
    assert ops.selections == select * E


def test_flooding_selection_cost_uses_larger_degree(hamming) -> None:
    result = decode(hamming, np.full(7, -1.0), DecoderConfig(schedule=Schedule.FBP, max_iterations=1))
    assert result.counters.selections == max(3, 4) * hamming.n_edges


def test_counting_can_be_disabled(small_peg) -> None:
    cfg = DecoderConfig(schedule=Schedule.RBP, count_ops=False, max_iterations=2)
    result = decode(small_peg, _noisy(small_peg, 1.0, 0), cfg)
    assert result.counters.sums == 0
    assert result.counters.products == 0


def test_prepare_llr_validation(hamming) -> None:
    with pytest.raises(ValueError, match="Length mismatch"):
        prepare_llr(hamming, np.zeros(6))
    with pytest.raises(ValueError, match="NaN"):
        prepare_llr(hamming, [0.0, 1.0, float('nan'), 0.0, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(prepare_llr(hamming, [99.0] * 7), [LLR_MAX] * 7)


def test_rbp_stalls_without_residual(small_peg) -> None:
    cfg = DecoderConfig(schedule=Schedule.RBP)
    result = decode_rbp(small_peg, np.zeros(small_peg.n_variables), cfg)
    assert result.commits == 0
    assert not result.success
    assert result.stop_reason == StopReason.MAX_ITER
    assert result.iterations_used == cfg.max_iterations


def test_rbp_stall_charged_full_budget(hamming) -> None:
    llr = np.ones(hamming.n_variables)
    llr[0] = -1.0
    result = decode_rbp(hamming, llr, DecoderConfig(schedule=Schedule.RBP, max_iterations=200))
    assert not result.success
    assert result.stop_reason == StopReason.MAX_ITER
    assert result.commits < 200 * hamming.n_edges
    assert result.iterations_used == 200.0


@pytest.mark.parametrize('schedule', [Schedule.RBP, Schedule.SVNF_RBP])
def test_failures_report_iteration_budget(hamming, schedule) -> None:
    llr = np.ones(hamming.n_variables)
    llr[0] = -1.0
    cfg = DecoderConfig(schedule=schedule, max_iterations=200)
    result = decode(hamming, llr, cfg)
    if result.success:
        assert result.iterations_used == pytest.approx(result.commits / hamming.n_edges)
    else:
        assert result.stop_reason == StopReason.MAX_ITER
        assert result.iterations_used == 200.0


def test_rbp_commit_costs(small_peg) -> None:
    E = small_peg.n_edges
    result = decode_rbp(small_peg, _noisy(small_peg, 1.5, 2), DecoderConfig(schedule=Schedule.RBP, max_iterations=3))
    ops = result.counters
    assert ops.updates(UpdateKind.C2V) == result.commits
    assert ops.updates(UpdateKind.COMPARISON) == result.commits
    assert ops.comparisons == result.commits * (E - 1)
    # every commit refreshes dv-1 V2C messages in a (3,6) graph
    assert ops.updates(UpdateKind.V2C) == 2 * result.commits
    dc = small_peg.check_degrees
    residual_updates = ops.updates(UpdateKind.RESIDUAL)
    assert 2 * (min(dc) - 1) * result.commits <= residual_updates <= 2 * (max(dc) - 1) * result.commits
    expected = result.commits / E if result.success else 3.0
    assert result.iterations_used == pytest.approx(expected)
    assert ops.executed_comparisons > 0


def test_residual_engine_commit_moves_posterior(hamming) -> None:
    llr = np.array([2.0, -1.0, 0.5, 3.0, 1.0, -2.0, 0.5])
    engine = ResidualEngine(hamming, llr, count_ops=True)
    e = max(range(hamming.n_edges), key=lambda k: engine.residual[k])
    _, v = hamming.edge_pair(e)
    expected = llr[v] + engine.r_pre[e]
    touched = engine.commit(e)
    assert engine.lam[v] == pytest.approx(expected)
    assert engine.residual[e] == 0.0
    assert e in touched


def test_svnf_visits_every_variable(small_peg) -> None:
    N = small_peg.n_variables
    cfg = DecoderConfig(schedule=Schedule.SVNF_RBP, max_iterations=1)
    result = decode_svnf_rbp(small_peg, _noisy(small_peg, 0.0, 3), cfg)
    assert result.commits >= N or result.success
    expected = result.commits / small_peg.n_edges if result.success else float(cfg.max_iterations)
    assert result.iterations_used == pytest.approx(expected)


@pytest.mark.parametrize('name, expected', [
    ('CBP', Schedule.CBP),
    ('svnf_rbp', Schedule.SVNF_RBP),
    (' cbp-minsum ', Schedule.CBP_MINSUM),
])
def test_schedule_parse(name, expected) -> None:
    assert Schedule.parse(name) == expected


def test_unknown_schedule_lists_valid_names() -> None:
    with pytest.raises(SpecValidationError, match="Valid schedules: fbp, lbp, rbp, svnf-rbp, cbp, cbp-minsum"):
        Schedule.parse('turbo')


def test_decoder_config_validation() -> None:
    with pytest.raises(SpecValidationError):
        DecoderConfig(max_iterations=0)
    with pytest.raises(SpecValidationError):
        DecoderConfig(alpha=1.5)
    with pytest.raises(SpecValidationError):
        StopWindow.parse('k')


def test_result_dict(hamming) -> None:
    result = decode(hamming, np.full(7, 10.0), DecoderConfig(schedule=Schedule.LBP))
    data = result.to_dict()
    assert data['hard_bits'] == '0000000'
    assert data['schedule'] == 'lbp'
    assert data['stop_reason'] == 'syndrome_zero'
    assert data['counters']['updates_by_kind']['v2c'] == hamming.n_edges


def test_flooding_ignores_check_order(small_peg) -> None:
    order = list(reversed(range(small_peg.n_checks)))
    permuted = small_peg.permuted_checks(order)
    cfg = DecoderConfig(schedule=Schedule.FBP, max_iterations=50)
    for eb_n0_db, frame in [(1.0, 0), (1.5, 1), (2.0, 2), (3.0, 3)]:
        llr = _noisy(small_peg, eb_n0_db, frame)
        original = decode(small_peg, llr, cfg)
        relabelled = decode(permuted, llr, cfg)
        np.testing.assert_array_equal(original.hard_bits, relabelled.hard_bits)
        assert original.iterations_used == relabelled.iterations_used
        assert original.success == relabelled.success
