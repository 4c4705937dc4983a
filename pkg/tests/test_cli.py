import json

import pytest

import cli
from services.alist_io import read_alist_file
from services.report_writer import CSV_COLUMNS, parse_csv


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*argv: str) -> int:
        return cli.main(['--log-file', str(tmp_path / 'logs' / 'cli.log'), *argv])

    return _run


def test_construct_writes_alist(run, tmp_path, capsys) -> None:
    out = tmp_path / 'code.alist'
    assert run('construct', '--n', '24', '--m', '12', '--regular', '3,6', '--seed', '1', '--out', str(out)) == 0
    graph = read_alist_file(out)
    assert (graph.n_variables, graph.n_checks, graph.n_edges) == (24, 12, 72)
    assert capsys.readouterr().out.startswith("N=24 M=12 E=72 girth=")


def test_construct_requires_output(run) -> None:
    assert run('construct', '--n', '24', '--m', '12', '--regular', '3,6', '--seed', '1') == cli.EXIT_USAGE


def test_construct_rejects_mixed_distribution_flags(run, tmp_path) -> None:
    code = run('construct', '--n', '24', '--m', '12', '--regular', '3,6', '--lambda', '3:1.0',
               '--seed', '1', '--out', str(tmp_path / 'x.alist'))
    assert code == cli.EXIT_USAGE


def test_construct_unrealizable_is_an_input_error(run, tmp_path) -> None:
    code = run('construct', '--n', '10', '--m', '3', '--regular', '3,6', '--seed', '1',
               '--out', str(tmp_path / 'x.alist'))
    assert code == cli.EXIT_IO


def test_decode_from_llr_file(run, tmp_path, hamming_alist_path, capsys) -> None:
    llr = tmp_path / 'frame.llr'
    llr.write_text("\n".join(["30.0"] * 7) + "\n\n")
    assert run('decode', '--code', str(hamming_alist_path), '--schedule', 'lbp', '--llr', str(llr)) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary['success'] is True
    assert summary['schedule'] == 'lbp'
    assert 'hard_bits' not in summary


def test_decode_short_llr_file(run, tmp_path, hamming_alist_path, capsys) -> None:
    llr = tmp_path / 'frame.llr'
    llr.write_text("\n".join(["1.0"] * 6) + "\n")
    assert run('decode', '--code', str(hamming_alist_path), '--llr', str(llr)) == cli.EXIT_IO
    assert "expected 7 values, got 6" in capsys.readouterr().err


def test_decode_bad_llr_token(run, tmp_path, hamming_alist_path, capsys) -> None:
    llr = tmp_path / 'frame.llr'
    llr.write_text("1.0\nabc\n")
    assert run('decode', '--code', str(hamming_alist_path), '--llr', str(llr)) == cli.EXIT_IO
    assert "line 2" in capsys.readouterr().err


def test_decode_missing_code_file(run, tmp_path) -> None:
    assert run('decode', '--code', str(tmp_path / 'nope.alist'), '--ebn0', '2', '--seed', '1') == cli.EXIT_IO


def test_decode_needs_a_frame_source(run, hamming_alist_path) -> None:
    assert run('decode', '--code', str(hamming_alist_path), '--ebn0', '2.0') == cli.EXIT_USAGE


def test_unknown_schedule_lists_valid_names(run, hamming_alist_path, capsys) -> None:
    code = run('decode', '--code', str(hamming_alist_path), '--schedule', 'turbo', '--ebn0', '2', '--seed', '1')
    assert code == cli.EXIT_USAGE
    assert "fbp, lbp, rbp, svnf-rbp, cbp, cbp-minsum" in capsys.readouterr().err


def test_decode_trace(run, tmp_path, hamming_alist_path) -> None:
    trace = tmp_path / 'trace.csv'
    code = run('decode', '--code', str(hamming_alist_path), '--schedule', 'cbp', '--ebn0', '1.0',
               '--seed', '5', '--frame', '3', '--max-iterations', '4', '--trace', str(trace))
    assert code == 0
    lines = trace.read_text().splitlines()
    assert lines[0] == "sweep,check,omega,satisfied,consec_ok"
    rows = lines[1:]
    assert rows
    checks = [int(line.split(',')[1]) for line in rows]
    # checks are visited in order 0, 1, 2, 0, ...
    assert checks == [i % 3 for i in range(len(rows))]


def test_trace_only_for_check_belief_schedules(run, tmp_path, hamming_alist_path) -> None:
    code = run('decode', '--code', str(hamming_alist_path), '--schedule', 'lbp', '--ebn0', '1.0',
               '--seed', '5', '--trace', str(tmp_path / 'trace.csv'))
    assert code == cli.EXIT_USAGE


def test_sweep_csv_is_deterministic(run, tmp_path, hamming_alist_path) -> None:
    args = ['sweep', '--code', str(hamming_alist_path), '--schedules', 'cbp,lbp,fbp', '--ebn0', '1.0,3.0',
            '--seed', '11', '--min-errors', '3', '--max-frames', '40', '--threads', '1']
    assert run(*args, '--csv', str(tmp_path / 'a.csv'), '--json', str(tmp_path / 'a.json')) == 0
    assert run(*args, '--csv', str(tmp_path / 'b.csv')) == 0

    first = (tmp_path / 'a.csv').read_text()
    assert first == (tmp_path / 'b.csv').read_text()
    assert first.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = parse_csv(first)
    assert [r['schedule'] for r in rows] == ['cbp', 'cbp', 'lbp', 'lbp', 'fbp', 'fbp']
    assert json.loads((tmp_path / 'a.json').read_text())['snr_convention'] == 'Eb/N0'


def test_sweep_from_spec_bundle(run, tmp_path, hamming_alist_path) -> None:
    bundle = tmp_path / 'spec.json'
    bundle.write_text(json.dumps({
        'peg': {'n': 24, 'm': 12, 'regular': '3,6', 'seed': 2},
        'schedules': ['rbp'],
        'eb_n0_points': [2.0],
        'min_frame_errors': 1,
        'max_frames': 5,
        'seed': 3,
        'threads': 1,
    }))
    out = tmp_path / 'out.csv'
    # --code replaces the bundle's PEG source
    assert run('sweep', '--spec', str(bundle), '--code', str(hamming_alist_path), '--csv', str(out)) == 0
    assert parse_csv(out.read_text())[0]['schedule'] == 'rbp'


def test_sweep_invalid_bundle(run, tmp_path) -> None:
    bundle = tmp_path / 'spec.json'
    bundle.write_text("{not json")
    assert run('sweep', '--spec', str(bundle)) == cli.EXIT_USAGE
    bundle.write_text(json.dumps({'schedules': 'cbp', 'eb_n0_points': [1.0]}))
    assert run('sweep', '--spec', str(bundle)) == cli.EXIT_USAGE


def test_complexity_report_regular(run, capsys) -> None:
    assert run('complexity-report', '--regular', '3,6', '--n', '1024', '--schedules', 'rbp,cbp') == 0
    out = capsys.readouterr().out
    assert "N=1024 M=512 E=3072" in out
    assert "sums=1E products=13.75E" in out


def test_complexity_report_json_with_memory(run, tmp_path, hamming_alist_path) -> None:
    out = tmp_path / 'report.json'
    code = run('complexity-report', '--code', str(hamming_alist_path), '--schedules', 'lbp,cbp',
               '--parallelism', '4', '--json', str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report['n_edges'] == 12
    assert set(report['register_saving_vs']) == {'lbp'}
    cbp = next(entry for entry in report['schedules'] if entry['schedule'] == 'cbp')
    assert cbp['memory']['bits']['check_belief'] > 0


def test_complexity_report_prints_memory_bits(run, capsys, hamming_alist_path) -> None:
    assert run('complexity-report', '--code', str(hamming_alist_path), '--schedules', 'cbp', '--parallelism', '4') == 0
    out = capsys.readouterr().out
    assert 'general=' in out
    assert 'check_belief=' in out


def test_complexity_report_needs_size(run) -> None:
    assert run('complexity-report', '--regular', '3,6') == cli.EXIT_USAGE


def test_bad_log_level(run, hamming_alist_path) -> None:
    assert run('--log-level', 'LOUD', 'complexity-report', '--code', str(hamming_alist_path)) == cli.EXIT_USAGE


def test_read_llr_file_rejects_nan(tmp_path) -> None:
    path = tmp_path / 'nan.llr'
    path.write_text("nan\n1.0\n")
    with pytest.raises(cli.LlrFileError, match="NaN"):
        cli.read_llr_file(path, 2)
