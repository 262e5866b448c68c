# test_cli.py

import json
import logging

import pytest

from braid_core import parse_braid
from catalog import Catalog, CatalogEntry
from cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main


@pytest.fixture
def run(tmp_path, monkeypatch, capsys):
    """Run the CLI inside a temporary home and return (exit code, stdout)."""
    monkeypatch.setenv('MINBRAID_PROGRESS', '0')
    monkeypatch.delenv('MINBRAID_JOBS', raising=False)
    monkeypatch.delenv('MINBRAID_BUDGET', raising=False)

    def _run(*argv):
        code = main([*argv, '--home', str(tmp_path)])
        return code, capsys.readouterr().out
    return _run


def test_invariants_text(run):
    code, out = run('invariants', 'AAA')
    assert code == EXIT_OK
    assert "ap10: 91\n" in out
    assert "components: 1\n" in out
    assert "digital: 1\n" in out


def test_invariants_json(run):
    code, out = run('invariants', 'AbAb', '--format', 'json')
    assert code == EXIT_OK
    assert json.loads(out)[0]['ap10'] == 71


def test_bad_braid_is_usage_error(run, tmp_path):
    code, _ = run('invariants', 'A?b')
    assert code == EXIT_USAGE
    manifest = json.loads((tmp_path / 'runs' / 'all_runs.json').read_text())
    [record] = manifest.values()
    assert record['summary']['position'] == 1


def test_missing_braid(run):
    assert run('unknot')[0] == EXIT_USAGE


def test_unknot(run):
    code, out = run('unknot', 'AAA')
    assert code == EXIT_OK
    assert "unknotting: 1" in out


def test_unknot_budget_exhausted(run):
    code, out = run('unknot', 'AAAAAAA', '--budget', '2')
    assert code == EXIT_BUDGET
    assert ">= 3" in out


def test_rrp(run):
    code, out = run('rrp', 'AAbAbbAb')
    assert code == EXIT_OK
    assert "witness: AbbAbAAb" in out


def test_trees_json(run):
    code, out = run('trees', '--max-vertices', '7', '--format', 'json')
    assert code == EXIT_OK
    rows = json.loads(out)
    assert rows[-1]['total'] == 11
    assert rows[-1]['alternating'] == 10


def test_help_and_usage(run):
    assert run('--help')[0] == EXIT_OK
    assert main([]) == EXIT_USAGE
    assert run('enumerate', '--jobs', '0')[0] == EXIT_USAGE


def test_verify(run):
    code, out = run('verify', '--max-crossings', '5')
    assert code == EXIT_OK
    assert out.startswith("all rows match")


def test_enumerate_is_independent_of_jobs(run):
    code, serial = run('enumerate', '--max-crossings', '5', '--format', 'csv')
    assert code == EXIT_OK
    _, parallel = run('enumerate', '--max-crossings', '5', '--format', 'csv', '--jobs', '2')
    assert serial == parallel
    assert serial.splitlines()[0].startswith("tag,components")


def test_runs_are_recorded(run, tmp_path):
    run('census', '--strands', '3', '--crossings', '4')
    manifest = json.loads((tmp_path / 'runs' / 'all_runs.json').read_text())
    assert len(manifest) == 1
    [record] = manifest.values()
    assert record['config']['command'] == 'census'
    assert record['summary']['exit_code'] == 0


def test_census_json(run):
    code, out = run('census', '--strands', '3', '--crossings', '4', '--format', 'json')
    assert code == EXIT_OK
    data = json.loads(out)
    assert data['after_commutation'] == 2
    assert data['by_components'] == {'1': 1, '3': 1}


def test_column_json(run):
    code, out = run('column', 'AA', '--depth', '6', '--format', 'json')
    assert code == EXIT_OK
    report = json.loads(out)
    assert report['type'] == "2a+0o"
    assert report['hx_period'] == 6
    assert len(report['cells']) == 7
    assert report['stars'] == []


def test_column_reports_y_star_from_catalog(run, mocker):
    catalog = Catalog(3, 2)
    catalog.add(CatalogEntry.from_word(parse_braid("AA")))
    enumerate_mock = mocker.patch('cli.enumerate_catalog', return_value=catalog)
    code, out = run('column', 'AA', '--depth', '1', '--format', 'json')
    assert code == EXIT_OK
    report = json.loads(out)
    assert enumerate_mock.call_args.args[:2] == (3, 2)
    assert report['stars'] == [['y_star', 1]]
    assert [cell['y_star'] for cell in report['cells']] == [False, True]


def test_log_handlers_are_closed_after_run(run, tmp_path):
    code, _ = run('invariants', 'AAA')
    assert code == EXIT_OK
    for handler in logging.getLogger().handlers:
        assert str(tmp_path) not in getattr(handler, 'baseFilename', '')


def test_export_writes_file(run, tmp_path):
    code, out = run('export', '--max-crossings', '4', '--format', 'csv')
    assert code == EXIT_OK
    written = (tmp_path / 'exports' / 'catalog_4.csv').read_text()
    assert written == out
    assert "3:1-01,1,2,3,AAA,91,0,1,1" in written
