import json
from math import factorial
import os

import pytest

from tporder import cli, config
from tporder.verify import PROPERTIES


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_unrank_text(capsys):
    assert run(capsys, 'unrank', '319', '--n', '6') == (0, '2 1 2 2 0 0\n3 2 5 6 1 4\n', '')


def test_unrank_default_width(capsys):
    code, out, _ = run(capsys, 'unrank', '4')
    assert code == 0
    assert out == '2 0 0\n3 1 2\n'


def test_unrank_trace(capsys):
    code, out, _ = run(capsys, 'unrank', '4', '--n', '4', '--trace')
    assert code == 0
    lines = out.splitlines()
    assert lines[:5] == ['0 2 0 0', '1 4 2 3', '0_3 2_2 0_1 0_0', 'k=4 x=0 d=0 f=0', 'k=3 x=2 d=0 f=2']
    assert len(lines) == 7


def test_unrank_json(capsys):
    code, out, _ = run(capsys, 'unrank', '319', '--n', '6', '--json')
    assert code == 0
    assert json.loads(out) == {
        's': '319', 'n': 6, 'digits': [2, 1, 2, 2, 0, 0], 'perm': [3, 2, 5, 6, 1, 4], 'delta': None,
    }


def test_unrank_huge_seed(capsys):
    s = factorial(60) - 1
    code, out, _ = run(capsys, 'unrank', str(s), '--json')
    assert code == 0
    record = json.loads(out)
    assert record['s'] == str(s)
    assert record['n'] == 60


@pytest.mark.parametrize(
    'argv',
    (
        ('unrank', '319', '--n', '5'),
        ('unrank', 'abc'),
        ('unrank', '-4'),
        ('rank', '0', '3', '0', '0'),
        ('encode', '1', '1', '2'),
        ('stream', '5', '3'),
        ('verify', '--n', '9', '--property', 'bijection'),
        ('frobnicate',),
    ),
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ''
    assert err


def test_rank_decode_encode(capsys):
    assert run(capsys, 'rank', '0', '2', '0', '0')[:2] == (0, '4\n')
    assert run(capsys, 'rank', '2,1,2,2,0,0')[:2] == (0, '319\n')
    assert run(capsys, 'rank', '--perm', '1', '4', '2', '3')[:2] == (0, '4\n')
    assert run(capsys, 'decode', '2,1,2,2,0,0')[:2] == (0, '3 2 5 6 1 4\n')
    assert run(capsys, 'encode', '3', '2', '5', '1', '6', '4')[:2] == (0, '2 1 2 0 1 0\n')


def test_dist(capsys):
    assert run(capsys, 'dist', '4', '5')[:2] == (0, '1\n')
    assert run(capsys, 'dist', '319', '0')[:2] == (0, '3\n')
    assert run(capsys, 'dist', '319', '5', '--swaps')[:2] == (0, '2\n(1,3) (1,5)\n')
    assert run(capsys, 'dist', '7', '7', '--swaps')[:2] == (0, '0\n-\n')


def test_stream_text(capsys):
    code, out, _ = run(capsys, 'stream', '319', '323', '--n', '6')
    assert code == 0
    assert out.splitlines() == [
        '319\t2 1 2 2 0 0\t3 2 5 6 1 4\t-',
        '320\t2 1 2 0 1 0\t3 2 5 1 6 4\t(4,5)',
        '321\t2 1 2 0 0 0\t3 2 5 1 4 6\t(5,6)',
        '322\t2 1 2 1 0 0\t3 2 5 4 1 6\t(4,5)',
    ]


def test_stream_json_records_rank_back(capsys):
    code, out, _ = run(capsys, 'stream', '319', '323', '--n', '6', '--json')
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert [r['delta'] for r in records] == [None, [4, 5], [5, 6], [4, 5]]
    for record in records:
        assert run(capsys, 'rank', *map(str, record['digits']))[1] == record['s'] + '\n'


def test_stream_is_byte_stable_and_chunkable(capsys):
    first = run(capsys, 'stream', '0', '120', '--n', '5')
    second = run(capsys, 'stream', '0', '120', '--n', '5')
    chunked = run(capsys, 'stream', '0', '120', '--n', '5', '--chunks', '3', '--workers', '1')
    assert first == second == chunked
    assert len(first[1].splitlines()) == 120


def test_verify_all_pass(capsys):
    code, out, _ = run(capsys, 'verify', '--n', '5', '--all')
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == len(PROPERTIES)
    assert all(line.startswith('PASS ') for line in lines)


def test_verify_json(capsys, monkeypatch):
    monkeypatch.delenv('TPORDER_RNG_SEED', raising=False)
    code, out, _ = run(capsys, 'verify', '--n', '10', '--property', 'adjacency', '--property', 'step2',
                       '--sample', '200', '--rng-seed', '99', '--json', '--timing')
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert [r['property'] for r in records] == ['adjacency', 'step2']
    for record in records:
        assert record['passed'] is True
        assert record['exhaustive'] is False
        assert record['rng_seed'] == 99
        assert record['seeds_checked'] == 200
        assert 'elapsed' in record


def test_verify_injected_fault_fails(capsys):
    code, out, _ = run(capsys, 'verify', '--n', '5', '--property', 'adjacency', '--inject-fault', '17')
    assert code == 1
    lines = out.splitlines()
    assert lines[0].startswith('FAIL adjacency n=5')
    assert '  seeds=(16,17) observed=' in out
    assert 'expected == 1' in out


def test_bench(capsys):
    code, out, _ = run(capsys, 'bench', '--n', '5', '--count', '100', '--stream', '--workers', '1')
    assert code == 0
    assert out.startswith('trace n=5 steps=5\n')
    assert 'unrank n=5 count=100 ' in out
    assert 'stream n=5 steps=120 deltas=119 ' in out


def test_verify_rng_seed_does_not_leak(capsys, monkeypatch):
    monkeypatch.delenv('TPORDER_RNG_SEED', raising=False)
    argv = ('verify', '--n', '10', '--property', 'adjacency', '--sample', '50', '--json')
    code, out, _ = run(capsys, *argv, '--rng-seed', '99')
    assert code == 0
    assert json.loads(out)['rng_seed'] == 99
    assert 'TPORDER_RNG_SEED' not in os.environ

    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)['rng_seed'] == int(config['verify']['default_rng_seed'])
