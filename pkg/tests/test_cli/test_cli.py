import io
import json

import pytest

from qtree_hopf.qtree_hopf import main

UNIT_JSON = [{'sector': 'plain', 'trees': [], 'epow': 0, 'coeff': [[0, 1, 1]]}]

text_data = [
    (['normalize', '[[]]*[]'], '(q^-1)*[]*[[]]'),
    (['normalize', '[]-[]'], '0'),
    (['coproduct', '[[]]'], 'e&[[]]+[]&[]+[[]]&e'),
    (['coproduct', '[]*[]'], 'e^2&[]*[]+(2*q)*[]*e&[]*e+[]*[]&e^2'),
    (['antipode', '--tree', '[[]]'], '(q^-1)*[]*[]*e^-1-[[]]'),
    (['sq', '[[]]'], '(q)*hat([]*[]*e^-1)-hat([[]])'),
    (['sq', '--no-twist', '[[]]'], '(q^-1)*hat([]*[]*e^-1)-hat([[]])'),
    (['sq', 'hat([])'], '(-1)*[]'),
    (['defect', '--tree', '[[]]'], '0'),
    (['defect', '--tree', '[[][]]'], '(2)*hat([]*[]*[]*e^-1)+(-2*q^-2)*hat([]*[]*[])'),
    (['cuts', '--tree', '[]'], '[] has no admissible cuts'),
    (['enumerate', '--n', '3'], '[[[]]]\n[[][]]'),
    (['wordx', '--n', '2', '--m', '5'], 'q^3'),
    (['manin', '--n', '1', '--m', '2'], 'delta_1 delta_2 = q^1 delta_2 delta_1: holds on columns 0..12 of 16'),
]

usage_errors = [
    [],
    ['frobnicate'],
    ['normalize'],
    ['normalize', '[]*x'],
    ['antipode', '--tree', '[[]'],
    ['enumerate', '--n', '0'],
    ['check', 'counit', '--vmax', '0'],
    ['probe', 'assoc', '--vmax', '5'],
    ['qint', '--kind', 'upper', '--f', '1/(x+c)', '--q', '1.5', '--K', '10'],
    ['qint', '--kind', 'lower', '--f', '1/(x-1)', '--q', '0.5', '--K', '10'],
    ['manin', '--n', '8', '--m', '8'],
    ['wordx', '--n', '0', '--m', '1'],
]

check_data = [
    (['check', 'lemma1', '--vmax', '3'], 0),
    (['check', 'lemma1', '--vmax', '3', '--ladders-only'], 0),
    (['check', 'coassoc', '--vmax', '3'], 0),
    (['check', 'counit', '--vmax', '2'], 0),
    (['check', 'left-antipode', '--vmax', '3'], 0),
    (['check', 'left-antipode', '--vmax', '3', '--no-twist'], 1),
    (['check', 'defect-crosscheck', '--vmax', '3'], 0),
]

@pytest.mark.parametrize("argv,expected", text_data)
def test_text_output(argv, expected, capsys):
    assert main(argv) == 0
    assert capsys.readouterr().out == expected + '\n'

@pytest.mark.parametrize("argv", usage_errors)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err

def test_help(capsys):
    assert main(['--help']) == 0
    assert 'coproduct' in capsys.readouterr().out

def test_parse_error_shows_caret(capsys):
    assert main(['normalize', '[]*x']) == 2
    err = capsys.readouterr().err.splitlines()
    assert err == ["error: Expected a tree or e, found 'x'", '[]*x', '   ^']

@pytest.mark.parametrize("argv", [['--json', 'normalize', '1'], ['normalize', '1', '--json']])
def test_json_flag_placement(argv, capsys):
    assert main(argv) == 0
    assert json.loads(capsys.readouterr().out) == UNIT_JSON

def test_stdin_expression(monkeypatch, capsys):
    monkeypatch.setattr('sys.stdin', io.StringIO('[]*e\n'))
    assert main(['normalize', '-']) == 0
    assert capsys.readouterr().out == '[]*e\n'

def test_coproduct_json(capsys):
    assert main(['coproduct', '[]', '--json']) == 0
    entries = json.loads(capsys.readouterr().out)
    factors = sorted([[f['trees'] for f in entry['factors']] for entry in entries])
    assert factors == [[[], ['[]']], [['[]'], []]]
    assert all(entry['coeff'] == [[0, 1, 1]] for entry in entries)

def test_cuts(capsys):
    assert main(['cuts', '--tree', '[[]]', '--json']) == 0
    assert json.loads(capsys.readouterr().out) == [{'edges': [1], 'pruned': ['[]'], 'trunk': '[]'}]
    assert main(['cuts', '--tree', '[[][]]']) == 0
    out = capsys.readouterr().out
    assert 'Pruned' in out
    assert '[]*[]' in out

def test_enumerate_json(capsys):
    assert main(['enumerate', '--n', '4', '--json']) == 0
    assert len(json.loads(capsys.readouterr().out)) == 4

@pytest.mark.parametrize("argv,status", check_data)
def test_check_status(argv, status, capsys):
    assert main(argv) == status
    out = capsys.readouterr().out
    assert 'Subject' in out
    assert 'asserted subjects vanished' in out

def test_check_json(capsys):
    assert main(['check', 'left-antipode', '--vmax', '2', '--json']) == 0
    entries = json.loads(capsys.readouterr().out)
    assert [entry['subject'] for entry in entries] == ['[]', '[[]]', 'e']
    assert [entry['asserted'] for entry in entries] == [True, True, False]
    assert entries[2]['residual'] == '(-1)*1+hat(e^2)'
    assert not entries[2]['vanished']

def test_check_reports_unasserted_failures(capsys):
    assert main(['check', 'lemma1', '--vmax', '3']) == 0
    assert 'unasserted subjects leave a nonzero residual' in capsys.readouterr().out

def test_check_colour(capsys):
    assert main(['check', 'counit', '--vmax', '1', '--colour']) == 0
    assert '\x1b[32m' in capsys.readouterr().out
    assert main(['check', 'counit', '--vmax', '1']) == 0
    assert '\x1b[' not in capsys.readouterr().out

def test_probe_assoc_is_deterministic(capsys):
    argv = ['probe', 'assoc', '--vmax', '2', '--samples', '50', '--seed', '3', '--json']
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    report = json.loads(first)
    assert report['samples'] == 50
    counted = sum(sum(counter.values()) for counter in report['discrepancies'].values())
    assert report['associative'] + report['mismatched'] + counted == 50

def test_probe_qminus1(capsys):
    assert main(['probe', 'qminus1', '--vmax', '1', '--json']) == 0
    assert json.loads(capsys.readouterr().out) == [{
        'tree': '[]',
        'left_at_minus1': False,
        'right_at_minus1': False,
        'left_classical': True,
        'right_classical': True,
    }]
    assert main(['probe', 'qminus1', '--vmax', '2']) == 0
    assert 'Left q=-1' in capsys.readouterr().out

def test_qint(capsys):
    q = 0.9
    assert main(['qint', '--kind', 'upper', '--f', '1/(x+c)', '--q', str(q), '--K', '300', '--json']) == 0
    record = json.loads(capsys.readouterr().out)
    assert record['slope'] == pytest.approx(1 / q - 1, rel=1e-6)
    assert set(record) == {'value', 'slope', 'intercept', 'residual'}

def test_qint_text(capsys):
    assert main(['qint', '--kind', 'lower', '--f', 'x', '--q', '0.5', '--K', '1']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ['value: 0.5', 'slope: -', 'intercept: -', 'residual: -']

def test_treeint(capsys):
    assert main(['treeint', '--tree', '[[]]', '--q', '0.9', '--K', '20', '--window', '4']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'integrand: 1/((x1+c)(x1+x2))'
    assert lines[1].startswith('value: ')

def test_manin_json(capsys):
    assert main(['manin', '--n', '2', '--m', '3', '--json']) == 0
    assert json.loads(capsys.readouterr().out) == {'n': 2, 'm': 3, 'N': 16, 'holds': True, 'region': [0, 10]}

def test_wordx_json(capsys):
    assert main(['--json', 'wordx', '--n', '3', '--m', '1']) == 0
    assert json.loads(capsys.readouterr().out) == {'n': 3, 'm': 1, 'exponent': -2}

def test_treeint_over_term_limit(capsys):
    assert main(['treeint', '--tree', '[[]]', '--q', '0.999', '--K', '20000']) == 2
    assert 'above the limit' in capsys.readouterr().err
