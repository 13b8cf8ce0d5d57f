# SPDX-License-Identifier: Apache-2.0

"""The threshold-lab command line."""

from fractions import Fraction
import argparse
import csv
import io
import json
import sys

import pytest

from threshold_lab import auditt
from threshold_lab import commands
from threshold_lab import familyt
from threshold_lab import generate
from threshold_lab import optionst
from threshold_lab import threshold_lab
from threshold_lab.errors import CapExceeded

COARSE = '2^-16'

def run(argv):
    """Parse a command line and run it, returning the exit code."""

    args = optionst.create_parser().parse_args(argv)
    return commands.run(optionst.defaults(args))

@pytest.fixture
def family_file(write_file):
    """Write a generator family as a .fam file."""

    def write(name, family):
        return write_file(f'{name}.fam', familyt.serialize(family))
    return write

################################################################
# Thresholds

def test_compute_q(family_file, tmp_path, capsys):
    path = family_file('singletons3', generate.singletons(3))
    cert = tmp_path / 'q.cert'
    assert run(['compute-q', '--family', path, '--out', str(cert)]) == commands.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'q=0.166666666667'
    assert lines[1].startswith('lower=') and lines[2].startswith('upper=')
    text = cert.read_text().splitlines()
    assert text[0] == 'p=' + lines[1][len('lower='):]
    assert text[2:] == ['1', '2', '3']

def test_compute_q_empty_family(write_file, capsys):
    path = write_file('empty.fam', 'n=3\n')
    assert run(['compute-q', '--family', path]) == commands.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == 'q=1'
    assert out[3:] == ['p=1/1', 'weight=0/1']

def test_compute_q_json(family_file, tmp_path):
    path = family_file('pair', generate.single(2, [1, 2]))
    target = tmp_path / 'q.json'
    assert run(['compute-q', '--family', path, '--tol', COARSE, '--json', str(target),
                '--out', str(tmp_path / 'q.cert')]) == 0
    data = json.loads(target.read_text())['threshold-result']
    assert data['kind'] == 'q' and data['tol'] == '1/65536'
    assert data['certificate']['cover'] == [[1, 2]]

def test_element_outside_ground_set(write_file):
    path = write_file('bad.fam', 'n=3\n1 9\n')
    assert run(['compute-q', '--family', path]) == commands.EXIT_USAGE

def test_missing_family_file(tmp_path):
    assert run(['compute-q', '--family', str(tmp_path / 'missing.fam')]) == commands.EXIT_USAGE

def test_compute_qf(family_file, tmp_path, capsys):
    path = family_file('pair', generate.single(2, [1, 2]))
    out = str(tmp_path / 'qf.cert')
    assert run(['compute-qf', '--family', path, '--r', '1', '--out', out]) == 0
    assert capsys.readouterr().out.splitlines()[0] == 'qf=0.5'
    assert run(['compute-qf', '--family', path, '--out', out]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'qf=0.707106781187'
    assert lines[3] == 'r=unbounded'

def test_restriction_must_be_positive(family_file):
    path = family_file('pair', generate.single(2, [1, 2]))
    with pytest.raises(SystemExit) as error:
        run(['compute-qf', '--family', path, '--r', '0'])
    assert error.value.code == 2

def test_bad_tolerance_text(family_file):
    path = family_file('pair', generate.single(2, [1, 2]))
    with pytest.raises(SystemExit) as error:
        run(['compute-q', '--family', path, '--tol', 'tiny'])
    assert error.value.code == 2

################################################################
# Ratio table

def test_ratio_table(family_file, tmp_path):
    battery = generate.battery()
    names = list(battery)
    paths = [family_file(name, battery[name]) for name in names]
    out = tmp_path / 'ratio.csv'
    assert run(['ratio-table', '--family', *paths, '--tol', COARSE, '--out', str(out)]) == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert rows[0] == ['family', 'n', 'q', 'qf_unbounded', 'qf_r', 'ratio_qf_over_q']
    assert [row[0] for row in rows[1:]] == names
    for row in rows[1:]:
        assert 1 - 1e-9 <= float(row[5]) <= 10
    assert float(rows[1][5]) == pytest.approx(1, abs=1e-6)

def test_ratio_table_restricted(family_file, tmp_path):
    path = family_file('pair', generate.single(2, [1, 2]))
    out = tmp_path / 'ratio.csv'
    json_out = tmp_path / 'ratio.json'
    assert run(['ratio-table', '--family', path, '--tol', COARSE, '--r', '1',
                '--out', str(out), '--json', str(json_out)]) == 0
    row = list(csv.reader(io.StringIO(out.read_text())))[1]
    assert row[:2] == ['pair', '2']
    assert float(row[4]) == pytest.approx(0.5, abs=1e-6)
    assert float(row[5]) == pytest.approx(1, abs=1e-6)
    data = json.loads(json_out.read_text())['threshold-ratio-table']
    assert data[0]['family'] == 'pair' and '/' in data[0]['q']

def test_ratio_table_needs_families():
    with pytest.raises(SystemExit) as error:
        run(['ratio-table', '--family'])
    assert error.value.code == 2
    assert run(['ratio-table']) == commands.EXIT_USAGE

################################################################
# Audit

def test_audit_not_p_small(family_file, tmp_path):
    path = family_file('singletons8', generate.singletons(8))
    out = tmp_path / 'audit.csv'
    html = tmp_path / 'audit.html'
    assert run(['audit', '--family', path, '--p', '1/10', '--r', '1',
                '--out', str(out), '--html', str(html)]) == commands.EXIT_OK
    rows = {row[0]: row for row in csv.reader(io.StringIO(out.read_text()))}
    assert rows['claim'][4] == 'true'
    assert rows['not-p-small'][4] == 'true'
    assert html.exists()

def test_audit_p_small(family_file, tmp_path):
    path = family_file('pairs3', generate.k_uniform(3, 2))
    out = tmp_path / 'audit.csv'
    assert run(['audit', '--family', path, '--p', '1/10', '--r', '2',
                '--out', str(out)]) == commands.EXIT_OK
    rows = {row[0]: row for row in csv.reader(io.StringIO(out.read_text()))}
    assert rows['not-p-small'][4] == 'false'

def test_audit_csv_is_reproducible(family_file, tmp_path):
    path = family_file('singletons6', generate.singletons(6))
    outputs = []
    for index, threads in enumerate(('1', '1', '4')):
        out = tmp_path / f'audit{index}.csv'
        assert run(['audit', '--family', path, '--p', '1/10', '--r', '1', '--seed', '3',
                    '--trials', '2000', '--threads', threads,
                    '--out', str(out)]) == commands.EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    assert b'bound-vs-truth' in outputs[0]

def test_audit_needs_r(family_file):
    path = family_file('pairs3', generate.k_uniform(3, 2))
    assert run(['audit', '--family', path, '--p', '1/10']) == commands.EXIT_USAGE

def test_audit_missing_file(tmp_path):
    assert run(['audit', '--family', str(tmp_path / 'nope.fam'), '--p', '1/10',
                '--r', '1']) == commands.EXIT_USAGE

def test_audit_contract_failure(family_file, tmp_path, monkeypatch):
    path = family_file('pairs3', generate.k_uniform(3, 2))

    def failing(family, p, r, **_):
        report = auditt.AuditReport(family, p, r)
        report.add(auditt.CheckRecord('claim', 1, 0))
        return report

    monkeypatch.setattr(commands.auditt, 'theorem_audit', failing)
    assert run(['audit', '--family', path, '--p', '1/10', '--r', '2',
                '--out', str(tmp_path / 'audit.csv')]) == commands.EXIT_CONTRACT

################################################################
# Bound and Monte Carlo

def test_bmm_bound(capsys):
    assert run(['bmm-bound', '--n', '20', '--p', '1/1000', '--r', '1', '--m', '10']) == 0
    lines = dict(line.split('=', 1) for line in capsys.readouterr().out.splitlines())
    assert float(lines['bound']) == pytest.approx(0.1256, abs=1e-3)
    assert lines['vacuous'] == 'false'
    assert lines['m'] == '10/1'

def test_bmm_bound_real_sample_size(capsys):
    assert run(['bmm-bound', '--n', '20', '--p', '1/1000', '--r', '1']) == 0
    lines = dict(line.split('=', 1) for line in capsys.readouterr().out.splitlines())
    assert lines['vacuous'] == 'false'

def test_bmm_bound_zero_sample():
    with pytest.raises(SystemExit) as error:
        run(['bmm-bound', '--n', '20', '--p', '1/1000', '--r', '1', '--m', '0'])
    assert error.value.code == 2

def test_mc_bad_prob(family_file, capsys):
    path = family_file('singletons4', generate.singletons(4))
    assert run(['mc-bad-prob', '--family', path, '--p', '1/10', '--r', '1', '--m', '2',
                '--trials', '500']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'prob=0'
    assert 'partitions=8' in lines and 'seed=0' in lines

@pytest.fixture
def triple_files(family_file, write_file):
    family = family_file('triple', generate.single(6, [1, 2, 3]))
    lam = write_file('triple.lam', 'n=6\n1/2 : 1\n1/2 : 2 3\n')
    return family, lam

def test_mc_bad_prob_is_deterministic(triple_files, tmp_path):
    family, lam = triple_files
    outputs = []
    for index, threads in enumerate(('1', '1', '4')):
        out = tmp_path / f'mc{index}.txt'
        assert run(['mc-bad-prob', '--family', family, '--lambda', lam, '--p', '1/10',
                    '--r', '2', '--m', '4', '--trials', '2000', '--seed', '5',
                    '--partitions', '4', '--threads', threads, '--out', str(out)]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
    assert b'm=4\n' in outputs[0]

def test_mc_bad_prob_lambda_size_mismatch(triple_files, write_file):
    family, _ = triple_files
    lam = write_file('small.lam', 'n=3\n1/1 : 1 2 3\n')
    assert run(['mc-bad-prob', '--family', family, '--lambda', lam, '--p', '1/10',
                '--r', '2']) == commands.EXIT_USAGE

################################################################
# Generators

def test_gen(capsys):
    assert run(['gen', '--kind', 'singletons', '--n', '3']) == 0
    assert capsys.readouterr().out.splitlines() == ['n=3', '1', '2', '3']

def test_gen_triangles(tmp_path):
    out = tmp_path / 'tri.fam'
    assert run(['gen', '--kind', 'triangles', '--vertices', '4', '--out', str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == 'n=6' and len(lines) == 5

def test_gen_missing_parameter():
    assert run(['gen', '--kind', 'triangles']) == commands.EXIT_USAGE

################################################################
# Exit codes and main

def test_cap_exit_code():
    def capped(_):
        raise CapExceeded('too many subsets')
    assert commands.run(argparse.Namespace(func=capped)) == commands.EXIT_CAP

def test_ground_set_cap_exit_code(write_file):
    path = write_file('big.fam', 'n=25\n1 2\n')
    assert run(['compute-q', '--family', path]) == commands.EXIT_CAP
    assert run(['gen', '--kind', 'singletons', '--n', '25']) == commands.EXIT_CAP

def test_no_flag_abbreviates_a_top_level_flag():
    top = ['--help', '--verbose', '--debug', '--version']
    for subparser in optionst.SUBPARSERS[1:]:
        for flag in subparser['flags']:
            assert not [other for other in top if other != flag and other.startswith(flag)]

def test_main_without_subcommand(monkeypatch, capsys):
    monkeypatch.setattr(sys, 'argv', ['threshold-lab'])
    with pytest.raises(SystemExit) as error:
        threshold_lab.main()
    assert error.value.code == 2
    assert 'compute-q' in capsys.readouterr().out

def test_main(monkeypatch, family_file, capsys):
    path = family_file('single', generate.single(1, [1]))
    monkeypatch.setattr(sys, 'argv', ['threshold-lab', 'compute-q', '--family', path])
    with pytest.raises(SystemExit) as error:
        threshold_lab.main()
    assert error.value.code == 0
    assert capsys.readouterr().out.splitlines()[0] == 'q=0.5'

def test_fraction_flags_are_exact():
    args = optionst.defaults(optionst.create_parser().parse_args(
        ['compute-q', '--family', 'x.fam', '--tol', '0.001']))
    assert args.tol == Fraction(1, 1000)
