import csv
import io
import math
import os

import pytest
import rapidjson

from stochastic_beam.app import App
from stochastic_beam.common.logger import Logger
from stochastic_beam.common.oracle import enumerate_leaves
from stochastic_beam.seqmodels.markov import load_markov
from stochastic_beam.settings import Settings

EXAMPLE = Settings.EXAMPLE_TREE


def run(*argv):
    app = App()
    app.build_args()
    return app.run(list(argv))


def read_table(text):
    return list(csv.DictReader(io.StringIO(text)))


def read_file(path):
    with open(path, 'r', encoding='utf-8') as in_file:
        return in_file.read()


class TestSample:
    def test_stochastic_beam(self, capsys):
        assert run('sample', '-m', EXAMPLE, '-k', '3', '-s', '1') == 0
        rows = read_table(capsys.readouterr().out)
        assert [row['rank'] for row in rows] == ['1', '2', '3']
        keys = [float(row['key']) for row in rows]
        assert keys == sorted(keys, reverse=True)
        assert len({row['sequence'] for row in rows}) == 3
        assert all(row['kappa'] == '' for row in rows)

    def test_same_seed_same_output(self, capsys):
        run('sample', '-m', EXAMPLE, '-k', '3', '-s', '9')
        first = capsys.readouterr().out
        run('sample', '-m', EXAMPLE, '-k', '3', '-s', '9')
        assert capsys.readouterr().out == first

    def test_seed_from_environment(self, capsys, monkeypatch):
        run('sample', '-m', EXAMPLE, '-k', '3', '-s', '21')
        explicit = capsys.readouterr().out
        monkeypatch.setenv(Settings.SEED_ENV, '21')
        run('sample', '-m', EXAMPLE, '-k', '3')
        assert capsys.readouterr().out == explicit

    def test_estimator_mode_reports_threshold(self, capsys):
        assert run('sample', '-m', EXAMPLE, '-k', '3', '--estimator') == 0
        rows = read_table(capsys.readouterr().out)
        assert len(rows) == 3
        kappa = float(rows[0]['kappa'])
        assert all(float(row['key']) > kappa for row in rows)

    def test_beam_search(self, capsys):
        assert run('sample', '-m', EXAMPLE, '-k', '2', '--method', 'bs') == 0
        rows = read_table(capsys.readouterr().out)
        assert [row['sequence'] for row in rows] == ['0 1 1', '1 0 0']

    @pytest.mark.parametrize('method', ['sampling', 'rejection', 'naive'])
    def test_baselines(self, capsys, method):
        assert run('sample', '-m', EXAMPLE, '-k', '2', '--method', method) == 0
        assert len(read_table(capsys.readouterr().out)) == 2

    def test_output_file_and_metadata(self, tmp_path):
        output = str(tmp_path / 'sample.csv')
        assert run('sample', '-m', EXAMPLE, '-k', '2', '-s', '4', '-o', output) == 0
        assert len(read_table(read_file(output))) == 2
        meta = rapidjson.loads(read_file(output + '.meta.json'))
        assert meta['seed'] == 4
        assert meta['generator'] == Settings.GENERATOR
        assert meta['config']['command'] == 'sample'

    def test_rejection_budget(self, test_data):
        assert run('sample', '-m', os.path.join(test_data, 'chain.tree'), '-k', '2',
                   '--method', 'rejection', '--max-draws', '20') == 2

    @pytest.mark.parametrize('model', ['corrupt.tree', 'missing.tree', 'tiny_corpus.txt'])
    def test_bad_model(self, test_data, model):
        assert run('sample', '-m', os.path.join(test_data, model)) == 2

    def test_missing_model(self):
        assert run('sample', '-k', '2') == 2

    def test_non_positive_temperature(self):
        assert run('sample', '-m', EXAMPLE, '-t', '0') == 2

    def test_estimator_needs_stochastic_beam(self):
        assert run('sample', '-m', EXAMPLE, '--method', 'bs', '--estimator') == 2

    def test_unknown_command_exits(self):
        with pytest.raises(SystemExit) as info:
            run('unknown')
        assert info.value.code == 2


class TestEstimate:
    def test_every_method(self, tmp_path):
        output = str(tmp_path / 'estimates.csv')
        assert run('estimate', '-m', EXAMPLE, '-k', '2', '-r', '4', '-j', '1', '-o', output) == 0
        rows = read_table(read_file(output))
        replicates = [row for row in rows if row['replicate'] not in ('mean', 'p2.5', 'p97.5')]
        assert len(replicates) == 5 * 4
        assert len(rows) - len(replicates) == 5 * 3
        bs_values = {row['value'] for row in replicates if row['method'] == 'BS_bound'}
        assert len(bs_values) == 1
        assert float(bs_values.pop()) == pytest.approx(-0.25 * math.log(0.25) - 0.2 * math.log(0.2), rel=1e-9)
        assert os.path.isfile(output + '.meta.json')

    def test_normalized_estimate_is_exact_on_exhausted_model(self, capsys, example, example_entropy):
        assert run('estimate', '-m', EXAMPLE, '--methods', 'SBS_normalized', '-k', '8', '-r', '3', '-j', '1') == 0
        rows = read_table(capsys.readouterr().out)
        for row in rows[:3]:
            assert float(row['value']) == pytest.approx(example_entropy, abs=1e-9)

    def test_temperature_sweep(self, capsys):
        assert run('estimate', '-m', EXAMPLE, '--methods', 'MC', '-t', '0.5', '2.0', '-k', '1', '2',
                   '-r', '2', '-j', '1') == 0
        rows = read_table(capsys.readouterr().out)
        assert {(row['temperature'], row['k']) for row in rows} == {
            ('0.5', '1'), ('0.5', '2'), ('2.0', '1'), ('2.0', '2')
        }

    def test_independent_of_threads(self, tmp_path):
        serial, parallel = str(tmp_path / 'serial.csv'), str(tmp_path / 'parallel.csv')
        assert run('estimate', '-m', EXAMPLE, '-k', '3', '-r', '6', '-j', '1', '-o', serial) == 0
        assert run('estimate', '-m', EXAMPLE, '-k', '3', '-r', '6', '-j', '2', '-o', parallel) == 0
        assert read_file(serial) == read_file(parallel)

    def test_bleu_needs_reference(self):
        assert run('estimate', '-m', EXAMPLE, '-f', 'bleu', '-r', '2', '-j', '1') == 2

    def test_bleu_with_reference(self, capsys):
        assert run('estimate', '-m', EXAMPLE, '-f', 'bleu', '--reference', '0 1 1', '-r', '2', '-j', '1') == 0
        rows = read_table(capsys.readouterr().out)
        assert all(0.0 <= float(row['value']) <= 1.0 for row in rows if row['method'] != 'SBS_raw')

    def test_unknown_method(self):
        assert run('estimate', '-m', EXAMPLE, '--methods', 'MC', 'importance') == 2

    def test_sacrifice_needs_two(self):
        assert run('estimate', '-m', EXAMPLE, '-k', '1', '--kappa-convention', 'sacrifice') == 2

    def test_configuration_file(self, tmp_path, capsys):
        path = tmp_path / 'config.yml'
        path.write_text(f'model: {EXAMPLE}\nmethods: [MC]\nk-values: [2]\nreplicates: 3\nthreads: 1\n')
        assert run('estimate', '-c', str(path)) == 0
        rows = read_table(capsys.readouterr().out)
        assert len([row for row in rows if row['replicate'].isdigit()]) == 3


class TestDiversity:
    def test_needs_reference(self):
        assert run('diversity', '-m', EXAMPLE) == 2

    def test_reference_beam(self, capsys):
        assert run('diversity', '-m', EXAMPLE, '--reference-beam', '8', '-k', '3', '-r', '3', '-j', '1') == 0
        rows = read_table(capsys.readouterr().out)
        assert {row['method'] for row in rows} == {'bs', 'sbs', 'sampling'}
        bs_rows = [row for row in rows if row['method'] == 'bs' and row['replicate'].isdigit()]
        assert len(bs_rows) == 3
        assert len({tuple(row.values())[4:] for row in bs_rows}) == 1
        for row in rows:
            assert float(row['min_bleu']) <= float(row['mean_bleu']) <= float(row['max_bleu'])

    def test_markov_model(self, tmp_path, test_data, capsys):
        model = str(tmp_path / 'model.json')
        assert run('train', '--corpus', os.path.join(test_data, 'tiny_corpus.txt'), '--order', '1',
                   '--max-len', '5', '-o', model) == 0
        assert run('diversity', '-m', model, '--reference', 'abba', '--methods', 'bs', 'sbs',
                   '-k', '2', '-r', '2', '-j', '1') == 0
        assert read_table(capsys.readouterr().out)

    def test_skipped_orders_are_warned(self, monkeypatch, capsys):
        warnings = []
        monkeypatch.setattr(Logger, 'warning', lambda self, msg, *args: warnings.append(msg % args))
        assert run('diversity', '-m', EXAMPLE, '--reference-beam', '1', '--methods', 'bs', '-k', '2',
                   '-r', '2', '-j', '1') == 0
        skipped = [warning for warning in warnings if 'diversity skipped' in warning]
        assert skipped
        assert all(warning.endswith('skipped n-gram orders 4 in 2 of 2 replicates') for warning in skipped)
        header = capsys.readouterr().out.splitlines()[0]
        assert header == 'method,param,k,replicate,min_bleu,mean_bleu,max_bleu,diversity'


class TestTrain:
    def test_deterministic_transitions(self, tmp_path):
        corpus, model = tmp_path / 'corpus.txt', str(tmp_path / 'model.json')
        corpus.write_text('aaa')
        assert run('train', '--corpus', str(corpus), '--order', '1', '--alpha', '0', '-o', model) == 0
        loaded = load_markov(model)
        assert loaded.step(loaded.encode('a'))[loaded.encode('a')[0]] == 0.0

    def test_model_enumerates(self, tmp_path, test_data):
        model = str(tmp_path / 'model.json')
        assert run('train', '--corpus', os.path.join(test_data, 'tiny_corpus.txt'), '--max-len', '3', '-o', model) == 0
        table = enumerate_leaves(load_markov(model))
        assert sum(table.probs) == pytest.approx(1.0)

    def test_empty_corpus(self, tmp_path):
        corpus = tmp_path / 'corpus.txt'
        corpus.write_text('\n')
        assert run('train', '--corpus', str(corpus), '-o', str(tmp_path / 'model.json')) == 2

    def test_missing_corpus(self, tmp_path):
        assert run('train', '--corpus', str(tmp_path / 'missing.txt'), '-o', str(tmp_path / 'model.json')) == 2

    def test_needs_output(self, test_data):
        assert run('train', '--corpus', os.path.join(test_data, 'tiny_corpus.txt')) == 2


class TestVerify:
    def test_passing_suite(self, tmp_path, capsys):
        report = str(tmp_path / 'report.json')
        assert run('verify', '--suite', 'stability-weights', '--report', report, '-j', '1') == 0
        out = capsys.readouterr().out
        assert out.count('PASS stability-weights') == 2
        data = rapidjson.loads(read_file(report))
        assert data['passed']
        assert len(data['criteria']) == 2

    def test_unknown_suite(self):
        assert run('verify', '--suite', 'nothing') == 2

    def test_malformed_model(self, test_data):
        assert run('verify', '--suite', 'beam-exactness', '-m', os.path.join(test_data, 'corrupt.tree')) == 2
