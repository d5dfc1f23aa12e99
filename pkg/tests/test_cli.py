"""
End-to-end tests of the pencilspec command line, run in-process.

Exit codes: 0 yes / success, 1 no, 2 inconclusive, 64 usage, 65 data.
"""

import io
import json

import numpy as np
import pytest

from core.formats import load_matrix, polynomial_from_dict, save_matrix
from core.gallery import intro_example, intro_factors
from pencilspec_cli import VERSION, PencilSpecCLI


class Session:
    """One CLI invocation with captured streams."""

    def __init__(self, argv):
        self.stdout = io.StringIO()
        self.stderr = io.StringIO()
        self.code = PencilSpecCLI(stdout=self.stdout, stderr=self.stderr).run([str(a) for a in argv])

    def json(self):
        return json.loads(self.stdout.getvalue())


@pytest.fixture
def intro_files(tmp_path):
    session = Session(['gallery', 'intro_example', '--out', tmp_path / 'intro'])
    assert session.code == 0
    return tmp_path / 'intro_A.json', tmp_path / 'intro_B.json', tmp_path / 'intro_gamma.json'


@pytest.fixture
def commuting_files(tmp_path):
    A, B = tmp_path / 'A.json', tmp_path / 'B.json'
    save_matrix(A, np.diag([2.0, 1.0]))
    save_matrix(B, np.diag([0.9, 0.4]))
    return A, B


class TestGallery:

    def test_decomposable_files(self, tmp_path):
        session = Session(['gallery', 'decomposable', '--n', 4, '--k', 2, '--seed', 3, '--out', tmp_path / 'pair.json'])
        assert session.code == 0
        for suffix in ('A', 'B', 'gamma', 'basis'):
            assert (tmp_path / f'pair_{suffix}.json').exists()
        assert 'Wrote' in session.stdout.getvalue()
        basis = json.loads((tmp_path / 'pair_basis.json').read_text())
        assert (basis['n'], basis['k']) == (4, 2)

    def test_seed_reproducible(self, tmp_path):
        Session(['gallery', 'perturbed', '--n', 5, '--k', 2, '--eps', 1e-3, '--seed', 9, '--out', tmp_path / 'a'])
        Session(['gallery', 'perturbed', '--n', 5, '--k', 2, '--eps', 1e-3, '--seed', 9, '--out', tmp_path / 'b'])
        assert (tmp_path / 'a_B.json').read_text() == (tmp_path / 'b_B.json').read_text()

    def test_unknown_kind(self, tmp_path):
        assert Session(['gallery', 'banana', '--out', tmp_path / 'x']).code == 64


class TestDecompose:

    def test_decomposable_pair_is_yes(self, tmp_path):
        Session(['gallery', 'decomposable', '--n', 4, '--k', 2, '--seed', 3, '--out', tmp_path / 'pair'])
        session = Session(['decompose', tmp_path / 'pair_A.json', tmp_path / 'pair_B.json',
                           '--k', 2, '--gamma', tmp_path / 'pair_gamma.json'])
        assert session.code == 0
        assert session.json()['verdict'] == 'yes'
        assert 'Verdict' in session.stderr.getvalue()

    def test_perturbed_pair_is_no(self, tmp_path):
        Session(['gallery', 'perturbed', '--n', 4, '--k', 2, '--eps', 1e-3, '--seed', 3, '--out', tmp_path / 'pair'])
        session = Session(['decompose', tmp_path / 'pair_A.json', tmp_path / 'pair_B.json',
                           '--k', 2, '--gamma', tmp_path / 'pair_gamma.json'])
        assert session.code == 1

    def test_intro_example_curve(self, intro_files):
        A, B, gamma = intro_files
        session = Session(['decompose', A, B, '--k', 2, '--gamma', gamma])
        assert session.code == 1
        assert session.json()['verdict'] == 'no'

    def test_intro_example_line(self, intro_files, tmp_path):
        A, B, _ = intro_files
        out = tmp_path / 'report.json'
        session = Session(['decompose', A, B, '--lam', 1, '--a', 1, '--out', out])
        assert session.code == 1
        assert json.loads(out.read_text())['verdict'] == 'no'
        assert 'Verdict: no' in session.stderr.getvalue()

    def test_circle_pair(self, tmp_path):
        Session(['gallery', 'circle_pair', '--n', 2, '--out', tmp_path / 'circle'])
        session = Session(['decompose', tmp_path / 'circle_A.json', tmp_path / 'circle_B.json', '--circle'])
        assert session.code == 0

    def test_mode_required(self, intro_files):
        A, B, _ = intro_files
        session = Session(['decompose', A, B])
        assert session.code == 64
        assert session.stderr.getvalue().startswith('pencilspec: error:')


class TestPencil:

    def test_intro_polynomial(self, intro_files):
        A, B, _ = intro_files
        session = Session(['pencil', A, B])
        assert session.code == 0
        P = polynomial_from_dict(session.json())
        line, quadratic = intro_factors()
        expected = (line * quadratic).normalized()
        assert np.linalg.norm(P.coeffs - expected.coeffs) <= 1e-8 * expected.norm

    def test_wedge(self, intro_files, tmp_path):
        A, B, _ = intro_files
        out = tmp_path / 'wedge_P.json'
        session = Session(['pencil', A, B, '--wedge', 2, '--save-wedge', tmp_path / 'w', '--out', out])
        assert session.code == 0
        saved = json.loads((tmp_path / 'w_A.json').read_text())
        assert saved['basis'] == ['12', '13', '23']
        assert json.loads(out.read_text())['degree'] == 3
        np.testing.assert_allclose(load_matrix(tmp_path / 'w_A.json').real, np.diag([5.0, 0.0, 0.0]), atol=1e-12)


class TestQueries:

    def test_spectrum_csv(self, commuting_files):
        A, B = commuting_files
        session = Session(['spectrum', A, B, '--disk', 0.5, 0.0, 0.2, '--res', 16])
        assert session.code == 0
        lines = session.stdout.getvalue().splitlines()
        assert lines[0] == 're_x,im_x,re_y,im_y,abs_P'
        assert len(lines) > 1

    def test_line_check(self, intro_files, tmp_path):
        A, B, _ = intro_files
        Session(['pencil', A, B, '--out', tmp_path / 'P.json'])
        session = Session(['line-check', tmp_path / 'P.json', '--alpha', 1, '--beta', 1])
        assert session.code == 0
        assert 'Multiplicity: 1' in session.stdout.getvalue()

    def test_residues(self, commuting_files, tmp_path):
        A, B = commuting_files
        out = tmp_path / 'residues.json'
        session = Session(['residues', A, B, '--lam', 2, '--a', 0.9, '--m-max', 3, '--out', out])
        assert session.code == 0
        data = json.loads(out.read_text())
        assert [row['m'] for row in data['residues']] == [1, 2, 3]
        assert max(row['residue'] for row in data['residues']) <= 1e-9
        assert max(data['line_residues'].values()) <= 1e-10

    def test_almost(self, commuting_files):
        A, B = commuting_files
        session = Session(['almost', A, B, '--alpha', 2, '--beta', 0.9, '--rho', 0.2])
        assert session.code == 0
        report = session.json()
        assert report['preconditions_ok']
        assert report['delta_actual'] == pytest.approx(0.0, abs=1e-14)

    def test_commutant(self, commuting_files):
        A, B = commuting_files
        session = Session(['commutant', A, B, '--rho', 0.2])
        assert session.code == 0
        assert session.json()['actual'] == 0.0

    def test_plot(self, tmp_path):
        (tmp_path / 'circle.json').write_text(json.dumps(
            {'degree': 2, 'terms': [{'i': 0, 'j': 0, 'c': -1.0}, {'i': 2, 'j': 0, 'c': 1.0}, {'i': 0, 'j': 2, 'c': 1.0}]}))
        out = tmp_path / 'circle.svg'
        session = Session(['plot', tmp_path / 'circle.json', '--box', -1.5, 1.5, -1.5, 1.5, '--grid', 40, '--out', out])
        assert session.code == 0
        assert out.read_text().startswith('<svg')


class TestErrors:

    def test_malformed_json(self, tmp_path, commuting_files):
        _, B = commuting_files
        bad = tmp_path / 'bad.json'
        bad.write_text('{not json')
        session = Session(['pencil', bad, B])
        assert session.code == 64
        assert 'malformed JSON' in session.stderr.getvalue()

    def test_missing_field(self, tmp_path, commuting_files):
        _, B = commuting_files
        bad = tmp_path / 'bad.json'
        bad.write_text('{"n": 2}')
        assert Session(['pencil', bad, B]).code == 65

    def test_not_hermitian(self, tmp_path, commuting_files):
        _, B = commuting_files
        bad = tmp_path / 'bad.json'
        save_matrix(bad, np.array([[1.0, 2.0], [0.0, 1.0]]))
        assert Session(['pencil', bad, B]).code == 65

    def test_missing_arguments(self):
        assert Session(['decompose']).code == 64
        assert Session([]).code == 64

    def test_version(self, capsys):
        assert Session(['--version']).code == 0
        assert VERSION in capsys.readouterr().out

    def test_config_file(self, tmp_path, commuting_files):
        A, B = commuting_files
        config = tmp_path / 'config.json'
        config.write_text(json.dumps({'sampling': {'rho': 0.2}}))
        session = Session(['almost', A, B, '--alpha', 2, '--beta', 0.9, '--config', config])
        assert session.code == 0
        assert 'rho=0.2' in session.stderr.getvalue()


class TestIntroExampleFiles:

    def test_gallery_matches_library(self, intro_files):
        A, B, _ = intro_files
        A1, A2 = intro_example()
        np.testing.assert_array_equal(load_matrix(A).real, A1)
        np.testing.assert_array_equal(load_matrix(B).real, A2)
