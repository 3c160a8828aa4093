from unittest import mock

import numpy as np
from django.test import SimpleTestCase, override_settings

from core.exceptions import ParameterError

from .matrices import CHI_NAMES, GENERATORS, eq2_matrices, exponential_residuals, kappa
from .reference import reference_data
from .relations import RELATIONS, eq2_verify_block, eq2_verify_relations
from .services import run_eq2, sample_parameters


class Eq2MatrixTests(SimpleTestCase):
    def test_kappa(self):
        for z in (0.3, 0.7, 1.1, -0.5):
            self.assertAlmostEqual(kappa(z), np.exp(z / 4) - np.exp(-3 * z / 4), places=14)

    def test_zero_parameter_is_rejected(self):
        with self.assertRaises(ParameterError):
            eq2_matrices(0)
        with self.assertRaises(ValueError):
            kappa(0.0)

    def test_j_does_not_depend_on_z(self):
        for z in (0.3, 1.1):
            J = eq2_matrices(z)['J']
            expected = np.zeros((5, 5))
            expected[2, 2], expected[3, 3] = -1.0, 1.0
            np.testing.assert_array_equal(J, expected)

    def test_entries(self):
        rep = eq2_matrices(0.7)
        self.assertAlmostEqual(rep['pi+'][0, 3], np.exp(0.35))
        self.assertAlmostEqual(rep['pi'][0, 4], -0.7 / rep.kappa)
        self.assertAlmostEqual(rep['b+'][1, 2], np.exp(-0.525))
        self.assertAlmostEqual(rep['b-'][2, 4], np.exp(0.875))
        self.assertEqual(set(rep.matrices), set(GENERATORS))
        self.assertEqual(len(rep.chi), len(CHI_NAMES))

    def test_chi4_is_diagonal(self):
        rep = eq2_matrices(1.1)
        chi4 = rep['chi4']
        np.testing.assert_allclose(np.diag(chi4), [0, 0, np.expm1(1.1) / rep.kappa, np.expm1(-1.1) / rep.kappa, 0])
        self.assertEqual(np.count_nonzero(chi4 - np.diag(np.diag(chi4))), 0)

    def test_closed_form_exponentials(self):
        for z in (0.3, 0.7, 1.1, 1.9):
            for name, residual in exponential_residuals(eq2_matrices(z)).items():
                self.assertLess(residual, 1e-12, (z, name))


class Eq2RelationTests(SimpleTestCase):
    def test_all_relations_hold(self):
        for z in (0.3, 0.7, 1.1):
            result = eq2_verify_relations(z, 1e-10)
            self.assertTrue(result.passed, result.as_dict())
            self.assertEqual(len(result.residuals), len(RELATIONS))

    def test_structurally_exact_relations(self):
        residuals = eq2_verify_relations(0.7).residuals
        self.assertEqual(residuals['[J,pi] = 0'], 0.0)
        self.assertEqual(residuals['[J,b+] = b+'], 0.0)

    def test_negative_parameter(self):
        self.assertTrue(eq2_verify_relations(-0.4).passed)

    def test_perturbed_matrix_fails(self):
        def perturbed(z):
            rep = eq2_matrices(z)
            rep.matrices['b+'][3, 4] *= 1.001
            return rep

        with mock.patch('eq2.relations.eq2_matrices', perturbed):
            result = eq2_verify_relations(0.7)
        self.assertFalse(result.passed)
        self.assertGreater(result.residuals['[b+,pi+] = -exp(-pi) + exp(zJ)'], 1e-6)
        self.assertEqual(result.residuals['[J,b+] = b+'], 0.0)


class Eq2BlockTests(SimpleTestCase):
    def test_block_structure(self):
        for z in (0.3, 0.7, 1.1):
            report = eq2_verify_block(z)
            self.assertTrue(report.passed, report.as_dict())

    def test_row_zero_of_generators(self):
        rep = eq2_matrices(0.7)
        for name in ('J', 'b+', 'b-'):
            self.assertFalse(rep[name][0].any(), name)
        self.assertFalse(rep['chi1'][:, 0].any())

    def test_wrong_pairing_fails(self):
        def perturbed(z):
            rep = eq2_matrices(z)
            rep.matrices['pi'][0, 4] = -rep.matrices['pi'][0, 4]
            return rep

        with mock.patch('eq2.relations.eq2_matrices', perturbed):
            report = eq2_verify_block(0.7)
        self.assertFalse(report.passed)
        self.assertEqual(report.first_failure().name, 'row0(pi) = pairing')


class Eq2ServiceTests(SimpleTestCase):
    @override_settings(HOPFDOUBLE_EQ2_SAMPLES=[0.3, 0.7, 1.1], HOPFDOUBLE_EQ2_RANDOM_SAMPLES=5, HOPFDOUBLE_EQ2_SEED=0)
    def test_default_samples(self):
        samples = sample_parameters()
        self.assertEqual(len(samples), 8)
        self.assertEqual(samples[:3], [0.3, 0.7, 1.1])
        self.assertTrue(all(0.1 <= z < 2.0 for z in samples[3:]))
        self.assertEqual(samples, sample_parameters())

    def test_explicit_samples_skip_random_draws(self):
        self.assertEqual(sample_parameters([0.7]), [0.7])
        self.assertEqual(len(sample_parameters([0.7], random_samples=2)), 3)

    def test_run(self):
        result = run_eq2([0.7], 1e-10)
        self.assertEqual(result['status'], 'success')
        self.assertEqual(len(result['samples']), 1)
        self.assertLess(result['max_residual'], 1e-10)
        self.assertEqual(len(result['reference']['f']), 4)

    def test_run_with_configured_samples(self):
        result = run_eq2()
        self.assertTrue(result['passed'], result['log'])

    def test_zero_parameter(self):
        with self.assertRaises(ParameterError):
            run_eq2([0.5, 0.0])

    def test_reference_tables(self):
        data = reference_data()
        self.assertEqual(data['f'][0], ['exp(zJ)', '0', '0', '0'])
        self.assertEqual(data['R'][3][3], '1')
        self.assertEqual(data['antipode']['J'], '-J')
        self.assertIn('coboundary', data['annotations'][0])
