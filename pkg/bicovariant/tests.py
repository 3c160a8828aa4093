import json
import os
import tempfile

from django.test import SimpleTestCase

from core.exceptions import BimoduleError, SpecFileError
from core.linalg import as_matrix, identity_matrix, kron
from core.services import algebra_to_spec
from core.tensors import basis_vector
from groups.classes import class_representation, conjugacy_classes, group_double
from groups.groups import cyclic_group, symmetric_group

from .bimodules import (
    BicovariantBimodule,
    bimodule_to_rep,
    check_qybe,
    coactions,
    generator,
    lambda_matrix,
    module_right_action,
    rep_to_bimodule,
    right_multiply,
    verify_covariance,
)
from .representations import DoubleRepresentation, direct_sum, trivial_representation, verify_double_rep
from .services import bimodule_from_files, load_representation, representation_to_spec


class Z2BimoduleTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = cyclic_group(2, 'u')
        cls.D = group_double(cls.G)
        cls.F = cls.D.F
        cls.rho = class_representation(cls.G, conjugacy_classes(cls.G)[1], cls.D)
        cls.bimodule = rep_to_bimodule(cls.rho)

    def test_trivial_representation_passes(self):
        self.assertTrue(verify_double_rep(trivial_representation(self.D)).passed)

    def test_class_representation_passes(self):
        self.assertTrue(verify_double_rep(self.rho, exhaustive=True).passed)

    def test_f_and_r_of_class_u(self):
        self.assertEqual(self.bimodule.f, (({1: 1},),))
        self.assertEqual(self.bimodule.R, (({0: 1, 1: 1},),))

    def test_trivial_bimodule(self):
        b = rep_to_bimodule(trivial_representation(self.D))
        self.assertEqual(b.f[0][0], self.D.U.unit_vector)
        self.assertEqual(b.R[0][0], self.F.unit_vector)
        self.assertEqual(lambda_matrix(b), as_matrix([[1]]))

    def test_round_trips(self):
        for rho in (self.rho, trivial_representation(self.D)):
            b = rep_to_bimodule(rho)
            self.assertEqual(bimodule_to_rep(b), rho)
            self.assertEqual(rep_to_bimodule(bimodule_to_rep(b, self.D)), b)

    def test_lambda_is_one(self):
        self.assertEqual(lambda_matrix(self.bimodule), as_matrix([[1]]))

    def test_right_action_on_deltas(self):
        omega = generator(self.bimodule, 0)
        self.assertEqual(module_right_action(0, self.F.basis(1), self.bimodule).coords, ({0: 1},))
        self.assertEqual(module_right_action(0, self.F.basis(0), self.bimodule).coords, ({1: 1},))
        self.assertEqual(module_right_action(0, self.F.one, self.bimodule), omega)

    def test_coactions_of_generator(self):
        omega = generator(self.bimodule, 0)
        everything = {(p, q): 1 for p in range(2) for q in range(2)}
        self.assertEqual(coactions(omega, 'left'), {(p, q, 0): c for (p, q), c in everything.items()})
        self.assertEqual(coactions(omega, 'right'), {(q, 0, p): c for (q, p), c in everything.items()})

    def test_covariance(self):
        report = verify_covariance(self.bimodule, self.rho)
        self.assertTrue(report.passed, report.as_dict())

    def test_representation_of_unit_is_identity(self):
        self.assertEqual(self.rho.represent(self.D.algebra.unit_vector), identity_matrix(1))

    def test_direct_sum_is_a_representation(self):
        summed = direct_sum(trivial_representation(self.D), self.rho)
        self.assertEqual(summed.n, 2)
        self.assertTrue(verify_double_rep(summed, exhaustive=True).passed)

    def test_invalid_bimodule_is_rejected(self):
        broken = BicovariantBimodule(F=self.F, U=self.D.U, n=1, f=(({},),), R=self.bimodule.R, D=self.D)
        self.assertFalse(broken.report.passed)
        self.assertEqual(broken.report.first_failure().name, 'f_counit')
        with self.assertRaises(BimoduleError):
            bimodule_to_rep(broken)


class S3BimoduleTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = symmetric_group(3)
        cls.D = group_double(cls.G)
        _, cls.transpositions, cls.three_cycles = conjugacy_classes(cls.G)
        cls.rho = class_representation(cls.G, cls.transpositions, cls.D)
        cls.bimodule = rep_to_bimodule(cls.rho)

    def test_class_representations_are_multiplicative_on_all_pairs(self):
        for C in (self.transpositions, self.three_cycles):
            rho = class_representation(self.G, C, self.D)
            self.assertTrue(verify_double_rep(rho, exhaustive=True).passed)

    def test_perturbed_representation_fails_with_witness(self):
        rho_u = list(self.rho.rhoU)
        broken = [list(row) for row in rho_u[1]]
        broken[0][0] += 1
        rho_u[1] = as_matrix(broken)
        perturbed = DoubleRepresentation(D=self.D, n=3, rhoF=self.rho.rhoF, rhoU=tuple(rho_u))
        report = verify_double_rep(perturbed)
        self.assertFalse(report.passed)
        self.assertEqual(len(report.first_failure().witness), 2)

    def test_bimodule_relations(self):
        self.assertTrue(self.bimodule.report.passed, self.bimodule.report.as_dict())

    def test_round_trips(self):
        for C in (self.transpositions, self.three_cycles):
            rho = class_representation(self.G, C, self.D)
            b = rep_to_bimodule(rho)
            self.assertEqual(bimodule_to_rep(b), rho)
            self.assertEqual(rep_to_bimodule(bimodule_to_rep(b)), b)

    def test_lambda_pattern(self):
        lam = lambda_matrix(self.bimodule, self.rho)
        members = self.transpositions.members
        n = 3
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        g_i, g_j, g_k = members[i], members[j], members[k]
                        expected = int(j == l and g_i == self.G.conjugate(self.G.inverse[g_j], g_k))
                        self.assertEqual(lam[i * n + j][k * n + l], expected, (i, j, k, l))

    def test_qybe(self):
        for C in (self.transpositions, self.three_cycles):
            b = rep_to_bimodule(class_representation(self.G, C, self.D))
            self.assertTrue(check_qybe(lambda_matrix(b)).passed)

    def test_right_coaction_of_generators(self):
        F = self.D.F
        for i in range(3):
            expected = {}
            for j in range(3):
                for q in range(F.dim):
                    for p, c in self.bimodule.R[j][i].items():
                        expected[(q, j, p)] = c
            self.assertEqual(coactions(generator(self.bimodule, i), 'right'), expected)

    def test_covariance(self):
        report = verify_covariance(self.bimodule, self.rho)
        self.assertTrue(report.passed, report.as_dict())

    def test_right_module_axiom(self):
        F = self.D.F
        for x in range(F.dim):
            for y in range(F.dim):
                step = module_right_action(0, F.basis(x), self.bimodule)
                composed = module_right_action(0, F.basis(x) * F.basis(y), self.bimodule)
                self.assertEqual(right_multiply(step, basis_vector(y)), composed)


class QYBETests(SimpleTestCase):
    def test_identity_passes(self):
        self.assertTrue(check_qybe(identity_matrix(4)).passed)

    def test_non_commuting_tensor_product_fails(self):
        a = as_matrix([[1, 1], [0, 1]])
        b = as_matrix([[1, 0], [1, 1]])
        report = check_qybe(kron(a, b))
        self.assertFalse(report.passed)
        self.assertIsNotNone(report.first_failure().witness)


class RepresentationFileTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = cyclic_group(2, 'u')
        cls.D = group_double(cls.G)
        cls.rho = class_representation(cls.G, conjugacy_classes(cls.G)[1], cls.D)

    def test_round_trip(self):
        spec = json.loads(json.dumps(representation_to_spec(self.rho)))
        self.assertEqual(load_representation(spec, self.D), self.rho)

    def test_wrong_matrix_count(self):
        spec = representation_to_spec(self.rho)
        spec['rhoF'] = spec['rhoF'][:1]
        spec['rhoU'] = spec['rhoU'][:1]
        with self.assertRaises(SpecFileError) as ctx:
            load_representation(spec, self.D, source='rep.json')
        self.assertEqual(ctx.exception.location, 'rep.json:rhoF')

    def test_bimodule_from_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            algebra_path = os.path.join(tmp, 'fz2.json')
            rep_path = os.path.join(tmp, 'rep.json')
            with open(algebra_path, 'w') as f:
                json.dump(algebra_to_spec(self.D.F), f)
            with open(rep_path, 'w') as f:
                json.dump(representation_to_spec(self.rho), f)
            result = bimodule_from_files(algebra_path, rep_path)
        self.assertEqual(result['status'], 'success')
        self.assertEqual(result['bimodule']['lambda'], [['1']])
        self.assertTrue(result['bimodule']['round_trip'])
