import json
import os
import tempfile

from django.test import SimpleTestCase

from core.exceptions import ParentMismatch, SizeGuardError
from core.hopf import trivial_hopf
from core.services import algebra_to_spec
from core.tensors import basis_vector
from groups.groups import cyclic_group, function_hopf, symmetric_group

from .double import (
    build_double,
    canonical_r,
    straighten,
    structure_constant_relation,
    verify_quasitriangular,
)
from .services import double_from_file, run_double


def group_double_product(G, D, x, y):
    """(δ_a g)(δ_b h) = [a = g b g^{-1}] δ_a gh, written out directly."""
    a, g = D.split(x)
    b, h = D.split(y)
    if a != G.conjugate(g, b):
        return {}
    return {D.index(a, G.multiply(g, h)): 1}


class TrivialDoubleTests(SimpleTestCase):
    def setUp(self):
        self.D = build_double(trivial_hopf())

    def test_dimension(self):
        self.assertEqual(self.D.dim, 1)

    def test_r_is_one_tensor_one(self):
        R = canonical_r(self.D)
        self.assertEqual(R.r, {(0, 0): 1})
        self.assertEqual(R.r_inverse, {(0, 0): 1})

    def test_quasitriangular(self):
        self.assertTrue(verify_quasitriangular(self.D).passed)


class Z2DoubleTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = cyclic_group(2, 'u')
        cls.F = function_hopf(cls.G)
        cls.D = build_double(cls.F)

    def test_dimension_and_commutativity(self):
        self.assertEqual(self.D.dim, 4)
        self.assertTrue(self.D.algebra.is_commutative)
        self.assertTrue(self.D.algebra.is_cocommutative)

    def test_all_products_against_group_formula(self):
        H = self.D.algebra
        for x in range(4):
            for y in range(4):
                self.assertEqual(
                    H.product(basis_vector(x), basis_vector(y)),
                    group_double_product(self.G, self.D, x, y),
                    (x, y),
                )

    def test_straighten_group_element_past_delta(self):
        u = self.D.U.basis(1)
        delta_u = self.F.basis(1)
        self.assertEqual(straighten(self.D, u, delta_u), self.D.element({3: 1}))

    def test_straighten_with_units(self):
        for k in range(2):
            a = self.F.basis(k)
            X = self.D.U.basis(k)
            self.assertEqual(straighten(self.D, self.D.U.one, a), self.D.embed_f(a))
            self.assertEqual(straighten(self.D, X, self.F.one), self.D.embed_u(X))

    def test_straighten_rejects_two_elements_of_f(self):
        with self.assertRaises(ParentMismatch):
            straighten(self.D, self.F.basis(0), self.F.basis(1))

    def test_r_has_two_summands_and_inverts(self):
        R = canonical_r(self.D)
        self.assertEqual(R.summands, 2)
        report = verify_quasitriangular(self.D, R)
        self.assertTrue(report.get('r_inverse').passed)
        self.assertTrue(report.get('r_inverse_left').passed)

    def test_quasitriangular(self):
        report = verify_quasitriangular(self.D)
        self.assertTrue(report.passed, report.as_dict())

    def test_embeddings(self):
        self.assertTrue(self.D.embeddings.passed)

    def test_size_guard(self):
        with self.assertRaises(SizeGuardError):
            build_double(self.F, max_dim=1)

    def test_axiom_check_of_double_is_opt_in(self):
        D = build_double(self.F)
        self.assertNotIn('axioms', vars(D.algebra))
        self.assertTrue(D.embeddings.passed)
        self.assertTrue(D.algebra.axioms.passed)
        verified = build_double(self.F, verify=True)
        self.assertIn('axioms', vars(verified.algebra))


class S3DoubleTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = symmetric_group(3)
        cls.F = function_hopf(cls.G)
        cls.D = build_double(cls.F)

    def test_dimension_and_axioms(self):
        self.assertEqual(self.D.dim, 36)
        self.assertTrue(self.D.algebra.axioms.passed)
        self.assertFalse(self.D.algebra.is_commutative)
        self.assertFalse(self.D.algebra.is_cocommutative)

    def test_products_against_group_formula(self):
        H = self.D.algebra
        for x in range(36):
            for y in range(36):
                self.assertEqual(
                    H.product(basis_vector(x), basis_vector(y)),
                    group_double_product(self.G, self.D, x, y),
                )

    def test_quasitriangular(self):
        report = verify_quasitriangular(self.D)
        self.assertTrue(report.passed, report.as_dict())
        self.assertEqual(
            [r.name for r in report.results],
            ['r_inverse', 'r_inverse_left', 'quasitriangularity', 'hexagon_left', 'hexagon_right'],
        )

    def test_r_has_six_summands(self):
        self.assertEqual(canonical_r(self.D).summands, 6)

    def test_structure_constant_relation(self):
        self.assertTrue(structure_constant_relation(self.D).passed)

    def test_embeddings(self):
        self.assertTrue(self.D.embeddings.passed)


class DoubleServiceTests(SimpleTestCase):
    def test_run_double(self):
        result = run_double(function_hopf(cyclic_group(3)))
        self.assertEqual(result['status'], 'success')
        self.assertEqual(result['double']['dim'], 9)
        self.assertEqual(result['double']['r_terms'], 3)
        self.assertTrue(result['double']['quasitriangular']['passed'])
        self.assertTrue(result['double']['axioms']['passed'])

    def test_double_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'fz2.json')
            with open(path, 'w') as f:
                json.dump(algebra_to_spec(function_hopf(cyclic_group(2, 'u'))), f)
            result = double_from_file(path)
        self.assertTrue(result['passed'])
        self.assertTrue(result['double']['commutative'])
