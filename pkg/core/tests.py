import json
import os
import random
import tempfile
from fractions import Fraction

from django.test import SimpleTestCase

from .exceptions import AxiomViolation, DimensionMismatch, FieldError, ParentMismatch, SpecFileError
from .hopf import (
    ad_star,
    adjoint_action,
    big_ad,
    dual_hopf,
    make_hopf_algebra,
    pair,
    star_left,
    star_right,
    trivial_hopf,
)
from .linalg import in_span, inverse, nullspace, rank
from .scalars import field_ops
from .services import algebra_to_spec, load_algebra, read_json_file, verify_hopf
from .tensors import SparseTensor3, basis_vector


def function_algebra_z2(verify=True, mult=None):
    """F(Z2) on the basis δ_e, δ_u, written out by hand."""
    return make_hopf_algebra(
        2,
        mult=mult or [(0, 0, 0, 1), (1, 1, 1, 1)],
        comult=[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1)],
        counit=[1, 0],
        antipode=[[1, 0], [0, 1]],
        unit=[1, 1],
        basis_labels=['d_e', 'd_u'],
        name='F(Z2)',
        verify=verify,
    )


def group_algebra_cyclic(n):
    return make_hopf_algebra(
        n,
        mult=[(a, b, (a + b) % n, 1) for a in range(n) for b in range(n)],
        comult=[(a, a, a, 1) for a in range(n)],
        counit=[1] * n,
        antipode=[{(-a) % n: 1} for a in range(n)],
        unit=[1] + [0] * (n - 1),
        name=f'kZ{n}',
    )


def random_scalar(rng):
    return Fraction(rng.randint(-5, 5), rng.randint(1, 4))


class FieldOpsTests(SimpleTestCase):
    def test_add(self):
        self.assertEqual(field_ops('1/2', '1/3', 'add'), Fraction(5, 6))

    def test_mul_inverse_pair(self):
        self.assertEqual(field_ops(Fraction(2, 3), Fraction(3, 2), 'mul'), 1)

    def test_inverse_of_zero(self):
        with self.assertRaises(FieldError):
            field_ops(0, op='inv')

    def test_results_are_reduced(self):
        value = field_ops('2/4', '1/4', 'add')
        self.assertEqual((value.numerator, value.denominator), (3, 4))

    def test_field_axioms_on_random_triples(self):
        rng = random.Random(11)
        for _ in range(200):
            x, y, z = (random_scalar(rng) for _ in range(3))
            self.assertEqual(field_ops(field_ops(x, y, 'add'), z, 'add'), field_ops(x, field_ops(y, z, 'add'), 'add'))
            self.assertEqual(field_ops(field_ops(x, y, 'mul'), z, 'mul'), field_ops(x, field_ops(y, z, 'mul'), 'mul'))
            self.assertEqual(
                field_ops(x, field_ops(y, z, 'add'), 'mul'),
                field_ops(field_ops(x, y, 'mul'), field_ops(x, z, 'mul'), 'add'),
            )
            if x:
                self.assertEqual(field_ops(x, field_ops(x, op='inv'), 'mul'), 1)


class SparseTensorTests(SimpleTestCase):
    def test_zero_entries_are_dropped(self):
        t = SparseTensor3((2, 2, 2), {(0, 0, 0): 1, (1, 1, 1): 0})
        self.assertEqual(t.nnz, 1)
        self.assertEqual(t.get(1, 1, 1), 0)

    def test_index_outside_dims(self):
        with self.assertRaises(DimensionMismatch):
            SparseTensor3((2, 2, 2), {(0, 2, 0): 1})

    def test_permuted_axes(self):
        t = SparseTensor3((2, 3, 4), {(1, 2, 3): 5})
        p = t.permuted((2, 0, 1))
        self.assertEqual(p.dims, (4, 2, 3))
        self.assertEqual(p.get(3, 1, 2), 5)


class NullspaceTests(SimpleTestCase):
    def test_identity_has_trivial_kernel(self):
        self.assertEqual(nullspace([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), [])

    def test_zero_matrix(self):
        self.assertEqual(len(nullspace([[0, 0, 0], [0, 0, 0]])), 3)

    def test_rank_one(self):
        basis = nullspace([[1, 1], [2, 2]])
        self.assertEqual(len(basis), 1)
        v = basis[0]
        self.assertEqual(v[0], -v[1])
        self.assertNotEqual(v[1], 0)

    def test_random_matrices(self):
        rng = random.Random(3)
        for _ in range(30):
            rows, cols = rng.randint(1, 6), rng.randint(1, 7)
            m = [[rng.choice([0, 0, 1, -1, 2, Fraction(1, 3)]) for _ in range(cols)] for _ in range(rows)]
            basis = nullspace(m)
            for v in basis:
                for row in m:
                    self.assertEqual(sum(a * b for a, b in zip(row, v)), 0)
            self.assertEqual(rank(m) + len(basis), cols)
            self.assertEqual(rank(basis, cols) if basis else 0, len(basis))

    def test_sparse_rows(self):
        basis = nullspace([{0: 1, 2: -1}], ncols=3)
        self.assertEqual(len(basis), 2)
        self.assertTrue(in_span(basis, [1, 0, 1]))
        self.assertFalse(in_span(basis, [1, 0, 0]))

    def test_inverse(self):
        inv = inverse([{0: 2, 1: 1}, {0: 1, 1: 1}], 2)
        self.assertEqual(inv, [{0: 1, 1: -1}, {0: -1, 1: 2}])
        with self.assertRaises(FieldError):
            inverse([{0: 1, 1: 1}, {0: 2, 1: 2}], 2)


class HopfAxiomTests(SimpleTestCase):
    def test_function_algebra_z2_passes(self):
        self.assertTrue(function_algebra_z2().axioms.passed)

    def test_group_algebra_z3_passes(self):
        self.assertTrue(group_algebra_cyclic(3).axioms.passed)

    def test_trivial_algebra_passes(self):
        self.assertTrue(trivial_hopf().axioms.passed)

    def test_corrupted_multiplication_fails_with_witness(self):
        broken = function_algebra_z2(verify=False, mult=[(0, 0, 0, 1), (1, 1, 1, 2)])
        report = broken.axioms
        self.assertFalse(report.passed)
        self.assertIsNotNone(report.first_failure().witness)
        with self.assertRaises(AxiomViolation):
            broken.require_axioms()

    def test_each_single_corruption_is_detected(self):
        good = algebra_to_spec(function_algebra_z2())
        corruptions = [
            ('mult', 0), ('mult', 1), ('comult', 0), ('comult', 3), ('antipode', 1),
        ]
        for key, position in corruptions:
            data = json.loads(json.dumps(good))
            data[key][position][-1] = str(Fraction(data[key][position][-1]) + 1)
            with self.subTest(key=key, position=position):
                report = load_algebra(data).axioms
                self.assertFalse(report.passed)
                self.assertIsNotNone(report.first_failure().witness)

    def test_dimension_mismatch_is_structural(self):
        with self.assertRaises(DimensionMismatch):
            make_hopf_algebra(2, [(0, 0, 0, 1)], [(0, 0, 0, 1)], [1], [[1, 0], [0, 1]], [1, 1])


class DualTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.F = function_algebra_z2()
        cls.U = dual_hopf(cls.F)

    def test_dual_of_function_algebra_is_group_algebra(self):
        self.assertEqual(self.U, group_algebra_cyclic(2))
        self.assertTrue(self.U.axioms.passed)

    def test_dual_of_trivial_algebra(self):
        self.assertEqual(dual_hopf(trivial_hopf()), trivial_hopf())

    def test_antipode_inverse(self):
        for H in (self.F, self.U, group_algebra_cyclic(3)):
            for a in range(H.dim):
                self.assertEqual(H.apply_antipode(H.apply_antipode_inverse(basis_vector(a))), basis_vector(a))

    def test_pairing_is_dual_basis(self):
        self.assertEqual(pair(self.U.basis(0), self.F.basis(0)), 1)
        self.assertEqual(pair(self.U.basis(0), self.F.basis(1)), 0)
        self.assertEqual(pair(self.U.basis(1), self.F.basis(1)), 1)

    def test_pairing_rejects_unrelated_parents(self):
        with self.assertRaises(ParentMismatch):
            pair(self.F.basis(0), self.F.basis(0))

    def test_duality_compatibility(self):
        rng = random.Random(5)
        F, U = self.F, self.U
        for _ in range(20):
            f = U.element([random_scalar(rng) for _ in range(2)])
            g = U.element([random_scalar(rng) for _ in range(2)])
            a = F.element([random_scalar(rng) for _ in range(2)])
            b = F.element([random_scalar(rng) for _ in range(2)])
            coproduct = a.coproduct()
            expected = sum(c * f.coords.get(i, 0) * g.coords.get(j, 0) for (i, j), c in coproduct.items())
            self.assertEqual(pair(f * g, a), expected)
            # opposite coproduct of U pairs with the opposite product of F
            opposite = sum(c * a.coords.get(i, 0) * b.coords.get(j, 0) for (i, j), c in f.coproduct().items())
            self.assertEqual(opposite, pair(f, b * a))


class StarProductTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.F = function_algebra_z2()
        cls.U = dual_hopf(cls.F)
        cls.e, cls.u = cls.U.basis(0), cls.U.basis(1)
        cls.d_e, cls.d_u = cls.F.basis(0), cls.F.basis(1)

    def test_counit_functional_acts_trivially(self):
        epsilon = self.U.one
        for a in (self.d_e, self.d_u, self.F.one):
            self.assertEqual(star_left(epsilon, a), a)
            self.assertEqual(star_right(a, epsilon), a)

    def test_star_left_by_group_element(self):
        self.assertEqual(star_left(self.u, self.d_u), self.d_e)
        self.assertEqual(star_left(self.u - self.e, self.d_u), self.d_e - self.d_u)

    def test_star_right_by_group_element(self):
        self.assertEqual(star_right(self.d_u, self.u), self.d_e)

    def test_star_right_on_unit(self):
        f = 3 * self.u - self.e
        self.assertEqual(star_right(self.F.one, f), f.counit() * self.F.one)

    def test_star_module_associativity(self):
        rng = random.Random(9)
        for _ in range(20):
            f = self.U.element([random_scalar(rng) for _ in range(2)])
            g = self.U.element([random_scalar(rng) for _ in range(2)])
            a = self.F.element([random_scalar(rng) for _ in range(2)])
            self.assertEqual(star_left(f, star_left(g, a)), star_left(f * g, a))
            self.assertEqual(star_right(star_right(a, f), g), star_right(a, f * g))


class AdjointTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.F = function_algebra_z2()
        cls.U = dual_hopf(cls.F)

    def test_adjoint_action_of_unit(self):
        Y = 2 * self.U.basis(1) - self.U.basis(0)
        self.assertEqual(adjoint_action(self.U.one, Y), Y)

    def test_adjoint_action_of_group_like(self):
        u = self.U.basis(1)
        self.assertEqual(adjoint_action(u, u), u)

    def test_ad_star_of_unit(self):
        one = self.F.one
        self.assertEqual(ad_star(one), {(i, j): 1 for i in range(2) for j in range(2)})

    def test_ad_star_of_delta_u(self):
        self.assertEqual(ad_star(self.F.basis(1)), {(1, 0): 1, (1, 1): 1})

    def test_big_ad_identities(self):
        a = self.F.element([3, Fraction(-1, 2)])
        self.assertEqual(big_ad(self.U.one, a), a)
        X = self.U.element([2, 5])
        self.assertEqual(big_ad(X, self.F.one), X.counit() * self.F.one)


class AlgebraFileTests(SimpleTestCase):
    def test_round_trip(self):
        F = function_algebra_z2()
        again = load_algebra(json.loads(json.dumps(algebra_to_spec(F))))
        self.assertEqual(again, F)
        self.assertEqual(again.basis_labels, F.basis_labels)

    def test_malformed_entry_has_location(self):
        data = algebra_to_spec(function_algebra_z2())
        data['mult'][1] = [1, 1, 'x']
        with self.assertRaises(SpecFileError) as ctx:
            load_algebra(data, source='broken.json')
        self.assertIn('broken.json:mult[1]', str(ctx.exception))

    def test_index_outside_dimension(self):
        data = algebra_to_spec(function_algebra_z2())
        data['comult'][0] = [0, 5, 0, '1']
        with self.assertRaises(SpecFileError):
            load_algebra(data)

    def test_verify_hopf_reports_failure(self):
        data = algebra_to_spec(function_algebra_z2())
        data['mult'][1][-1] = '2'
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'broken.json')
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(data, f)
            result = verify_hopf(path)
        self.assertFalse(result['passed'])
        failed = [c for c in result['axioms']['checks'] if not c['passed']]
        self.assertTrue(failed and 'witness' in failed[0])

    def test_unreadable_paths_are_spec_file_errors(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(SpecFileError) as ctx:
                read_json_file(tmp)
            self.assertEqual(ctx.exception.location, tmp)
            path = os.path.join(tmp, 'latin.json')
            with open(path, 'wb') as f:
                f.write(b'{"name": "\xe9"}')
            with self.assertRaises(SpecFileError) as ctx:
                read_json_file(path)
            self.assertEqual(ctx.exception.location, path)
            self.assertIn('not UTF-8', str(ctx.exception))
