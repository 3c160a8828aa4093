import json

from django.test import SimpleTestCase

from core.exceptions import GroupError, SizeGuardError, SpecFileError
from core.hopf import dual_hopf
from core.services import load_algebra
from hochschild.cochains import coboundary, constant_cochain

from .classes import (
    class_calculus,
    class_chi,
    class_representation,
    conjugacy_classes,
    group_double,
    trivial_restriction_representation,
)
from .groups import (
    cycle_label,
    cyclic_group,
    function_hopf,
    group_algebra,
    group_from_table,
    group_to_spec,
    load_group,
    parse_cycles,
    symmetric_group,
)
from .services import group_from_options, run_group


class GroupLoadingTests(SimpleTestCase):
    def test_cyclic_group(self):
        G = cyclic_group(2, 'u')
        self.assertEqual(G.order, 2)
        self.assertEqual(G.labels, ('e', 'u'))
        self.assertEqual(G.inverse, (0, 1))

    def test_generators_close_to_s3(self):
        G = load_group("(12),(123)")
        self.assertEqual(G.order, 6)
        self.assertEqual(G.labels, ('e', '(23)', '(12)', '(123)', '(132)', '(13)'))
        self.assertEqual(G.table, symmetric_group(3).table)

    def test_spaced_cycle_notation(self):
        self.assertEqual(parse_cycles("(1 2)(3 4), e"), [[[0, 1], [2, 3]], []])
        self.assertEqual(cycle_label((1, 0, 3, 2)), '(12)(34)')

    def test_table_file(self):
        G = load_group({'name': 'Z2', 'elements': ['e', 'u'], 'table': [[0, 1], [1, 0]]})
        self.assertEqual(G, cyclic_group(2, 'u'))

    def test_broken_associativity_has_witness(self):
        with self.assertRaises(GroupError) as ctx:
            group_from_table([[0, 1, 2], [1, 0, 1], [2, 2, 0]])
        self.assertEqual(ctx.exception.witness, (1, 1, 2))

    def test_missing_inverse(self):
        with self.assertRaises(GroupError) as ctx:
            group_from_table([[0, 1], [1, 1]])
        self.assertEqual(ctx.exception.witness, 1)

    def test_ragged_table_is_a_spec_error(self):
        with self.assertRaises(SpecFileError) as ctx:
            load_group({'table': [[0, 1], [1]]})
        self.assertIn('table', ctx.exception.location)

    def test_table_and_generators_are_exclusive(self):
        with self.assertRaises(SpecFileError):
            load_group({'table': [[0]], 'generators': '(12)'})

    def test_unbalanced_generators(self):
        with self.assertRaises(SpecFileError):
            load_group("(12")

    def test_size_guard(self):
        with self.assertRaises(SizeGuardError):
            load_group("(12),(123)", max_order=4)
        with self.assertRaises(SizeGuardError):
            group_from_table(cyclic_group(3).table, max_order=2)

    def test_options_need_exactly_one_source(self):
        with self.assertRaises(ValueError):
            group_from_options()
        self.assertEqual(group_from_options(generators="(12)").order, 2)


class GroupHopfTests(SimpleTestCase):
    def test_trivial_group(self):
        F = function_hopf(group_from_table([[0]], ['e']))
        self.assertEqual(F.dim, 1)
        self.assertTrue(F.axioms.passed)

    def test_function_algebra_axioms(self):
        for G in (cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)):
            self.assertTrue(function_hopf(G).axioms.passed, G)

    def test_dual_of_s3_functions_is_group_algebra(self):
        G = symmetric_group(3)
        self.assertEqual(dual_hopf(function_hopf(G)), group_algebra(G))

    def test_s3_functions_are_not_cocommutative(self):
        F = function_hopf(symmetric_group(3))
        self.assertTrue(F.is_commutative)
        self.assertFalse(F.is_cocommutative)

    def test_group_file_round_trip(self):
        G = symmetric_group(3)
        self.assertEqual(load_group(json.loads(json.dumps(group_to_spec(G)))), G)

    def test_export_round_trip(self):
        G = symmetric_group(3)
        spec = json.loads(json.dumps(run_group(G, 'export')['spec']))
        self.assertEqual(load_algebra(spec), function_hopf(G))


class ConjugacyClassTests(SimpleTestCase):
    def test_z2(self):
        self.assertEqual([C.members for C in conjugacy_classes(cyclic_group(2))], [(0,), (1,)])

    def test_z3_singletons(self):
        self.assertEqual([C.size for C in conjugacy_classes(cyclic_group(3))], [1, 1, 1])

    def test_s3(self):
        classes = conjugacy_classes(symmetric_group(3))
        self.assertEqual([C.members for C in classes], [(0,), (1, 2, 5), (3, 4)])
        self.assertEqual([C.representative for C in classes], [0, 1, 3])
        self.assertTrue(classes[0].is_trivial(symmetric_group(3)))

    def test_classes_are_closed_and_partition(self):
        for G in (cyclic_group(4), symmetric_group(3), symmetric_group(4)):
            classes = conjugacy_classes(G)
            self.assertEqual(sorted(g for C in classes for g in C.members), list(range(G.order)))
            for C in classes:
                self.assertEqual({G.conjugate(h, g) for h in range(G.order) for g in C.members}, set(C.members))

    def test_class_representation_matrices(self):
        G = cyclic_group(2, 'u')
        rho = class_representation(G, conjugacy_classes(G)[1])
        self.assertEqual(rho.n, 1)
        self.assertEqual([m[0][0] for m in rho.rhoF], [0, 1])
        self.assertEqual([m[0][0] for m in rho.rhoU], [1, 1])

    def test_trivial_class_representation(self):
        G = symmetric_group(3)
        rho = class_representation(G, conjugacy_classes(G)[0])
        self.assertEqual([m[0][0] for m in rho.rhoF], [1, 0, 0, 0, 0, 0])
        self.assertTrue(all(m[0][0] == 1 for m in rho.rhoU))

    def test_trivial_restriction_needs_permutations(self):
        with self.assertRaises(GroupError):
            trivial_restriction_representation(cyclic_group(3))

    def test_trivial_restriction_representation(self):
        rho = trivial_restriction_representation(symmetric_group(3))
        self.assertEqual(rho.n, 2)
        self.assertTrue(rho.report.passed)


class ClassCalculusTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.S3 = symmetric_group(3)
        cls.D = group_double(cls.S3)

    def test_z2(self):
        G = cyclic_group(2, 'u')
        result = class_calculus(G, conjugacy_classes(G)[1])
        self.assertEqual(result.calculus.chi, ({0: -1, 1: 1},))
        self.assertEqual(result.psi.value(1), (-1,))
        self.assertEqual(result.psi.value(0), (1,))
        self.assertTrue(result.report.passed, result.report.as_dict())

    def test_s3_transpositions(self):
        C = conjugacy_classes(self.S3)[1]
        result = class_calculus(self.S3, C, self.D)
        self.assertEqual(result.calculus.n, 3)
        self.assertTrue(result.report.passed, result.report.as_dict())
        gamma = constant_cochain(result.psi.module, [1, 1, 1])
        self.assertEqual(coboundary(gamma), result.psi)
        self.assertTrue(coboundary(result.psi).is_zero)

    def test_s3_three_cycles(self):
        result = class_calculus(self.S3, conjugacy_classes(self.S3)[2], self.D)
        self.assertEqual(result.calculus.n, 2)
        self.assertEqual(result.calculus.chi, class_chi(self.S3, conjugacy_classes(self.S3)[2]))
        self.assertTrue(result.report.passed, result.report.as_dict())

    def test_trivial_class_is_degenerate(self):
        result = class_calculus(self.S3, conjugacy_classes(self.S3)[0], self.D)
        self.assertTrue(result.calculus.degenerate)
        self.assertTrue(result.psi.is_zero)
        self.assertTrue(result.report.passed)

    def test_every_nontrivial_class_of_the_fixture_groups(self):
        for G in (cyclic_group(2), cyclic_group(3), cyclic_group(4)):
            D = group_double(G)
            for C in conjugacy_classes(G)[1:]:
                self.assertTrue(class_calculus(G, C, D).report.passed, (G, C))


class GroupServiceTests(SimpleTestCase):
    def test_s3_calculi(self):
        result = run_group(load_group("(12),(123)"), 'calculi')
        self.assertEqual(result['status'], 'success')
        self.assertEqual(result['found'], 2)
        self.assertEqual(result['dims'], [3, 2])
        self.assertTrue(result['counts_agree'])
        self.assertEqual(result['calculi'][1]['chi'], [
            ['-1', '0', '0', '1', '0', '0'],
            ['-1', '0', '0', '0', '1', '0'],
        ])

    def test_calculus_counts(self):
        for G, expected in ((cyclic_group(2), 1), (cyclic_group(3), 2)):
            result = run_group(G, 'calculi')
            self.assertEqual(result['found'], expected)
            self.assertTrue(result['passed'])

    def test_classes(self):
        result = run_group(symmetric_group(3), 'classes')
        self.assertEqual([c['size'] for c in result['group']['classes']], [1, 3, 2])
        self.assertEqual(result['group']['classes'][1]['members'], ['(23)', '(12)', '(13)'])

    def test_unknown_action(self):
        with self.assertRaises(ValueError):
            run_group(cyclic_group(2), 'characters')
