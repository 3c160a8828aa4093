from fractions import Fraction

from django.test import SimpleTestCase

from bicovariant.representations import trivial_representation
from calculus.calculus import differential_vector, find_calculus, make_calculus
from core.exceptions import CochainError
from core.tensors import basis_vector
from groups.classes import class_representation, conjugacy_classes, group_double, trivial_restriction_representation
from groups.groups import cyclic_group, symmetric_group

from .cochains import (
    Cochain,
    basis_cochain,
    coboundary,
    coboundary_preimage,
    cohomology_spaces,
    constant_cochain,
    inv_gamma_bimodule,
    verify_coefficient_bimodule,
)
from .correspondence import (
    bullet_action,
    calculus_to_cocycle,
    cocycle_to_calculus,
    extend_from_f,
    inner_differential,
    invariant_cocycle_correspondence,
    is_invariant,
    restrict_to_f,
    verify_inner,
)
from .services import cohomology_section, universal_section
from .universal import multiplication_kernel, universal_cocycle, universal_differential_check, verify_universal_cocycle


class Z2ComplexTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = cyclic_group(2, 'u')
        cls.D = group_double(cls.G)
        cls.rho = class_representation(cls.G, conjugacy_classes(cls.G)[1], cls.D)
        cls.calculus = find_calculus(cls.rho).calculus
        cls.over_d = inv_gamma_bimodule(cls.rho, 'D')
        cls.over_f = inv_gamma_bimodule(cls.rho, 'F')

    def test_bimodule_axioms(self):
        for module in (self.over_d, self.over_f):
            report = verify_coefficient_bimodule(module)
            self.assertTrue(report.passed, report.as_dict())

    def test_coboundary_squares_to_zero(self):
        for module in (self.over_d, self.over_f):
            for k in (0, 1):
                for j in range(module.cochain_dim(k)):
                    self.assertTrue(coboundary(coboundary(basis_cochain(module, k, j))).is_zero, (module, k, j))

    def test_cohomology_over_f(self):
        h0 = cohomology_spaces(self.over_f, 0)
        h1 = cohomology_spaces(self.over_f, 1)
        self.assertEqual((h0.z_dim, h0.b_dim, h0.h_dim), (0, 0, 0))
        self.assertEqual((h1.z_dim, h1.b_dim, h1.h_dim), (1, 1, 0))
        self.assertTrue(h1.report.passed)

    def test_degree_two_is_rejected(self):
        with self.assertRaises(CochainError):
            cohomology_spaces(self.over_f, 2)

    def test_calculus_cocycle_values(self):
        phi = calculus_to_cocycle(self.calculus, self.over_d)
        self.assertEqual(phi.value(self.D.index(1, 0)), (1,))
        self.assertEqual(phi.value(self.D.index(1, 1)), (1,))
        self.assertEqual(phi.value(self.D.index(0, 0)), (-1,))
        self.assertEqual(phi.value(self.D.index(0, 1)), (-1,))

    def test_cocycle_round_trip(self):
        phi = calculus_to_cocycle(self.calculus)
        self.assertEqual(cocycle_to_calculus(phi, self.rho).chi, self.calculus.chi)

    def test_calculus_cocycle_is_a_coboundary(self):
        phi = calculus_to_cocycle(self.calculus, self.over_d)
        gamma = coboundary_preimage(phi)
        self.assertIsNotNone(gamma)
        self.assertEqual(coboundary(gamma), phi)

    def test_cochain_not_vanishing_on_u_is_rejected(self):
        phi = Cochain(self.over_d, 1, {self.over_d.encode((self.D.index(0, 0),), 0): Fraction(1)})
        with self.assertRaises(CochainError):
            cocycle_to_calculus(phi, self.rho)

    def test_zero_cocycle_gives_degenerate_calculus(self):
        c = cocycle_to_calculus(Cochain(self.over_d, 1, {}), self.rho)
        self.assertTrue(c.degenerate)

    def test_inner_differential_signs(self):
        d = inner_differential([-1], self.rho)
        self.assertEqual(d(basis_vector(1)).coords, ({0: 1, 1: -1},))
        self.assertEqual(d(basis_vector(1)), differential_vector(self.calculus, basis_vector(1)))
        self.assertEqual(inner_differential([1], self.rho)(basis_vector(1)).coords, ({0: -1, 1: 1},))

    def test_inner_differential_checks(self):
        report = verify_inner(inner_differential([-1], self.rho))
        self.assertTrue(report.passed, report.as_dict())
        self.assertEqual(
            [r.name for r in report.results],
            ['left_invariant', 'right_invariant', 'commutator', 'leibniz', 'd_one'],
        )


class TrivialRestrictionTests(SimpleTestCase):
    def test_no_coboundaries_over_f(self):
        G = symmetric_group(3)
        rho = trivial_restriction_representation(G)
        h1 = cohomology_spaces(inv_gamma_bimodule(rho, 'F'), 1)
        self.assertEqual(h1.b_dim, 0)
        self.assertEqual(h1.z_dim, h1.h_dim)

    def test_trivial_representation_cohomology(self):
        D = group_double(cyclic_group(3))
        over_f = inv_gamma_bimodule(trivial_representation(D), 'F')
        self.assertEqual(cohomology_spaces(over_f, 0).z_dim, 1)
        self.assertEqual(cohomology_spaces(over_f, 1).b_dim, 0)


class S3CocycleTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = symmetric_group(3)
        cls.D = group_double(cls.G)
        cls.transpositions = conjugacy_classes(cls.G)[1]
        cls.rho = class_representation(cls.G, cls.transpositions, cls.D)
        cls.calculus = find_calculus(cls.rho).calculus
        cls.phi = calculus_to_cocycle(cls.calculus)
        cls.psi = restrict_to_f(cls.phi, cls.rho)

    def test_restriction_is_chi(self):
        for a in range(self.G.order):
            expected = tuple(int(a == g) - int(a == 0) for g in self.transpositions.members)
            self.assertEqual(self.psi.value(a), expected, a)

    def test_restriction_is_invariant(self):
        self.assertTrue(is_invariant(self.psi, self.rho))
        self.assertTrue(coboundary(self.psi).is_zero)

    def test_extension_recovers_the_cocycle(self):
        self.assertEqual(extend_from_f(self.psi, self.rho), self.phi)

    def test_bullet_action_by_group_element(self):
        moved = bullet_action(self.psi, basis_vector(3), self.rho)
        self.assertEqual(moved, self.psi)

    def test_bullet_action_moves_a_non_invariant_cochain(self):
        over_f = self.psi.module
        single = basis_cochain(over_f, 1, over_f.encode((1,), 0))
        self.assertNotEqual(bullet_action(single, basis_vector(3), self.rho), single)
        self.assertFalse(is_invariant(single, self.rho))

    def test_correspondence(self):
        correspondence = invariant_cocycle_correspondence(self.rho)
        self.assertTrue(correspondence.report.passed, correspondence.report.as_dict())
        self.assertEqual(len(correspondence.double_side), len(correspondence.f_side))
        self.assertGreaterEqual(correspondence.dim, 1)

    def test_inner_differential_matches_calculus(self):
        d = inner_differential([-1, -1, -1], self.rho, self.calculus.bimodule)
        for a in range(self.G.order):
            self.assertEqual(d(basis_vector(a)), differential_vector(self.calculus, basis_vector(a)), a)
        report = verify_inner(d)
        self.assertTrue(report.passed, report.as_dict())
        self.assertTrue(report.get('left_invariant').passed)
        self.assertTrue(report.get('right_invariant').passed)

    def test_sum_of_generators_cobounds_to_class_cochain(self):
        gamma = constant_cochain(self.psi.module, [1, 1, 1])
        self.assertEqual(coboundary(gamma), -self.psi)

    def test_non_invariant_gamma_is_rejected(self):
        with self.assertRaises(CochainError):
            inner_differential([1, 0, 0], self.rho)

    def test_three_cycle_cocycle_round_trip(self):
        rho = class_representation(self.G, conjugacy_classes(self.G)[2], self.D)
        c = find_calculus(rho).calculus
        self.assertEqual(cocycle_to_calculus(calculus_to_cocycle(c), rho).chi, c.chi)

    def test_rescaled_cocycle_is_still_a_calculus(self):
        doubled = self.phi.scaled(Fraction(2))
        c = cocycle_to_calculus(doubled, self.rho)
        expected = make_calculus(self.rho, tuple({k: 2 * v for k, v in x.items()} for x in self.calculus.chi))
        self.assertEqual(c.chi, expected.chi)


class UniversalCocycleTests(SimpleTestCase):
    def test_z2(self):
        D = group_double(cyclic_group(2, 'u'))
        report = verify_universal_cocycle(D)
        self.assertTrue(report.passed, report.as_dict())
        phi = universal_cocycle(D)
        self.assertEqual(phi.at(D.embed_f_vector(basis_vector(1))), (0, 1))
        self.assertEqual(phi.at(D.embed_f_vector(basis_vector(0))), (0, -1))

    def test_s3(self):
        D = group_double(symmetric_group(3))
        report = verify_universal_cocycle(D)
        self.assertTrue(report.passed, report.as_dict())

    def test_universal_differential(self):
        for G in (cyclic_group(2, 'u'), symmetric_group(3)):
            D = group_double(G)
            report = universal_differential_check(D)
            self.assertTrue(report.passed, report.as_dict())
            self.assertEqual(len(multiplication_kernel(D.F)), G.order ** 2 - G.order)

    def test_universal_section(self):
        log = []
        section = universal_section(group_double(cyclic_group(3)), log)
        self.assertTrue(section['passed'])
        self.assertEqual(len(log), 1)


class CohomologyServiceTests(SimpleTestCase):
    def test_z2_section(self):
        G = cyclic_group(2, 'u')
        rho = class_representation(G, conjugacy_classes(G)[1])
        c = find_calculus(rho).calculus
        log = []
        section = cohomology_section(rho, log, calculus=c)
        self.assertTrue(section['passed'], section)
        self.assertEqual(section['F']['H1']['H'], 0)
        self.assertEqual(section['F']['H1']['B'], 1)
        self.assertTrue(section['calculus']['coboundary_over_D'])
        self.assertTrue(section['calculus']['round_trip'])
        self.assertEqual(section['invariant_cocycles']['f_side'], section['invariant_cocycles']['double_side'])
