import json
import os
import tempfile
from fractions import Fraction

from django.test import SimpleTestCase

from bicovariant.bimodules import rep_to_bimodule
from bicovariant.representations import direct_sum, trivial_representation
from bicovariant.services import representation_to_spec
from core.exceptions import BimoduleError, RepresentationError
from core.hopf import adjoint_action, pair
from core.linalg import as_matrix, identity_matrix
from core.services import algebra_to_spec
from groups.classes import class_representation, conjugacy_classes, group_double
from groups.groups import cyclic_group, group_from_table, symmetric_group

from .calculus import (
    EXHAUSTED,
    FOUND,
    NONE,
    ChiSpace,
    differential,
    extend_representation,
    extended_lambda,
    find_calculus,
    ideal_J,
    left_right_relation_check,
    make_calculus,
    select_independent_chi,
    solve_chi_space,
    strip_extended_representation,
    trivial_calculus,
    verify_calculus,
    verify_chi,
)
from .services import calculi_from_files, calculus_section


def class_chi(C):
    """χ_g = g − e in kG for g in C."""
    return tuple({g: Fraction(1), 0: Fraction(-1)} for g in C.members)


def relabel(G, order):
    """G with element order[k] moved to index k."""
    position = {g: k for k, g in enumerate(order)}
    table = [[position[G.multiply(x, y)] for y in order] for x in order]
    return group_from_table(table, [G.labels[g] for g in order], name=G.name)


class Z2CalculusTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = cyclic_group(2, 'u')
        cls.D = group_double(cls.G)
        cls.F = cls.D.F
        cls.rho = class_representation(cls.G, conjugacy_classes(cls.G)[1], cls.D)
        cls.calculus = find_calculus(cls.rho).calculus

    def test_solution_space_is_u_minus_e(self):
        space = solve_chi_space(self.rho)
        self.assertEqual(space.dim, 1)
        self.assertTrue(space.contains(({0: -1, 1: 1},)))

    def test_selection(self):
        selection = select_independent_chi(solve_chi_space(self.rho))
        self.assertEqual(selection.status, FOUND)
        self.assertEqual(selection.stage, 'singles')
        self.assertEqual(selection.chi, ({0: -1, 1: 1},))

    def test_extended_representation_is_upper_triangular(self):
        extended = self.calculus.extended_rep
        self.assertEqual(extended.n, 2)
        self.assertEqual(extended.rhoF[0], as_matrix([[1, -1], [0, 0]]))
        self.assertEqual(extended.rhoF[1], as_matrix([[0, 1], [0, 1]]))
        self.assertTrue(all(m == identity_matrix(2) for m in extended.rhoU))

    def test_differential(self):
        d_u = differential(self.F.basis(1), self.calculus)
        d_e = differential(self.F.basis(0), self.calculus)
        self.assertEqual(d_u.coords, ({0: 1, 1: -1},))
        self.assertEqual(d_e.coords, ({0: -1, 1: 1},))
        self.assertTrue(differential(self.F.one, self.calculus).is_zero)

    def test_all_checks_pass(self):
        report = verify_calculus(self.calculus)
        self.assertTrue(report.passed, report.as_dict())

    def test_ideal_j_is_zero(self):
        J = ideal_J(self.calculus)
        self.assertEqual(J.dim, 0)
        self.assertTrue(J.report.passed)

    def test_left_right_relation(self):
        for x in range(2):
            self.assertTrue(left_right_relation_check(self.calculus, self.F.basis(x)).passed)

    def test_extended_lambda(self):
        lam, report = extended_lambda(self.calculus)
        self.assertEqual(lam, identity_matrix(4))
        self.assertTrue(report.passed)

    def test_strip_recovers_chi(self):
        rho, chi = strip_extended_representation(self.calculus.extended_rep)
        self.assertEqual(rho, self.rho)
        self.assertEqual(chi, self.calculus.chi)


class TrivialCalculusTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.D = group_double(cyclic_group(2, 'u'))
        cls.rho = trivial_representation(cls.D)

    def test_no_solution(self):
        space = solve_chi_space(self.rho)
        self.assertEqual(space.dim, 0)
        self.assertEqual(select_independent_chi(space).status, NONE)
        self.assertIsNone(find_calculus(self.rho).calculus)

    def test_zero_chi_is_rejected_unless_degenerate(self):
        with self.assertRaises(BimoduleError):
            make_calculus(self.rho, ({},))

    def test_degenerate_calculus(self):
        c = trivial_calculus(self.rho)
        self.assertTrue(c.degenerate)
        self.assertEqual(c.extended_rep, direct_sum(self.rho, self.rho))
        self.assertTrue(differential(self.D.F.basis(1), c).is_zero)
        self.assertTrue(verify_calculus(c).passed)

    def test_j_is_kernel_of_counit(self):
        J = ideal_J(trivial_calculus(self.rho))
        self.assertEqual(J.basis, ({1: 1},))

    def test_extended_lambda_is_identity(self):
        lam, _ = extended_lambda(trivial_calculus(self.rho))
        self.assertEqual(lam, identity_matrix(4))


class S3CalculusTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = symmetric_group(3)
        cls.D = group_double(cls.G)
        _, cls.transpositions, cls.three_cycles = conjugacy_classes(cls.G)
        cls.rho = class_representation(cls.G, cls.transpositions, cls.D)
        cls.bimodule = rep_to_bimodule(cls.rho)
        cls.chi = class_chi(cls.transpositions)
        cls.calculus = make_calculus(cls.rho, cls.chi, bimodule=cls.bimodule)

    def test_class_functionals_satisfy_raw_definitions(self):
        F, U = self.D.F, self.D.U
        b = self.bimodule
        chi = [U.element(x) for x in self.chi]
        for x in range(6):
            for y in range(6):
                a, c = F.basis(x), F.basis(y)
                for i in range(3):
                    rhs = sum((pair(chi[j], a) * pair(b.f_element(j, i), c) for j in range(3)), Fraction(0))
                    rhs += a.counit() * pair(chi[i], c)
                    self.assertEqual(pair(chi[i], a * c), rhs)
        for i in range(3):
            self.assertEqual(pair(chi[i], F.one), 0)
            for p in range(6):
                X = U.basis(p)
                expected = U.element({})
                for k in range(3):
                    expected = expected + pair(X, b.R_element(i, k)) * chi[k]
                self.assertEqual(adjoint_action(X, chi[i]), expected)

    def test_solution_space_contains_class_tuple(self):
        space = solve_chi_space(self.rho)
        self.assertEqual(space.dim, 1)
        self.assertTrue(space.contains(self.chi))

    def test_selection_is_class_tuple(self):
        selection = select_independent_chi(solve_chi_space(self.rho))
        self.assertEqual(selection.status, FOUND)
        self.assertEqual(selection.chi, self.chi)

    def test_all_checks_pass_on_every_product(self):
        report = verify_calculus(self.calculus, exhaustive=True)
        self.assertTrue(report.passed, report.as_dict())
        self.assertIsNotNone(report.get('extended_double_multiplicative'))

    def test_ideal_j(self):
        J = ideal_J(self.calculus)
        self.assertEqual(J.dim, 2)
        self.assertTrue(J.report.passed)

    def test_extended_lambda_pattern(self):
        lam, report = extended_lambda(self.calculus)
        self.assertTrue(report.passed, report.as_dict())
        members = self.transpositions.members
        m = 4
        for i in range(1, m):
            for k in range(1, m):
                for l in range(1, m):
                    g_i, g_k, g_l = members[i - 1], members[k - 1], members[l - 1]
                    expected = int(g_i == self.G.conjugate(self.G.inverse[g_l], g_k)) - int(i == k)
                    self.assertEqual(lam[i * m][k * m + l], expected, (i, k, l))

    def test_three_cycle_calculus(self):
        rho = class_representation(self.G, self.three_cycles, self.D)
        c = find_calculus(rho).calculus
        self.assertEqual(c.n, 2)
        self.assertEqual(c.chi, class_chi(self.three_cycles))
        self.assertTrue(verify_calculus(c, exhaustive=False).passed)

    def test_strip_gives_a_solution(self):
        rho, chi = strip_extended_representation(self.calculus.extended_rep)
        self.assertEqual(rho, self.rho)
        self.assertEqual(chi, self.chi)
        self.assertTrue(verify_chi(self.bimodule, chi).passed)

    def test_strip_rejects_other_shapes(self):
        with self.assertRaises(RepresentationError):
            strip_extended_representation(self.rho)

    def test_rescaled_component_breaks_adjoint_equation(self):
        chi = (dict((g, 2 * v) for g, v in self.chi[0].items()),) + self.chi[1:]
        report = verify_chi(self.bimodule, chi)
        self.assertTrue(report.get('chi_coproduct').passed)
        self.assertFalse(report.get('chi_adjoint').passed)
        with self.assertRaises(BimoduleError):
            make_calculus(self.rho, chi, bimodule=self.bimodule)

    def test_extension_of_solution_is_a_representation(self):
        extended = extend_representation(self.rho, self.chi)
        self.assertEqual(extended.n, 4)
        self.assertTrue(extended.report.passed)

    def test_solution_space_does_not_depend_on_basis_order(self):
        order = [5, 3, 0, 1, 4, 2]
        position = {g: k for k, g in enumerate(order)}
        G2 = relabel(self.G, order)
        members = tuple(sorted(position[g] for g in self.transpositions.members))
        C2 = next(C for C in conjugacy_classes(G2) if C.members == members)
        space2 = solve_chi_space(class_representation(G2, C2))
        space = solve_chi_space(self.rho)
        self.assertEqual(space.dim, space2.dim)
        for chi2 in space2.basis:
            mapped = [None] * 3
            for i2, x in enumerate(chi2):
                g = order[C2.members[i2]]
                mapped[self.transpositions.position(g)] = {order[a]: v for a, v in x.items()}
            self.assertTrue(space.contains(mapped))


class SelectionTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        G = cyclic_group(2, 'u')
        D = group_double(G)
        rho = direct_sum(trivial_representation(D), class_representation(G, conjugacy_classes(G)[1], D))
        cls.bimodule = rep_to_bimodule(rho)

    def test_pairs_stage_and_tie_break(self):
        space = ChiSpace(bimodule=self.bimodule, basis=(({0: 1}, {}), ({}, {1: 1})))
        selection = select_independent_chi(space)
        self.assertEqual(selection.status, FOUND)
        self.assertEqual(selection.stage, 'pairs')
        self.assertEqual(selection.chi, ({0: -2}, {1: 1}))
        self.assertEqual(select_independent_chi(space), selection)

    def test_dependent_components_certify_none(self):
        space = ChiSpace(bimodule=self.bimodule, basis=(({0: 1}, {0: 1}),))
        self.assertEqual(select_independent_chi(space).status, NONE)

    def test_failed_search_is_exhausted(self):
        space = ChiSpace(bimodule=self.bimodule, basis=(({0: 1}, {}), ({1: 1}, {})))
        selection = select_independent_chi(space, draws=4, seed=1)
        self.assertEqual(selection.status, EXHAUSTED)
        self.assertIsNone(selection.chi)
        self.assertGreaterEqual(selection.tried, 18)


class CalculusServiceTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.G = symmetric_group(3)
        cls.D = group_double(cls.G)

    def test_section_for_transpositions(self):
        log_messages = []
        rho = class_representation(self.G, conjugacy_classes(self.G)[1], self.D)
        section = calculus_section(rho, log_messages, exhaustive=False)
        self.assertTrue(section['passed'])
        self.assertTrue(section['found'])
        self.assertEqual(section['solution_dim'], 1)
        self.assertEqual(section['calculus']['ideal_J']['dim'], 2)
        self.assertEqual(section['calculus']['chi'][0], ['-1', '1', '0', '0', '0', '0'])
        self.assertTrue(log_messages)

    def test_section_without_calculus(self):
        section = calculus_section(trivial_representation(self.D), [])
        self.assertFalse(section['found'])
        self.assertEqual(section['selection'], NONE)
        self.assertTrue(section['passed'])

    def test_calculi_from_files(self):
        G = cyclic_group(2, 'u')
        D = group_double(G)
        rho = class_representation(G, conjugacy_classes(G)[1], D)
        with tempfile.TemporaryDirectory() as tmp:
            algebra_path = os.path.join(tmp, 'fz2.json')
            rep_path = os.path.join(tmp, 'rep.json')
            with open(algebra_path, 'w') as f:
                json.dump(algebra_to_spec(D.F), f)
            with open(rep_path, 'w') as f:
                json.dump(representation_to_spec(rho), f)
            result = calculi_from_files(algebra_path, rep_path)
        self.assertEqual(result['status'], 'success')
        self.assertEqual(result['calculi'][0]['calculus']['chi'], [['-1', '1']])
