import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from bicovariant.services import representation_to_spec
from core.services import algebra_to_spec
from groups.classes import class_representation, conjugacy_classes
from groups.groups import cyclic_group, function_hopf

from .models import Job
from .services import create_job, execute_job, run_job


def write_json(directory, name, data):
    path = os.path.join(directory, name)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f)
    return path


def broken_z2_spec():
    data = algebra_to_spec(function_hopf(cyclic_group(2)))
    data['mult'][1][-1] = '2'
    return data


class HopfDoubleCommandTests(SimpleTestCase):
    def run_command(self, *args):
        out = StringIO()
        call_command('hopfdouble', *args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            self.run_command(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def test_eq2(self):
        report = json.loads(self.run_command('eq2', '--z', '0.7', '--tol', '1e-10'))
        self.assertTrue(report['passed'])
        self.assertEqual(report['command']['name'], 'eq2')
        self.assertEqual([s['z'] for s in report['samples']], [0.7])
        self.assertEqual(len(report['samples'][0]['relations']['residuals']), 15)

    def test_eq2_zero_parameter_is_an_input_error(self):
        self.assertExitCode(2, 'eq2', '--z', '0')

    def test_eq2_tolerance_must_be_positive(self):
        self.assertExitCode(2, 'eq2', '--z', '0.7', '--tol', '0')

    def test_group_calculi(self):
        report = json.loads(self.run_command('group', '--generators', '(12),(123)', 'calculi'))
        self.assertEqual(report['found'], 2)
        self.assertEqual(report['dims'], [3, 2])
        self.assertEqual(report['command']['parameters']['generators'], '(12),(123)')

    def test_group_size_guard(self):
        self.assertExitCode(2, 'group', '--generators', '(12),(123)', '--max-dim', '4', 'calculi')

    def test_group_table_errors(self):
        path = write_json(self.tmp.name, 'table.json', {'table': [[0, 1], [1, 1]]})
        self.assertExitCode(2, 'group', '--table', path, 'classes')

    def test_export_round_trip(self):
        path = os.path.join(self.tmp.name, 'fs3.json')
        self.run_command('group', '--generators', '(12),(123)', 'export', '--out', path)
        report = json.loads(self.run_command('verify-hopf', path))
        self.assertTrue(report['passed'])
        self.assertEqual(report['algebra']['dim'], 6)

    def test_verify_hopf_failure_has_witness(self):
        path = write_json(self.tmp.name, 'broken.json', broken_z2_spec())
        out = os.path.join(self.tmp.name, 'report.json')
        self.assertExitCode(1, 'verify-hopf', path, '--out', out)
        with open(out, encoding='utf-8') as f:
            report = json.load(f)
        failed = [c for c in report['axioms']['checks'] if not c['passed']]
        self.assertTrue(failed and 'witness' in failed[0])

    def test_double_of_broken_algebra(self):
        path = write_json(self.tmp.name, 'broken.json', broken_z2_spec())
        out = os.path.join(self.tmp.name, 'report.json')
        self.assertExitCode(1, 'double', path, '--out', out)
        with open(out, encoding='utf-8') as f:
            report = json.load(f)
        self.assertEqual(report['error_type'], 'AxiomViolation')
        self.assertIn('axioms', report)

    def test_missing_file(self):
        error = self.assertExitCode(2, 'verify-hopf', os.path.join(self.tmp.name, 'absent.json'))
        self.assertIn('absent.json', str(error))

    def test_malformed_file(self):
        path = os.path.join(self.tmp.name, 'bad.json')
        with open(path, 'w', encoding='utf-8') as f:
            f.write('{"dim": 2,\n')
        self.assertExitCode(2, 'double', path)

    def test_directory_instead_of_file(self):
        error = self.assertExitCode(2, 'verify-hopf', self.tmp.name)
        self.assertIn(self.tmp.name, str(error))

    def test_non_utf8_file(self):
        path = os.path.join(self.tmp.name, 'latin.json')
        with open(path, 'wb') as f:
            f.write(b'\xff\xfe{')
        error = self.assertExitCode(2, 'verify-hopf', path)
        self.assertIn('latin.json', str(error))
        self.assertIn('not UTF-8', str(error))

    def test_calculi_and_cohomology_from_files(self):
        G = cyclic_group(2, 'u')
        rho = class_representation(G, conjugacy_classes(G)[1])
        algebra = write_json(self.tmp.name, 'fz2.json', algebra_to_spec(function_hopf(G)))
        rep = write_json(self.tmp.name, 'rep.json', representation_to_spec(rho))
        for subcommand in ('bimodule', 'calculi', 'cohomology'):
            report = json.loads(self.run_command(subcommand, algebra, rep))
            self.assertTrue(report['passed'], subcommand)

    def test_reports_are_deterministic(self):
        args = ('group', '--generators', '(12),(123)', 'calculi')
        self.assertEqual(self.run_command(*args), self.run_command(*args))


class RunJobTests(SimpleTestCase):
    def test_unknown_job_type(self):
        with self.assertRaises(ValueError):
            run_job('plot', {})

    def test_command_echo(self):
        report = run_job('group', {'generators': '(12)', 'action': 'classes'})
        self.assertEqual(report['command'], {'name': 'group', 'parameters': {'generators': '(12)', 'action': 'classes'}})
        self.assertEqual(report['status'], 'success')


class JobLedgerTests(TestCase):
    def test_execute_job(self):
        job = create_job('group', {'generators': '(12),(123)', 'action': 'classes'})
        self.assertEqual(job.status, 'pending')
        result = execute_job(job.id)
        job.refresh_from_db()
        self.assertEqual(result['status'], 'success')
        self.assertEqual(job.status, 'success')
        self.assertEqual(job.get_report()['group']['order'], 6)
        self.assertIsNotNone(job.finished_at)
        self.assertIn('Job completed with status: success', job.log)

    def test_input_error_is_recorded(self):
        job = create_job('eq2', {'z': [0.0]})
        result = execute_job(job.id)
        job.refresh_from_db()
        self.assertTrue(result['input_error'])
        self.assertEqual(job.status, 'failed')
        self.assertIsNone(job.report)

    def test_record_flag(self):
        out = StringIO()
        call_command('hopfdouble', 'eq2', '--z', '0.7', '--record', stdout=out, stderr=StringIO())
        job = Job.objects.get()
        self.assertEqual(job.job_type, 'eq2')
        self.assertEqual(job.get_parameters()['z'], [0.7])
        self.assertEqual(json.loads(job.report), json.loads(out.getvalue()))

    def test_record_flag_with_input_error(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('hopfdouble', 'eq2', '--z', '0', '--record', stdout=StringIO(), stderr=StringIO())
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(Job.objects.get().status, 'failed')
