"""
hopfdouble: the command-line entry point.

    python manage.py hopfdouble verify-hopf algebra.json
    python manage.py hopfdouble group --generators "(12),(123)" calculi
    python manage.py hopfdouble eq2 --z 0.7 --tol 1e-10

Exit status: 0 when every check passes, 1 on a failed check, 2 on an input
or argument error. Reports are JSON with sorted keys.
"""
import logging
from typing import Any, Dict

from django.core.management.base import BaseCommand, CommandError

from core.services import dumps_report
from groups.services import GROUP_ACTIONS
from jobs.services import INPUT_ERRORS, create_job, execute_job, run_job

logger = logging.getLogger(__name__)

FILE_COMMANDS = {
    'verify-hopf': "Check the Hopf algebra axioms of an algebra file",
    'double': "Build the Drinfeld double of an algebra and check it",
}

REPRESENTATION_COMMANDS = {
    'bimodule': "Bicovariant bimodule of a double representation",
    'calculi': "Search for a bicovariant first-order calculus",
    'cohomology': "Hochschild cohomology with values in invΓ",
}


class Command(BaseCommand):
    help = "Hopf algebras, Drinfeld doubles, bicovariant calculi and their cohomology"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)

        for name, text in FILE_COMMANDS.items():
            sub = subparsers.add_parser(name, help=text)
            sub.add_argument('algebra', help="Algebra JSON file")
            self.add_common_arguments(sub)

        for name, text in REPRESENTATION_COMMANDS.items():
            sub = subparsers.add_parser(name, help=text)
            sub.add_argument('algebra', help="Algebra JSON file")
            sub.add_argument('representation', help="Representation JSON file of the double")
            self.add_common_arguments(sub)

        group = subparsers.add_parser('group', help="Conjugacy classes, class calculi or export of F(G)")
        source = group.add_mutually_exclusive_group(required=True)
        source.add_argument('--generators', help='Permutations in cycle notation, e.g. "(12),(123)"')
        source.add_argument('--table', help="Group JSON file with a Cayley table")
        group.add_argument('action', choices=GROUP_ACTIONS)
        group.add_argument(
            '--exhaustive',
            action='store_true',
            help="Check extended representations on all basis pairs of the double",
        )
        self.add_common_arguments(group)

        eq2 = subparsers.add_parser('eq2', help="E_q(2) relations at sampled z")
        eq2.add_argument('--z', type=float, action='append', help="Deformation parameter, repeatable")
        eq2.add_argument('--tol', type=float, default=None, help="Residual threshold")
        self.add_common_arguments(eq2)

    @staticmethod
    def add_common_arguments(parser):
        parser.add_argument('--out', help="Write the report to this path instead of stdout")
        parser.add_argument('--max-dim', type=int, default=None, help="Override the size guard")
        parser.add_argument('--record', action='store_true', help="Record the run as a Job")

    def handle(self, *args, **options):
        subcommand = options['subcommand']
        parameters = self.parameters(subcommand, options)

        if options['record']:
            job = create_job(subcommand, parameters)
            outcome = execute_job(job.id)
            if outcome.get('input_error'):
                raise CommandError(outcome['error'], returncode=2)
            report = outcome['report']
            self.stderr.write(f"Recorded job {job.id}")
        else:
            try:
                report = run_job(subcommand, parameters)
            except INPUT_ERRORS as exc:
                raise CommandError(str(exc), returncode=2) from exc

        self.write_output(subcommand, parameters, report, options.get('out'))

        if not report.get('passed'):
            raise CommandError(f"{subcommand}: checks failed", returncode=1)

    def parameters(self, subcommand: str, options: Dict[str, Any]) -> Dict[str, Any]:
        max_dim = options.get('max_dim')
        if max_dim is not None and max_dim < 1:
            raise CommandError("--max-dim must be positive", returncode=2)
        parameters: Dict[str, Any] = {'max_dim': max_dim}
        if subcommand in FILE_COMMANDS:
            parameters['algebra'] = options['algebra']
        elif subcommand in REPRESENTATION_COMMANDS:
            parameters['algebra'] = options['algebra']
            parameters['representation'] = options['representation']
        elif subcommand == 'group':
            parameters.update({
                'generators': options.get('generators'),
                'table': options.get('table'),
                'action': options['action'],
                'exhaustive': options['exhaustive'],
            })
        elif subcommand == 'eq2':
            tol = options.get('tol')
            if tol is not None and tol <= 0:
                raise CommandError("--tol must be positive", returncode=2)
            parameters.update({'z': options.get('z'), 'tol': tol})
        return parameters

    def write_output(self, subcommand: str, parameters: Dict[str, Any], report: Dict[str, Any], out: str) -> None:
        # group export emits the algebra file itself
        if subcommand == 'group' and parameters['action'] == 'export' and 'spec' in report:
            text = dumps_report(report['spec'])
        else:
            text = dumps_report(report)
        if out:
            with open(out, 'w', encoding='utf-8') as f:
                f.write(text)
            logger.info("report written to %s", out)
        else:
            self.stdout.write(text, ending='')
