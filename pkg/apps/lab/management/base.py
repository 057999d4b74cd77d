"""
Shared plumbing for the lab management commands.
"""

import logging

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from apps.common.exceptions import LabError
from apps.lab.csvio import render_cell, write_rows
from apps.lab.experiments import run_experiment
from apps.lab.models import ExperimentRun

logger = logging.getLogger(__name__)


def rational_list(text):
    """Comma-separated values for list options such as --grid."""
    return [item.strip() for item in text.split(',') if item.strip()]


class LabCommand(BaseCommand):
    """
    Runs one experiment: CSV goes to --out (or standard output), the summary
    lines to standard output, and --record stores the run in the database.
    """

    kind = None

    def add_arguments(self, parser):
        self.add_experiment_arguments(parser)
        parser.add_argument('--out', help='CSV output path (standard output when omitted)')
        parser.add_argument('--threads', type=int, help='Worker processes for row computation')
        parser.add_argument('--record', action='store_true', help='Store the run as an ExperimentRun')

    def add_experiment_arguments(self, parser):
        raise NotImplementedError('Subclasses must declare their experiment arguments')

    def handle(self, *args, **options):
        run = None
        if options.get('record'):
            run = ExperimentRun.objects.create(kind=self.kind, created_by='cli')
            run.start()

        try:
            result = run_experiment(self.kind, options)
        except serializers.ValidationError as e:
            self._fail(run, e.detail)
            raise CommandError(f"Invalid parameters: {e.detail}")
        except LabError as e:
            self._fail(run, e.message)
            raise CommandError(e.message)

        if options.get('out'):
            with open(options['out'], 'w', newline='') as stream:
                write_rows(stream, result.header, result.rows)
            self.stdout.write(f"Wrote {len(result.rows)} rows to {options['out']}")
        else:
            write_rows(self.stdout, result.header, result.rows)

        for line in result.lines:
            self.stdout.write(line)

        if run is not None:
            run.parameters = result.parameters
            run.complete(
                summary=result.summary,
                header=result.header,
                rows=[[render_cell(value) for value in row] for row in result.rows],
            )
            self.stdout.write(self.style.SUCCESS(f"Recorded run {run.id}"))

    def _fail(self, run, error):
        logger.error(f"{self.kind} experiment failed: {error}")
        if run is not None:
            run.fail(error)
