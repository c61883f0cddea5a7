import logging

from django.core.management.base import BaseCommand, CommandError

from errors import FracLapError
from fraclap.services import Job, run_job

# options every Django command carries; everything else belongs to the job
DJANGO_OPTIONS = {
    "verbosity",
    "settings",
    "pythonpath",
    "traceback",
    "no_color",
    "force_color",
    "skip_checks",
    "format",
}

VERBOSITY_LEVELS = {2: logging.INFO, 3: logging.DEBUG}


class FracLapCommand(BaseCommand):
    """
    Shared plumbing of the fraclap subcommands: --format, the geometry flags,
    and the mapping of library errors onto exit codes (2 for violated
    conditions, 3 for numerical failures).
    """

    job_name = ""
    formats = ("json", "csv", "text")
    default_format = "json"

    def add_arguments(self, parser):
        parser.add_argument(
            "--format",
            choices=self.formats,
            default=self.default_format,
            help=f"Output format (default {self.default_format})",
        )
        self.add_job_arguments(parser)

    def add_job_arguments(self, parser):
        pass

    def add_geometry_arguments(self, parser, alpha="1", d=1):
        parser.add_argument("--d", type=int, default=d, help="Dimension of the space")
        parser.add_argument("--l", type=int, default=0, help="Degree of the solid harmonic factor")
        parser.add_argument("--alpha", default=alpha, help='Order of the operator, e.g. "3/2"')

    def handle(self, *args, **options):
        level = VERBOSITY_LEVELS.get(options["verbosity"])
        if level is not None:
            logging.getLogger().setLevel(level)
        params = {k: v for k, v in options.items() if k not in DJANGO_OPTIONS}
        job = Job(self.job_name, params, options["format"])
        try:
            result = run_job(job)
        except FracLapError as exc:
            raise CommandError(str(exc), returncode=exc.exit_code) from exc
        self.stdout.write(result.text, ending="")
        if not result.ok:
            raise CommandError(result.message, returncode=3)
