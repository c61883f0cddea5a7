from fraclap.management.commands._base import FracLapCommand
from fraclap.services import KERNELS, ROUTES


class Command(FracLapCommand):
    help = "Evaluate a G-function at arguments r, or a transformed function at points x"
    job_name = "eval"
    default_format = "csv"

    def add_job_arguments(self, parser):
        self.add_geometry_arguments(parser, alpha=None)
        parser.add_argument("--kernel", choices=KERNELS, help="Built-in input family (needs --alpha)")
        parser.add_argument("--g", help="Profile as JSON (see transform)")
        parser.add_argument("--rho", default="0")
        parser.add_argument("--sigma", default="0")
        parser.add_argument(
            "--points",
            required=True,
            help='Comma-separated arguments, or points "x1,x2;y1,y2" when d > 1',
        )
        parser.add_argument("--route", choices=ROUTES, default="auto", help="Evaluation route of the G-function")
