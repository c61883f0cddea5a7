from fraclap.management.commands._base import FracLapCommand
from fraclap.services import KERNELS


class Command(FracLapCommand):
    help = (
        "Apply (-Delta)^{alpha/2} (alpha > 0) or the Riesz potential of order -alpha "
        "(alpha < 0) to a power kernel or a G-function profile"
    )
    job_name = "transform"
    formats = ("json", "text")

    def add_job_arguments(self, parser):
        self.add_geometry_arguments(parser)
        parser.add_argument("--kernel", choices=KERNELS, help="Built-in input family")
        parser.add_argument(
            "--g",
            help='Profile as JSON: a GSpec {"m", "n", "a", "b", "coeff"}, or with --kernel hyp '
            'a HypSpec {"upper", "lower", "regularized", "coeff", "scale"}',
        )
        parser.add_argument("--rho", default="0", help="Power |x|^{2 rho} of the kernel")
        parser.add_argument("--sigma", default="0", help="Exponent sigma of the kernel")
