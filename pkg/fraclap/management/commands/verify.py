from fraclap.management.commands._base import FracLapCommand
from fraclap.services import CASES


class Command(FracLapCommand):
    help = "Compare a symbolic identity with the quadrature oracle at a list of points"
    job_name = "verify"
    default_format = "csv"

    def add_job_arguments(self, parser):
        parser.add_argument("--case", choices=CASES, required=True)
        parser.add_argument("--d", type=int, default=None, help="Dimension (default 1, semigroup 3)")
        parser.add_argument("--l", type=int, default=0)
        parser.add_argument("--n", type=int, default=1, help="Jacobi degree of the eigen case")
        parser.add_argument("--alpha", default=None, help="Order (default 1)")
        parser.add_argument("--beta", default="1", help="Inner order of the semigroup case (default 1)")
        parser.add_argument("--points", default=None, help="Points (default depends on the case)")
        parser.add_argument("--tol", type=float, default=None, help="Relative tolerance of the oracle")
