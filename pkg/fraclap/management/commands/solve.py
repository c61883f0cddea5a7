from fraclap.management.commands._base import FracLapCommand
from fraclap.services import RIGHT_HAND_SIDES


class Command(FracLapCommand):
    help = "Solve (-Delta)^{alpha/2}(w u) = g on the unit ball in the weighted Jacobi basis"
    job_name = "solve"

    def add_job_arguments(self, parser):
        parser.add_argument("--d", type=int, default=1)
        parser.add_argument("--alpha", default="1")
        parser.add_argument("--rhs", choices=RIGHT_HAND_SIDES, default="one", help="Right-hand side g")
        parser.add_argument("--lmax", type=int, default=2)
        parser.add_argument("--nmax", type=int, default=16)
        parser.add_argument("--points", default=None, help="Evaluate the solution at these points")
