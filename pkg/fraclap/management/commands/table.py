from fraclap.management.commands._base import FracLapCommand


class Command(FracLapCommand):
    help = "Tabulate ball eigenvalues, Getoor constants or harmonic space dimensions"
    job_name = "table"
    default_format = "csv"

    def add_job_arguments(self, parser):
        group = parser.add_mutually_exclusive_group(required=True)
        group.add_argument("--eigen", dest="table", action="store_const", const="eigen")
        group.add_argument("--getoor", dest="table", action="store_const", const="getoor")
        group.add_argument("--harmonic-dims", dest="table", action="store_const", const="harmonic-dims")
        parser.add_argument("--d", type=int, default=None)
        parser.add_argument("--l", type=int, default=0)
        parser.add_argument("--alpha", default=None, help='Order, or a comma list for --getoor')
        parser.add_argument("--nmax", type=int, default=4)
        parser.add_argument("--lmax", type=int, default=4)
