"""
Commutant Tool for PencilSpec
Bounds ||[A, B]|| by the distance between the spectrum and a family of lines.
"""

from core.almost import commutant_bound

from .base_tool import BaseTool


class CommutantTool(BaseTool):
    """CommutantBoundReport with a per-level table."""

    name = 'commutant'
    help = 'commutator norm bound'

    def add_arguments(self, parser):
        self.add_pair_arguments(parser)
        parser.add_argument('--rho', type=float, default=None, help='polydisk radius (default from config)')
        parser.add_argument('--out', default=None, help='report JSON output (default: stdout)')

    def run_tool(self, args):
        self.artifact_on_stdout = not args.out
        A, B = self.load_pair(args)
        rho = self.setting(args, 'rho', 'sampling', 'rho')
        resolution = self.setting(args, 'resolution', 'sampling', 'resolution')

        self.print_header(f"Commutant bound, rho={rho:g}")
        report = commutant_bound(A, B, rho, resolution)
        self.append_output(f"{'dim':>4} {'eps':>12} {'rho':>10} {'C':>12} {'increment':>12}", 'INFO')
        for level in report.per_level:
            self.append_output(f"{level.dimension:>4} {level.epsilon:>12.3e} {level.rho:>10.4g} "
                               f"{level.C:>12.4e} {level.increment:>12.3e}", 'INFO')
        if report.diverged:
            self.append_output("The recursion diverged; only the actual norm is meaningful.", 'WARNING')
        self.print_result("Bound", f"{report.bound:.3e}", not report.diverged)
        self.print_result("Actual", f"{report.actual:.3e}")
        self.emit_json(report.to_dict(), args.out)
        return 0
