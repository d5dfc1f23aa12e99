"""
Almost Eigenvector Tool for PencilSpec
Certifies a common almost-eigenvector from the distance between the spectrum and a line.
"""

from core.almost import almost_common_eigenvector

from .base_tool import BaseTool


class AlmostTool(BaseTool):
    """AlmostReport for the line {alpha x + beta y = 1}."""

    name = 'almost'
    help = 'almost common eigenvector bound'

    def add_arguments(self, parser):
        self.add_pair_arguments(parser)
        parser.add_argument('--alpha', type=float, required=True)
        parser.add_argument('--beta', type=float, required=True)
        parser.add_argument('--rho', type=float, default=None, help='polydisk radius (default from config)')
        parser.add_argument('--slack', type=float, default=None,
                            help='allowed | ||B|| - |beta| | (relaxed bound)')
        parser.add_argument('--out', default=None, help='report JSON output (default: stdout)')

    def run_tool(self, args):
        self.artifact_on_stdout = not args.out
        A, B = self.load_pair(args)
        rho = self.setting(args, 'rho', 'sampling', 'rho')
        resolution = self.setting(args, 'resolution', 'sampling', 'resolution')

        self.print_header(f"Almost eigenvector: alpha={args.alpha:g}, beta={args.beta:g}, rho={rho:g}")
        report = almost_common_eigenvector(A, B, args.alpha, args.beta, rho, resolution, slack=args.slack)
        for name, ok in report.conditions.items():
            self.print_result(name, 'ok' if ok else 'fails', ok)
        self.print_result("Measured eps", f"{report.epsilon_measured:.3e}")
        bound = 'omitted' if report.delta_bound is None else f"{report.delta_bound:.3e}"
        self.print_result("Bound", bound, report.preconditions_ok)
        self.print_result("Actual", f"{report.delta_actual:.3e}")
        self.emit_json(report.to_dict(), args.out)
        return 0
