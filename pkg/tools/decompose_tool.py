"""
Decompose Tool for PencilSpec
Decides whether a pair has a common invariant subspace.

Three modes:
  --k K --gamma G.json   curve criterion through exterior powers
  --lam L --a A          common eigenspace criterion for a line
  --circle               unit circle (BC2) criterion
"""

from core.decompose import circle_subspace_test, common_eigenspace_test, decompose_pair
from core.errors import UsageError
from core.formats import load_polynomial

from .base_tool import BaseTool


class DecomposeTool(BaseTool):
    """Decomposability verdicts; the exit code is 0 yes, 1 no, 2 inconclusive."""

    name = 'decompose'
    help = 'test a pair for a common invariant subspace'

    def add_arguments(self, parser):
        self.add_pair_arguments(parser)
        parser.add_argument('--k', type=int, default=None, help='subspace dimension (curve mode)')
        parser.add_argument('--gamma', default=None, metavar='G.json', help='degree-k factor of the pencil')
        parser.add_argument('--lam', type=float, default=None, help='eigenvalue of A (line mode)')
        parser.add_argument('--a', type=float, default=None, help='eigenvalue of B on the eigenspace (line mode)')
        parser.add_argument('--eps', type=float, default=None,
                            help='line mode: replace the pair by the identity-shift family first')
        parser.add_argument('--rho', type=float, default=None, help='line mode: local distance diagnostic radius')
        parser.add_argument('--circle', action='store_true', help='unit circle criterion')
        parser.add_argument('--out', default=None, help='report JSON output (default: stdout)')

    def run_tool(self, args):
        self.artifact_on_stdout = not args.out
        A, B = self.load_pair(args)
        tol_contain = self.setting(args, 'tol_contain', 'tolerances', 'contain')
        tol_resid = self.setting(args, 'tol_resid', 'tolerances', 'resid')

        if args.circle:
            self.print_header("Decompose: unit circle criterion")
            report = circle_subspace_test(A, B, tol_resid=tol_resid, tol_contain=tol_contain)
        elif args.gamma is not None:
            if args.k is None:
                raise UsageError("--gamma needs --k")
            self.print_header(f"Decompose: curve criterion, k={args.k}")
            gamma = load_polynomial(args.gamma)
            report = decompose_pair(A, B, args.k, gamma, tol_contain=tol_contain, tol_resid=tol_resid)
        elif args.lam is not None and args.a is not None:
            self.print_header(f"Decompose: common eigenspace, lam={args.lam:g}, a={args.a:g}")
            resolution = self.setting(args, 'resolution', 'sampling', 'resolution')
            report = common_eigenspace_test(A, B, args.lam, args.a, rho=args.rho, eps=args.eps,
                                            tol_contain=tol_contain, tol_resid=tol_resid, resolution=resolution)
        else:
            raise UsageError("decompose needs --k with --gamma, --lam with --a, or --circle")

        for check in report.line_checks:
            self.print_result(f"{check.label} line {check.line}",
                              f"multiplicity {check.multiplicity} (need {check.required})", check.passed)
        self.print_result("Invariance residual", f"{report.invariance_residual:.3e}")
        self.print_result("Generic", report.genericity, report.genericity)
        for note in report.notes:
            self.append_output(note, 'INFO')
        self.print_result("Verdict", report.verdict, report.verdict == 'yes')
        self.emit_json(report.to_dict(), args.out)
        return report.exit_code
