"""
Line Check Tool for PencilSpec
Multiplicity of a line {alpha x + beta y = 1} in a polynomial's zero set.
"""

from core.formats import load_polynomial
from core.pencil import hausdorff_to_line, line_containment
from core.polynomials import Line, PolyDisk

from .base_tool import BaseTool


class LineCheckTool(BaseTool):
    """Line containment and, optionally, the local distance to the line."""

    name = 'line-check'
    help = 'multiplicity of a line in a polynomial zero set'

    def add_arguments(self, parser):
        parser.add_argument('polynomial', metavar='P.json', help='polynomial JSON')
        parser.add_argument('--alpha', type=float, required=True)
        parser.add_argument('--beta', type=float, required=True)
        parser.add_argument('--rho', type=float, default=None,
                            help='also measure the Hausdorff distance near the line in a polydisk of radius RHO')
        parser.add_argument('--center', nargs=2, type=float, default=None, metavar=('CX', 'CY'),
                            help='polydisk center (default: the point of the line nearest the origin)')

    def run_tool(self, args):
        P = load_polynomial(args.polynomial)
        line = Line(args.alpha, args.beta)
        tol = self.setting(args, 'tol_contain', 'tolerances', 'contain')

        self.print_header(f"Line check: {line}")
        multiplicity = line_containment(P, line, tol)
        self.print_result("Multiplicity", multiplicity, success=multiplicity > 0)

        if args.rho is not None:
            center = tuple(args.center) if args.center else line.base_point
            resolution = self.setting(args, 'resolution', 'sampling', 'resolution')
            distance = hausdorff_to_line(P, line, PolyDisk(center, args.rho), resolution)
            self.print_result("Hausdorff distance", f"{distance:.6e}")
        return 0
