"""
Plot Tool for PencilSpec
SVG of the real zero set of a polynomial.
"""

from core.formats import load_polynomial
from core.plotting import plot_zero_set

from .base_tool import BaseTool


class PlotTool(BaseTool):
    """Marching-squares rendering of {P = 0} in a box."""

    name = 'plot'
    help = 'SVG of the real zero set of a polynomial'

    def add_arguments(self, parser):
        parser.add_argument('polynomial', metavar='P.json')
        parser.add_argument('--box', nargs=4, type=float, required=True, metavar=('X0', 'X1', 'Y0', 'Y1'))
        parser.add_argument('--grid', type=int, default=None, help='grid cells per side (default from config)')
        parser.add_argument('--out', required=True, help='SVG output')

    def run_tool(self, args):
        P = load_polynomial(args.polynomial)
        grid = self.setting(args, 'grid', 'plot', 'grid')
        self.print_header(f"Plot: {args.polynomial}")
        count = plot_zero_set(P, args.box, args.out, grid)
        self.print_result("Segments", count, count > 0)
        self.append_output(f"Wrote {args.out}", 'SUCCESS')
        return 0
