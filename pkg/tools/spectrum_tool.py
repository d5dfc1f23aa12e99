"""
Spectrum Tool for PencilSpec
Samples the proper joint spectrum of a pair inside a polydisk and writes CSV.
"""

from core.formats import write_samples_csv
from core.pencil import curve_samples, pencil_polynomial
from core.polynomials import PolyDisk

from .base_tool import BaseTool


class SpectrumTool(BaseTool):
    """Points of {det(x A + y B - I) = 0} near a real center."""

    name = 'spectrum'
    help = 'sample the joint spectrum in a polydisk (CSV)'

    def add_arguments(self, parser):
        self.add_pair_arguments(parser)
        parser.add_argument('--disk', nargs=3, type=float, required=True, metavar=('CX', 'CY', 'R'),
                            help='polydisk center (CX, CY) and radius R')
        parser.add_argument('--res', type=int, default=None, dest='resolution',
                            help='fiber grid resolution (default from config)')
        parser.add_argument('--out', default=None, help='CSV output (default: stdout)')

    def run_tool(self, args):
        self.artifact_on_stdout = not args.out
        A, B = self.load_pair(args)
        cx, cy, radius = args.disk
        resolution = self.setting(args, 'resolution', 'sampling', 'resolution')
        disk = PolyDisk((cx, cy), radius)

        self.print_header(f"Spectrum near ({cx:g}, {cy:g}), radius {radius:g}")
        P = pencil_polynomial(A, B)
        points = curve_samples(P, disk, resolution)
        values = P(points[:, 0], points[:, 1]) if len(points) else []

        if args.out:
            count = write_samples_csv(args.out, points, values)
            self.append_output(f"Wrote {count} samples to {args.out}", 'SUCCESS')
        else:
            count = write_samples_csv(self.app.stdout, points, values)
        self.print_result("Samples", count, success=count > 0)
        return 0
