"""
Residues Tool for PencilSpec
Residues at w = 1 of the operator functions Psi_m for a curve through (1/lam, 0).
"""

from core.decompose import ContourSpec, line_residue_check, psi_residue
from core.formats import load_polynomial
from core.pencil import pencil_polynomial
from core.polynomials import Line

from .base_tool import BaseTool


class ResiduesTool(BaseTool):
    """Residue table for m = 1..m_max."""

    name = 'residues'
    help = 'residue conditions for a curve in the spectrum'

    def add_arguments(self, parser):
        self.add_pair_arguments(parser)
        parser.add_argument('--lam', type=float, required=True, help='eigenvalue of A')
        parser.add_argument('--m-max', type=int, default=4, help='largest residue order')
        parser.add_argument('--curve', default=None, metavar='R.json',
                            help='curve polynomial (default: the line through --a, else the whole pencil)')
        parser.add_argument('--a', type=float, default=None, help='use the line {lam x + a y = 1}')
        parser.add_argument('--radius', type=float, default=None, help='contour radius (default: half the gap)')
        parser.add_argument('--out', default=None, help='residue table JSON')

    def run_tool(self, args):
        A, B = self.load_pair(args)
        nodes = self.setting(args, 'contour_nodes', 'contour', 'nodes')
        if args.curve:
            R, source = load_polynomial(args.curve), args.curve
        elif args.a is not None:
            R, source = Line(args.lam, args.a).polynomial(), f"line {Line(args.lam, args.a)}"
        else:
            R, source = pencil_polynomial(A, B), 'full pencil'
        contour = ContourSpec(radius=args.radius, nodes=nodes) if args.radius else None

        self.print_header(f"Residues at lam={args.lam:g} for {source}")
        table = []
        for m in range(1, args.m_max + 1):
            value = psi_residue(A, B, R, m, args.lam, contour=contour, nodes=nodes)
            table.append({'m': m, 'residue': value})
            self.print_result(f"m={m}", f"{value:.3e}")

        result = {'lam': args.lam, 'source': source, 'nodes': nodes, 'residues': table}
        if args.a is not None:
            r1, r3, r3_inv = line_residue_check(A, B, args.lam, args.a)
            result['line_residues'] = {'r1': r1, 'r3': r3, 'r3_inv': r3_inv}
            self.print_result("Line residues (r1, r3, r3_inv)", f"{r1:.3e}, {r3:.3e}, {r3_inv:.3e}")
        if args.out:
            self.emit_json(result, args.out)
        return 0
