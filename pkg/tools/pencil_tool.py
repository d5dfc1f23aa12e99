"""
Pencil Tool for PencilSpec
Computes the determining polynomial det(x A + y B - I) of a Hermitian pair.
"""

from core.exterior import ExteriorIndex, exterior_power
from core.formats import polynomial_to_dict, save_matrix
from core.pencil import pencil_polynomial

from .base_tool import BaseTool


class PencilTool(BaseTool):
    """Determining polynomial of a pair, optionally of its exterior powers."""

    name = 'pencil'
    help = 'determining polynomial of a Hermitian pair'

    def add_arguments(self, parser):
        self.add_pair_arguments(parser)
        parser.add_argument('--wedge', type=int, default=None, metavar='K',
                            help='use the K-th exterior powers of A and B')
        parser.add_argument('--save-wedge', default=None, metavar='PREFIX',
                            help='also write PREFIX_A.json and PREFIX_B.json with the compound matrices')
        parser.add_argument('--out', default=None, help='polynomial JSON output (default: stdout)')

    def run_tool(self, args):
        self.artifact_on_stdout = not args.out
        A, B = self.load_pair(args)
        self.print_header(f"Pencil: {args.matrix_a}, {args.matrix_b}")

        if args.wedge is not None:
            labels = ExteriorIndex.build(A.shape[0], args.wedge).labels()
            A, B = exterior_power(A, args.wedge), exterior_power(B, args.wedge)
            self.append_output(f"Exterior power k={args.wedge}: dimension {A.shape[0]}", 'INFO')
            if args.save_wedge:
                save_matrix(f"{args.save_wedge}_A.json", A, labels)
                save_matrix(f"{args.save_wedge}_B.json", B, labels)
                self.append_output(f"Wrote {args.save_wedge}_A.json and {args.save_wedge}_B.json", 'SUCCESS')

        P = pencil_polynomial(A, B)
        self.print_result("Degree", P.total_degree(1e-12))
        self.print_result("Terms", len(P.terms()))
        self.emit_json(polynomial_to_dict(P), args.out)
        return 0
