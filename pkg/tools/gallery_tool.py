"""
Gallery Tool for PencilSpec
Writes example pairs and seeded random pairs as matrix JSON files.
"""

from pathlib import Path

from core.formats import polynomial_to_dict, save_matrix, write_json
from core.gallery import KINDS, GeneratorSpec

from .base_tool import BaseTool


class GalleryTool(BaseTool):
    """Emit PREFIX_A.json, PREFIX_B.json and, when known, PREFIX_gamma.json and PREFIX_basis.json."""

    name = 'gallery'
    help = 'write example and random pairs'

    def add_arguments(self, parser):
        parser.add_argument('kind', choices=KINDS)
        parser.add_argument('--n', type=int, default=3, help='dimension (half dimension for circle_pair)')
        parser.add_argument('--k', type=int, default=1, help='invariant block size')
        parser.add_argument('--eps', type=float, default=0.0, help='off-block perturbation size')
        parser.add_argument('--out', required=True, help='output prefix; a trailing .json is dropped')

    def run_tool(self, args):
        seed = self.setting(args, 'seed', 'gallery', 'seed')
        generator = GeneratorSpec(kind=args.kind, n=args.n, k=args.k, seed=seed, eps=args.eps)
        A, B, gamma, basis = generator.build()

        out = Path(args.out)
        prefix = out.with_suffix('') if out.suffix == '.json' else out
        self.print_header(f"Gallery: {args.kind} (seed {seed})")
        save_matrix(f"{prefix}_A.json", A)
        save_matrix(f"{prefix}_B.json", B)
        written = [f"{prefix}_A.json", f"{prefix}_B.json"]
        if gamma is not None:
            write_json(f"{prefix}_gamma.json", polynomial_to_dict(gamma))
            written.append(f"{prefix}_gamma.json")
        if basis is not None:
            write_json(f"{prefix}_basis.json", {'n': int(basis.shape[0]), 'k': int(basis.shape[1]),
                                                're': basis.real.tolist(), 'im': basis.imag.tolist()})
            written.append(f"{prefix}_basis.json")
        for path in written:
            self.append_output(f"Wrote {path}", 'SUCCESS')
        return 0
