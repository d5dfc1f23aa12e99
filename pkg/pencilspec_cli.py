#!/usr/bin/env python3
"""
PencilSpec - Joint spectra of Hermitian pencils
Command-line front-end: builds the argument parser from the registered
tools, applies configuration and maps errors to exit codes.
"""

import argparse
import sys

from core.errors import PencilSpecError, UsageError
from tools import TOOLS
from utils.config_manager import ConfigManager
from utils.logger import Logger

VERSION = '1.0.0'


class PencilSpecArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors become UsageError (exit 64)."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class PencilSpecCLI:
    """Main application object for PencilSpec."""

    def __init__(self, config_path=None, stdout=None, stderr=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

        # Initialize configuration and logging
        self.config = ConfigManager(config_path)
        self.logger = Logger(level=self.config.get('general', 'log_level', 'INFO'),
                             console=self.config.get('general', 'console_log', False))

        # Initialize tools
        self.tools = {}
        self._init_tools()

    def _init_tools(self):
        """Initialize all tool modules."""
        for tool_class in TOOLS:
            self.tools[tool_class.name] = tool_class(self)

    def _common_options(self):
        common = PencilSpecArgumentParser(add_help=False)
        group = common.add_argument_group('common options')
        group.add_argument('--tol-contain', type=float, default=None, dest='tol_contain',
                           help='line containment tolerance (default 1e-7)')
        group.add_argument('--tol-resid', type=float, default=None, dest='tol_resid',
                           help='invariance residual tolerance (default 1e-8)')
        group.add_argument('--contour-nodes', type=int, default=None, dest='contour_nodes',
                           help='trapezoidal nodes on the residue contour (default 256)')
        group.add_argument('--resolution', type=int, default=None,
                           help='fiber sampling resolution (default 64)')
        group.add_argument('--seed', type=int, default=None, help='generator seed (default 0)')
        group.add_argument('--verbose', action='store_true', help='log to stderr as well')
        group.add_argument('--config', default=None, help='configuration file')
        return common

    def build_parser(self):
        parser = PencilSpecArgumentParser(
            prog='pencilspec',
            description='Joint spectra of Hermitian pencils and decomposability tests.',
        )
        parser.add_argument('--version', action='version', version=f'%(prog)s {VERSION}')
        common = self._common_options()
        subparsers = parser.add_subparsers(dest='command', metavar='COMMAND',
                                           parser_class=PencilSpecArgumentParser)
        subparsers.required = True
        for name, tool in self.tools.items():
            sub = subparsers.add_parser(name, help=tool.help, parents=[common])
            tool.add_arguments(sub)
        return parser

    def _apply_options(self, args):
        if args.config:
            self.config = ConfigManager(args.config)
        if args.verbose:
            self.logger = Logger(level=self.config.get('general', 'log_level', 'INFO'), console=True)

    def run(self, argv=None):
        """Parse argv, run one tool and return the process exit code."""
        try:
            args = self.build_parser().parse_args(argv)
            self._apply_options(args)
            tool = self.tools[args.command]
            tool.clear_output()
            self.logger.info(f"pencilspec {args.command} started")
            code = tool.run_tool(args)
            self.logger.info(f"pencilspec {args.command} finished with exit code {code}")
            return code
        except SystemExit as e:
            # --help and --version
            return e.code if isinstance(e.code, int) else 0
        except PencilSpecError as e:
            self.logger.error(f"{type(e).__name__}: {e}")
            self.stderr.write(f"pencilspec: error: {e}\n")
            return e.exit_code


def main(argv=None):
    """Main entry point."""
    return PencilSpecCLI().run(argv)


if __name__ == "__main__":
    sys.exit(main())
