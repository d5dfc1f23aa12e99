"""
Base Tool Class for PencilSpec
All command-line tools inherit from this base class.
"""

from datetime import datetime

from core.formats import dumps, load_matrix, write_json


class BaseTool:
    """Base class for all PencilSpec subcommands."""

    name = None
    help = ''

    def __init__(self, app):
        self.app = app
        self.lines = []
        # Set when the artifact itself goes to stdout; chatter then moves to stderr
        self.artifact_on_stdout = False

    @property
    def config(self):
        return self.app.config

    @property
    def logger(self):
        return self.app.logger

    def add_arguments(self, parser):
        """Register subcommand arguments. Override in subclass."""
        raise NotImplementedError

    def run_tool(self, args):
        """Run the tool and return its exit code. Override in subclass."""
        raise NotImplementedError

    def setting(self, args, attribute, section, key):
        """Command-line value if given, else the configured one."""
        value = getattr(args, attribute, None)
        if value is None:
            value = self.config.get(section, key)
        return value

    def append_output(self, text, tag=None):
        """Write one line of output; ERROR and WARNING lines go to stderr."""
        if tag is None:
            timestamp = datetime.now().strftime('%H:%M:%S')
            text = f"[{timestamp}] {text}"
        self.lines.append(text)
        to_stderr = tag in ('ERROR', 'WARNING') or self.artifact_on_stdout
        stream = self.app.stderr if to_stderr else self.app.stdout
        stream.write(text + '\n')

    def clear_output(self):
        """Forget the recorded output."""
        self.lines = []


    def print_header(self, title):
        """Print a formatted header."""
        self.append_output("=" * 60, 'HEADER')
        self.append_output(f"  {title}", 'HEADER')
        self.append_output("=" * 60, 'HEADER')

    def print_result(self, label, value, success=True):
        """Print a formatted result line."""
        tag = 'SUCCESS' if success else 'ERROR'
        self.append_output(f"{label}: {value}", tag)

    def load_pair(self, args):
        """Load the A and B matrix files named by args.matrix_a and args.matrix_b."""
        return load_matrix(args.matrix_a), load_matrix(args.matrix_b)

    def emit_json(self, data, out=None):
        """Write a JSON artifact to `out`, or to stdout when no path is given."""
        if out:
            write_json(out, data)
            self.append_output(f"Wrote {out}", 'SUCCESS')
        else:
            self.app.stdout.write(dumps(data))

    @staticmethod
    def add_pair_arguments(parser):
        parser.add_argument('matrix_a', metavar='A.json', help='first Hermitian matrix')
        parser.add_argument('matrix_b', metavar='B.json', help='second Hermitian matrix')
