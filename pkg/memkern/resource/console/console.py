import sys
from typing import Iterable, Tuple

from .color import AnsiColor, NoColor


class ConsoleWriter:
    """
    User-facing CLI output; colors only when the stream is a terminal
    """

    def __init__(self, stdout=None, stderr=None, colorizer=None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        if colorizer is None:
            isatty = getattr(self.stdout, "isatty", None)
            colorizer = AnsiColor() if isatty and isatty() else NoColor()
        self.colorizer = colorizer

    def header(self, message, eol=True):
        self.write(self.colorizer.white(message, attr="bold"), eol)

    def success(self, message, eol=True):
        self.write(self.colorizer.green(message), eol)

    def warn(self, message, eol=True):
        self.write_error(self.colorizer.yellow(message), eol)

    def error(self, message, eol=True):
        self.write_error(self.colorizer.red(message), eol)

    def report(self, values: Iterable[Tuple[str, object]]):
        """
        Aligned key: value block
        """
        values = list(values)
        width = max((len(k) for k, _ in values), default=0)
        for key, value in values:
            self.write("{}: {}".format(key.ljust(width), value))

    def write(self, message, eol=True):
        self.stdout.write(message)
        if eol:
            self.stdout.write("\n")

    def write_error(self, message, eol=True):
        self.stderr.write(message)
        if eol:
            self.stderr.write("\n")
