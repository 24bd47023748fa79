from .color import AnsiColor, NoColor
from .console import ConsoleWriter
