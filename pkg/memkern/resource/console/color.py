from functools import partial
from typing import Iterable, Union

FG_COLORS = {
    "black": 30,
    "red": 31,
    "green": 32,
    "yellow": 33,
    "blue": 34,
    "magenta": 35,
    "cyan": 36,
    "white": 37,
}
ATTRIBUTES = {"bold": 1, "dim": 2, "underline": 4}
RESET = "\033[0m"


class AnsiColor:
    """
    ANSI escape decorator; one method per foreground color

    Example:
        color = AnsiColor()
        msg = color.red('sweep failed')
        msg = color.green('tau_dec=1.1985', attr='bold')
    """

    def __getattr__(self, name):
        if name not in FG_COLORS:
            raise AttributeError("{}: invalid color name '{}'".format(type(self).__name__, name))
        return partial(self.paint, FG_COLORS[name])

    @staticmethod
    def _codes(attr: Union[Iterable[str], str, None]) -> str:
        if not attr:
            return ""
        names = [attr] if isinstance(attr, str) else list(attr)
        unknown = [a for a in names if a not in ATTRIBUTES]
        if unknown:
            raise RuntimeError("AnsiColor: invalid color attribute '{}'".format(unknown[0]))
        return "".join("\033[{}m".format(ATTRIBUTES[a]) for a in names)

    def paint(self, code: int, msg: str, attr: Union[Iterable[str], str, None] = None) -> str:
        return "\033[{}m{}{}{}".format(code, self._codes(attr), msg, RESET)


class NoColor(AnsiColor):
    """
    Same interface, text left unchanged; used for pipes and files
    """

    def paint(self, code: int, msg: str, attr=None) -> str:
        return msg
