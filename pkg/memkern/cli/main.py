import logging
import sys
from typing import Optional, Sequence

from memkern.exceptions import CurveFormatError, DataError, NumericalError, UsageError
from memkern.resource.config import MemkernEnv
from memkern.resource.console import ConsoleWriter

from .commands import run_command
from .config import build_parser, config_from_namespace, parse_args

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def setup_logging(verbose: bool):
    level = "DEBUG" if verbose else str(MemkernEnv().build()["log_level"]).upper()
    if not isinstance(logging.getLevelName(level), int):
        level = "WARNING"
    logging.basicConfig(level=level, stream=sys.stderr, format=LOG_FORMAT)


def main(argv: Optional[Sequence[str]] = None, console: ConsoleWriter = None) -> int:
    """
    memkern command line entry point
    :param argv: arguments without the program name; sys.argv[1:] when None
    :param console: optional ConsoleWriter
    :return: exit code
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    console = console or ConsoleWriter()

    if not argv:
        console.write_error(build_parser().format_usage(), eol=False)
        return EXIT_USAGE

    try:
        namespace = parse_args(argv)
        setup_logging(namespace.verbose)
        config = config_from_namespace(namespace)
        logger.debug("main(): configuration\n%s", config.to_text())
        return run_command(config, console)
    except SystemExit as e:
        # --help / --version
        return e.code if isinstance(e.code, int) else EXIT_OK
    except UsageError as e:
        console.error("error: {}".format(e))
        return EXIT_USAGE
    except CurveFormatError as e:
        console.error("error: {}".format(e))
        return EXIT_IO
    except (NumericalError, DataError) as e:
        console.error("error: {}".format(e))
        return EXIT_NUMERICAL
    except OSError as e:
        console.error("error: {}".format(e))
        return EXIT_IO
    except ValueError as e:
        console.error("error: {}".format(e))
        return EXIT_USAGE
