import argparse
import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from memkern import __version__
from memkern.constants import PSEUDOMODE_C0
from memkern.curve import TimeGrid
from memkern.exceptions import UsageError
from memkern.filter import registry as filter_registry
from memkern.kernel import KIND_DELTA, KIND_PLAW, KIND_SPLAW, KernelSpec, SystemParams, kernel_registry
from memkern.resource.config import kv_file
from memkern.scaling import RunSettings, SweepSettings, backend_registry, get_backend
from memkern.validator import Validator

CMD_SIMULATE = "simulate"
CMD_SWEEP = "sweep"
CMD_INFER = "infer"
CMD_DIAGNOSE = "diagnose"
CMD_PLOT = "plot"
COMMANDS = (CMD_SIMULATE, CMD_SWEEP, CMD_INFER, CMD_DIAGNOSE, CMD_PLOT)

FIGURE_DECAY = "decay"
FIGURE_SCALING = "scaling"

STDOUT = "-"
POPULATION_TOLERANCE = 1e-9
BACKEND_PSEUDOMODE = "pseudomode"


@dataclass(frozen=True)
class Field:
    """
    One configuration key, shared by flags and config files
    """

    key: str
    filter: Optional[str]
    rules: str
    commands: Tuple[str, ...]
    help: str = ""
    flag: Optional[str] = None
    nargs: Optional[str] = None
    choices: Optional[Tuple[str, ...]] = None

    @property
    def option(self) -> str:
        return self.flag or "--" + self.key.replace("_", "-")


_ALL = COMMANDS
_MODEL = (CMD_SIMULATE, CMD_SWEEP, CMD_INFER, CMD_PLOT)
_RUN = (CMD_SIMULATE, CMD_SWEEP, CMD_PLOT)

FIELDS = (
    Field("backend", None, "strin:" + ",".join(backend_registry.names()), _RUN, "simulation backend"),
    Field("a", "float", "numeric|positive", _MODEL, "pointer-state separation"),
    Field("hbar", "float", "numeric|positive", _MODEL, "reduced Planck constant"),
    Field("D", "float", "numeric|positive", _MODEL, "noise strength", flag="--D"),
    Field("kernel", None, "strin:" + ",".join(kernel_registry.names()), _MODEL, "bath kernel kind"),
    Field("tau_c", "float", "numeric|positive", (CMD_SIMULATE,), "bath correlation time"),
    Field("p", "float", "numeric|gt:1", _RUN, "power-law exponent (plaw, splaw)"),
    Field("dt", "float", "numeric|positive", (CMD_SIMULATE,), "sampling step"),
    Field("t_final", "float", "numeric|positive", (CMD_SIMULATE, CMD_PLOT), "final time"),
    Field("seed", "int", "int|min:0", _RUN, "Monte Carlo seed"),
    Field("c0", "float", "numeric|between:0,1", (CMD_SIMULATE,), "initial coherence"),
    Field("n_max", "int", "int|between:1,64", _RUN, "pseudomode truncation level"),
    Field("certify", "bool", "bool", _RUN, "certify pseudomode truncation (true/false)"),
    Field("tier_one", "bool", "bool", _RUN, "use the two-level mode truncation (true/false)"),
    Field("n_traj", "int", "int|min:100", _RUN, "Monte Carlo trajectories"),
    Field("omega_q", "float", "numeric", (CMD_SIMULATE,), "qubit frequency"),
    Field("tau_c_list", "floatlist", "positivelist", (CMD_SWEEP, CMD_PLOT), "comma-separated correlation times"),
    Field("horizon", "float", "numeric|positive", (CMD_SWEEP,), "sweep horizon factor"),
    Field("max_ratio", "float", "numeric|positive", (CMD_SWEEP,), "largest tau_dec/tau_c used in the fit"),
    Field("plot", None, "notempty", (CMD_SWEEP,), "optional SVG log-log plot path"),
    Field("input", None, "notempty", (CMD_INFER, CMD_DIAGNOSE), "input curve CSV"),
    Field("inputs", "strlist", "notempty", (CMD_PLOT,), "input curve CSVs", flag="--input", nargs="+"),
    Field("rho_ll", "float", "numeric|between:0,1", (CMD_DIAGNOSE,), "population of the left pointer state"),
    Field("rho_rr", "float", "numeric|between:0,1", (CMD_DIAGNOSE,), "population of the right pointer state"),
    Field("style", None, "strin:linear,loglog", (CMD_PLOT,), "plot axes", choices=("linear", "loglog")),
    Field(
        "figure", None, "strin:decay,scaling", (CMD_PLOT,), "built-in figure", choices=(FIGURE_DECAY, FIGURE_SCALING)
    ),
    Field("title", None, "notempty", (CMD_PLOT,), "plot title"),
    Field("output", None, "required|notempty", _ALL, "output path, '-' for stdout", flag="--output"),
    Field("workers", "int", "int|min:1", _RUN, "worker threads, capped by MEMKERN_THREADS"),
)

FIELD_MAP = {f.key: f for f in FIELDS}


@dataclass(frozen=True)
class RunConfig:
    """
    Fully merged and validated configuration of one command

    Canonical text form: one 'key=value' per line, 'command' first, unset values omitted
    """

    command: str
    backend: str = "functional"
    a: float = 1.0
    hbar: float = 1.0
    D: float = 1.0
    kernel: str = "ou"
    tau_c: float = 1.0
    p: Optional[float] = None
    dt: float = 1e-3
    t_final: float = 10.0
    seed: int = 42
    c0: float = 0.5
    n_max: int = 12
    certify: bool = True
    tier_one: bool = False
    n_traj: int = 10000
    omega_q: float = 0.0
    tau_c_list: Tuple[float, ...] = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0)
    horizon: float = 3.0
    max_ratio: float = 1.0
    plot: Optional[str] = None
    input: Optional[str] = None
    inputs: Optional[Tuple[str, ...]] = None
    rho_ll: float = 0.5
    rho_rr: float = 0.5
    style: str = "linear"
    figure: Optional[str] = None
    title: Optional[str] = None
    output: str = STDOUT
    workers: Optional[int] = None

    @property
    def params(self) -> SystemParams:
        return SystemParams(a=self.a, hbar=self.hbar, D=self.D)

    @property
    def kernel_spec(self) -> KernelSpec:
        if self.kernel == KIND_DELTA:
            return KernelSpec(KIND_DELTA)
        return KernelSpec(self.kernel, self.tau_c, self.p)

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid.span(self.dt, self.t_final)

    @property
    def run_settings(self) -> RunSettings:
        return RunSettings(
            c0=self.c0,
            n_max=self.n_max,
            certify=self.certify,
            tier_one=self.tier_one,
            n_traj=self.n_traj,
            seed=self.seed,
            omega_q=self.omega_q,
            workers=self.workers or 1,
        )

    @property
    def sweep_settings(self) -> SweepSettings:
        return SweepSettings(
            run=self.run_settings, horizon=self.horizon, max_ratio=self.max_ratio, workers=self.workers
        )

    def keys(self) -> list:
        return [f.key for f in FIELDS if self.command in f.commands]

    def asdict(self) -> dict:
        return {key: getattr(self, key) for key in ["command"] + self.keys()}

    def to_text(self) -> str:
        lines = ["command={}".format(self.command)]
        for key in self.keys():
            value = getattr(self, key)
            if value is None:
                continue
            lines.append("{}={}".format(key, format_value(value)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunConfig":
        values = {}
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError("line {}: expected key=value".format(lineno), "--config")
            values[key.strip()] = value.strip()
        command = values.pop("command", None)
        if command not in COMMANDS:
            raise UsageError("unknown command '{}'".format(command), "--config")
        return build_config(command, values)


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)


class ArgumentParser(argparse.ArgumentParser):
    """
    argparse front end that raises UsageError instead of exiting
    """

    def error(self, message):
        flag = None
        for token in message.split():
            if token.startswith("--"):
                flag = token.strip("',:")
                break
        raise UsageError(message, flag)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="memkern", description="Numerical laboratory for non-Markovian decoherence")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)

    for command in COMMANDS:
        sub = subparsers.add_parser(command, help="{} command".format(command))
        sub.add_argument("--config", default=None, help="key=value configuration file")
        sub.add_argument("-v", "--verbose", action="store_true", help="debug logging")
        for f in FIELDS:
            if command not in f.commands:
                continue
            kwargs = {"dest": f.key, "default": None, "help": f.help}
            if f.nargs:
                kwargs["nargs"] = f.nargs
            if f.choices:
                kwargs["choices"] = f.choices
            if f.key == "output":
                sub.add_argument("-o", f.option, **kwargs)
            else:
                sub.add_argument(f.option, **kwargs)
    return parser


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    argv = list(argv)
    if not argv:
        raise UsageError("missing command; expected one of: {}".format(", ".join(COMMANDS)))
    namespace = build_parser().parse_args(argv)
    if namespace.command is None:
        raise UsageError("missing command; expected one of: {}".format(", ".join(COMMANDS)))
    return namespace


def parse_config(argv: Sequence[str], config_file: str = None) -> RunConfig:
    """
    Merge defaults, config file values and command line flags, in increasing precedence
    :param argv: command line without the program name
    :param config_file: optional config file; '--config' on the command line takes precedence
    :return: RunConfig
    """
    return config_from_namespace(parse_args(argv), config_file)


def config_from_namespace(namespace: argparse.Namespace, config_file: str = None) -> RunConfig:
    command = namespace.command
    config_file = namespace.config or config_file

    values = {}
    if config_file:
        for key, value in kv_file(config_file).items():
            if key == "command":
                if value != command:
                    raise UsageError("file is for command '{}', not '{}'".format(value, command), "--config")
                continue
            if key not in FIELD_MAP:
                raise UsageError("unknown configuration key '{}'".format(key), "--config")
            if command in FIELD_MAP[key].commands:
                values[key] = value

    for key in FIELD_MAP.keys():
        value = getattr(namespace, key, None)
        if value is not None:
            values[key] = value
    return build_config(command, values)


def _filtered(command: str, raw: Dict[str, Any]) -> Dict[str, Any]:
    result = {}
    for key, value in raw.items():
        f = FIELD_MAP.get(key)
        if f is None:
            raise UsageError("unknown configuration key '{}'".format(key))
        if command not in f.commands:
            raise UsageError("not used by command '{}'".format(command), f.option)
        if f.filter is not None:
            converted = filter_registry.get(f.filter).transform(value)
            if converted is None:
                raise UsageError("invalid value '{}'".format(format_value(value)), f.option)
            value = converted
        result[key] = value
    return result


def build_config(command: str, raw: Dict[str, Any]) -> RunConfig:
    """
    Filter, validate and assemble a RunConfig from raw key values
    """
    values = _filtered(command, raw)

    defaults = RunConfig(command)
    merged = {key: getattr(defaults, key) for key in defaults.keys()}
    merged.update(values)

    validator = Validator({key: FIELD_MAP[key].rules for key in defaults.keys()})
    if not validator.is_valid(merged):
        key, message = validator.first_error()
        raise UsageError(message, FIELD_MAP[key].option)

    for key in ("tau_c_list", "inputs"):
        if key in merged and merged[key] is not None:
            merged[key] = tuple(merged[key])
    config = RunConfig(command, **merged)
    _check_semantics(config)
    return config


def _check_semantics(config: RunConfig):
    command = config.command
    if command in _RUN:
        kind = config.kernel
        if kind in (KIND_PLAW, KIND_SPLAW) and config.p is None:
            raise UsageError("kernel '{}' requires an exponent".format(kind), "--p")
        if kind not in (KIND_PLAW, KIND_SPLAW) and config.p is not None:
            raise UsageError("kernel '{}' takes no exponent".format(kind), "--p")

    if command == CMD_INFER and config.kernel == KIND_DELTA:
        raise UsageError("inference needs a finite-memory kernel", "--kernel")

    if command in (CMD_SIMULATE, CMD_SWEEP) or (command == CMD_PLOT and config.figure):
        if command != CMD_SIMULATE and config.kernel == KIND_DELTA:
            raise UsageError("tau_c sweeps need a finite-memory kernel", "--kernel")
        backend = get_backend(config.backend)
        tau_c = config.tau_c if command == CMD_SIMULATE else config.tau_c_list[0]
        spec = KernelSpec(KIND_DELTA) if config.kernel == KIND_DELTA else KernelSpec(config.kernel, tau_c, config.p)
        try:
            backend.check(spec)
        except ValueError as e:
            raise UsageError(str(e), "--kernel")

    if command == CMD_SIMULATE and config.backend == BACKEND_PSEUDOMODE and not math.isclose(config.c0, PSEUDOMODE_C0):
        raise UsageError("pseudomode starts from C(0) = {:g}".format(PSEUDOMODE_C0), "--c0")

    if command == CMD_DIAGNOSE and not math.isclose(config.rho_ll + config.rho_rr, 1.0, abs_tol=POPULATION_TOLERANCE):
        raise UsageError("populations must sum to 1", "--rho-rr")

    if command == CMD_PLOT:
        if config.output == STDOUT:
            raise UsageError("plot writes an SVG file", "--output")
        if not config.figure and not config.inputs:
            raise UsageError("nothing to plot; give input curves or a figure", "--input")
        if config.figure and config.inputs:
            raise UsageError("a built-in figure takes no input curves", "--figure")

    if command == CMD_INFER and config.input is None:
        raise UsageError("input curve required", "--input")
    if command == CMD_DIAGNOSE and config.input is None:
        raise UsageError("input curve required", "--input")
