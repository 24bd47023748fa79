import logging
import math
from pathlib import Path

from memkern.base import Registry
from memkern.curve import CoherenceCurve
from memkern.diagnostics import curvature_infer_alpha0, diagnostics_along_curve, extract_tau_dec, signature_times
from memkern.exceptions import DataError
from memkern.resource.console import ConsoleWriter
from memkern.resource.csv import read_curve_csv, write_curve_csv, write_residuals_csv
from memkern.resource.plot import (
    DRAW_DASHED,
    STYLE_LOGLOG,
    Series,
    curve_series,
    render_plot,
    scaling_series,
)
from memkern.scaling import decay_curves, get_backend, sweep
from memkern.serializer.json import dump_meta

from .config import CMD_DIAGNOSE, CMD_INFER, CMD_PLOT, CMD_SIMULATE, CMD_SWEEP, FIGURE_DECAY, STDOUT, RunConfig

logger = logging.getLogger(__name__)


class Command:
    """
    Base class for CLI commands; run() returns the process exit code
    """

    def run(self, config: RunConfig, console: ConsoleWriter) -> int:
        raise NotImplementedError()

    @staticmethod
    def to_file(config: RunConfig) -> bool:
        return config.output != STDOUT

    @staticmethod
    def write_text(path: str, text: str):
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


registry = Registry(Command)


def _fmt(value) -> str:
    return "none" if value is None else "{:.6g}".format(value)


@registry.register_cls(name=CMD_SIMULATE)
class Simulate(Command):
    def run(self, config, console):
        curve = get_backend(config.backend).simulate(
            config.params, config.kernel_spec, config.grid, config.run_settings
        )
        write_curve_csv(curve, config.output)
        if self.to_file(config):
            dump_meta({"config": config.asdict(), "curve": curve.meta}, config.output)
            tau_dec = extract_tau_dec(curve)
            console.success("simulate: wrote {} samples to {}".format(len(curve), config.output))
            console.report([("backend", curve.backend), ("tau_dec", _fmt(tau_dec))])
            if curve.meta.get("warning"):
                console.warn("warning: {}".format(curve.meta["warning"]))
        return 0


@registry.register_cls(name=CMD_SWEEP)
class Sweep(Command):
    def run(self, config, console):
        result = sweep(
            config.backend, config.params, config.kernel, config.tau_c_list, config.sweep_settings, config.p
        )
        for point in result.points:
            if point.reason:
                console.warn("tau_c={:g}: {}".format(point.tau_c, point.reason))

        if result.fit is not None:
            report = result.fit.to_report()
        else:
            report = "beta=none\nreason=not enough eligible points spanning the required decades\n"

        write_curve_csv(result, config.output)
        if self.to_file(config):
            self.write_text(config.output + ".fit.txt", report)
            dump_meta(
                {"config": config.asdict(), "points": list(result.points), "fit": result.fit}, config.output
            )
            console.success("sweep: {} points written to {}".format(len(result.points), config.output))
            console.write(report, eol=False)
        else:
            # stdout carries the CSV
            console.write_error(report, eol=False)

        if config.plot:
            render_plot(
                scaling_series(result),
                STYLE_LOGLOG,
                config.plot,
                title="tau_dec vs tau_c ({})".format(config.backend),
                xlabel="tau_c",
                ylabel="tau_dec",
            )
        return 0


@registry.register_cls(name=CMD_INFER)
class Infer(Command):
    def run(self, config, console):
        curve = read_curve_csv(config.input)
        result = curvature_infer_alpha0(curve, config.params, config.kernel)
        if self.to_file(config):
            self.write_text(config.output, result.to_report())
            write_residuals_csv(result, config.output + ".residuals.csv")
            dump_meta({"config": config.asdict(), "input": curve.meta, "result": result}, config.output)
            console.success("infer: {} ({})".format(result.regime, "reliable" if result.reliable else "unreliable"))
            console.report([("alpha00_hat", _fmt(result.alpha00_hat)), ("tau_c_hat", _fmt(result.tau_c_hat))])
        else:
            console.write(result.to_report(), eol=False)
        return 0


@registry.register_cls(name=CMD_DIAGNOSE)
class Diagnose(Command):
    def run(self, config, console):
        curve = read_curve_csv(config.input)
        if curve.c0 == 0:
            raise DataError("diagnose: |C(t0)| is zero, cannot rescale")
        # start from the pure superposition with the given populations
        scaled = curve.scaled(math.sqrt(config.rho_ll * config.rho_rr) / curve.c0)
        series = diagnostics_along_curve(scaled, config.rho_ll, config.rho_rr)
        times = signature_times(curve, config.rho_ll, config.rho_rr)
        write_curve_csv(series, config.output)
        if self.to_file(config):
            dump_meta({"config": config.asdict(), "input": curve.meta, "signature_times": times}, config.output)
            console.success("diagnose: wrote {} samples to {}".format(len(series), config.output))
            console.report(
                [
                    ("tau_dec", _fmt(times.tau_dec)),
                    ("tau_purity", _fmt(times.tau_purity)),
                    ("tau_entropy", _fmt(times.tau_entropy)),
                ]
            )
        return 0


@registry.register_cls(name=CMD_PLOT)
class Plot(Command):
    def run(self, config, console):
        if config.figure == FIGURE_DECAY:
            curves = decay_curves(
                config.backend,
                config.params,
                config.kernel,
                config.tau_c_list,
                config.t_final,
                config.run_settings,
                config.p,
            )
            series = [curve_series(c) for c in curves[:-1]]
            reference = curves[-1]
            series.append(Series(reference.meta["label"], reference.times, reference.normalized(), DRAW_DASHED))
            render_plot(series, config.style, config.output, title=config.title)
        elif config.figure:
            result = sweep(
                config.backend, config.params, config.kernel, config.tau_c_list, config.sweep_settings, config.p
            )
            render_plot(
                scaling_series(result),
                STYLE_LOGLOG,
                config.output,
                title=config.title,
                xlabel="tau_c",
                ylabel="tau_dec",
            )
        else:
            series = [curve_series(self._load(path), label=Path(path).stem) for path in config.inputs]
            render_plot(series, config.style, config.output, title=config.title)
        console.success("plot: wrote {}".format(config.output))
        return 0

    @staticmethod
    def _load(path: str) -> CoherenceCurve:
        logger.debug("plot: reading %s", path)
        return read_curve_csv(path)


def run_command(config: RunConfig, console: ConsoleWriter) -> int:
    return registry.get(config.command).run(config, console)
