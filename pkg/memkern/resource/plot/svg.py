import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from memkern.curve import CoherenceCurve
from memkern.exceptions import DataError
from memkern.scaling import ScalingResult

logger = logging.getLogger(__name__)

STYLE_LINEAR = "linear"
STYLE_LOGLOG = "loglog"
STYLES = (STYLE_LINEAR, STYLE_LOGLOG)

DRAW_LINE = "line"
DRAW_DASHED = "dashed"
DRAW_POINTS = "points"

# fixed ids and no timestamp keep the SVG byte-stable
_SVG_RC = {"svg.hashsalt": "memkern", "svg.fonttype": "none"}


@dataclass(frozen=True, eq=False)
class Series:
    label: str
    x: np.ndarray
    y: np.ndarray
    draw: str = DRAW_LINE

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float).reshape(-1)
        y = np.asarray(self.y, dtype=float).reshape(-1)
        if x.shape != y.shape or x.size == 0:
            raise ValueError("Series(): '{}' needs matching, non-empty x and y".format(self.label))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)


def curve_series(curve: CoherenceCurve, label: str = None, normalized: bool = True) -> Series:
    """
    |C(t)| (divided by |C(t0)| when normalized) against t
    """
    y = curve.normalized() if normalized else curve.magnitude
    return Series(label or curve.meta.get("label", curve.backend or "curve"), curve.times, y)


def scaling_series(result: ScalingResult) -> List[Series]:
    """
    Measured tau_dec points plus the fitted power law as a dashed line
    """
    points = [p for p in result.points if p.tau_dec is not None]
    if not points:
        raise DataError("scaling_series(): no decoherence times to plot")
    x = np.array([p.tau_c for p in points])
    y = np.array([p.tau_dec for p in points])
    series = [Series("{} tau_dec".format(points[0].backend), x, y, DRAW_POINTS)]
    if result.fit is not None:
        grid = np.geomspace(x.min(), x.max(), 50)
        series.append(
            Series("fit beta={:.3f}".format(result.fit.beta), grid, result.fit.prefactor * grid**result.fit.beta,
                   DRAW_DASHED)
        )
    return series


def render_plot(
    series: Sequence[Series],
    style: str,
    path: Union[str, Path],
    title: Optional[str] = None,
    xlabel: str = "t",
    ylabel: str = "|C(t)| / |C(0)|",
):
    """
    Write a self-contained SVG line plot with axes, ticks and legend

    Each series is drawn as one line element with id 'series-<index>'
    """
    series = list(series)
    if not series:
        raise ValueError("render_plot(): at least one series is required")
    if style not in STYLES:
        raise ValueError("render_plot(): unknown style '{}'".format(style))
    if style == STYLE_LOGLOG:
        for s in series:
            if np.any(s.x <= 0) or np.any(s.y <= 0):
                raise DataError("render_plot(): series '{}' has non-positive values on a log-log plot".format(s.label))

    with matplotlib.rc_context(_SVG_RC):
        fig = Figure(figsize=(6.4, 4.8))
        ax = fig.add_subplot()
        for i, s in enumerate(series):
            if s.draw == DRAW_POINTS:
                (line,) = ax.plot(s.x, s.y, marker="o", linestyle="none", label=s.label)
            elif s.draw == DRAW_DASHED:
                (line,) = ax.plot(s.x, s.y, linestyle="--", label=s.label)
            else:
                (line,) = ax.plot(s.x, s.y, label=s.label)
            line.set_gid("series-{}".format(i))
        if style == STYLE_LOGLOG:
            ax.set_xscale("log")
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend()
        ax.grid(True, alpha=0.3)
        fig.savefig(path, format="svg", metadata={"Date": None})
    logger.debug("render_plot(): %d series to %s", len(series), path)
