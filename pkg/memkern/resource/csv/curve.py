import contextlib
import csv
import functools
import sys
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import numpy as np

from memkern.base import Container
from memkern.constants import CSV_FLOAT_FORMAT
from memkern.curve import CoherenceCurve
from memkern.diagnostics import DiagnosticsSeries, InferenceResult
from memkern.exceptions import CurveFormatError
from memkern.functional import PhiCurve
from memkern.scaling import ScalingResult

HEADER_FULL = ["t", "re", "im", "abs"]
HEADER_MC = HEADER_FULL + ["stderr"]
HEADER_ABS = ["t", "abs"]

# relative deviation from uniform spacing tolerated on read
_SPACING_TOLERANCE = 1e-6

PathLike = Union[str, Path]


def fmt(value: float) -> str:
    return format(float(value), CSV_FLOAT_FORMAT)


@contextlib.contextmanager
def _open_write(path: PathLike):
    if str(path) == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as f:
            yield f


def _write_rows(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[str]]):
    with _open_write(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


@functools.singledispatch
def write_curve_csv(data, path: PathLike):
    """
    Write a coherence curve, phi curve, diagnostics series or scaling result as CSV
    :param data: object to write
    :param path: destination path, '-' for stdout
    """
    raise TypeError("write_curve_csv(): cannot write '{}'".format(type(data).__name__))


@write_curve_csv.register
def _write_coherence(curve: CoherenceCurve, path: PathLike):
    header = HEADER_FULL if curve.stderr is None else HEADER_MC
    times = curve.times
    rows = []
    for i, c in enumerate(curve.samples):
        row = [fmt(times[i]), fmt(c.real), fmt(c.imag), fmt(abs(c))]
        if curve.stderr is not None:
            row.append(fmt(curve.stderr[i]))
        rows.append(row)
    _write_rows(path, header, rows)


@write_curve_csv.register
def _write_phi(phi: PhiCurve, path: PathLike):
    _write_rows(path, ["t", "phi"], ([fmt(t), fmt(v)] for t, v in zip(phi.times, phi.values)))


@write_curve_csv.register
def _write_diagnostics(series: DiagnosticsSeries, path: PathLike):
    rows = ([fmt(t), fmt(p), fmt(s)] for t, p, s in zip(series.times, series.purity, series.entropy))
    _write_rows(path, ["t", "purity", "entropy"], rows)


@write_curve_csv.register
def _write_scaling(result: ScalingResult, path: PathLike):
    rows = []
    for point in result.points:
        rows.append([fmt(point.tau_c), "" if point.tau_dec is None else fmt(point.tau_dec), point.backend])
    _write_rows(path, ["tau_c", "tau_dec", "backend"], rows)


def write_residuals_csv(result: InferenceResult, path: PathLike):
    rows = ([fmt(t), fmt(p), fmt(r)] for t, p, r in zip(result.window_times, result.window_phi, result.residuals))
    _write_rows(path, ["t", "phi", "residual"], rows)


def _parse_float(text: str, path, line: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise CurveFormatError("invalid number '{}' in column '{}'".format(text, column), path, line)
    if not np.isfinite(value):
        raise CurveFormatError("non-finite value in column '{}'".format(column), path, line)
    return value


def read_curve_csv(path: PathLike) -> CoherenceCurve:
    """
    Read a uniformly sampled curve written by write_curve_csv, or an external 't,abs' file (phase zero)
    """
    try:
        with open(path, newline="") as f:
            lines = list(csv.reader(f))
    except UnicodeDecodeError as e:
        raise CurveFormatError("not a text file: {}".format(e), path)

    if not lines:
        raise CurveFormatError("empty file", path, 1)
    header = [h.strip() for h in lines[0]]
    if header not in (HEADER_FULL, HEADER_MC, HEADER_ABS):
        raise CurveFormatError(
            "header mismatch, expected one of {}, {}, {}".format(
                ",".join(HEADER_FULL), ",".join(HEADER_MC), ",".join(HEADER_ABS)
            ),
            path,
            1,
        )

    times: List[float] = []
    samples: List[complex] = []
    stderr: List[float] = []
    for line, row in enumerate(lines[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise CurveFormatError("expected {} columns, found {}".format(len(header), len(row)), path, line)
        values = [_parse_float(text, path, line, column) for text, column in zip(row, header)]
        times.append(values[0])
        if header == HEADER_ABS:
            samples.append(complex(values[1], 0.0))
        else:
            samples.append(complex(values[1], values[2]))
            if header == HEADER_MC:
                stderr.append(values[4])

    if len(times) < 2:
        raise CurveFormatError("need at least 2 samples to determine spacing", path, len(lines))
    t = np.array(times)
    dt = (t[-1] - t[0]) / (t.size - 1)
    if not dt > 0:
        raise CurveFormatError("times must increase", path, 3)
    deviation = np.abs(t - (t[0] + dt * np.arange(t.size)))
    bad = np.nonzero(deviation > _SPACING_TOLERANCE * dt)[0]
    if bad.size:
        raise CurveFormatError("non-uniform time spacing", path, int(bad[0]) + 2)

    meta = Container({"backend": "file", "source": str(path)})
    return CoherenceCurve(float(t[0]), float(dt), np.array(samples), meta, np.array(stderr) if stderr else None)
