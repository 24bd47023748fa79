import numpy as np
import pytest

from memkern.closure import markovian_limit_curve
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.diagnostics import diagnostics_along_curve
from memkern.exceptions import CurveFormatError
from memkern.functional import phi_curve_ou_closed_form
from memkern.kernel import SystemParams
from memkern.resource.csv import read_curve_csv, write_curve_csv
from memkern.scaling import ScalingPoint, ScalingResult


@pytest.fixture
def rotating_curve():
    grid = TimeGrid.span(0.013, 2.0)
    samples = 0.5 * np.exp(-grid.times / 0.7) * np.exp(-1j * 1.3 * grid.times)
    return CoherenceCurve(0.0, grid.dt, samples, {"backend": "functional"})


class TestWrite:
    def test_coherence(self, tmp_path):
        curve = CoherenceCurve(0.0, 0.5, [1.0, 0.5j, -0.25])
        path = tmp_path / "c.csv"
        write_curve_csv(curve, path)
        assert path.read_text() == "t,re,im,abs\n0,1,0,1\n0.5,0,0.5,0.5\n1,-0.25,0,0.25\n"

    def test_stderr_column(self, tmp_path):
        curve = CoherenceCurve(0.0, 0.1, [1.0, 0.9], stderr=[0.0, 0.01])
        path = tmp_path / "mc.csv"
        write_curve_csv(curve, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,re,im,abs,stderr"
        assert lines[2] == "0.10000000000000001,0.90000000000000002,0,0.90000000000000002,0.01"

    def test_phi(self, tmp_path):
        phi = phi_curve_ou_closed_form(SystemParams(), 1.0, TimeGrid(0.5, 3))
        path = tmp_path / "phi.csv"
        write_curve_csv(phi, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,phi"
        assert len(lines) == 4

    def test_diagnostics(self, tmp_path):
        curve = markovian_limit_curve(SystemParams(), TimeGrid(0.1, 5), 0.5)
        path = tmp_path / "diag.csv"
        write_curve_csv(diagnostics_along_curve(curve, 0.5, 0.5), path)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,purity,entropy"
        assert lines[1] == "0,1,0"

    def test_scaling(self, tmp_path):
        result = ScalingResult(
            (ScalingPoint(1.0, 1.5, "functional"), ScalingPoint(2.0, None, "functional", None, "no crossing"))
        )
        path = tmp_path / "sweep.csv"
        write_curve_csv(result, path)
        assert path.read_text() == "tau_c,tau_dec,backend\n1,1.5,functional\n2,,functional\n"

    def test_stdout(self, capsys):
        write_curve_csv(CoherenceCurve(0.0, 1.0, [1.0, 0.5]), "-")
        assert capsys.readouterr().out.startswith("t,re,im,abs\n0,1,0,1\n")

    def test_unsupported(self, tmp_path):
        with pytest.raises(TypeError):
            write_curve_csv([1, 2, 3], tmp_path / "x.csv")


class TestRead:
    def test_round_trip(self, tmp_path, rotating_curve):
        path = tmp_path / "curve.csv"
        write_curve_csv(rotating_curve, path)
        curve = read_curve_csv(path)
        assert np.array_equal(curve.samples, rotating_curve.samples)
        assert curve.dt == pytest.approx(rotating_curve.dt, rel=1e-12)
        assert curve.t0 == 0.0
        assert curve.stderr is None
        assert curve.backend == "file"
        assert curve.meta["source"] == str(path)

        assert np.allclose(curve.times, rotating_curve.times, rtol=0, atol=1e-14)

    def test_stderr(self, tmp_path):
        path = tmp_path / "mc.csv"
        write_curve_csv(CoherenceCurve(0.0, 0.1, [1.0, 0.9, 0.8], stderr=[0.0, 0.01, 0.02]), path)
        curve = read_curve_csv(path)
        assert np.array_equal(curve.stderr, [0.0, 0.01, 0.02])

    def test_abs_file(self, tmp_path):
        path = tmp_path / "measured.csv"
        path.write_text("t,abs\n1.0,0.9\n1.5,0.7\n2.0,0.4\n")
        curve = read_curve_csv(path)
        assert curve.t0 == 1.0
        assert curve.dt == 0.5
        assert np.array_equal(curve.samples, [0.9, 0.7, 0.4])
        assert np.all(curve.samples.imag == 0)

    def test_blank_lines(self, tmp_path):
        path = tmp_path / "gaps.csv"
        path.write_text("t,abs\n0,1\n\n0.5,0.5\n1,0.25\n\n")
        assert len(read_curve_csv(path)) == 3

    @pytest.mark.parametrize(
        "text,line,message",
        [
            ["", 1, "empty file"],
            ["time,value\n0,1\n", 1, "header mismatch"],
            ["t,abs\n0,1\n0.5\n", 3, "expected 2 columns"],
            ["t,abs\n0,1\n0.5,abc\n", 3, "invalid number 'abc'"],
            ["t,abs\n0,1\n0.5,nan\n", 3, "non-finite"],
            ["t,abs\n0,1\n", 2, "at least 2 samples"],
            ["t,abs\n1,1\n0,0.5\n", 3, "times must increase"],
            ["t,abs\n0,1\n0.3,0.8\n1,0.5\n", 3, "non-uniform"],
        ],
    )
    def test_invalid(self, tmp_path, text, line, message):
        path = tmp_path / "bad.csv"
        path.write_text(text)
        with pytest.raises(CurveFormatError) as e:
            read_curve_csv(path)
        assert e.value.line == line
        assert message in str(e.value)
        assert "line {}".format(line) in str(e.value)

    def test_missing(self, tmp_path):
        with pytest.raises(OSError):
            read_curve_csv(tmp_path / "missing.csv")
