import math

import numpy as np
import pytest

from memkern.closure import markovian_limit_curve
from memkern.curve import CoherenceCurve, TimeGrid
from memkern.diagnostics import (
    DephasingState,
    diagnostics_along_curve,
    entropy,
    purity,
    signature_times,
)
from memkern.exceptions import DataError
from memkern.functional import coherence_from_phi, phi_curve_ou_closed_form
from memkern.kernel import SystemParams


def random_states(count, seed=7):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        rho_ll = rng.uniform(0.0, 1.0)
        rho_rr = 1.0 - rho_ll
        radius = math.sqrt(rho_ll * rho_rr) * rng.uniform(0.0, 1.0)
        yield DephasingState(rho_ll, rho_rr, radius * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))


def eigen_entropy(matrix):
    values = np.clip(np.linalg.eigvalsh(matrix), 0.0, None)
    values = values[values > 0]
    return float(-np.sum(values * np.log(values)))


class TestDephasingState:
    def test_matrix(self):
        state = DephasingState(0.5, 0.5, 0.25j)
        assert np.allclose(state.matrix(), [[0.5, 0.25j], [-0.25j, 0.5]])

    @pytest.mark.parametrize(
        "rho_ll,rho_rr,c",
        [
            [0.6, 0.6, 0.0],
            [-0.1, 1.1, 0.0],
            [0.5, 0.5, 0.6],
            [0.9, 0.1, 0.31],
        ],
    )
    def test_invalid(self, rho_ll, rho_rr, c):
        with pytest.raises(ValueError):
            DephasingState(rho_ll, rho_rr, c)


class TestPurityEntropy:
    def test_against_eigendecomposition(self):
        for state in random_states(1000):
            matrix = state.matrix()
            assert purity(state) == pytest.approx(float(np.trace(matrix @ matrix).real), abs=1e-10)
            assert entropy(state) == pytest.approx(eigen_entropy(matrix), abs=1e-10)

    def test_limits(self):
        pure = DephasingState(0.5, 0.5, 0.5)
        assert purity(pure) == pytest.approx(1.0)
        assert entropy(pure) == pytest.approx(0.0, abs=1e-12)

        mixed = DephasingState(0.5, 0.5, 0.0)
        assert purity(mixed) == pytest.approx(0.5)
        assert entropy(mixed) == pytest.approx(math.log(2.0))

    def test_population_only(self):
        assert entropy(DephasingState(1.0, 0.0)) == 0.0
        assert purity(DephasingState(1.0, 0.0)) == 1.0


class TestAlongCurve:
    def test_series(self):
        grid = TimeGrid.span(0.01, 3.0)
        curve = markovian_limit_curve(SystemParams(), grid, 0.5)
        series = diagnostics_along_curve(curve, 0.5, 0.5)
        assert len(series) == grid.n
        assert series.purity[0] == pytest.approx(1.0)
        assert series.entropy[0] == pytest.approx(0.0, abs=1e-12)
        assert np.all(np.diff(series.purity) < 0)
        assert np.all(np.diff(series.entropy) > 0)
        assert np.all(series.entropy <= math.log(2.0) + 1e-12)
        # purity is quadratic in |C|
        assert np.allclose(series.purity, 0.5 + 2.0 * np.abs(curve.samples) ** 2)
        assert series.meta["rho_ll"] == 0.5
        assert series.meta["backend"] == "markovian"

    def test_exceeds_populations(self):
        curve = CoherenceCurve(0.0, 0.1, [0.5, 0.4, 0.3])
        with pytest.raises(DataError):
            diagnostics_along_curve(curve, 0.9, 0.1)

    def test_bad_populations(self):
        curve = CoherenceCurve(0.0, 0.1, [0.1, 0.1, 0.1])
        with pytest.raises(ValueError):
            diagnostics_along_curve(curve, 0.5, 0.6)


class TestSignatureTimes:
    def test_markovian(self):
        curve = markovian_limit_curve(SystemParams(), TimeGrid.span(1e-3, 4.0), 0.5)
        times = signature_times(curve)
        assert times.tau_dec == pytest.approx(1.0, rel=1e-5)
        assert times.tau_purity == pytest.approx(0.5, rel=1e-5)
        assert times.tau_entropy == pytest.approx(0.248, abs=2e-3)

    def test_memory_delays_all_times(self):
        params = SystemParams()
        grid = TimeGrid.span(1e-3, 4.0)
        reference = signature_times(markovian_limit_curve(params, grid, 0.5))
        memory = signature_times(coherence_from_phi(phi_curve_ou_closed_form(params, 1.0, grid), 0.5))

        assert memory.tau_dec == pytest.approx(1.1985, abs=5e-4)
        assert memory.tau_entropy == pytest.approx(0.544, abs=5e-3)
        assert memory.tau_purity < memory.tau_dec
        # entropy reaches half of ln 2 before the coherence reaches e^-1
        assert memory.tau_entropy < memory.tau_dec
        assert memory.tau_entropy > reference.tau_entropy
        assert memory.tau_purity > reference.tau_purity

    def test_scale_invariant(self):
        grid = TimeGrid.span(1e-3, 4.0)
        a = signature_times(markovian_limit_curve(SystemParams(), grid, 0.5))
        b = signature_times(markovian_limit_curve(SystemParams(), grid, 0.1))
        assert a.tau_dec == pytest.approx(b.tau_dec, rel=1e-12)
        assert a.tau_purity == pytest.approx(b.tau_purity, rel=1e-12)
        assert a.tau_entropy == pytest.approx(b.tau_entropy, rel=1e-12)

    def test_unbalanced_populations(self):
        curve = markovian_limit_curve(SystemParams(), TimeGrid.span(1e-3, 4.0), 1.0)
        times = signature_times(curve, 0.8, 0.2)
        assert times.tau_purity == pytest.approx(0.5, rel=1e-5)
        assert times.tau_entropy is not None

    def test_no_crossings(self):
        curve = markovian_limit_curve(SystemParams(), TimeGrid.span(1e-3, 0.1), 0.5)
        times = signature_times(curve)
        assert times.tau_dec is None
        assert times.tau_purity is None
        assert times.tau_entropy is None


class TestShortTime:
    @pytest.fixture
    def onset(self):
        params = SystemParams()
        curve = coherence_from_phi(phi_curve_ou_closed_form(params, 1.0, TimeGrid.span(1e-3, 0.01)), 0.5)
        return curve, diagnostics_along_curve(curve, 0.5, 0.5)

    def test_entropy_of_small_eigenvalue(self, onset):
        curve, series = onset
        lam = 0.5 - np.abs(curve.samples[1:])
        ratio = series.entropy[1:] / (lam * (1.0 - np.log(lam)))
        assert np.all((ratio >= 0.9) & (ratio <= 1.1))

    def test_purity_loss_quadratic(self, onset):
        curve, series = onset
        t = curve.times
        scaled = [(1.0 - series.purity[i]) / t[i] ** 2 for i in [8, 4, 2, 1]]
        steps = np.abs(np.diff(scaled))
        assert np.all(steps[1:] < steps[:-1])
        # (a / hbar)^2 D / tau_c
        assert scaled[-1] == pytest.approx(1.0, rel=1e-2)
