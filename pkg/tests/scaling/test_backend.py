import numpy as np
import pytest
from scipy.stats import linregress

from memkern.cli.config import parse_config
from memkern.curve import TimeGrid
from memkern.diagnostics import extract_tau_dec
from memkern.functional import phi_ou_closed_form
from memkern.kernel import KIND_DELTA, KIND_GAUSS, KIND_PLAW, KIND_SPLAW, KernelSpec, SystemParams
from memkern.scaling import (
    FunctionalBackend,
    MarkovianBackend,
    OuClosureBackend,
    PseudomodeBackend,
    RunSettings,
    StochasticBackend,
    backend_registry,
    get_backend,
)


class TestRegistry:
    def test_names(self):
        assert backend_registry.names() == ["functional", "ou-closure", "pseudomode", "stochastic", "markovian"]

    @pytest.mark.parametrize(
        "name,cls",
        [
            ["functional", FunctionalBackend],
            ["ou-closure", OuClosureBackend],
            ["pseudomode", PseudomodeBackend],
            ["stochastic", StochasticBackend],
            ["markovian", MarkovianBackend],
        ],
    )
    def test_get(self, name, cls):
        backend = get_backend(name)
        assert isinstance(backend, cls)
        assert backend.name == name

    def test_unknown(self):
        with pytest.raises(ValueError):
            get_backend("lattice")


class TestCheck:
    @pytest.mark.parametrize("name", ["ou-closure", "pseudomode", "stochastic"])
    @pytest.mark.parametrize("spec", [KernelSpec(KIND_GAUSS, 1.0), KernelSpec(KIND_PLAW, 1.0, 2.0)])
    def test_ou_only(self, name, spec):
        with pytest.raises(ValueError, match="{} supports OU only".format(name)):
            get_backend(name).check(spec)

    def test_functional_rejects_delta(self):
        with pytest.raises(ValueError, match="does not support kernel 'delta'"):
            get_backend("functional").check(KernelSpec(KIND_DELTA))

    def test_markovian_accepts_all(self):
        backend = get_backend("markovian")
        for spec in [KernelSpec(KIND_DELTA), KernelSpec(KIND_SPLAW, 1.0, 3.0), KernelSpec.ou(1.0)]:
            backend.check(spec)

    def test_max_dt(self):
        spec = KernelSpec.ou(2.0)
        assert get_backend("functional").max_dt(spec) == float("inf")
        assert get_backend("ou-closure").max_dt(spec) == pytest.approx(0.04)
        assert get_backend("pseudomode").max_dt(spec) == pytest.approx(0.04)
        assert get_backend("stochastic").max_dt(spec) == pytest.approx(0.1)


class TestFunctional:
    def test_ou_closed_form(self):
        params = SystemParams()
        grid = TimeGrid.span(0.01, 3.0)
        curve = get_backend("functional").simulate(params, KernelSpec.ou(1.0), grid, RunSettings(c0=0.5))
        assert curve.c0 == 0.5
        assert np.allclose(curve.normalized(), np.exp(-phi_ou_closed_form(params, 1.0, grid.times)))
        assert curve.meta["method"] == "closed-form"

    def test_markov_limit(self):
        # a very short Gaussian memory decays on the Markovian time of its total weight
        params = SystemParams()
        curve = get_backend("functional").simulate(
            params, KernelSpec(KIND_GAUSS, 1e-3), TimeGrid.span(0.005, 3.0), RunSettings()
        )
        assert curve.meta["method"] == "quadrature"
        assert extract_tau_dec(curve) == pytest.approx(1.0, rel=0.02)

        window = (curve.times >= 0.1) & (curve.times <= 2.0)
        fit = linregress(curve.times[window], np.log(curve.magnitude[window]))
        assert fit.rvalue**2 >= 0.999
        assert fit.slope == pytest.approx(-1.0, rel=0.02)


class TestOuClosure:
    def test_c0(self):
        params = SystemParams()
        grid = TimeGrid.span(0.02, 2.0)
        backend = get_backend("ou-closure")
        plain = backend.simulate(params, KernelSpec.ou(1.0), grid, RunSettings())
        scaled = backend.simulate(params, KernelSpec.ou(1.0), grid, RunSettings(c0=0.5))
        assert plain.c0 == 1.0
        assert scaled.c0 == 0.5
        assert scaled.meta["c0"] == 0.5
        assert np.allclose(scaled.samples, 0.5 * plain.samples)
        assert scaled.backend == "ou-closure"


class TestPseudomode:
    def test_uncertified(self):
        params = SystemParams()
        grid = TimeGrid.span(0.02, 2.0)
        curve = get_backend("pseudomode").simulate(
            params, KernelSpec.ou(1.0), grid, RunSettings(n_max=8, certify=False)
        )
        assert curve.c0 == pytest.approx(0.5)
        assert curve.meta["config"].n_max == 8
        assert "certificate" not in curve.meta
        assert np.max(np.abs(curve.normalized() - np.exp(-phi_ou_closed_form(params, 1.0, grid.times)))) <= 1e-3

    def test_tier_one(self):
        curve = get_backend("pseudomode").simulate(
            SystemParams(), KernelSpec.ou(1.0), TimeGrid.span(0.02, 1.0), RunSettings(tier_one=True)
        )
        assert curve.meta["truncation"] == "tier-one"
        assert curve.meta["levels"] == 2

    def test_certified(self):
        curve = get_backend("pseudomode").simulate(
            SystemParams(), KernelSpec.ou(1.0), TimeGrid.span(0.02, 1.0), RunSettings()
        )
        assert curve.meta["certificate"].converged


class TestStochastic:
    def test_simulate(self):
        settings = RunSettings(n_traj=1000, seed=3)
        grid = TimeGrid.span(0.05, 1.0)
        backend = get_backend("stochastic")
        a = backend.simulate(SystemParams(), KernelSpec.ou(1.0), grid, settings)
        b = backend.simulate(SystemParams(), KernelSpec.ou(1.0), grid, settings)
        assert a.stderr is not None
        assert a.meta["mc"].seed == 3
        assert np.array_equal(a.samples, b.samples)

    def test_c0(self):
        grid = TimeGrid.span(0.05, 1.0)
        backend = get_backend("stochastic")
        plain = backend.simulate(SystemParams(), KernelSpec.ou(1.0), grid, RunSettings(n_traj=500, seed=5))
        scaled = backend.simulate(SystemParams(), KernelSpec.ou(1.0), grid, RunSettings(c0=0.3, n_traj=500, seed=5))
        assert plain.c0 == pytest.approx(1.0)
        assert scaled.c0 == pytest.approx(0.3)
        assert scaled.meta["c0"] == 0.3
        assert np.allclose(scaled.samples, 0.3 * plain.samples)
        assert np.allclose(scaled.stderr, 0.3 * plain.stderr)

    def test_c0_from_command_line(self):
        argv = ["simulate", "--backend", "stochastic", "--c0", "0.3", "--n-traj", "200", "--dt", "0.05"]
        argv += ["--t-final", "1"]
        config = parse_config(argv)
        backend = get_backend(config.backend)
        curve = backend.simulate(config.params, config.kernel_spec, config.grid, config.run_settings)
        assert curve.c0 == pytest.approx(0.3)

    def test_shifted_grid(self):
        with pytest.raises(ValueError):
            get_backend("stochastic").simulate(
                SystemParams(), KernelSpec.ou(1.0), TimeGrid(0.05, 10, t0=1.0), RunSettings(n_traj=100)
            )


class TestMarkovian:
    @pytest.mark.parametrize(
        "spec,rate",
        [
            [KernelSpec(KIND_DELTA), 1.0],
            [KernelSpec.ou(1.0), 2.0],
            [KernelSpec(KIND_GAUSS, 0.5), 1.0],
            [KernelSpec(KIND_SPLAW, 1.0, 3.0), 1.0],
        ],
    )
    def test_equivalent_rate(self, spec, rate):
        grid = TimeGrid.span(0.01, 2.0)
        curve = get_backend("markovian").simulate(SystemParams(), spec, grid, RunSettings())
        assert np.allclose(curve.samples, np.exp(-rate * grid.times))
        assert curve.meta["kernel"] == spec
