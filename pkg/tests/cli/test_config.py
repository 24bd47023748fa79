import pytest

from memkern.cli import RunConfig, build_config, parse_config
from memkern.cli.config import FIELDS, build_parser, format_value
from memkern.curve import TimeGrid
from memkern.exceptions import UsageError
from memkern.kernel import KIND_DELTA, KernelSpec, SystemParams


def write_config(tmp_path, text, name="run.conf"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestDefaults:
    def test_simulate(self):
        config = parse_config(["simulate"])
        assert config == RunConfig("simulate")
        assert config.backend == "functional"
        assert config.output == "-"
        assert config.params == SystemParams()
        assert config.kernel_spec == KernelSpec.ou(1.0)
        assert config.grid == TimeGrid.span(1e-3, 10.0)

    def test_sweep(self):
        config = parse_config(["sweep"])
        assert config.tau_c_list == (1.0, 2.0, 4.0, 8.0, 16.0, 32.0)
        assert config.sweep_settings.horizon == 3.0
        assert config.sweep_settings.workers is None
        assert config.run_settings.workers == 1

    def test_keys_per_command(self):
        assert "tau_c" in RunConfig("simulate").keys()
        assert "tau_c" not in RunConfig("sweep").keys()
        assert "tau_c_list" in RunConfig("sweep").keys()
        assert RunConfig("diagnose").keys() == ["input", "rho_ll", "rho_rr", "output"]

    def test_option_names(self):
        options = {f.key: f.option for f in FIELDS}
        assert options["t_final"] == "--t-final"
        assert options["D"] == "--D"
        assert options["inputs"] == "--input"
        assert options["tau_c_list"] == "--tau-c-list"


class TestFlags:
    def test_values(self):
        config = parse_config(
            [
                "simulate",
                "--backend", "pseudomode",
                "--tau-c", "2",
                "--dt", "0.02",
                "--t-final", "4",
                "--n-max", "8",
                "--certify", "false",
                "--D", "0.5",
                "-o", "out.csv",
            ]
        )
        assert config.backend == "pseudomode"
        assert config.tau_c == 2.0
        assert config.n_max == 8
        assert config.certify is False
        assert config.params == SystemParams(D=0.5)
        assert config.output == "out.csv"
        settings = config.run_settings
        assert settings.n_max == 8
        assert settings.certify is False

    def test_power_law(self):
        config = parse_config(["simulate", "--kernel", "plaw", "--p", "2.5"])
        assert config.kernel_spec == KernelSpec("plaw", 1.0, 2.5)

    def test_delta(self):
        config = parse_config(["simulate", "--backend", "markovian", "--kernel", "delta"])
        assert config.kernel_spec == KernelSpec(KIND_DELTA)

    def test_plot_inputs(self):
        config = parse_config(["plot", "--input", "a.csv", "b.csv", "-o", "fig.svg"])
        assert config.inputs == ("a.csv", "b.csv")
        assert config.style == "linear"


class TestConfigFile:
    def test_merge(self, tmp_path):
        path = write_config(tmp_path, "# run\ncommand=simulate\ntau_c=2\ndt=0.01\ntau_c_list=1,2\n")
        config = parse_config(["simulate", "--config", path, "--dt", "0.02"])
        # flags win over the file; keys of other commands are ignored
        assert config.tau_c == 2.0
        assert config.dt == 0.02
        assert config.tau_c_list == RunConfig("simulate").tau_c_list

    def test_default_file(self, tmp_path):
        path = write_config(tmp_path, "seed=7\nn_traj=500\n")
        config = parse_config(["sweep"], config_file=path)
        assert config.seed == 7
        assert config.n_traj == 500

    def test_command_mismatch(self, tmp_path):
        path = write_config(tmp_path, "command=sweep\n")
        with pytest.raises(UsageError) as e:
            parse_config(["simulate", "--config", path])
        assert e.value.flag == "--config"

    def test_unknown_key(self, tmp_path):
        path = write_config(tmp_path, "tau=1\n")
        with pytest.raises(UsageError) as e:
            parse_config(["simulate", "--config", path])
        assert e.value.flag == "--config"
        assert "'tau'" in str(e.value)

    def test_invalid_value(self, tmp_path):
        path = write_config(tmp_path, "n_max=many\n")
        with pytest.raises(UsageError) as e:
            parse_config(["simulate", "--config", path])
        assert str(e.value) == "--n-max: invalid value 'many'"


class TestCanonicalText:
    @pytest.mark.parametrize(
        "argv",
        [
            ["simulate", "--kernel", "splaw", "--p", "3", "--c0", "1", "--omega-q", "0.5"],
            ["sweep", "--tau-c-list", "16,32,64,128", "--backend", "ou-closure", "--plot", "s.svg"],
            ["infer", "--input", "c.csv", "--kernel", "gauss"],
            ["diagnose", "--input", "c.csv", "--rho-ll", "0.8", "--rho-rr", "0.2"],
            ["plot", "--input", "a.csv", "b.csv", "--style", "loglog", "--title", "two curves", "-o", "f.svg"],
        ],
    )
    def test_round_trip(self, argv):
        config = parse_config(argv)
        text = config.to_text()
        assert text.startswith("command={}\n".format(argv[0]))
        assert RunConfig.from_text(text) == config
        assert RunConfig.from_text(text).to_text() == text

    def test_text(self):
        text = parse_config(["diagnose", "--input", "c.csv"]).to_text()
        assert text == "command=diagnose\ninput=c.csv\nrho_ll=0.5\nrho_rr=0.5\noutput=-\n"

    def test_omits_unset(self):
        assert "p=" not in RunConfig("simulate").to_text()
        assert "workers=" not in RunConfig("simulate").to_text()

    @pytest.mark.parametrize("text", ["tau_c=1\n", "command=fly\n", "command=simulate\nbroken\n"])
    def test_invalid_text(self, text):
        with pytest.raises(UsageError):
            RunConfig.from_text(text)

    @pytest.mark.parametrize(
        "value,expected",
        [[True, "true"], [False, "false"], [0.1, "0.1"], [1e-4, "0.0001"], [(1.0, 2.5), "1.0,2.5"], [12, "12"]],
    )
    def test_format_value(self, value, expected):
        assert format_value(value) == expected


class TestErrors:
    @pytest.mark.parametrize(
        "argv,flag,message",
        [
            [["simulate", "--dt", "-1"], "--dt", "must be positive"],
            [["simulate", "--dt", "abc"], "--dt", "invalid value 'abc'"],
            [["simulate", "--backend", "lattice"], "--backend", "must be one of"],
            [["simulate", "--kernel", "lorentz"], "--kernel", "must be one of"],
            [["simulate", "--c0", "1.5"], "--c0", "must be between 0 and 1"],
            [["simulate", "--n-max", "65"], "--n-max", "must be between 1 and 64"],
            [["simulate", "--n-traj", "50"], "--n-traj", "must be at least 100"],
            [["simulate", "--p", "0.5", "--kernel", "plaw"], "--p", "must be greater than 1"],
            [["simulate", "--kernel", "plaw"], "--p", "requires an exponent"],
            [["simulate", "--p", "2"], "--p", "takes no exponent"],
            [["simulate", "--backend", "pseudomode", "--kernel", "gauss"], "--kernel", "pseudomode supports OU only"],
            [["simulate", "--kernel", "delta"], "--kernel", "does not support kernel 'delta'"],
            [["simulate", "--backend", "pseudomode", "--c0", "0.3"], "--c0", "pseudomode starts from C(0) = 0.5"],
            [["sweep", "--kernel", "delta", "--backend", "markovian"], "--kernel", "finite-memory kernel"],
            [["sweep", "--tau-c-list", "1,-2"], "--tau-c-list", "positive numbers"],
            [["sweep", "--dt", "0.1"], "--dt", "unrecognized arguments"],
            [["infer"], "--input", "input curve required"],
            [["infer", "--input", "c.csv", "--kernel", "delta"], "--kernel", "finite-memory kernel"],
            [["diagnose", "--input", "c.csv", "--rho-ll", "0.7"], "--rho-rr", "sum to 1"],
            [["plot", "--input", "a.csv"], "--output", "SVG file"],
            [["plot", "-o", "f.svg"], "--input", "nothing to plot"],
            [["plot", "-o", "f.svg", "--input", "a.csv", "--figure", "decay"], "--figure", "no input curves"],
            [["plot", "-o", "f.svg", "--figure", "scaling", "--backend", "stochastic", "--kernel", "gauss"],
             "--kernel", "stochastic supports OU only"],
            [["simulate", "--output", " "], "--output", "cannot be empty"],
        ],
    )
    def test_flag_errors(self, argv, flag, message):
        with pytest.raises(UsageError) as e:
            parse_config(argv)
        assert e.value.flag == flag
        assert str(e.value).startswith(flag + ": ")
        assert message in str(e.value)

    @pytest.mark.parametrize("argv", [[], ["fly"], ["--config", "x"]])
    def test_command_errors(self, argv):
        with pytest.raises(UsageError):
            parse_config(argv)

    def test_build_config_foreign_key(self):
        with pytest.raises(UsageError) as e:
            build_config("simulate", {"tau_c_list": "1,2"})
        assert e.value.flag == "--tau-c-list"

    def test_build_config_unknown_key(self):
        with pytest.raises(UsageError):
            build_config("simulate", {"tau": "1"})


def test_parser_version(capsys):
    with pytest.raises(SystemExit) as e:
        build_parser().parse_args(["--version"])
    assert e.value.code == 0
    assert capsys.readouterr().out.startswith("memkern ")
