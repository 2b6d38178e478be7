import pytest
from pytest import fixture

from mrsav_gfd.main import EXIT_CONFIG, EXIT_DIVERGED, EXIT_IO, EXIT_OK, main
from mrsav_gfd.services.service_provider import ServiceProvider

KOLMOGOROV = """
[grid]
modes = 16

[forcing]
kind = "kolmogorov"

[stepper]
k = 0.01

[run]
duration = 0.5
initial_condition = "kolmogorov_perturbed_a"
sample_stride = 5
"""

MANUFACTURED = """
[grid]
lengths = 1.0
modes = 8

[forcing]
kind = "manufactured"

[stepper]
k = 0.1

[run]
duration = 1.0

[convergence]
k_values = [0.1, 0.05]
"""


@fixture(autouse=True)
def fresh_services():
    ServiceProvider.reset()
    yield
    ServiceProvider.reset()


@fixture
def config_file(tmp_path):
    path = tmp_path / "kolmogorov.toml"
    path.write_text(KOLMOGOROV)
    return path


class DescribeMain:

    def should_simulate_diagnose_and_plot(self, config_file, tmp_path):
        run_dir = tmp_path / "run"

        assert main(["simulate", str(config_file), "--output-dir", str(run_dir)]) == EXIT_OK
        assert main(["diagnose", str(run_dir), "--set", "spin_up_time=0"]) == EXIT_OK
        assert main(["plot", str(run_dir)]) == EXIT_OK

        assert (run_dir / "series.csv").exists()
        assert (run_dir / "psd.csv").exists()
        assert (run_dir / "plots" / "psd.svg").exists()

    def should_run_a_convergence_study(self, tmp_path):
        config_path = tmp_path / "manufactured.toml"
        config_path.write_text(MANUFACTURED)

        assert main(["converge", str(config_path), "--output-dir", str(tmp_path / "conv")]) == EXIT_OK
        assert (tmp_path / "conv" / "convergence.csv").exists()

    def should_exit_with_three_on_divergence(self, config_file, tmp_path):
        code = main([
            "simulate", str(config_file), "--output-dir", str(tmp_path / "run"),
            "--set", "stepper.divergence_threshold=1e-9",
        ])

        assert code == EXIT_DIVERGED
        assert (tmp_path / "run" / "DIVERGED").exists()

    def should_exit_with_two_on_a_config_error(self, config_file):
        assert main(["simulate", str(config_file), "--set", "grid.modez=16"]) == EXIT_CONFIG

    def should_exit_with_two_on_a_missing_config(self, tmp_path):
        assert main(["converge", str(tmp_path / "absent.toml")]) == EXIT_CONFIG

    def should_exit_with_four_on_a_bad_checkpoint(self, config_file, tmp_path):
        junk = tmp_path / "junk.ckpt"
        junk.write_bytes(b"\0" * 64)

        code = main(["simulate", str(config_file), "--output-dir", str(tmp_path / "run"), "--restart", str(junk)])

        assert code == EXIT_IO

    def should_exit_with_four_when_there_is_nothing_to_plot(self, tmp_path):
        assert main(["plot", str(tmp_path)]) == EXIT_IO

    def should_exit_with_four_when_the_series_is_missing(self, tmp_path):
        assert main(["diagnose", str(tmp_path)]) == EXIT_IO

    def should_reject_unknown_commands(self):
        with pytest.raises(SystemExit):
            main(["integrate"])
