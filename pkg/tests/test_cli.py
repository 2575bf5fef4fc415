import pytest
from click.testing import CliRunner

from oeturbo.cli.main import cli
from oeturbo.core.interleaver import Permutation, is_odd_even
from oeturbo.core.report import read_csv


@pytest.fixture
def runner(isolated_config):
    return CliRunner()


def test_help_lists_commands(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for name in ("gen-interleaver", "spectrum", "ensemble-stats", "ber", "census", "asymptote", "plot", "config"):
        assert name in result.output


def test_gen_interleaver_block(runner, tmp_path):
    out = tmp_path / "pi.txt"
    result = runner.invoke(cli, ["gen-interleaver", "--family", "block", "--rows", "21", "--cols", "19",
                                 "--out", str(out)])
    assert result.exit_code == 0, result.output
    perm = Permutation.load(out)
    assert len(perm) == 399 and is_odd_even(perm)
    assert "Odd-even" in result.output
    assert "ignored" not in result.output


def test_gen_interleaver_block_warns_on_explicit_length(runner, tmp_path):
    result = runner.invoke(cli, ["gen-interleaver", "--family", "block", "--rows", "21", "--cols", "19",
                                 "--n", "512", "--out", str(tmp_path / "pi.txt")])
    assert result.exit_code == 0, result.output
    assert "N=512 ignored" in result.output


def test_gen_interleaver_failure_exit_code(runner, tmp_path):
    result = runner.invoke(cli, ["gen-interleaver", "--family", "hsr", "--n", "8", "--s", "9",
                                 "--out", str(tmp_path / "pi.txt")])
    assert result.exit_code == 1


def test_spectrum_brute_force_matches_search(runner, tmp_path):
    pi = tmp_path / "pi.txt"
    runner.invoke(cli, ["gen-interleaver", "--n", "12", "--seed", "3", "--out", str(pi)])
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    r1 = runner.invoke(cli, ["spectrum", "--interleaver", str(pi), "--d-max", "12", "--out", str(a)])
    r2 = runner.invoke(cli, ["spectrum", "--interleaver", str(pi), "--d-max", "12", "--brute-force",
                             "--out", str(b)])
    assert r1.exit_code == 0 and r2.exit_code == 0, r1.output + r2.output
    ta, tb = read_csv(a), read_csv(b)
    assert ta.rows == tb.rows
    assert ta.footer["certified_up_to"] == "12"
    assert ta.meta["command"] == "spectrum" and ta.meta["family"] == "file"


def test_spectrum_partial_exits_nonzero(runner, tmp_path):
    out = tmp_path / "s.csv"
    result = runner.invoke(cli, ["spectrum", "--n", "64", "--d-max", "14", "--max-candidates", "5",
                                 "--out", str(out)])
    assert result.exit_code == 1
    assert read_csv(out).footer["complete"] == "false"


def test_spectrum_events(runner, tmp_path):
    result = runner.invoke(cli, ["spectrum", "--n", "16", "--d-max", "8", "--events", "3",
                                 "--out", str(tmp_path / "s.csv")])
    assert result.exit_code == 0, result.output
    assert "Simple events" in result.output


def test_run_file_sets_defaults(runner, tmp_path):
    run_file = tmp_path / "run.cfg"
    run_file.write_text("# small search\nn=16\nd-max=9\nterm=none\n")
    out = tmp_path / "s.csv"
    result = runner.invoke(cli, ["spectrum", "--config", str(run_file), "--term", "first", "--out", str(out)])
    assert result.exit_code == 0, result.output
    meta = read_csv(out).meta
    assert meta["n"] == "16" and meta["d_max"] == "9"
    assert meta["termination"] == "first"


def test_run_file_errors(runner, tmp_path):
    run_file = tmp_path / "run.cfg"
    run_file.write_text("n=16\nbogus line\n")
    result = runner.invoke(cli, ["spectrum", "--config", str(run_file)])
    assert result.exit_code == 2
    assert ":2:" in result.output
    run_file.write_text("colour=blue\n")
    result = runner.invoke(cli, ["spectrum", "--config", str(run_file)])
    assert result.exit_code == 2


def test_ensemble_stats_command(runner, tmp_path):
    out = tmp_path / "stats.csv"
    result = runner.invoke(cli, ["ensemble-stats", "--n", "32", "--samples", "2", "--initial-d-max", "6",
                                 "--workers", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    table = read_csv(out)
    assert table.rows[0]["samples"] == "2"
    assert table.meta["workers"] == "1"


def test_census_command(runner, tmp_path):
    out = tmp_path / "census.csv"
    result = runner.invoke(cli, ["census", "--n", "64", "--family", "random-oe", "--samples", "3",
                                 "--workers", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    table = read_csv(out)
    assert table.footer["cycle_length"] == "7"
    assert "preservation_d7" in table.footer


def test_ber_command(runner, tmp_path):
    out = tmp_path / "ber.csv"
    result = runner.invoke(cli, ["ber", "--n", "32", "--snr", "10", "--max-frames", "4", "--frames-per-job", "2",
                                 "--iters", "2", "--workers", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    row = read_csv(out).rows[0]
    assert row["frames"] == "4" and row["bit_errors"] == "0"


def test_asymptote_and_plot(runner, tmp_path):
    asym = tmp_path / "asym.csv"
    result = runner.invoke(cli, ["asymptote", "--wfree", "5.004", "--dfree", "7.865", "--n", "512",
                                 "--snr", "0:2:1", "--out", str(asym)])
    assert result.exit_code == 0, result.output
    assert len(read_csv(asym).rows) == 3

    svg = tmp_path / "fig.svg"
    result = runner.invoke(cli, ["plot", str(asym), "--label", "random N=512", "--out", str(svg)])
    assert result.exit_code == 0, result.output
    assert "random N=512" in svg.read_text()


def test_asymptote_from_spectrum(runner, tmp_path):
    spec_csv = tmp_path / "s.csv"
    runner.invoke(cli, ["spectrum", "--n", "16", "--d-max", "16", "--out", str(spec_csv)])
    single, multi = tmp_path / "1.csv", tmp_path / "m.csv"
    assert runner.invoke(cli, ["asymptote", "--spectrum", str(spec_csv), "--single", "--n", "16",
                               "--out", str(single)]).exit_code == 0
    assert runner.invoke(cli, ["asymptote", "--spectrum", str(spec_csv), "--n", "16",
                               "--out", str(multi)]).exit_code == 0
    s_rows, m_rows = read_csv(single).rows, read_csv(multi).rows
    assert all(float(m["ber"]) >= float(s["ber"]) for s, m in zip(s_rows, m_rows))


def test_asymptote_needs_a_source(runner):
    result = runner.invoke(cli, ["asymptote", "--n", "512"])
    assert result.exit_code == 2


def test_config_commands(runner, isolated_config):
    result = runner.invoke(cli, ["config", "set", "simulation", "workers", "3"])
    assert result.exit_code == 0, result.output
    assert isolated_config.get("simulation", "workers") == 3
    result = runner.invoke(cli, ["config", "show"])
    assert "workers" in result.output
    result = runner.invoke(cli, ["config", "set", "search", "d_max", "lots"])
    assert result.exit_code == 1
    assert runner.invoke(cli, ["config", "delete", "--yes"]).exit_code == 0
    assert not isolated_config.config_file.exists()
