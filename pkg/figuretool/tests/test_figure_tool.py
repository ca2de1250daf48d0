"""The figure tool consumes the primary CLI's CSV output and renders PNGs.

Sample files are produced by invoking the installed ``lpsym`` command, the
tool's only upstream interface.
"""

import shutil
import subprocess
import sys

import pytest

from figuretool import FigureToolError, PlotSpec, main, read_columns, render_scatter

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def lpsym(*args):
    exe = shutil.which("lpsym")
    cmd = [exe] if exe else [sys.executable, "-m", "lpsym.cli"]
    subprocess.run([*cmd, *args], check=True, capture_output=True)


@pytest.fixture(scope="module")
def sample_csvs(tmp_path_factory):
    root = tmp_path_factory.mktemp("samples")
    fig1_left = root / "fig1_left.csv"
    fig1_right = root / "fig1_right.csv"
    fig2_left = root / "fig2_left.csv"
    fig2_right = root / "fig2_right.csv"
    lpsym("sample-copula", "--d", "2", "--p", "1", "--radial", "clayton:1.75",
          "--n", "400", "--seed", "7", "--out", str(fig1_left))
    lpsym("sample-copula", "--d", "2", "--p", "2.5", "--radial", "clayton:1.75",
          "--n", "400", "--seed", "7", "--out", str(fig1_right))
    lpsym("sample-rcopula", "--d", "2", "--p", "1", "--measure", "harmonic:1.125",
          "--n", "400", "--seed", "7", "--out", str(fig2_left))
    lpsym("sample-rcopula", "--d", "2", "--p", "4", "--measure", "harmonic:1.125",
          "--n", "400", "--seed", "7", "--out", str(fig2_right))
    return {"fig1": (fig1_left, fig1_right), "fig2": (fig2_left, fig2_right)}


class TestReadColumns:
    def test_reads_copula_csv(self, sample_csvs):
        x, y, labels = read_columns(str(sample_csvs["fig1"][0]))
        assert labels == ("u1", "u2")
        assert len(x) == len(y) == 400
        assert all(0.0 < v < 1.0 for v in x)

    def test_named_columns(self, sample_csvs):
        _, y, labels = read_columns(str(sample_csvs["fig1"][0]), columns=("u2", "u1"))
        assert labels == ("u2", "u1")

    def test_missing_file(self, tmp_path):
        with pytest.raises(FigureToolError, match="nothere"):
            read_columns(str(tmp_path / "nothere.csv"))

    def test_empty_file(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(FigureToolError, match="empty"):
            read_columns(str(empty))

    def test_header_only(self, tmp_path):
        hdr = tmp_path / "hdr.csv"
        hdr.write_text("u1,u2\n")
        with pytest.raises(FigureToolError, match="no data rows"):
            read_columns(str(hdr))

    def test_single_column(self, tmp_path):
        one = tmp_path / "one.csv"
        one.write_text("vp\n0.5\n0.7\n")
        with pytest.raises(FigureToolError, match="at least 2 columns"):
            read_columns(str(one))

    def test_non_numeric_cell(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("u1,u2\n0.1,0.2\noops,0.4\n")
        with pytest.raises(FigureToolError, match="bad.csv:3"):
            read_columns(str(bad))

    def test_unknown_column_name(self, sample_csvs):
        with pytest.raises(FigureToolError, match="not found"):
            read_columns(str(sample_csvs["fig1"][0]), columns=("u1", "u9"))


class TestRender:
    def test_single_panel(self, sample_csvs, tmp_path):
        out = tmp_path / "single.png"
        render_scatter(PlotSpec(inputs=(str(sample_csvs["fig1"][0]),), out=str(out)))
        data = out.read_bytes()
        assert data.startswith(PNG_MAGIC)
        assert len(data) > 5000

    def test_two_panel_fig1(self, sample_csvs, tmp_path):
        out = tmp_path / "fig1.png"
        left, right = sample_csvs["fig1"]
        render_scatter(PlotSpec(inputs=(str(left), str(right)), out=str(out),
                                title="outer power Clayton, a=1.75"))
        assert out.read_bytes().startswith(PNG_MAGIC)

    def test_two_panel_fig2(self, sample_csvs, tmp_path):
        out = tmp_path / "fig2.png"
        left, right = sample_csvs["fig2"]
        render_scatter(PlotSpec(inputs=(str(left), str(right)), out=str(out),
                                title="reciprocal Archimedean, a=1.125"))
        assert out.read_bytes().startswith(PNG_MAGIC)

    def test_rendering_is_deterministic(self, sample_csvs, tmp_path):
        left, right = sample_csvs["fig2"]
        spec1 = PlotSpec(inputs=(str(left), str(right)), out=str(tmp_path / "a.png"))
        spec2 = PlotSpec(inputs=(str(left), str(right)), out=str(tmp_path / "b.png"))
        render_scatter(spec1)
        render_scatter(spec2)
        assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()

    def test_failed_parse_writes_nothing(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("u1,u2\nNaNsense,junk\n")
        out = tmp_path / "never.png"
        with pytest.raises(FigureToolError):
            render_scatter(PlotSpec(inputs=(str(bad),), out=str(out)))
        assert not out.exists()


class TestCli:
    def test_two_panel_via_main(self, sample_csvs, tmp_path):
        out = tmp_path / "fig.png"
        left, right = sample_csvs["fig1"]
        code = main(["--in", str(left), "--in", str(right),
                     "--out", str(out), "--title", "fig 1"])
        assert code == 0
        assert out.read_bytes().startswith(PNG_MAGIC)

    def test_malformed_csv_errors_cleanly(self, tmp_path, capsys):
        bad = tmp_path / "garbage.csv"
        bad.write_text("this is not\x00a csv at all")
        out = tmp_path / "fig.png"
        code = main(["--in", str(bad), "--out", str(out)])
        assert code == 2
        assert "error" in capsys.readouterr().err
        assert not out.exists()

    def test_missing_file_errors_cleanly(self, tmp_path, capsys):
        code = main(["--in", str(tmp_path / "gone.csv"), "--out", str(tmp_path / "fig.png")])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_bad_columns_flag(self, sample_csvs, tmp_path, capsys):
        code = main(["--in", str(sample_csvs["fig1"][0]), "--out", str(tmp_path / "f.png"),
                     "--columns", "u1"])
        assert code == 2
        capsys.readouterr()

    def test_auto_axis_for_non_copula_data(self, tmp_path):
        samples = tmp_path / "y.csv"
        lpsym("sample-maxid", "--d", "2", "--p", "2", "--measure", "harmonic:1.125",
              "--n", "200", "--seed", "3", "--out", str(samples))
        out = tmp_path / "y.png"
        assert main(["--in", str(samples), "--out", str(out), "--axis", "auto"]) == 0
        assert out.exists()
