import numpy as np
import pytest

from sinespline import (
    Dataset,
    FitConfig,
    IngestError,
    InvalidSpecError,
    RunReport,
    SplineSpec,
    bspline_basis,
    fit,
    generate_synthetic,
    get_preset,
    ingest_csv,
    parse_report,
)
from sinespline.io import (
    build_run_report,
    coefficient_labels,
    format_report,
    write_components_csv,
    write_covariance_csv,
    write_dataset_csv,
    write_report,
    write_truth_sidecar,
)

BENCH_SSPEC = SplineSpec(degree=2, breakpoints=(0.0, 0.25, 0.5, 0.75, 1.0))


class TestDataset:
    def test_len(self):
        assert len(Dataset(x=[0.0, 1.0], y=[1.0, 2.0])) == 2

    @pytest.mark.parametrize("x,y", [
        ([0.0], [1.0]),
        ([0.0, 0.0], [1.0, 2.0]),
        ([1.0, 0.0], [1.0, 2.0]),
        ([0.0, np.inf], [1.0, 2.0]),
        ([0.0, 1.0], [1.0, np.nan]),
        ([0.0, 1.0], [1.0, 2.0, 3.0]),
    ])
    def test_rejects_bad_data(self, x, y):
        with pytest.raises(InvalidSpecError):
            Dataset(x=x, y=y)


class TestIngest:
    def test_plain_two_column(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,1.0\n0.5,2.0\n1,3.0\n")
        ds = ingest_csv(p)
        np.testing.assert_array_equal(ds.x, [0.0, 0.5, 1.0])
        np.testing.assert_array_equal(ds.y, [1.0, 2.0, 3.0])
        assert ds.meta.rows == 3

    def test_header_and_named_columns(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("time,temp,load\n0,9,1.0\n1,9,2.0\n")
        ds = ingest_csv(p, x_column="time", y_column="load")
        np.testing.assert_array_equal(ds.y, [1.0, 2.0])

    def test_named_column_without_header(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,1\n1,2\n")
        with pytest.raises(IngestError, match="header"):
            ingest_csv(p, x_column="time")

    def test_unknown_column_name(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("a,b\n0,1\n1,2\n")
        with pytest.raises(IngestError, match="no column named"):
            ingest_csv(p, y_column="load")

    def test_bad_cell_cites_line(self, tmp_path):
        """A malformed cell is reported with its 1-based line number."""
        p = tmp_path / "d.csv"
        rows = [f"{i / 10},{i}" for i in range(10)]
        rows[6] = "0.6,oops"  # line 7
        p.write_text("\n".join(rows) + "\n")
        with pytest.raises(IngestError, match="line 7"):
            ingest_csv(p)

    def test_non_finite_cell_rejected(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,1\n0.5,nan\n1,2\n")
        with pytest.raises(IngestError, match="line 2"):
            ingest_csv(p)

    def test_short_row(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,1\n0.5\n1,2\n")
        with pytest.raises(IngestError, match="line 2"):
            ingest_csv(p)

    def test_non_monotone_x(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,1\n2,2\n1,3\n")
        with pytest.raises(IngestError, match="increasing"):
            ingest_csv(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestError, match="no such file"):
            ingest_csv(tmp_path / "absent.csv")

    def test_rescale(self, tmp_path):
        p = tmp_path / "d.csv"
        p.write_text("0,1\n10,2\n20,3\n")
        ds = ingest_csv(p, rescale=0.05)
        np.testing.assert_allclose(ds.x, [0.0, 0.5, 1.0])
        assert ds.meta.rescale == 0.05

    def test_round_trip_is_bit_exact(self, tmp_path):
        """17 significant digits reproduce every double exactly."""
        res = generate_synthetic(get_preset("benchmark"))
        p = tmp_path / "bench.csv"
        write_dataset_csv(p, res.dataset)
        back = ingest_csv(p)
        np.testing.assert_array_equal(back.x, res.dataset.x)
        np.testing.assert_array_equal(back.y, res.dataset.y)

    def test_tricky_float_round_trip(self, tmp_path):
        ds = Dataset(x=[0.1, 0.1 + 0.2], y=[1 / 3, np.pi])
        p = tmp_path / "t.csv"
        write_dataset_csv(p, ds)
        back = ingest_csv(p)
        np.testing.assert_array_equal(back.x, ds.x)
        np.testing.assert_array_equal(back.y, ds.y)


class TestArtifacts:
    def test_truth_sidecar(self, tmp_path):
        import json
        res = generate_synthetic(get_preset("benchmark"))
        p = tmp_path / "bench.truth.json"
        write_truth_sidecar(p, res)
        payload = json.loads(p.read_text())
        assert payload["omega_true"] == 36.96
        assert payload["seed"] == 0
        np.testing.assert_array_equal(payload["trend"], res.trend)
        assert len(payload["noise"]) == 1024

    def test_components_csv(self, tmp_path, benchmark, benchmark_fit):
        p = tmp_path / "c.csv"
        ds = benchmark.dataset
        write_components_csv(p, ds.x, ds.y, benchmark_fit)
        lines = p.read_text().splitlines()
        assert lines[0] == "x,y,y_model,y_periodic,y_spline,residual"
        assert len(lines) == 1025
        first = [float(v) for v in lines[1].split(",")]
        assert first[0] == ds.x[0]
        assert first[2] == benchmark_fit.y_model[0]

    def test_covariance_csv(self, tmp_path, benchmark_fit):
        p = tmp_path / "cov.csv"
        cov = benchmark_fit.covariance.covariance
        write_covariance_csv(p, cov, 6, 6)
        lines = p.read_text().splitlines()
        labels = coefficient_labels(6, 6)
        assert lines[0] == "," + ",".join(labels)
        assert lines[1].split(",")[0] == "alpha_1"
        assert lines[-1].split(",")[0] == "beta_6"
        row3 = np.array([float(v) for v in lines[3].split(",")[1:]])
        np.testing.assert_array_equal(row3, cov[2])

    def test_coefficient_labels(self):
        assert coefficient_labels(2, 3) == [
            "alpha_1", "alpha_2", "beta_1", "beta_2", "beta_3",
        ]


class TestRunReport:
    def test_validation(self, benchmark_fit):
        rep = build_run_report(benchmark_fit, 1024, {})
        with pytest.raises(InvalidSpecError):
            RunReport(**{**rep.__dict__, "period": 0.0})

    def test_benchmark_report_fields(self, benchmark_fit):
        rep = build_run_report(benchmark_fit, 1024, {"degree": "2"})
        np.testing.assert_allclose(rep.period, 2 * np.pi / rep.omega_hat)
        np.testing.assert_array_equal(
            rep.amplitudes, np.hypot(benchmark_fit.alpha[0::2], benchmark_fit.alpha[1::2])
        )
        # strong periodic content: no advisory note
        assert rep.notes == ()
        assert rep.amplitudes[0] > 3 * rep.amplitude_stderr[0]

    def test_trend_only_note(self):
        """With no real periodic component, every recovered amplitude stays
        inside 3 standard errors and the report says so."""
        n = 2048
        x = np.arange(n) / n
        beta_true = np.array([0.0, 1.8, -1.2, 2.0, -1.5, 0.3])
        rng = np.random.default_rng(3)
        y = bspline_basis(x, BENCH_SSPEC).values @ beta_true + rng.normal(0, 0.02, n)
        res = fit(x, y, FitConfig(sspec=BENCH_SSPEC, harmonics=1))
        rep = build_run_report(res, n, {})
        assert res.converged
        assert len(rep.notes) == 1
        assert "below 3 standard errors" in rep.notes[0]

    def test_format_and_parse_round_trip(self, tmp_path, benchmark_fit):
        rep = build_run_report(benchmark_fit, 1024, {"degree": "2", "harmonics": "3"})
        p = tmp_path / "run.report.txt"
        write_report(p, rep)
        text = p.read_text()
        assert text.startswith("config_degree=2\nconfig_harmonics=3\n")
        parsed = parse_report(p)
        assert float(parsed["omega_hat"]) == benchmark_fit.omega_hat
        assert float(parsed["sigma2"]) == benchmark_fit.covariance.sigma2
        assert parsed["converged"] == "true"
        assert int(parsed["n_samples"]) == 1024
        for i in range(1, 7):
            assert f"alpha_{i}" in parsed
            assert f"beta_{i}_stderr" in parsed
        for i in range(1, 4):
            assert f"amplitude_{i}" in parsed

    def test_format_is_line_per_key(self, benchmark_fit):
        rep = build_run_report(benchmark_fit, 1024, {})
        for line in format_report(rep).strip().splitlines():
            assert line.count("=") >= 1
