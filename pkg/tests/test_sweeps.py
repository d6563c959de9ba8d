"""Sweep tables, presets, parallelism, and CSV/JSON emission."""

import json

import numpy as np
import pytest

from fluxsim.sweeps import (PRESETS, SweepTable, beats_table, emit, parse_csv,
                            protocol_table, ramsey_table, sweep_beta,
                            sweep_current, sweep_spectrum_1d, write_manifest)
from fluxsim.solver import spectrum_1d


class TestPresets:
    def test_names_exist(self):
        assert {"fig4", "fig5", "fig6", "fig7a", "fig7b", "fig8"} \
            <= set(PRESETS)

    def test_paper_parameter_sets(self):
        assert PRESETS["fig4"]["ejf_ghz"] == 2.0
        assert PRESETS["fig5"]["ejf_ghz"] == 15.0
        assert PRESETS["fig6"]["ec_ghz"] == 1.0
        assert PRESETS["fig6"]["el_ghz"] == 0.15
        fig8 = PRESETS["fig8"]
        assert (fig8["ejf_ghz"], fig8["ejm_ghz"]) == (20.0, 22.0)
        assert fig8["phi1"] + fig8["phi2"] == 1.0  # traps a single fluxon
        assert fig8["phim"] == 0.0


class TestSweeps:
    def test_single_point_matches_solver(self, p2):
        table = sweep_spectrum_1d(p2, 1.0, 1.0, 1, k=3, grid_n=1001)
        row = table.rows[0]
        assert row[0] == 1.0
        exact = spectrum_1d(p2, 1.0, k=3).eigenvalues
        # sweep uses the same vertex-centered grid family at its own n
        assert np.allclose(row[1:4], exact, atol=1e-6)

    def test_parallel_equals_serial(self, p2):
        serial = sweep_spectrum_1d(p2, 0.98, 1.02, 5, k=2, grid_n=801,
                                   threads=1)
        parallel = sweep_spectrum_1d(p2, 0.98, 1.02, 5, k=2, grid_n=801,
                                     threads=3)
        assert serial.columns == parallel.columns
        assert serial.rows == parallel.rows

    def test_gap_minimum_at_degeneracy(self, p2):
        table = sweep_spectrum_1d(p2, 0.9, 1.1, 5, k=2, grid_n=801)
        gaps = table.column("gap")
        assert int(np.argmin(gaps)) == 2

    def test_beta_sweep_error_markers(self):
        # beta < 1 rows carry a quasi-classics error marker but keep the
        # numeric splitting
        table = sweep_beta(ec=1.0, el=0.15, ej_start=0.1, ej_stop=3.0,
                           steps=3, grid_n=801)
        i_err = table.columns.index("error")
        assert table.rows[0][i_err] != ""
        assert np.isfinite(table.rows[0][1])  # delta_numeric still computed
        assert table.rows[-1][i_err] == ""
        assert len(table.ok_rows()) < len(table.rows)

    def test_current_sweep_columns(self, p2):
        table = sweep_current(p2, 0.95, 1.05, 3, grid_n=801)
        assert table.columns[:4] == ["phi_delta", "i00", "i11", "i01"]
        assert len(table.rows) == 3

    def test_metadata_echoes_config(self, p2):
        cfg = {"ejf_ghz": 2.0, "sweep_steps": 3}
        table = sweep_spectrum_1d(p2, 1.0, 1.0, 1, k=2, grid_n=801,
                                  config=cfg)
        assert table.metadata["config"] == cfg
        assert table.metadata["mode"] == "spectrum1d"
        assert "version" in table.metadata and "timestamp" in table.metadata


class TestTraceTables:
    def test_beats_table(self, p2):
        table = beats_table(p2, t_max=5.0, dt=0.5)
        assert table.columns[:3] == ["t_ns", "p_left", "p_right"]
        p_l, p_r = table.column("p_left"), table.column("p_right")
        assert np.max(np.abs(p_l + p_r - 1.0)) < 1e-12
        assert table.metadata["delta_ghz"] > 0

    def test_ramsey_table(self):
        table = ramsey_table(7.3e-3, 14.6e-3, t_max=80.0, dt=1.0)
        assert table.columns[:3] == ["dt_ns", "p1_shifted", "p1_unshifted"]
        assert table.metadata["n"] == 1

    def test_protocol_table(self):
        table = protocol_table(shots=50, seed=1)
        assert [r[0] for r in table.rows] == ["L", "C", "R"]
        acc = table.column("accuracy")
        assert np.all(acc == 1.0)


class TestEmission:
    def _table(self):
        return SweepTable(columns=["x", "y", "error"],
                          rows=[[1.0, 0.5, ""], [2.0, float("nan"), "bad"]],
                          metadata={"config": {"a": 1}, "mode": "test"})

    def test_csv_roundtrip_byte_identical(self, tmp_path):
        t = self._table()
        p1 = emit(t, "csv", tmp_path / "a.csv")
        t2 = parse_csv(p1)
        p2 = emit(t2, "csv", tmp_path / "b.csv")
        assert p1.read_bytes() == p2.read_bytes()
        assert t2.columns == t.columns
        assert t2.metadata == t.metadata

    def test_csv_layout(self, tmp_path):
        p = emit(self._table(), "csv", tmp_path / "a.csv")
        lines = p.read_text().splitlines()
        assert lines[0].startswith("# {")
        json.loads(lines[0][1:])
        assert lines[1] == "x,y,error"

    def test_empty_table(self, tmp_path):
        t = SweepTable(columns=["x", "y"], rows=[], metadata={"mode": "test"})
        p = emit(t, "csv", tmp_path / "e.csv")
        lines = p.read_text().splitlines()
        assert len(lines) == 2  # metadata comment + header only
        back = parse_csv(p)
        assert back.rows == [] and back.columns == ["x", "y"]

    def test_json_format(self, tmp_path):
        p = emit(self._table(), "json", tmp_path / "a.json")
        doc = json.loads(p.read_text())
        assert set(doc) == {"metadata", "columns", "rows"}
        assert doc["columns"] == ["x", "y", "error"]

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError, match="format"):
            emit(self._table(), "xml", tmp_path / "a.xml")

    def test_error_cell_with_commas_roundtrips(self, tmp_path):
        t = SweepTable(columns=["x", "error"],
                       rows=[[1.0, "oops, with comma"]], metadata={})
        p = emit(t, "csv", tmp_path / "c.csv")
        back = parse_csv(p)
        assert back.rows[0][1] == "oops, with comma"

    def test_manifest(self, tmp_path):
        import hashlib
        p = emit(self._table(), "csv", tmp_path / "a.csv")
        m = write_manifest([p], tmp_path / "manifest.json")
        doc = json.loads(m.read_text())
        entry = doc["files"][0]
        assert entry["sha256"] == hashlib.sha256(p.read_bytes()).hexdigest()
        assert entry["bytes"] == p.stat().st_size
