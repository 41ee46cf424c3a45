import io
import json
import math

import numpy as np
import pandas as pd
import pytest

from dicke_sim.__version__ import __version__
from dicke_sim.dynamics.analytic import analytic_trajectory
from dicke_sim.dynamics.models import DecayParams
from dicke_sim.export.formatter import SCALAR_COLUMNS, OutputFormatter, element_columns


@pytest.fixture
def trajectory(psi_plus):
    return analytic_trajectory(psi_plus, DecayParams(g=0.5), [0.0, 0.5, 1.0])


class TestOutputFormatter:
    """Tests for CSV and JSON rendering."""

    def test_element_columns(self):
        columns = element_columns()
        assert len(columns) == 32
        assert columns[:3] == ["rho11_re", "rho11_im", "rho12_re"]
        assert columns[-1] == "rho44_im"

    def test_trajectory_frame_layout(self, trajectory):
        frame = OutputFormatter.trajectory_frame(trajectory)
        assert list(frame.columns) == ["t"] + element_columns() + SCALAR_COLUMNS
        assert len(frame) == 3
        assert frame["rho23_re"].iloc[2] == pytest.approx(0.5 * math.exp(-1.5), abs=1e-15)
        assert frame["C"].iloc[0] == pytest.approx(1.0, abs=1e-12)

    def test_extra_columns(self, trajectory):
        frame = OutputFormatter.trajectory_frame(trajectory, {"dual_dev": [0.0, 1e-12, 2e-12]})
        assert list(frame.columns)[-1] == "dual_dev"

    def test_csv_metadata_and_header(self, trajectory):
        meta = OutputFormatter.metadata(method="analytic", config_hash="abc", g=0.5)
        text = OutputFormatter.to_csv(OutputFormatter.trajectory_frame(trajectory), meta)
        lines = text.splitlines()
        assert lines[0] == f"# version: {__version__}"
        assert lines[1] == "# config_hash: abc"
        assert lines[2] == "# method: analytic"
        assert lines[3] == "# g: 0.5"
        assert lines[4].startswith("t,rho11_re,")
        assert len(lines) == 5 + 3

    def test_csv_round_trips_doubles(self, trajectory):
        frame = OutputFormatter.trajectory_frame(trajectory)
        text = OutputFormatter.to_csv(frame, OutputFormatter.metadata("analytic", "abc"))
        restored = pd.read_csv(io.StringIO(text), comment="#", float_precision="round_trip")
        assert np.array_equal(restored["rho23_re"].to_numpy(), frame["rho23_re"].to_numpy())
        assert np.array_equal(restored["t"].to_numpy(), frame["t"].to_numpy())

    def test_csv_is_deterministic(self, trajectory):
        meta = OutputFormatter.metadata("analytic", "abc")
        first = OutputFormatter.to_csv(OutputFormatter.trajectory_frame(trajectory), meta)
        second = OutputFormatter.to_csv(OutputFormatter.trajectory_frame(trajectory), meta)
        assert first == second

    def test_stack_frames(self):
        frames = [OutputFormatter.curves_frame([0.0, 1.0], {"C": [1.0, 0.5]}),
                  OutputFormatter.curves_frame([0.0, 1.0], {"C": [1.0, 0.25]})]
        stacked = OutputFormatter.stack_frames(frames, "g", [0.7, 0.5])
        assert list(stacked.columns) == ["g", "t", "C"]
        assert stacked["g"].tolist() == [0.7, 0.7, 0.5, 0.5]
        assert stacked["C"].tolist() == [1.0, 0.5, 1.0, 0.25]

    def test_json(self):
        text = OutputFormatter.to_json({"t_n": 0.5}, OutputFormatter.metadata("analytic", "abc"))
        data = json.loads(text)
        assert data["metadata"]["method"] == "analytic"
        assert data["data"] == {"t_n": 0.5}

    def test_write_to_file(self, tmp_path):
        out = tmp_path / "out.csv"
        OutputFormatter.write("a,b\n1,2\n", str(out))
        assert out.read_text() == "a,b\n1,2\n"

    def test_write_to_stdout(self, capsys):
        OutputFormatter.write("hello\n", "-")
        assert capsys.readouterr().out == "hello\n"
