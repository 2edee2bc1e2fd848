"""Python smoke tests: the extension module and the CLI end to end."""

import json
import math
import os
import pathlib
import subprocess

import numpy as np
import pytest

topochain = pytest.importorskip("topochain")

ROOT = pathlib.Path(os.environ.get("TOPOCHAIN_ROOT", pathlib.Path(__file__).parents[2]))
CLI = os.environ.get("TOPOCHAIN_CLI")


def bell():
    return np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def test_chain_and_hamiltonian():
    spec = topochain.ChainSpec(transport_count=2, cell_count=5)
    assert spec.site_count == 14
    h = topochain.build_hamiltonian(spec, 1.0, 3.0)
    assert h.shape == (14, 14)
    assert np.allclose(h, h.T)
    v, w = topochain.coupling_at(spec, 0.0)
    assert v == pytest.approx(0.0)
    assert w == pytest.approx(10.0)


def test_transport_block_and_period():
    block = topochain.transport_block_eigensystem([1.0, 1.0])
    assert np.allclose(block.energies, [math.sqrt(2.0), 0.0, -math.sqrt(2.0)])
    assert topochain.common_period([1.0]) == pytest.approx(2.0 * math.pi)
    assert topochain.common_period([1.0, 1.0, 1.0]) is None


def test_edge_state_localizes():
    spec = topochain.ChainSpec(transport_count=2, cell_count=5)
    edge = topochain.edge_wavefunction(spec, 0.0, 2.0, 0)
    assert abs(edge.amplitudes[0]) == pytest.approx(1.0 / math.sqrt(2.0))
    assert edge.energy == pytest.approx(1.0)


def test_transfer_reaches_high_fidelity():
    spec = topochain.ChainSpec(transport_count=2, cell_count=5)
    result = topochain.transfer_experiment(spec, bell(), 5.0, steps_per_circle=600)
    assert result.frequency == pytest.approx(0.1)
    assert result.fidelity > 0.99
    assert result.norm_drift < 1e-9


def test_winding_number():
    assert topochain.winding_number("left", 0.2, 1.8)[0] == 1
    assert topochain.winding_number("left", 1.8, 0.2)[0] == 0
    with pytest.raises(topochain.GapClosedError):
        topochain.winding_number("left", 1.0, 1.0)


def test_spectroscopy_gap():
    spec = topochain.ChainSpec(transport_count=2, cell_count=5)
    setup = topochain.default_probe(spec, 2.5, 0.01)
    v = 5.0 * (1.0 - math.cos(math.pi / 6.0))
    w = 5.0 * (1.0 + math.cos(math.pi / 6.0))
    scan = topochain.reflection_spectrum_scan(setup, spec, v, w)
    gap = topochain.edge_gap_from_spectrum(scan)
    assert gap == pytest.approx(2.0, rel=0.05)


def test_hardware_map():
    params = topochain.CouplerParams()
    g = topochain.flux_to_coupling(params, 0.0)
    assert g / (2.0 * math.pi) / 1e6 == pytest.approx(-18.637, rel=1e-3)


def test_run_experiment_via_module(tmp_path):
    config = json.loads(topochain.recipe_config("fig2d"))
    config["steps_per_circle"] = 600
    summary = json.loads(topochain.run_experiment(json.dumps(config), str(tmp_path)))
    assert summary["headline"]["fidelity"] > 0.99
    assert (tmp_path / "fig2d.summary.json").exists()


def test_summary_validates_against_shipped_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((ROOT / "schemas" / "summary.schema.json").read_text())
    config = {
        "experiment": "winding",
        "name": "schema_check",
        "chain": {"transport_count": 2, "cell_count": 2},
        "convention": "left",
        "v": 1.0,
        "w": 9.0,
        "k_points": 501,
    }
    summary = json.loads(topochain.run_experiment(json.dumps(config), str(tmp_path)))
    jsonschema.validate(summary, schema)


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_round_trip(tmp_path):
    config = tmp_path / "wind.json"
    config.write_text(
        json.dumps(
            {
                "experiment": "winding",
                "name": "wind",
                "chain": {"transport_count": 2, "cell_count": 2},
                "convention": "left",
                "v": 1.0,
                "w": 9.0,
                "k_points": 501,
            }
        )
    )
    out = tmp_path / "out"
    subprocess.run([CLI, "run", str(config), "--out", str(out)], check=True)
    summary = json.loads((out / "wind.summary.json").read_text())
    assert summary["headline"]["winding"] == 1
    assert (out / "wind.csv").read_text().startswith("k(rad),dx(g0),dy(g0)")

    listing = subprocess.run([CLI, "recipes"], check=True, capture_output=True, text=True)
    assert "fig2d" in listing.stdout


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_rejects_bad_config(tmp_path):
    config = tmp_path / "bad.json"
    config.write_text(
        json.dumps(
            {
                "experiment": "ensemble_coupling",
                "chain": {"transport_count": 2, "cell_count": 2},
                "input_amps": [0.7071067811865476, 0.7071067811865476],
                "circles": 3,
                "xi": -0.5,
            }
        )
    )
    out = tmp_path / "out"
    proc = subprocess.run([CLI, "run", str(config), "--out", str(out)])
    assert proc.returncode != 0
    error = json.loads((out / "error.json").read_text())
    assert error["error"]["field"] == "xi"
