#!/usr/bin/env python3
"""Regenerate the shipped CSV fixtures from the fluxlattice CLI.

Run from this directory with the primary package installed:

    python generate_fixtures.py

Grids are kept small so the fixtures stay light; the values are real
experiment outputs, not mocks.
"""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

HERE = Path(__file__).parent


def run_experiment(config: dict, outputs: dict):
    """Run one experiment; copy {produced_name: [target paths]} into place."""
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        config_path = tmp / "config.json"
        config_path.write_text(json.dumps(config))
        out_dir = tmp / "out"
        subprocess.run(
            [sys.executable, "-m", "fluxlattice.cli", "run", str(config_path),
             "--output-dir", str(out_dir)],
            check=True,
        )
        for produced, targets in outputs.items():
            for target in targets:
                dest = HERE / target
                dest.parent.mkdir(parents=True, exist_ok=True)
                shutil.copyfile(out_dir / produced, dest)


OMEGA_SWEEP = {"start": 0.001, "stop": 0.9, "num": 600}
OMEGA_MAP = {"start": 0.02, "stop": 0.8, "num": 90}
F_MAP = {"start": 0.40, "stop": 0.60, "num": 36}


def main():
    # fig3 / fig4: spectra, currents, correlations
    run_experiment(
        {"experiment": "spectrum", "network": {"topology": "linear"}},
        {"eigenvalues.csv": ["fig3/eigenvalues.csv"]},
    )
    run_experiment(
        {"experiment": "currents", "network": {"topology": "linear"}},
        {"currents.csv": ["fig3/currents.csv"]},
    )
    run_experiment(
        {"experiment": "correlations", "network": {"topology": "linear"}},
        {"correlations.csv": ["fig3/correlations.csv"]},
    )
    run_experiment(
        {"experiment": "spectrum", "network": {"topology": "cross"}},
        {"eigenvalues.csv": ["fig4/eigenvalues.csv"]},
    )
    run_experiment(
        {"experiment": "currents", "network": {"topology": "cross"}},
        {"currents.csv": ["fig4/currents.csv"]},
    )

    # fig5: static flux for the three geometries
    run_experiment(
        {
            "experiment": "static-flux",
            "f_grid": {"start": 0.50, "stop": 0.56, "num": 13},
            "topologies": ["isolated", "linear", "cross"],
        },
        {"static_flux.csv": ["fig5/static_flux.csv"]},
    )

    # fig6: coupled vs uncoupled clean chain
    run_experiment(
        {"experiment": "response-sweep", "network": {"topology": "linear"},
         "omega_grid": OMEGA_SWEEP},
        {"response.csv": ["fig6/response_coupled.csv"]},
    )
    run_experiment(
        {"experiment": "response-sweep",
         "network": {"topology": "linear", "coupling_energy": -1e-6},
         "omega_grid": OMEGA_SWEEP},
        {"response.csv": ["fig6/response_uncoupled.csv"]},
    )

    # fig7: clean-chain flux-frequency map
    run_experiment(
        {"experiment": "response-map", "network": {"topology": "linear"},
         "omega_grid": OMEGA_MAP, "f_grid": F_MAP},
        {"response_map.csv": ["fig7/response_map.csv"]},
    )

    # fig8: fifth-qubit-probe maps for chain and cross
    for topo, name in (("linear", "response_map_la.csv"), ("cross", "response_map_ca.csv")):
        run_experiment(
            {"experiment": "response-map", "network": {"topology": topo},
             "probe": {"a_weights": "uniform", "b_weights": "site5"},
             "omega_grid": OMEGA_MAP, "f_grid": F_MAP},
            {"response_map.csv": [f"fig8/{name}"]},
        )

    # fig9: one disordered realization, coupled and uncoupled, plus its map
    run_experiment(
        {"experiment": "disorder-response", "seed": 7,
         "network": {"topology": "linear", "disorder_amplitude": 0.1},
         "omega_grid": OMEGA_SWEEP, "f_grid": F_MAP},
        {"response.csv": ["fig9/response_coupled.csv"],
         "response_map.csv": ["fig9/response_map.csv"]},
    )
    run_experiment(
        {"experiment": "disorder-response", "seed": 7,
         "network": {"topology": "linear", "coupling_energy": -1e-6,
                     "disorder_amplitude": 0.1},
         "omega_grid": OMEGA_SWEEP},
        {"response.csv": ["fig9/response_uncoupled.csv"]},
    )

    # fig10: driven scans at the reservoir working point
    for topo, name in (("linear", "driven_scan_la.csv"), ("cross", "driven_scan_ca.csv")):
        run_experiment(
            {"experiment": "driven-scan",
             "network": {"topology": topo, "f": 0.45, "delta_dispersion": 0.1},
             "omega_grid": {"start": 0.2, "stop": 0.6, "num": 41}},
            {"driven_scan.csv": [f"fig10/{name}"]},
        )

    # fig11: small sweep (medians) plus two example forecasts
    run_experiment(
        {
            "experiment": "qrc-sweep",
            "network": {"f": 0.45},
            "sweep": {"deltas": [0.0, 0.1], "reservoir_dims": [200, 400],
                      "topologies": ["linear", "cross"], "seeds": [1, 2]},
        },
        {"medians.csv": ["fig11/medians.csv"]},
    )
    for seed, name in ((1, "qrc_series_a.csv"), (2, "qrc_series_b.csv")):
        run_experiment(
            {
                "experiment": "qrc-run",
                "seed": seed,
                "network": {"topology": "cross", "f": 0.45, "delta_dispersion": 0.1},
                "reservoir": {"l_r": 400},
            },
            {"qrc_series.csv": [f"fig11/{name}"]},
        )
    print("fixtures regenerated under", HERE)


if __name__ == "__main__":
    main()
