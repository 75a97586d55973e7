"""Figure recipes: which CSV files each figure reads, and which columns.

Every recipe declares its inputs explicitly so that a missing file or a
renamed column fails loudly before anything is drawn.  The CSVs are the
experiment-runner outputs; no physics is recomputed here.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class FigureRecipe:
    figure_id: str
    description: str
    # input file name -> required columns
    inputs: dict

    def required_files(self):
        return sorted(self.inputs)


_RESPONSE_COLS = ("omega", "amplitude", "phase_over_pi")
_MAP_COLS = ("f", "omega", "amplitude", "phase_over_pi")
_SERIES_COLS = ("k", "s_k", "y_k", "y_pred")

RECIPES = {
    "fig3": FigureRecipe(
        "fig3",
        "chain spectrum, ground/excited loop currents, correlation decay",
        {
            "eigenvalues.csv": ("index", "eigenvalue"),
            "currents.csv": ("level", "qubit", "current"),
            "correlations.csv": ("i", "correlation"),
        },
    ),
    "fig4": FigureRecipe(
        "fig4",
        "cross-array spectrum and loop currents",
        {
            "eigenvalues.csv": ("index", "eigenvalue"),
            "currents.csv": ("level", "qubit", "current"),
        },
    ),
    "fig5": FigureRecipe(
        "fig5",
        "static flux versus applied flux for the three geometries",
        {"static_flux.csv": ("topology", "f", "phi")},
    ),
    "fig6": FigureRecipe(
        "fig6",
        "chain response amplitude/phase, coupled versus uncoupled",
        {
            "response_coupled.csv": _RESPONSE_COLS,
            "response_uncoupled.csv": _RESPONSE_COLS,
        },
    ),
    "fig7": FigureRecipe(
        "fig7",
        "flux-frequency amplitude map, two vertical cuts, phase map",
        {"response_map.csv": _MAP_COLS},
    ),
    "fig8": FigureRecipe(
        "fig8",
        "fifth-qubit-probe response maps, chain versus cross",
        {
            "response_map_la.csv": _MAP_COLS,
            "response_map_ca.csv": _MAP_COLS,
        },
    ),
    "fig9": FigureRecipe(
        "fig9",
        "disordered chain: sweeps (coupled/uncoupled) and maps",
        {
            "response_coupled.csv": _RESPONSE_COLS,
            "response_uncoupled.csv": _RESPONSE_COLS,
            "response_map.csv": _MAP_COLS,
        },
    ),
    "fig10": FigureRecipe(
        "fig10",
        "driven loop currents versus drive frequency, chain and cross",
        {
            "driven_scan_la.csv": ("omega", "qubit", "sigma_z_expectation"),
            "driven_scan_ca.csv": ("omega", "qubit", "sigma_z_expectation"),
        },
    ),
    "fig11": FigureRecipe(
        "fig11",
        "median VPT versus inhomogeneity plus two forecast examples",
        {
            "medians.csv": ("delta", "l_r", "topology", "median_vpt"),
            "qrc_series_a.csv": _SERIES_COLS,
            "qrc_series_b.csv": _SERIES_COLS,
        },
    ),
}
