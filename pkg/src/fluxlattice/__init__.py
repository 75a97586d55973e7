"""Flux-qubit network simulator and quantum-reservoir-computing pipeline."""

__version__ = "0.1.0"

from .network import (
    DisorderRealization,
    NetworkSpec,
    Topology,
    build_drive_operator,
    build_hamiltonian,
    cross_topology,
    inhomogeneous_deltas,
    isolated_topology,
    linear_topology,
    sample_disorder,
)
from .qubit import QubitParams, epsilon, ground_current, single_qubit_eigensystem
from .spectra import Spectrum, diagonalize, loop_currents, static_flux
from .response import ResponseProbe, susceptibility, sweep_flux_frequency, sweep_frequency
from .dynamics import DriveSpec, PropagationConfig, propagate
from .qrc import ReservoirConfig, encode_frequency, run_series_task, vpt
from .mackey_glass import MGConfig, integrate, normalize

__all__ = [
    "DisorderRealization",
    "DriveSpec",
    "MGConfig",
    "NetworkSpec",
    "PropagationConfig",
    "QubitParams",
    "ReservoirConfig",
    "ResponseProbe",
    "Spectrum",
    "Topology",
    "build_drive_operator",
    "build_hamiltonian",
    "cross_topology",
    "diagonalize",
    "encode_frequency",
    "epsilon",
    "ground_current",
    "inhomogeneous_deltas",
    "integrate",
    "isolated_topology",
    "linear_topology",
    "loop_currents",
    "normalize",
    "propagate",
    "run_series_task",
    "sample_disorder",
    "single_qubit_eigensystem",
    "static_flux",
    "susceptibility",
    "sweep_flux_frequency",
    "sweep_frequency",
    "vpt",
]
