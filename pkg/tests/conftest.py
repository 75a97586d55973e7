import numpy as np
import pytest

from fluxlattice.network import (
    NetworkSpec,
    cross_topology,
    isolated_topology,
    linear_topology,
    build_hamiltonian,
)
from fluxlattice.qubit import QubitParams
from fluxlattice.spectra import diagonalize

# Benchmark parameter set used throughout: f = 0.52, delta = 0.2,
# nearest-neighbor coupling energy -0.2 (all in units hbar*omega_0).
PAPER_F = 0.52
PAPER_DELTA = 0.2
PAPER_COUPLING = -0.2
UNCOUPLED = -1e-6


def make_spec(topology="linear", f=PAPER_F, coupling=PAPER_COUPLING, n=5, **kwargs):
    if topology == "linear":
        topo = linear_topology(n, coupling)
    elif topology == "cross":
        topo = cross_topology(coupling)
    else:
        topo = isolated_topology(n)
    return NetworkSpec(
        base=QubitParams(delta=PAPER_DELTA, f=f), topology=topo, **kwargs
    )


@pytest.fixture(scope="session")
def la_spec():
    return make_spec("linear")


@pytest.fixture(scope="session")
def ca_spec():
    return make_spec("cross")


@pytest.fixture(scope="session")
def la_spectrum(la_spec):
    return diagonalize(build_hamiltonian(la_spec))


@pytest.fixture(scope="session")
def ca_spectrum(ca_spec):
    return diagonalize(build_hamiltonian(ca_spec))


@pytest.fixture(scope="session")
def uncoupled_spec():
    return make_spec("linear", coupling=UNCOUPLED)


@pytest.fixture(scope="session")
def uncoupled_spectrum(uncoupled_spec):
    return diagonalize(build_hamiltonian(uncoupled_spec))
