"""Two particles in a hard-wall box with a decentered two-body contact interaction."""

from darkbox._backend import BACKEND
from darkbox.bethe import BetheLevel, bosonic_level, bosonic_level_limit_check, fermionic_level, solve_quasimomentum
from darkbox.dark import (
    DarkState,
    RationalC,
    dark_distribution,
    dark_flatness_probe,
    enumerate_dark_states,
    noninteracting_spectrum,
    tower,
    triple_degeneracy_scan,
    verify_dark,
)
from darkbox.eigen import EigenSolution, lowest_eigenpairs
from darkbox.elements import (
    HamiltonianMatrix,
    assemble_hamiltonian,
    potential_element,
    quadrature_potential_element,
    s_element,
    t_integral,
)
from darkbox.errors import InvalidArgument, NumericFailure
from darkbox.model import (
    SECTORS,
    Basis,
    BasisPair,
    ModelParams,
    Sector,
    WavefunctionGrid,
    enumerate_basis,
    eval_basis_function,
    eval_wavefunction,
    region_weights,
)
from darkbox.strong import (
    OutsideLevel,
    TriangleState,
    mean_relative_error,
    outside_spectrum,
    outside_state,
    snippet_eval,
    triangle_eigenfunction,
)

__version__ = "0.1.0"
