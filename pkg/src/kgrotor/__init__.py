"""kgrotor: relativistic (Klein-Gordon) rotational energy levels and
pure-rotation spectra of spin-zero diatomic rotors, with bond-length
inversion from observed lines.
"""

from .constants import (
    AMU,
    ANGSTROM,
    C,
    CODATA2018,
    EV,
    H,
    HBAR,
    IncompatibleDimensionError,
    PhysicalConstants,
    Quantity,
    Unit,
    convert,
    energy_from_wavenumber,
    wavenumber_from_energy,
)
from .energy import (
    QuarticCoefficients,
    TaylorOrder,
    excitation,
    excitation_closed_form,
    excitation_taylor,
    level,
    level_closed_form,
    level_homonuclear,
    level_nonrel,
    level_single_particle,
    level_taylor,
    quartic_coefficients,
    quartic_residual,
    solve_level_quartic,
    solve_level_quartic_detailed,
)
from .fit import (
    BondLengthEstimator,
    BracketError,
    FitResult,
    fit_bond_length_first_line,
    fit_bond_length_multi_line,
    predicted_first_line,
    predicted_line,
)
from .lines import (
    ConsistencyError,
    FirstLine,
    RotationalConstants,
    SpectralLine,
    Spectrum,
    first_line,
    level_decomposed,
    line_wavenumber_approx,
    line_wavenumber_full,
    line_wavenumber_model,
    relativistic_rotational_coefficient,
    rotational_constant_B,
    rotational_constant_textbook,
    rotational_constants,
    rotational_correction_Bl,
    spectrum,
)
from .massdb import (
    IsotopeRecord,
    MassTableError,
    MoleculePreset,
    ResolutionError,
    load_mass_table,
    load_presets,
    resolve_system,
)
from .rotor import (
    DerivedQuantities,
    EnergyLevel,
    ModelKind,
    RotorSystem,
    derived_quantities,
)

__version__ = "0.1.0"
