"""Physical constants (CODATA 2018, SI) and the small set of unit
conversions the rest of the package needs.

Internal computations everywhere else are in SI (kg, m, s, J); public
inputs in amu / angstrom / cm^-1 are converted at the boundary through
this module.  cm^-1 is treated as an energy via E = h*c*nubar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

# Speed of light [m/s], exact by SI definition
C = 299792458.0

# Planck constant [J s], exact by SI definition
H = 6.62607015e-34

# Reduced Planck constant [J s]
HBAR = H / (2.0 * math.pi)

# Atomic mass unit [kg]
AMU = 1.66053906660e-27

# Electronvolt [J], exact by SI definition
EV = 1.602176634e-19

# Angstrom [m]
ANGSTROM = 1e-10

# Energy equivalent of 1 cm^-1 [J]: h * c * (100 m^-1)
CM1_IN_J = H * C * 100.0


@dataclass(frozen=True)
class PhysicalConstants:
    """Bundle of the constants above, for callers that want them as a value."""

    c: float = C
    h: float = H
    hbar: float = HBAR
    amu: float = AMU


CODATA2018 = PhysicalConstants()


class Unit(Enum):
    J = "J"
    EV = "eV"
    CM1 = "cm-1"
    KG = "kg"
    AMU = "amu"
    M = "m"
    ANGSTROM = "angstrom"


# dimension -> {unit: factor to SI base unit of that dimension}
_DIMENSIONS = {
    "energy": {Unit.J: 1.0, Unit.EV: EV, Unit.CM1: CM1_IN_J},
    "mass": {Unit.KG: 1.0, Unit.AMU: AMU},
    "length": {Unit.M: 1.0, Unit.ANGSTROM: ANGSTROM},
}

_UNIT_DIMENSION = {
    unit: dim for dim, table in _DIMENSIONS.items() for unit in table
}


@dataclass(frozen=True)
class Quantity:
    value: float
    unit: Unit


class IncompatibleDimensionError(ValueError):
    """Requested conversion between units of different dimensions."""


def convert(q: Quantity, target: Unit) -> Quantity:
    """Convert a quantity to a dimensionally compatible unit."""
    dim = _UNIT_DIMENSION[q.unit]
    if _UNIT_DIMENSION[target] != dim:
        raise IncompatibleDimensionError(
            f"cannot convert {q.unit.value} to {target.value}"
        )
    table = _DIMENSIONS[dim]
    return Quantity(q.value * table[q.unit] / table[target], target)


def wavenumber_from_energy(energy_j: float) -> float:
    """Energy [J] -> wavenumber [cm^-1] via nubar = E/(h c)."""
    return energy_j / CM1_IN_J


def energy_from_wavenumber(nubar_cm1: float) -> float:
    """Wavenumber [cm^-1] -> energy [J]."""
    return nubar_cm1 * CM1_IN_J
