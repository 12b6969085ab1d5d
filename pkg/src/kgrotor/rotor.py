"""The rotor system itself: two point masses at a fixed separation, and
the mechanical quantities every model shares.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .constants import AMU, ANGSTROM, C, HBAR

# Relative mass difference below which a rotor is treated as homonuclear
HOMONUCLEAR_TOL = 1e-12

# Cap on the rotational quantum number; keeps l*(l+1) far from overflow
# pathologies in sweeps.  Physical spectra never approach this.
L_MAX = 10**6


class ModelKind(Enum):
    SINGLE_PARTICLE = "single-particle"
    HOMONUCLEAR_KG = "kg-homonuclear"
    HETERONUCLEAR_KG_EXACT = "kg-exact"
    HETERONUCLEAR_KG_QUARTIC = "kg-quartic"
    KG_TAYLOR1 = "taylor1"
    KG_TAYLOR2 = "taylor2"
    NON_RELATIVISTIC = "nr"


@dataclass(frozen=True)
class RotorSystem:
    """Two rest masses [kg] a fixed bond length [m] apart."""

    m1: float
    m2: float
    a: float

    def __post_init__(self) -> None:
        if not (self.m1 > 0 and self.m2 > 0 and self.a > 0):
            raise ValueError("masses and bond length must be strictly positive")

    @classmethod
    def from_amu_angstrom(cls, m1_amu: float, m2_amu: float, a_angstrom: float) -> "RotorSystem":
        return cls(m1_amu * AMU, m2_amu * AMU, a_angstrom * ANGSTROM)

    @property
    def total_mass(self) -> float:
        return self.m1 + self.m2

    @property
    def reduced_mass(self) -> float:
        return self.m1 * self.m2 / (self.m1 + self.m2)

    @property
    def moment_of_inertia(self) -> float:
        return self.reduced_mass * self.a**2

    @property
    def rest_energy(self) -> float:
        """Total rest energy (m1 + m2) c^2 [J]."""
        return self.total_mass * C**2

    @property
    def chi(self) -> float:
        """hbar / (mu c a): the dimensionless how-relativistic diagnostic."""
        return HBAR / (self.reduced_mass * C * self.a)

    @property
    def a_tilde(self) -> float:
        """Bond length in units of the total-mass Compton length hbar/(M c)."""
        return self.a * self.total_mass * C / HBAR

    @property
    def a_tilde0(self) -> float:
        """Bond length in units of the reduced-mass Compton length hbar/(mu c)."""
        return self.a * self.reduced_mass * C / HBAR

    @property
    def is_homonuclear(self) -> bool:
        return abs(self.m1 - self.m2) / self.total_mass < HOMONUCLEAR_TOL


@dataclass(frozen=True)
class DerivedQuantities:
    M: float
    mu: float
    I: float
    epsilon: float
    chi: float
    a_tilde: float
    a_tilde0: float


def derived_quantities(sys: RotorSystem) -> DerivedQuantities:
    return DerivedQuantities(
        M=sys.total_mass,
        mu=sys.reduced_mass,
        I=sys.moment_of_inertia,
        epsilon=sys.rest_energy,
        chi=sys.chi,
        a_tilde=sys.a_tilde,
        a_tilde0=sys.a_tilde0,
    )


@dataclass(frozen=True)
class EnergyLevel:
    """Total energy W [J] of rotational level l under a given model."""

    l: int
    W: float
    model: ModelKind


def check_l(l: int) -> int:
    if l < 0:
        raise ValueError("l must be a non-negative integer")
    if l > L_MAX:
        raise ValueError(f"l exceeds supported maximum {L_MAX}")
    return int(l)
