import math

import numpy as np
import pytest

from kgrotor import C, HBAR, RotorSystem


def random_system(rng, chi_range=(1e-6, 1.0), ratio_max=100.0):
    """Random rotor with mass ratio up to ratio_max and chi(mu) in chi_range."""
    ratio = math.exp(rng.uniform(0.0, math.log(ratio_max)))
    m2 = 10.0 ** rng.uniform(-27.0, -25.0)
    m1 = m2 * ratio
    chi = 10.0 ** rng.uniform(math.log10(chi_range[0]), math.log10(chi_range[1]))
    mu = m1 * m2 / (m1 + m2)
    a = HBAR / (mu * C * chi)
    return RotorSystem(m1, m2, a)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def hcl():
    return RotorSystem.from_amu_angstrom(1.00782503190, 34.968852694, 1.2746)


@pytest.fixture
def h2():
    return RotorSystem.from_amu_angstrom(1.00782503190, 1.00782503190, 0.7414)


def chi_one_pair(mass=1e-26):
    """(heteronuclear 2m:m, homonuclear m:m) systems with chi(m)=hbar/(m c a)=1."""
    a = HBAR / (mass * C)
    return RotorSystem(2 * mass, mass, a), RotorSystem(mass, mass, a)
