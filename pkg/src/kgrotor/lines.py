"""Rotational constants, decomposed level energies, line wavenumbers with
the five-term breakdown, and the first rotational line.

All term arithmetic is done in energy units [J] and converted to cm^-1
once at the boundary.  Quantities that vanish for equal masses (B_l, T3,
T4, T5, the first-line shift) are built from the mass difference directly,
so the homonuclear collapse is exact, not merely small.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import C, H, HBAR, wavenumber_from_energy
from .energy import (
    TaylorOrder,
    _alpha_beta,
    _delta_ab,
    b_energy,
    bl_energy,
    excitation,
)
from .rotor import ModelKind, RotorSystem, check_l

_C2H2 = (C * HBAR) ** 2


class ConsistencyError(RuntimeError):
    """Two algebraically equivalent evaluations disagreed beyond tolerance."""


@dataclass(frozen=True)
class RotationalConstants:
    """B, B_l and B_Rel = B + B_l in cm^-1 for a given l."""

    B: float
    B_l: float
    B_Rel: float
    l: int


@dataclass(frozen=True)
class SpectralLine:
    """The transition l+1 -> l: wavenumber and its term breakdown [cm^-1]."""

    l_lower: int
    nu_bar: float
    T1: float
    T2: float
    T3: float
    T4: float
    T5: float
    model: ModelKind

    @property
    def terms(self) -> tuple[float, float, float, float, float]:
        return (self.T1, self.T2, self.T3, self.T4, self.T5)


@dataclass(frozen=True)
class FirstLine:
    """The l=1 -> l=0 line computed three equivalent ways [cm^-1]."""

    nu0: float
    compact_form: float
    compton_form: float
    a_tilde: float
    a_tilde0: float


def rotational_constant_B(sys: RotorSystem) -> float:
    """B = h/(4 pi^2 I c) * (2 mu / M) in cm^-1."""
    return wavenumber_from_energy(b_energy(sys))


def rotational_constant_textbook(sys: RotorSystem) -> float:
    """The standard spectroscopic B = h/(8 pi^2 I c) in cm^-1."""
    c_cm = C * 100.0
    return H / (8.0 * math.pi**2 * sys.moment_of_inertia * c_cm)


def rotational_correction_Bl(sys: RotorSystem, l: int) -> float:
    """B_l = B (alpha-beta)^2 a^2 / (4 (alpha beta a^2 + l(l+1) c^2 hbar^2)),
    in cm^-1; exactly zero for equal masses."""
    return wavenumber_from_energy(bl_energy(sys, l))


def relativistic_rotational_coefficient(sys: RotorSystem, l: int) -> float:
    """B_Rel = B + B_l in cm^-1."""
    return rotational_constant_B(sys) + rotational_correction_Bl(sys, l)


def rotational_constants(sys: RotorSystem, l: int) -> RotationalConstants:
    l = check_l(l)
    B = rotational_constant_B(sys)
    Bl = rotational_correction_Bl(sys, l)
    return RotationalConstants(B=B, B_l=Bl, B_Rel=B + Bl, l=l)


def level_decomposed(sys: RotorSystem, l: int) -> dict[str, float]:
    """Second-order level split into the equal-mass part W_0, the full W_l
    and the mass-asymmetry shift W_l - W_0 (all in J).

    Two groupings of the same expansion are evaluated and cross-checked:
    one collecting (B + B_l) together, one building on W_0.
    """
    l = check_l(l)
    L = l * (l + 1)
    eps = sys.rest_energy
    b = b_energy(sys)
    bl = bl_energy(sys, l)

    W0 = eps + L * b - (L * b) ** 2 / (2.0 * eps)
    shift = L * bl - L**2 * (bl**2 + 2.0 * b * bl) / (2.0 * eps)
    Wl_from_W0 = W0 + shift

    brel = b + bl
    Wl_direct = eps + L * brel - (L * brel) ** 2 / (2.0 * eps)

    if abs(Wl_direct - Wl_from_W0) > 1e-13 * abs(Wl_direct):
        raise ConsistencyError("level decompositions disagree beyond 1e-13")
    return {"W_l": Wl_direct, "W_0": W0, "shift": shift}


def _generic_terms_energy(sys: RotorSystem, l: int) -> tuple[float, float, float, float, float]:
    """T1..T5 for the l+1 -> l transition in energy units [J], from the
    B_l-based definitions."""
    L = l * (l + 1)
    eps = sys.rest_energy
    b = b_energy(sys)
    bl = bl_energy(sys, l)
    blp = bl_energy(sys, l + 1)
    t1 = 2.0 * (l + 1) * b
    t2 = -2.0 * b**2 * (l + 1) ** 3 / eps
    t3 = (l + 1) * ((l + 2) * blp - l * bl)
    t4 = -((l + 1) ** 2) / (2.0 * eps) * ((l + 2) ** 2 * blp**2 - l**2 * bl**2)
    t5 = -((l + 1) ** 2) / eps * b * ((l + 2) ** 2 * blp - l**2 * bl)
    # + 0.0 normalizes the -0.0 the homonuclear collapse produces
    return t1, t2, t3 + 0.0, t4 + 0.0, t5 + 0.0


def _closed_terms_energy(sys: RotorSystem, l: int) -> tuple[float, float, float]:
    """T3, T4, T5 in closed form [J], with the denominators
    D_L = alpha beta a^2 + L c^2 hbar^2 at L = l(l+1) and (l+1)(l+2):

        T3 =  b (l+1) ab d^2 a^4 / (2 D' D)
        T4 = -b^2 (l+1)^3 d^4 a^6 ab (ab a^2 + l(l+2) c^2 hbar^2) / (8 eps D'^2 D^2)
        T5 = -b^2 (l+1)^3 d^2 a^2 (2 ab a^2 + l(l+2) c^2 hbar^2) / (2 eps D' D)

    with ab = alpha beta and d = alpha - beta.  These are exact algebraic
    regroupings of the generic definitions.
    """
    alpha, beta = _alpha_beta(sys)
    dab = _delta_ab(sys)
    if dab == 0.0:
        return 0.0, 0.0, 0.0
    L = l * (l + 1)
    Lp = (l + 1) * (l + 2)
    a2 = sys.a**2
    ab = alpha * beta
    D = ab * a2 + L * _C2H2
    Dp = ab * a2 + Lp * _C2H2
    eps = sys.rest_energy
    b = b_energy(sys)
    mid = l * (l + 2) * _C2H2
    t3 = b * (l + 1) * ab * dab**2 * a2**2 / (2.0 * Dp * D)
    t4 = -(b**2) * (l + 1) ** 3 * dab**4 * a2**3 * ab * (ab * a2 + mid) / (
        8.0 * eps * Dp**2 * D**2
    )
    t5 = -(b**2) * (l + 1) ** 3 * dab**2 * a2 * (2.0 * ab * a2 + mid) / (2.0 * eps * Dp * D)
    return t3, t4, t5


def line_wavenumber_full(sys: RotorSystem, l: int) -> SpectralLine:
    """Full five-term wavenumber of the l+1 -> l transition [cm^-1].

    The generic B_l-based terms are cross-checked against the closed-form
    T3/T4/T5 to 1e-11 relative before the line is returned.
    """
    l = check_l(l)
    t1, t2, t3, t4, t5 = _generic_terms_energy(sys, l)
    t3c, t4c, t5c = _closed_terms_energy(sys, l)
    for generic, closed, name in ((t3, t3c, "T3"), (t4, t4c, "T4"), (t5, t5c, "T5")):
        if generic == closed == 0.0:
            continue
        if abs(generic - closed) > 1e-11 * max(abs(generic), abs(closed)):
            raise ConsistencyError(f"{name} closed form disagrees with generic form")
    terms = tuple(wavenumber_from_energy(t) for t in (t1, t2, t3, t4, t5))
    return SpectralLine(
        l_lower=l,
        nu_bar=wavenumber_from_energy(t1 + t2 + t3 + t4 + t5),
        T1=terms[0],
        T2=terms[1],
        T3=terms[2],
        T4=terms[3],
        T5=terms[4],
        model=ModelKind.KG_TAYLOR2,
    )


def line_wavenumber_approx(sys: RotorSystem, l: int) -> float:
    """Leading-order line position, T1 + T3 only [cm^-1]."""
    l = check_l(l)
    t1, _, t3, _, _ = _generic_terms_energy(sys, l)
    return wavenumber_from_energy(t1 + t3)


def first_line(sys: RotorSystem) -> FirstLine:
    """The l=1 -> l=0 line, computed three equivalent ways:

      nu0 = 2B + 2B_1
          = (B/2) (M^2 c^2 a^2 + 8 hbar^2) / (mu M c^2 a^2 + 2 hbar^2)
          = (B/2) (a~^2 + 8) / (a~ a~0 + 2)

    The three are required to agree to 1e-12 relative.
    """
    B = rotational_constant_B(sys)
    nu0 = 2.0 * B + 2.0 * rotational_correction_Bl(sys, 1)

    a2 = sys.a**2
    M = sys.total_mass
    mu = sys.reduced_mass
    compact = (B / 2.0) * (M**2 * C**2 * a2 + 8.0 * HBAR**2) / (
        mu * M * C**2 * a2 + 2.0 * HBAR**2
    )

    at = sys.a_tilde
    at0 = sys.a_tilde0
    compton = (B / 2.0) * (at**2 + 8.0) / (at * at0 + 2.0)

    for other, name in ((compact, "compact"), (compton, "compton")):
        if abs(nu0 - other) > 1e-12 * abs(nu0):
            raise ConsistencyError(f"first-line {name} form disagrees beyond 1e-12")
    return FirstLine(nu0=nu0, compact_form=compact, compton_form=compton, a_tilde=at, a_tilde0=at0)


@dataclass(frozen=True)
class Spectrum:
    """Lines for l = 0..l_max plus the spacing report: spacings[l] is
    nu_bar(l+1) - nu_bar(l) and deviations[l] is spacings[l] - 2B."""

    lines: list[SpectralLine]
    spacings: list[float]
    deviations: list[float]
    B: float


def line_wavenumber_model(
    sys: RotorSystem, l: int, model: ModelKind, textbook_nr: bool = False
) -> float:
    """Wavenumber of l+1 -> l as an excitation difference under the chosen
    model [cm^-1]."""
    l = check_l(l)
    if model is ModelKind.KG_TAYLOR2:
        return line_wavenumber_full(sys, l).nu_bar
    if model is ModelKind.NON_RELATIVISTIC:
        # linear-in-l(l+1) levels: the line is 2(l+1)B identically
        B = rotational_constant_textbook(sys) if textbook_nr else rotational_constant_B(sys)
        return 2.0 * (l + 1) * B
    e_hi = excitation(sys, l + 1, model, textbook_nr=textbook_nr)
    e_lo = excitation(sys, l, model, textbook_nr=textbook_nr)
    return wavenumber_from_energy(e_hi - e_lo)


def spectrum(
    sys: RotorSystem, l_max: int, model: ModelKind, textbook_nr: bool = False
) -> Spectrum:
    """Lines for l = 0..l_max under the chosen model.  The T1..T5 columns
    always carry the five-term expansion (they are model-independent
    diagnostics); nu_bar follows the chosen model."""
    l_max = check_l(l_max)
    nus = [
        line_wavenumber_model(sys, l, model, textbook_nr=textbook_nr)
        for l in range(l_max + 2)
    ]
    lines = []
    for l in range(l_max + 1):
        full = line_wavenumber_full(sys, l)
        lines.append(
            SpectralLine(
                l_lower=l,
                nu_bar=nus[l],
                T1=full.T1,
                T2=full.T2,
                T3=full.T3,
                T4=full.T4,
                T5=full.T5,
                model=model,
            )
        )
    B = rotational_constant_B(sys)
    if model is ModelKind.NON_RELATIVISTIC:
        # spacing is 2B identically; emit the analytic value, not a
        # rounded difference of near-equal floats
        Bf = rotational_constant_textbook(sys) if textbook_nr else B
        spacings = [2.0 * Bf] * (l_max + 1)
    else:
        spacings = [nus[l + 1] - nus[l] for l in range(l_max + 1)]
    deviations = [d - 2.0 * B for d in spacings]
    return Spectrum(lines=lines, spacings=spacings, deviations=deviations, B=B)
