"""Energy eigenvalues W(l) for every rotor model.

Two independent routes exist for the exact relativistic level: a literal
evaluation of the closed-form eigenvalue expression, and a quartic-root
solver that refines its answer by bisection on the eigenvalue-equation
residual.  The residual is evaluated in extended precision (mpmath):
at small chi the residual is a ~l(l+1)-sized leftover of terms that are
~1/chi^2 large, so binary64 cannot even measure it.

Excitation energies (W - epsilon) are computed via (W^2 - eps^2)/(W + eps)
with the numerator expanded analytically; at chi ~ 1e-6 a naive W - eps
loses all significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from mpmath import mp

from .constants import C, HBAR
from .rotor import EnergyLevel, ModelKind, RotorSystem, check_l

_C2H2 = (C * HBAR) ** 2  # c^2 hbar^2


class TaylorOrder(Enum):
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True)
class QuarticCoefficients:
    """Coefficients of a^2 W^4 - (A + B) W^2 + C = 0."""

    A: float
    B: float
    C: float


def _alpha_beta(sys: RotorSystem) -> tuple[float, float]:
    """Rest energies alpha = m1 c^2, beta = m2 c^2 [J]."""
    return sys.m1 * C**2, sys.m2 * C**2


def _delta_ab(sys: RotorSystem) -> float:
    """alpha - beta, computed as a mass difference first so it is exactly
    zero for homonuclear systems."""
    return (sys.m1 - sys.m2) * C**2


def quartic_coefficients(sys: RotorSystem, l: int) -> QuarticCoefficients:
    l = check_l(l)
    alpha, beta = _alpha_beta(sys)
    L = l * (l + 1)
    a2 = sys.a**2
    A = 2.0 * a2 * (alpha**2 + beta**2)
    B = 4.0 * L * _C2H2
    Cc = a2 * (_delta_ab(sys) * (alpha + beta)) ** 2
    return QuarticCoefficients(A=A, B=B, C=Cc)


def quartic_residual(sys: RotorSystem, l: int, W: float) -> float:
    """Residual of the reduced eigenvalue equation at energy W:

        a^2 (W^2 - 2(alpha^2 + beta^2)) / (4 c^2 hbar^2)
          + a^2 (alpha^2 - beta^2)^2 / (4 W^2 c^2 hbar^2)  -  l(l+1)

    Evaluated in 50-digit arithmetic; see module docstring.
    """
    l = check_l(l)
    with mp.workdps(50):
        return float(_residual_mp(sys, l)(mp.mpf(W)))


def _residual_mp(sys: RotorSystem, l: int):
    """Extended-precision residual as a function of W (mpf in, mpf out).
    Caller is responsible for the mp.workdps context."""
    c = mp.mpf(C)
    hbar = mp.mpf(HBAR)
    alpha = mp.mpf(sys.m1) * c**2
    beta = mp.mpf(sys.m2) * c**2
    a2 = mp.mpf(sys.a) ** 2
    c2h2 = (c * hbar) ** 2
    L = mp.mpf(l * (l + 1))
    s2 = alpha**2 + beta**2
    d2 = (alpha**2 - beta**2) ** 2

    def residual(W):
        W2 = W * W
        return a2 * (W2 - 2 * s2) / (4 * c2h2) + a2 * d2 / (4 * W2 * c2h2) - L

    return residual


def solve_level_quartic_detailed(sys: RotorSystem, l: int) -> tuple[EnergyLevel, float]:
    """Exact level from the quartic in W, plus the residual achieved by the
    refinement (see solve_level_quartic).

    The achieved residual belongs to the extended-precision root; the
    nearest binary64 W necessarily carries a much larger residual whenever
    chi is small, because the residual is the leftover of ~1/chi^2-sized
    terms and one ulp of W moves it by ~ulp/chi^2.
    """
    l = check_l(l)
    if l == 0:
        # the quartic factors at l = 0; the admissible root is exactly eps
        level = EnergyLevel(l=0, W=sys.rest_energy, model=ModelKind.HETERONUCLEAR_KG_QUARTIC)
        return level, 0.0
    q = quartic_coefficients(sys, l)
    a2 = sys.a**2
    S = q.A + q.B
    disc = S * S - 4.0 * a2 * q.C
    if disc < 0.0:  # only reachable through rounding; disc is a sum of squares
        disc = 0.0
    W0 = math.sqrt((S + math.sqrt(disc)) / (2.0 * a2))

    L = l * (l + 1)
    tol = 1e-12 * max(L, 1)
    with mp.workdps(50):
        f = _residual_mp(sys, l)
        W = mp.mpf(W0)
        r = f(W)
        if abs(r) > tol:
            # residual is strictly increasing in W for W > 0 here
            width = W * mp.mpf("1e-13")
            lo, hi = W - width, W + width
            while f(lo) > 0:
                lo -= width
                width *= 4
            width = W * mp.mpf("1e-13")
            while f(hi) < 0:
                hi += width
                width *= 4
            for _ in range(300):
                W = (lo + hi) / 2
                r = f(W)
                if abs(r) <= tol:
                    break
                if r < 0:
                    lo = W
                else:
                    hi = W
        W0 = float(W)
        achieved = float(r)
    level = EnergyLevel(l=l, W=W0, model=ModelKind.HETERONUCLEAR_KG_QUARTIC)
    return level, achieved


def solve_level_quartic(sys: RotorSystem, l: int) -> EnergyLevel:
    """Exact level from the quartic in W: take the + branch of the quadratic
    in W^2 (the other W^2 root and the negative W branches are inadmissible),
    then refine by bisection on the extended-precision residual until
    |residual| <= 1e-12 * max(l(l+1), 1).
    """
    return solve_level_quartic_detailed(sys, l)[0]


def level_closed_form(sys: RotorSystem, l: int) -> EnergyLevel:
    """Exact level from the closed-form eigenvalue expression:

        W^2 = (alpha^2 + beta^2) + (2/a^2) l(l+1) c^2 hbar^2
              + (2/a^2) sqrt((alpha^2 a^2 + l(l+1) c^2 hbar^2)
                             (beta^2 a^2 + l(l+1) c^2 hbar^2))
    """
    l = check_l(l)
    if l == 0:
        # W^2 collapses to (alpha + beta)^2 exactly; skip the rounding of
        # sqrt(alpha^2 beta^2 a^4)
        return EnergyLevel(l=0, W=sys.rest_energy, model=ModelKind.HETERONUCLEAR_KG_EXACT)
    alpha, beta = _alpha_beta(sys)
    L = l * (l + 1)
    a2 = sys.a**2
    P1 = alpha**2 * a2 + _C2H2 * L
    P2 = beta**2 * a2 + L * _C2H2
    W2 = (alpha**2 + beta**2) + 2.0 * L * _C2H2 / a2 + 2.0 / a2 * math.sqrt(P1 * P2)
    return EnergyLevel(l=l, W=math.sqrt(W2), model=ModelKind.HETERONUCLEAR_KG_EXACT)


def excitation_closed_form(sys: RotorSystem, l: int) -> float:
    """W - epsilon for the exact model, cancellation-free:

        W^2 - eps^2 = (2/a^2) [ L c^2 hbar^2 + sqrt(P1 P2) - alpha beta a^2 ]

    and sqrt(P1 P2) - alpha beta a^2 is rationalized to
    L c^2 hbar^2 (a^2 (alpha^2 + beta^2) + L c^2 hbar^2) / (sqrt(P1 P2) + alpha beta a^2),
    a sum of positive terms.
    """
    l = check_l(l)
    alpha, beta = _alpha_beta(sys)
    L = l * (l + 1)
    a2 = sys.a**2
    P1 = alpha**2 * a2 + _C2H2 * L
    P2 = beta**2 * a2 + L * _C2H2
    root = math.sqrt(P1 * P2)
    q = alpha * beta * a2
    w2_minus_eps2 = (2.0 / a2) * (
        L * _C2H2 + L * _C2H2 * (a2 * (alpha**2 + beta**2) + L * _C2H2) / (root + q)
    )
    eps = sys.rest_energy
    W = level_closed_form(sys, l).W
    return w2_minus_eps2 / (W + eps)


def level_single_particle(m0: float, a: float, l: int) -> EnergyLevel:
    """Single particle of rest mass m0 on a sphere of radius a:
    W = eps0 sqrt(1 + l(l+1) hbar^2 / (I eps0)), eps0 = m0 c^2, I = m0 a^2."""
    if not (m0 > 0 and a > 0):
        raise ValueError("m0 and a must be strictly positive")
    l = check_l(l)
    eps0 = m0 * C**2
    I = m0 * a**2
    L = l * (l + 1)
    W = eps0 * math.sqrt(1.0 + L * HBAR**2 / (I * eps0))
    return EnergyLevel(l=l, W=W, model=ModelKind.SINGLE_PARTICLE)


def level_homonuclear(sys: RotorSystem, l: int) -> EnergyLevel:
    """Equal-mass rotor: the single-particle form with eps = 2 m0 c^2 and
    I = m0 a^2 / 2.  Only valid for (numerically) equal masses."""
    if not sys.is_homonuclear:
        raise ValueError("homonuclear model requires equal masses")
    l = check_l(l)
    m0 = sys.total_mass / 2.0
    eps = 2.0 * m0 * C**2
    I = m0 * sys.a**2 / 2.0
    L = l * (l + 1)
    W = eps * math.sqrt(1.0 + L * HBAR**2 / (I * eps))
    return EnergyLevel(l=l, W=W, model=ModelKind.HOMONUCLEAR_KG)


def level_nonrel(sys: RotorSystem, l: int, textbook: bool = False) -> float:
    """Non-relativistic excitation energy [J], rest energy excluded.

    Default is the 2 l(l+1) hbar^2 mu / (I M) form this model family
    produces; textbook=True gives the standard rotor l(l+1) hbar^2 / (2 I).
    The two agree only for equal masses.
    """
    l = check_l(l)
    L = l * (l + 1)
    if textbook:
        return L * HBAR**2 / (2.0 * sys.moment_of_inertia)
    return 2.0 * L * HBAR**2 / (sys.total_mass * sys.a**2)


def b_energy(sys: RotorSystem) -> float:
    """Rotational constant as an energy, h c B = 2 hbar^2 mu / (I M) [J]."""
    return 2.0 * HBAR**2 / (sys.total_mass * sys.a**2)


def bl_energy(sys: RotorSystem, l: int) -> float:
    """l-dependent relativistic correction as an energy, h c B_l [J]:
    b * (alpha - beta)^2 a^2 / (4 (alpha beta a^2 + l(l+1) c^2 hbar^2)).
    Exactly zero for equal masses (the difference is computed first)."""
    l = check_l(l)
    alpha, beta = _alpha_beta(sys)
    dab = _delta_ab(sys)
    if dab == 0.0:
        return 0.0
    L = l * (l + 1)
    a2 = sys.a**2
    return b_energy(sys) * dab**2 * a2 / (4.0 * (alpha * beta * a2 + L * _C2H2))


def excitation_taylor(sys: RotorSystem, l: int, order: TaylorOrder) -> float:
    """W - epsilon for the Taylor-expanded level [J].

    FIRST:  2 L c^2 hbar^2 / (a^2 eps)
            + (1/2) (alpha-beta)^2 L c^2 hbar^2 / (eps (alpha beta a^2 + L c^2 hbar^2))
    SECOND: L b_rel - L^2 b_rel^2 / (2 eps), with b_rel = h c (B + B_l).
    """
    l = check_l(l)
    L = l * (l + 1)
    eps = sys.rest_energy
    if order is TaylorOrder.FIRST:
        alpha, beta = _alpha_beta(sys)
        dab = _delta_ab(sys)
        a2 = sys.a**2
        term2 = 2.0 * L * _C2H2 / (a2 * eps)
        term3 = 0.0
        if dab != 0.0:
            term3 = 0.5 * dab**2 * L * _C2H2 / (eps * (alpha * beta * a2 + L * _C2H2))
        return term2 + term3
    brel = b_energy(sys) + bl_energy(sys, l)
    return L * brel - (L * brel) ** 2 / (2.0 * eps)


def level_taylor(sys: RotorSystem, l: int, order: TaylorOrder) -> EnergyLevel:
    model = ModelKind.KG_TAYLOR1 if order is TaylorOrder.FIRST else ModelKind.KG_TAYLOR2
    return EnergyLevel(l=l, W=sys.rest_energy + excitation_taylor(sys, l, order), model=model)


def excitation(sys: RotorSystem, l: int, model: ModelKind, textbook_nr: bool = False) -> float:
    """W(l) - epsilon [J] under the chosen model (the NR models return the
    excitation energy directly)."""
    if model is ModelKind.HETERONUCLEAR_KG_EXACT:
        return excitation_closed_form(sys, l)
    if model is ModelKind.HETERONUCLEAR_KG_QUARTIC:
        W = solve_level_quartic(sys, l).W
        eps = sys.rest_energy
        return (W * W - eps * eps) / (W + eps)
    if model is ModelKind.HOMONUCLEAR_KG:
        W = level_homonuclear(sys, l).W
        eps = sys.rest_energy
        # W^2 - eps^2 = 4 L hbar^2 c^2 / a^2 exactly for the equal-mass form
        L = l * (l + 1)
        return 4.0 * L * _C2H2 / sys.a**2 / (W + eps)
    if model is ModelKind.KG_TAYLOR1:
        return excitation_taylor(sys, l, TaylorOrder.FIRST)
    if model is ModelKind.KG_TAYLOR2:
        return excitation_taylor(sys, l, TaylorOrder.SECOND)
    if model is ModelKind.NON_RELATIVISTIC:
        return level_nonrel(sys, l, textbook=textbook_nr)
    raise ValueError(f"unsupported model: {model}")


def level(sys: RotorSystem, l: int, model: ModelKind) -> EnergyLevel:
    """Total energy level under the chosen model."""
    if model is ModelKind.HETERONUCLEAR_KG_EXACT:
        return level_closed_form(sys, l)
    if model is ModelKind.HETERONUCLEAR_KG_QUARTIC:
        return solve_level_quartic(sys, l)
    if model is ModelKind.HOMONUCLEAR_KG:
        return level_homonuclear(sys, l)
    if model in (ModelKind.KG_TAYLOR1, ModelKind.KG_TAYLOR2):
        order = TaylorOrder.FIRST if model is ModelKind.KG_TAYLOR1 else TaylorOrder.SECOND
        return level_taylor(sys, l, order)
    if model is ModelKind.NON_RELATIVISTIC:
        return EnergyLevel(l=check_l(l), W=sys.rest_energy + level_nonrel(sys, l), model=model)
    raise ValueError(f"unsupported model: {model}")
