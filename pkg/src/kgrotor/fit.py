"""Inversion of observed rotational lines to bond length and moment of
inertia.

The forward observable nu(a) falls off as 1/a^2 across the physically
sensible bracket [1e-13 m, 1e-7 m] (about 12 decades of dynamic range),
so all searches run on log(a): bracketed root finding for a single line,
golden-section least squares for several.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .constants import ANGSTROM, wavenumber_from_energy
from .energy import excitation_closed_form
from .lines import (
    first_line,
    line_wavenumber_approx,
    rotational_constant_B,
)
from .rotor import ModelKind, RotorSystem

A_MIN = 1e-13  # bond-length search bracket [m]
A_MAX = 1e-7

FIT_MODELS = (
    ModelKind.HETERONUCLEAR_KG_EXACT,
    ModelKind.KG_TAYLOR1,  # the 2B + 2B_1 / T1+T3 approximation
    ModelKind.NON_RELATIVISTIC,
)


class BracketError(ValueError):
    """Observed wavenumber is outside the range the bond-length bracket
    can produce; the input is unphysical for this system."""


@dataclass(frozen=True)
class FitResult:
    a: float  # bond length [m]
    I: float  # moment of inertia [kg m^2]
    model: ModelKind
    residual: float  # cm^-1
    iterations: int


def _check_fit_model(model: ModelKind) -> ModelKind:
    if model not in FIT_MODELS:
        raise ValueError(f"unsupported fit model: {model}")
    return model


def predicted_line(m1: float, m2: float, a: float, l: int, model: ModelKind) -> float:
    """Model wavenumber of the l+1 -> l transition [cm^-1] for masses in kg
    and bond length in m."""
    sys = RotorSystem(m1, m2, a)
    if model is ModelKind.HETERONUCLEAR_KG_EXACT:
        return wavenumber_from_energy(
            excitation_closed_form(sys, l + 1) - excitation_closed_form(sys, l)
        )
    if model is ModelKind.KG_TAYLOR1:
        return line_wavenumber_approx(sys, l)
    if model is ModelKind.NON_RELATIVISTIC:
        return 2.0 * (l + 1) * rotational_constant_B(sys)
    raise ValueError(f"unsupported fit model: {model}")


def predicted_first_line(m1: float, m2: float, a: float, model: ModelKind) -> float:
    """nu0(a) [cm^-1]; for the Taylor-1 model this is exactly 2B + 2B_1."""
    if model is ModelKind.KG_TAYLOR1:
        return first_line(RotorSystem(m1, m2, a)).nu0
    return predicted_line(m1, m2, a, 0, model)


def fit_bond_length_first_line(
    m1: float,
    m2: float,
    nu0_obs: float,
    model: ModelKind = ModelKind.HETERONUCLEAR_KG_EXACT,
    tol_rel: float = 1e-10,
    max_iter: int = 200,
) -> FitResult:
    """Solve nu0(a) = nu0_obs for the bond length.

    nu0(a) is strictly decreasing in a for every supported model, so a
    bracketed root on log(a) is unique when it exists.
    """
    model = _check_fit_model(model)
    if nu0_obs <= 0:
        raise ValueError("observed wavenumber must be positive")
    if m1 <= 0 or m2 <= 0:
        raise ValueError("masses must be strictly positive")

    lo, hi = math.log(A_MIN), math.log(A_MAX)

    def f(log_a: float) -> float:
        return predicted_first_line(m1, m2, math.exp(log_a), model) - nu0_obs

    nu_max = predicted_first_line(m1, m2, A_MIN, model)
    nu_min = predicted_first_line(m1, m2, A_MAX, model)
    if not (nu_min <= nu0_obs <= nu_max):
        raise BracketError(
            f"nu0 = {nu0_obs} cm^-1 is outside the attainable range "
            f"[{nu_min:.6g}, {nu_max:.6g}] cm^-1 "
            f"for bond lengths in [{A_MIN:g}, {A_MAX:g}] m"
        )
    root, info = brentq(
        f, lo, hi, xtol=1e-14, rtol=8.9e-16, maxiter=max_iter, full_output=True
    )
    a = math.exp(root)
    residual = abs(predicted_first_line(m1, m2, a, model) - nu0_obs)
    if residual > tol_rel * nu0_obs:
        raise BracketError("root refinement failed to reach the residual tolerance")
    mu = m1 * m2 / (m1 + m2)
    return FitResult(a=a, I=mu * a**2, model=model, residual=residual, iterations=info.iterations)


def _golden_section(g, lo: float, hi: float, tol: float, max_iter: int) -> tuple[float, int]:
    """Minimize a unimodal g on [lo, hi]; returns (argmin, iterations)."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    g1, g2 = g(x1), g(x2)
    it = 0
    while hi - lo > tol and it < max_iter:
        if g1 <= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - invphi * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + invphi * (hi - lo)
            g2 = g(x2)
        it += 1
    return (x1 if g1 <= g2 else x2), it


def fit_bond_length_multi_line(
    m1: float,
    m2: float,
    lines: Sequence[tuple[int, float]],
    model: ModelKind = ModelKind.HETERONUCLEAR_KG_EXACT,
    max_iter: int = 200,
) -> FitResult:
    """Least-squares fit of the bond length to several observed lines
    (l, nu_bar_obs in cm^-1) by golden-section search on log(a)."""
    model = _check_fit_model(model)
    if len(lines) == 0:
        raise ValueError("at least one observed line is required")
    ls = [int(l) for l, _ in lines]
    if len(set(ls)) != len(ls):
        raise ValueError("l values must be distinct")
    if any(nu <= 0 for _, nu in lines):
        raise ValueError("observed wavenumbers must be positive")
    if m1 <= 0 or m2 <= 0:
        raise ValueError("masses must be strictly positive")

    def g(log_a: float) -> float:
        a = math.exp(log_a)
        return sum((predicted_line(m1, m2, a, l, model) - nu) ** 2 for l, nu in lines)

    lo, hi = math.log(A_MIN), math.log(A_MAX)
    root, it = _golden_section(g, lo, hi, tol=1e-13, max_iter=max_iter)
    if root - lo < 1e-6 or hi - root < 1e-6:
        raise BracketError("best fit sits at the edge of the bond-length bracket")
    a = math.exp(root)
    residual = math.sqrt(g(root) / len(lines))
    mu = m1 * m2 / (m1 + m2)
    return FitResult(a=a, I=mu * a**2, model=model, residual=residual, iterations=it)


_MODEL_ALIASES = {
    "kg-exact": ModelKind.HETERONUCLEAR_KG_EXACT,
    "approx": ModelKind.KG_TAYLOR1,
    "taylor1": ModelKind.KG_TAYLOR1,
    "nr": ModelKind.NON_RELATIVISTIC,
}


class BondLengthEstimator(BaseEstimator, RegressorMixin):
    """Scikit-learn style estimator wrapping the bond-length fit.

    X holds rotational quantum numbers l (one column), y the observed
    l+1 -> l wavenumbers in cm^-1.  After fit() the bond length is in
    ``bond_length_`` [m] / ``bond_length_angstrom_``.
    """

    def __init__(self, m1_amu: float = 1.0, m2_amu: float = 1.0, model: str = "kg-exact"):
        self.m1_amu = m1_amu
        self.m2_amu = m2_amu
        self.model = model

    def _masses_kg(self) -> tuple[float, float]:
        from .constants import AMU

        return self.m1_amu * AMU, self.m2_amu * AMU

    def _model_kind(self) -> ModelKind:
        try:
            return _MODEL_ALIASES[self.model]
        except KeyError:
            raise ValueError(
                f"model must be one of {sorted(_MODEL_ALIASES)}, got {self.model!r}"
            ) from None

    def fit(self, X, y) -> "BondLengthEstimator":
        X = check_array(X, ensure_2d=False, dtype="numeric")
        y = check_array(y, ensure_2d=False, dtype="numeric")
        ls = np.asarray(X).reshape(-1).astype(int)
        nus = np.asarray(y).reshape(-1)
        if ls.shape[0] != nus.shape[0]:
            raise ValueError("X and y must have the same number of lines")
        m1, m2 = self._masses_kg()
        result = fit_bond_length_multi_line(
            m1, m2, list(zip(ls.tolist(), nus.tolist())), model=self._model_kind()
        )
        self.bond_length_ = result.a
        self.bond_length_angstrom_ = result.a / ANGSTROM
        self.moment_of_inertia_ = result.I
        self.residual_ = result.residual
        self.n_iter_ = result.iterations
        return self

    def predict(self, X):
        check_is_fitted(self, "bond_length_")
        X = check_array(X, ensure_2d=False, dtype="numeric")
        ls = np.asarray(X).reshape(-1).astype(int)
        m1, m2 = self._masses_kg()
        kind = self._model_kind()
        return np.array(
            [predicted_line(m1, m2, self.bond_length_, int(l), kind) for l in ls]
        )
