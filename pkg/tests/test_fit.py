import math

import numpy as np
import pytest

from kgrotor import (
    AMU,
    H,
    BondLengthEstimator,
    BracketError,
    FitResult,
    ModelKind,
    RotorSystem,
    fit_bond_length_first_line,
    fit_bond_length_multi_line,
    predicted_first_line,
    predicted_line,
)
from kgrotor.constants import C
from kgrotor.fit import A_MAX, A_MIN

from conftest import random_system


def random_fit_case(rng, ratio_max=100.0):
    """Masses plus a true bond length inside the search bracket."""
    ratio = math.exp(rng.uniform(0.0, math.log(ratio_max)))
    m2 = 10.0 ** rng.uniform(-27.0, -25.0)
    m1 = m2 * ratio
    a_true = 10.0 ** rng.uniform(-12.0, -8.0)
    return m1, m2, a_true


class TestFirstLineFit:
    def test_round_trip_exact_model(self, rng):
        for _ in range(100):
            m1, m2, a_true = random_fit_case(rng)
            nu0 = predicted_first_line(m1, m2, a_true, ModelKind.HETERONUCLEAR_KG_EXACT)
            res = fit_bond_length_first_line(m1, m2, nu0)
            assert abs(res.a - a_true) <= 1e-9 * a_true
            mu = m1 * m2 / (m1 + m2)
            assert res.I == pytest.approx(mu * res.a**2, rel=1e-15)

    def test_round_trip_all_models(self, rng):
        for model in (
            ModelKind.HETERONUCLEAR_KG_EXACT,
            ModelKind.KG_TAYLOR1,
            ModelKind.NON_RELATIVISTIC,
        ):
            for _ in range(20):
                m1, m2, a_true = random_fit_case(rng)
                nu0 = predicted_first_line(m1, m2, a_true, model)
                res = fit_bond_length_first_line(m1, m2, nu0, model=model)
                assert abs(res.a - a_true) <= 1e-9 * a_true
                assert res.model is model

    def test_nr_matches_closed_inversion(self):
        # for the NR model nu0 = 2B has the closed inversion
        # a = sqrt(h mu / (2 pi^2 M I_nu)), I_nu = nu0 * 100 * c (as Hz)
        m1 = 1.00782503190 * AMU
        m2 = 34.968852694 * AMU
        nu0 = 20.0  # cm^-1
        res = fit_bond_length_first_line(m1, m2, nu0, model=ModelKind.NON_RELATIVISTIC)
        mu = m1 * m2 / (m1 + m2)
        M = m1 + m2
        # 2B = h/(4 pi^2 I c_cm) * 2 mu / M with I = mu a^2
        a_closed = math.sqrt(H / (math.pi**2 * M * nu0 * 100.0 * C))
        assert res.a == pytest.approx(a_closed, rel=1e-10)

    def test_unphysical_wavenumber_raises(self):
        m1 = m2 = 1e-26
        nu_min = predicted_first_line(m1, m2, A_MAX, ModelKind.HETERONUCLEAR_KG_EXACT)
        with pytest.raises(BracketError):
            fit_bond_length_first_line(m1, m2, nu_min * 0.5)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            fit_bond_length_first_line(1e-26, 1e-26, -1.0)
        with pytest.raises(ValueError):
            fit_bond_length_first_line(-1e-26, 1e-26, 10.0)
        with pytest.raises(ValueError):
            fit_bond_length_first_line(1e-26, 1e-26, 10.0, model=ModelKind.KG_TAYLOR2)


class TestMultiLineFit:
    def test_round_trip_noiseless(self, rng):
        for _ in range(30):
            m1, m2, a_true = random_fit_case(rng)
            lines = [
                (l, predicted_line(m1, m2, a_true, l, ModelKind.HETERONUCLEAR_KG_EXACT))
                for l in range(5)
            ]
            res = fit_bond_length_multi_line(m1, m2, lines)
            assert abs(res.a - a_true) <= 1e-9 * a_true
            assert res.residual <= 1e-8 * lines[0][1]

    def test_noisy_recovery(self, rng):
        # 1e-6 relative noise on ten lines recovers a to better than 1e-5
        for _ in range(10):
            m1, m2, a_true = random_fit_case(rng, ratio_max=30.0)
            lines = []
            for l in range(10):
                nu = predicted_line(m1, m2, a_true, l, ModelKind.HETERONUCLEAR_KG_EXACT)
                lines.append((l, nu * (1.0 + 1e-6 * rng.standard_normal())))
            res = fit_bond_length_multi_line(m1, m2, lines)
            assert abs(res.a - a_true) <= 1e-5 * a_true

    def test_duplicate_l_rejected(self):
        with pytest.raises(ValueError):
            fit_bond_length_multi_line(1e-26, 1e-26, [(0, 10.0), (0, 11.0)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            fit_bond_length_multi_line(1e-26, 1e-26, [])

    def test_nonpositive_wavenumber_rejected(self):
        with pytest.raises(ValueError):
            fit_bond_length_multi_line(1e-26, 1e-26, [(0, -3.0)])

    def test_result_type(self):
        m1, m2, a_true = 2e-26, 1e-26, 1.3e-10
        lines = [
            (l, predicted_line(m1, m2, a_true, l, ModelKind.KG_TAYLOR1))
            for l in (0, 1, 2)
        ]
        res = fit_bond_length_multi_line(m1, m2, lines, model=ModelKind.KG_TAYLOR1)
        assert isinstance(res, FitResult)
        assert res.iterations > 0


class TestEstimator:
    def test_fit_predict_round_trip(self):
        m1_amu, m2_amu, a_true = 1.00782503190, 34.968852694, 1.2746e-10
        ls = np.arange(6)
        nus = np.array(
            [
                predicted_line(
                    m1_amu * AMU, m2_amu * AMU, a_true, int(l),
                    ModelKind.HETERONUCLEAR_KG_EXACT,
                )
                for l in ls
            ]
        )
        est = BondLengthEstimator(m1_amu=m1_amu, m2_amu=m2_amu)
        est.fit(ls.reshape(-1, 1), nus)
        assert est.bond_length_ == pytest.approx(a_true, rel=1e-9)
        assert est.bond_length_angstrom_ == pytest.approx(1.2746, rel=1e-9)
        pred = est.predict(ls.reshape(-1, 1))
        assert np.allclose(pred, nus, rtol=1e-9)

    def test_get_set_params(self):
        est = BondLengthEstimator(m1_amu=2.0, m2_amu=3.0, model="nr")
        params = est.get_params()
        assert params == {"m1_amu": 2.0, "m2_amu": 3.0, "model": "nr"}
        est.set_params(model="approx")
        assert est.model == "approx"

    def test_unknown_model_string(self):
        est = BondLengthEstimator(model="bogus")
        with pytest.raises(ValueError):
            est.fit([[0]], [10.0])

    def test_predict_before_fit_raises(self):
        est = BondLengthEstimator()
        with pytest.raises(Exception):
            est.predict([[0]])


def test_exact_vs_taylor1_fit_agree_at_small_chi(rng):
    # at spectroscopic scales both models invert to nearly the same a
    m1, m2, a_true = 1.00782503190 * AMU, 34.968852694 * AMU, 1.2746e-10
    nu0 = predicted_first_line(m1, m2, a_true, ModelKind.HETERONUCLEAR_KG_EXACT)
    exact = fit_bond_length_first_line(m1, m2, nu0)
    taylor = fit_bond_length_first_line(m1, m2, nu0, model=ModelKind.KG_TAYLOR1)
    assert taylor.a == pytest.approx(exact.a, rel=1e-8)
