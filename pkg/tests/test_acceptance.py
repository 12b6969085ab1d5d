"""Acceptance suite: one test per numbered criterion, each printing a
single pass/fail line (the pytest -v report line)."""

import csv
import io
import json
import math
import time

import numpy as np
import pytest

from kgrotor import (
    C,
    H,
    HBAR,
    ModelKind,
    RotorSystem,
    TaylorOrder,
    excitation_closed_form,
    excitation_taylor,
    first_line,
    fit_bond_length_first_line,
    level_closed_form,
    level_homonuclear,
    level_nonrel,
    level_taylor,
    line_wavenumber_full,
    predicted_first_line,
    rotational_constant_B,
    solve_level_quartic,
    spectrum,
)
from kgrotor.cli import EXIT_ARGS, EXIT_FIT, EXIT_OK, EXIT_RESOLVE, main
from kgrotor.energy import b_energy, bl_energy
from kgrotor.lines import _closed_terms_energy, _generic_terms_energy

from conftest import random_system

SEED = 20240817


def _systems(n, rng, **kwargs):
    return [random_system(rng, **kwargs) for _ in range(n)]


def test_criterion_01_oracle_equivalence():
    """Closed form vs quartic-root solver: <=1e-12 rel, 1000 systems, <5 s."""
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        sys = random_system(rng, chi_range=(1e-6, 1.0), ratio_max=100.0)
        l = int(rng.integers(0, 51))
        Wc = level_closed_form(sys, l).W
        Wq = solve_level_quartic(sys, l).W
        worst = max(worst, abs(Wq - Wc) / Wc)
    elapsed = time.perf_counter() - start
    assert worst <= 1e-12, f"worst relative disagreement {worst:.3e}"
    assert elapsed < 5.0, f"runtime {elapsed:.2f} s"


def test_criterion_02_homonuclear_reduction():
    """Equal-mass closed form collapses to 2 sqrt(m^2 c^4 + L hbar^2 c^2/a^2)."""
    for m, a in ((1.6735e-27, 0.7414e-10), (5e-26, 1.2e-10), (1e-25, 3e-12)):
        sys = RotorSystem(m, m, a)
        for l in range(101):
            L = l * (l + 1)
            expected = 2.0 * math.sqrt((m * C**2) ** 2 + L * (HBAR * C / a) ** 2)
            got = level_closed_form(sys, l).W
            assert abs(got - expected) <= 1e-14 * expected
            assert abs(level_homonuclear(sys, l).W - expected) <= 1e-14 * expected


def test_criterion_03_rest_energy_floor():
    """W(l=0) = epsilon for every relativistic model, <=1e-15 relative."""
    rng = np.random.default_rng(SEED)
    for sys in _systems(100, rng):
        eps = sys.rest_energy
        candidates = [
            level_closed_form(sys, 0).W,
            solve_level_quartic(sys, 0).W,
            level_taylor(sys, 0, TaylorOrder.FIRST).W,
            level_taylor(sys, 0, TaylorOrder.SECOND).W,
        ]
        if sys.is_homonuclear:
            candidates.append(level_homonuclear(sys, 0).W)
        for W in candidates:
            assert abs(W - eps) <= 1e-15 * eps


def test_criterion_04_nr_convergence():
    """(W_exact - eps - E_nr)/E_nr <= 1e-4 at chi <= 1e-3, l <= 10, and
    |ratio| shrinking monotonically through chi = 1e-2, 1e-3, 1e-4."""
    m2 = 1.5e-27
    for ratio_m in (1.0, 3.0, 42.0):
        m1 = ratio_m * m2
        mu = m1 * m2 / (m1 + m2)
        for l in range(1, 11):
            ratios = []
            for chi in (1e-2, 1e-3, 1e-4):
                a = HBAR / (mu * C * chi)
                sys = RotorSystem(m1, m2, a)
                e_nr = level_nonrel(sys, l, textbook=True)
                r = abs(excitation_closed_form(sys, l) - e_nr) / e_nr
                ratios.append(r)
            assert ratios[1] <= 1e-4, f"ratio {ratios[1]:.3e} at chi=1e-3"
            assert ratios[0] > ratios[1] > ratios[2]


def test_criterion_05_taylor_identity():
    """level_taylor(First) - eps = l(l+1) (b + b_l) [energy form of
    l(l+1) h c (B + B_l)], <=1e-12 relative."""
    rng = np.random.default_rng(SEED)
    for sys in _systems(200, rng):
        for l in (0, 1, 2, 5, 10, 50):
            # excitation_taylor is the W - eps of level_taylor before the
            # + eps rounding; subtracting eps back out of the float W would
            # only measure ulp(eps), not the identity
            lhs = excitation_taylor(sys, l, TaylorOrder.FIRST)
            rhs = l * (l + 1) * (b_energy(sys) + bl_energy(sys, l))
            if rhs == 0.0:
                assert lhs == 0.0
                continue
            assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_criterion_06_first_line_three_way():
    """nu0 = 2B + 2B_1 = compact mass form = Compton-scaled form, <=1e-12
    over 1000 systems; homonuclear nu0 = 2B exactly."""
    rng = np.random.default_rng(SEED)
    for _ in range(1000):
        sys = random_system(rng)
        fl = first_line(sys)  # raises ConsistencyError beyond 1e-12 internally
        assert abs(fl.compact_form - fl.nu0) <= 1e-12 * fl.nu0
        assert abs(fl.compton_form - fl.nu0) <= 1e-12 * fl.nu0
    for m, a in ((1.6735e-27, 0.7414e-10), (2e-26, 1e-11)):
        sys = RotorSystem(m, m, a)
        assert first_line(sys).nu0 == 2.0 * rotational_constant_B(sys)


def test_criterion_07_term_closed_forms():
    """Closed-form T3/T4/T5 match the generic B_l definitions to <=1e-11;
    exactly zero for equal masses; nu_bar = sum(T_i) to <=1e-13."""
    rng = np.random.default_rng(SEED)
    for _ in range(500):
        sys = random_system(rng)
        l = int(rng.integers(0, 30))
        g = _generic_terms_energy(sys, l)
        c = _closed_terms_energy(sys, l)
        for generic, closed in zip(g[2:], c):
            scale = max(abs(generic), abs(closed))
            if scale == 0.0:
                continue
            assert abs(generic - closed) <= 1e-11 * scale
        line = line_wavenumber_full(sys, l)
        assert abs(sum(line.terms) - line.nu_bar) <= 1e-13 * abs(line.nu_bar)
    hom = RotorSystem(1.6735e-27, 1.6735e-27, 0.7414e-10)
    for l in range(10):
        line = line_wavenumber_full(hom, l)
        assert line.T3 == 0.0 and line.T4 == 0.0 and line.T5 == 0.0


def test_criterion_08_fit_round_trip():
    """Forward nu0 from (m1, m2, a*), invert, recover a* to <=1e-9 over 500
    systems in <10 s; homonuclear-NR fit matches the closed inversion of
    nu0 = 2B to <=1e-10."""
    rng = np.random.default_rng(SEED)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(500):
        ratio = math.exp(rng.uniform(0.0, math.log(100.0)))
        m2 = 10.0 ** rng.uniform(-27.0, -25.0)
        m1 = m2 * ratio
        a_true = 10.0 ** rng.uniform(-12.0, -8.0)
        nu0 = predicted_first_line(m1, m2, a_true, ModelKind.HETERONUCLEAR_KG_EXACT)
        res = fit_bond_length_first_line(m1, m2, nu0)
        worst = max(worst, abs(res.a - a_true) / a_true)
    elapsed = time.perf_counter() - start
    assert worst <= 1e-9, f"worst relative recovery error {worst:.3e}"
    assert elapsed < 10.0, f"runtime {elapsed:.2f} s"

    # homonuclear NR: nu0 = 2B with B = h/(4 pi^2 I c)(2 mu/M) inverts to
    # a = sqrt(4 hbar^2 / (M h c_cm nu0)) in closed form
    m = 1.6735e-27
    nu0 = 120.0  # cm^-1
    res = fit_bond_length_first_line(m, m, nu0, model=ModelKind.NON_RELATIVISTIC)
    a_closed = math.sqrt(4.0 * HBAR**2 / (2.0 * m * H * C * 100.0 * nu0))
    assert abs(res.a - a_closed) <= 1e-10 * a_closed


def test_criterion_09_spacing_behavior():
    """NR spacing is 2B exactly; KG spacing at chi = 1e-2 deviates from 2B,
    with a negative deficit for homonuclear systems."""
    m = 1.6735e-27
    mu = m / 2.0
    a = HBAR / (mu * C * 1e-2)
    hom = RotorSystem(m, m, a)

    sp_nr = spectrum(hom, 20, ModelKind.NON_RELATIVISTIC)
    assert all(s == 2.0 * sp_nr.B for s in sp_nr.spacings)
    assert all(d == 0.0 for d in sp_nr.deviations)

    for model in (ModelKind.HETERONUCLEAR_KG_EXACT, ModelKind.KG_TAYLOR2):
        sp = spectrum(hom, 20, model)
        assert max(abs(d) for d in sp.deviations) > 0.0
        assert all(d < 0.0 for d in sp.deviations)

    het = RotorSystem(2.0 * m, m, HBAR / ((2.0 * m / 3.0) * C * 1e-2))
    sp = spectrum(het, 20, ModelKind.HETERONUCLEAR_KG_EXACT)
    assert max(abs(d) for d in sp.deviations) > 0.0


def test_criterion_10_cli_contract(capsys, tmp_path):
    """Exit codes 0/2/3/4 as documented; csv and json numerically identical;
    machine output byte-deterministic across runs."""
    # success
    assert main(["spectrum", "HCl", "--lmax", "3", "--format", "csv"]) == EXIT_OK
    out1 = capsys.readouterr().out
    # byte determinism
    assert main(["spectrum", "HCl", "--lmax", "3", "--format", "csv"]) == EXIT_OK
    assert capsys.readouterr().out == out1
    # csv/json numeric identity
    assert main(["spectrum", "HCl", "--lmax", "3", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    csv_rows = list(csv.DictReader(io.StringIO(out1)))
    assert len(csv_rows) == len(doc["rows"])
    for cr, jr in zip(csv_rows, doc["rows"]):
        for col in doc["columns"]:
            expected = jr[col] if col != "l" else str(jr[col])
            got = cr[col] if col == "l" else float(cr[col])
            if col != "l":
                assert got == jr[col]
    # json determinism too
    assert main(["spectrum", "HCl", "--lmax", "3", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == doc

    # exit 3: resolution failures
    assert main(["spectrum", "NoSuchMolecule"]) == EXIT_RESOLVE
    assert main(["constants", "HCl", "--mass-db", str(tmp_path / "nope.csv")]) == EXIT_RESOLVE
    capsys.readouterr()

    # exit 4: unattainable fit target
    assert main(["fit", "1H:35Cl", "--nu0", "1e-30"]) == EXIT_FIT
    capsys.readouterr()

    # exit 2: argument errors (argparse exits via SystemExit)
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "HCl", "--model", "bogus"])
    assert exc.value.code == EXIT_ARGS
    with pytest.raises(SystemExit) as exc:
        main(["fit", "1H:35Cl"])  # neither --nu0 nor --lines-file
    assert exc.value.code == EXIT_ARGS
    capsys.readouterr()
