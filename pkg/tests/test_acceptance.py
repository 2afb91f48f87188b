"""Acceptance gate: the nine headline claims, one pass/fail line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines as they complete; without ``-s`` they appear on failure only.

For the two reference grids the published numbers are partially inconsistent
with the integral representations they tabulate (see the decisions ledger
and tests/goldens.py). Criteria 1 and 2 therefore check three things: the
frozen exact goldens (independently confirmed at high precision), mutual
agreement of the independent computational routes, and agreement with the
published numbers at the entries where those are self-consistent, plus a
coarse deviation band over the full grids.
"""

import math
import sys
import time

import mpmath as mp
import numpy as np

import goldens
from oscbath import discrete, specfun, thermo
from oscbath.quadrature import DivergenceClass, DivergenceTag
from oscbath.spectral import (
    Drude,
    ExtendedDrude,
    ExtendedOhmic,
    InvalidModel,
    Ohmic,
    StatusTag,
    classify_model,
)

mp.mp.dps = 30


def _report(number: int, description: str, failures: list[str]) -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number}: {status} - {description}"
    if failures:
        line += " [" + "; ".join(failures) + "]"
    print(line, file=sys.stderr, flush=True)
    assert not failures, line


def _check(failures: list[str], ok: bool, message: str) -> None:
    if not ok:
        failures.append(message)


def _xdrude2_physical(w0: float, Omega: float, gamma: float):
    """Physical (omega_0, omega_d, gamma_o) for the (d,2) parametrization."""
    omega_0 = math.sqrt(Omega * gamma + w0 * w0)
    omega_d = Omega * w0 * w0 / (Omega * gamma + w0 * w0)
    gamma_o = Omega + gamma - omega_d
    return omega_0, omega_d, gamma_o


FIG1_X = [(10 + 5 * i) / 100.0 for i in range(59)]
FIG1_RATIOS = (2.0, 5.0, 10.0)


def test_criterion_1_table1():
    failures: list[str] = []
    start = time.perf_counter()
    e_g = 0.5
    for i, we in enumerate(goldens.TABLE1_OMEGA_E):
        for j, g in enumerate(goldens.TABLE1_GAMMA):
            got = thermo.k_exponential(1.0, we, g, tol=1e-9) / e_g
            _check(failures, abs(got - goldens.EXACT_TABLE1[i][j]) < 5e-8,
                   f"exact golden ({we},{g}): {got}")
            dev = abs(got - goldens.PRINTED_TABLE1[i][j])
            _check(failures, dev < goldens.PRINTED_TABLE1_MAX_DEV,
                   f"printed deviation ({we},{g}) = {dev:.2e}")
            if (i, j) in goldens.PRINTED_TABLE1_CONSISTENT:
                _check(failures, dev < 1e-4,
                       f"consistent printed entry ({we},{g}) off by {dev:.2e}")
    # the infinite-cutoff row is gamma_o/pi exactly
    lc = thermo.limit_checks()
    _check(failures,
           abs(lc["exponential_limit"] / e_g - 1.0 / math.pi) < 1e-12,
           "infinite-cutoff row")
    elapsed = time.perf_counter() - start
    _check(failures, elapsed < 30.0, f"runtime {elapsed:.1f}s")
    _report(1, "exponential-cutoff grid (24 entries + infinite-cutoff row)",
            failures)


def test_criterion_2_table2():
    failures: list[str] = []
    start = time.perf_counter()
    for (w0, wd), (kd_norm, kd1_norm) in goldens.EXACT_TABLE2.items():
        norm = math.pi / (0.5 * w0)
        kd = thermo.k_drude_closed(w0, wd, 1.0)
        kd1 = thermo.k_extended_drude1(w0, wd, 1.0, tol=1e-9)
        _check(failures, abs(kd * norm - kd_norm) < 5e-8,
               f"Drude golden ({w0},{wd})")
        _check(failures, abs(kd1 * norm - kd1_norm) < 5e-8,
               f"(d,1) golden ({w0},{wd})")
        # three independent routes to the Drude deficit
        kl = thermo.k_drude_lambda(w0, wd, 1.0, tol=1e-10)
        kq = thermo.k_cont(Drude(1.0, wd), 1.0, w0, tol=1e-9)
        _check(failures, abs(kd - kl) < 1e-6, f"lambda route ({w0},{wd})")
        _check(failures, abs(kd - kq) < 1e-6, f"quadrature route ({w0},{wd})")
    for w0, wd, col in goldens.PRINTED_TABLE2_CONSISTENT:
        got = (thermo.k_drude_closed(w0, wd, 1.0) if col == 0
               else thermo.k_extended_drude1(w0, wd, 1.0)) * math.pi / (0.5 * w0)
        dev = abs(got - goldens.PRINTED_TABLE2[(w0, wd)][col])
        _check(failures, dev < 1e-4,
               f"consistent printed entry ({w0},{wd},{col}) off by {dev:.2e}")
    elapsed = time.perf_counter() - start
    _check(failures, elapsed < 60.0, f"runtime {elapsed:.1f}s")
    _report(2, "Drude-family grid (2 x 16 entries, three-way consistency)",
            failures)


def test_criterion_3_fig1():
    failures: list[str] = []
    k = {r: [thermo.k_extended_drude2_closed(1.0, r, x) for x in FIG1_X]
         for r in FIG1_RATIOS}
    e_g = {r: [0.5 * math.sqrt(r * x + 1.0) for x in FIG1_X]
           for r in FIG1_RATIOS}
    for r in FIG1_RATIOS:
        _check(failures, all(v < 0.0 for v in k[r]), f"negativity at ratio {r}")
    for i, x in enumerate(FIG1_X):
        _check(failures, k[2.0][i] > k[5.0][i] > k[10.0][i],
               f"deficit ordering at x={x}")
        # the normalized curves keep the same order up to x = 1.4 and then
        # cross; the strict top-to-bottom statement holds for the raw deficit
        if x <= 1.4:
            vals = [k[r][i] / e_g[r][i] for r in FIG1_RATIOS]
            _check(failures, vals[0] > vals[1] > vals[2],
                   f"normalized ordering at x={x}")
    for r in FIG1_RATIOS:
        for i in range(0, len(FIG1_X), 5):
            omega_0, omega_d, gamma_o = _xdrude2_physical(1.0, r, FIG1_X[i])
            kq = thermo.k_cont(ExtendedDrude(gamma_o, omega_d, 2), 1.0,
                               omega_0, tol=1e-9)
            _check(failures, abs(kq - k[r][i]) < 1e-6,
                   f"closed vs quadrature at (x={FIG1_X[i]}, ratio={r})")
    _report(3, "weakly divergent family: negative deficit, curve ordering,"
               " closed form vs quadrature", failures)


def test_criterion_4_drude_limit():
    failures: list[str] = []
    lc = thermo.limit_checks()
    resid = [d["residual"] for d in lc["drude"]]
    _check(failures, resid[0] > resid[1] > resid[2],
           f"residuals not decreasing: {resid}")
    last = lc["drude"][-1]
    rel = abs(last["K"] - last["expansion"]) / last["expansion"]
    _check(failures, rel < 0.01, f"expansion mismatch {rel:.2e} at wd=1e4")
    _report(4, "Drude large-cutoff limit and first-order expansion", failures)


def test_criterion_5_random_bath_suite():
    failures: list[str] = []
    start = time.perf_counter()
    rng = np.random.default_rng(20260823)
    bad = 0
    for _ in range(200):
        bath = discrete.random_bath(rng)
        if bath.n > 12:
            bad += 1
            continue
        if discrete.invariant_violations(bath):
            bad += 1
    _check(failures, bad == 0, f"{bad}/200 baths violate an invariant")
    elapsed = time.perf_counter() - start
    _check(failures, elapsed < 60.0, f"runtime {elapsed:.1f}s")
    _report(5, "200 seeded random baths satisfy every exact invariant",
            failures)


def test_criterion_6_worked_example():
    failures: list[str] = []
    bath = discrete.DiscreteBath(1.0, 1.0, ((1.0, 2.0, 1.0),))
    modes = discrete.normal_modes(bath)
    _check(failures, abs(modes.frequencies[0] - 0.9616733) < 1e-6, "mode 1")
    _check(failures, abs(modes.frequencies[1] - 2.0797077) < 1e-6, "mode 2")
    f0 = discrete.free_energy_0(bath, modes)
    es = discrete.system_energy_0(bath, modes)
    rep = discrete.k_second_law(bath, modes)
    _check(failures, abs(f0 - 0.5206905) < 1e-6, f"F(0) = {f0}")
    _check(failures, abs(es - 0.5137469) < 1e-6, f"E_s(0) = {es}")
    _check(failures, abs(rep.K - 0.0069436) < 1e-6, f"K = {rep.K}")
    _report(6, "single-oscillator worked example to 1e-6", failures)


def test_criterion_7_ohmic():
    failures: list[str] = []
    k = thermo.k_cont(Ohmic(1.0), 1.0, 1.0)
    _check(failures, k == 0.0, f"K = {k}")
    es = thermo.system_energy_0_cont(Ohmic(1.0), 1.0, 1.0)
    f0 = thermo.free_energy_0_cont(Ohmic(1.0), 1.0, 1.0)
    for name, v in (("E_s", es), ("F", f0)):
        ok = isinstance(v, DivergenceClass) and v.tag is DivergenceTag.LOG_DIVERGENT
        _check(failures, ok, f"{name} classified as {v}")
    _report(7, "Ohmic deficit vanishes identically; energies log-divergent",
            failures)


def test_criterion_8_classification():
    failures: list[str] = []
    for model in (ExtendedOhmic(1.0, 1), ExtendedOhmic(1.0, 3),
                  ExtendedDrude(1.0, 1.0, 3), ExtendedDrude(1.0, 1.0, 5)):
        status = classify_model(model)
        _check(failures, status.tag is StatusTag.INVALID_KERNEL,
               f"{model} not rejected")
        try:
            thermo.thermo_report(model, 1.0, 1.0)
            _check(failures, False, f"{model} report did not raise")
        except InvalidModel:
            pass
    for model in (ExtendedOhmic(1.0, 2), ExtendedDrude(1.0, 1.0, 4)):
        k = thermo.k_cont(model, 1.0, 1.0)
        ok = isinstance(k, DivergenceClass) and str(k) == "LogDivergent(-)"
        _check(failures, ok, f"{model} deficit classified as {k}")
    _report(8, "invalid kernels rejected; divergent deficits signed", failures)


def test_criterion_9_special_functions():
    failures: list[str] = []
    xs = np.logspace(math.log10(1e-3), math.log10(700.0), 80)
    worst = 0.0
    for x in xs:
        ref_e1 = float(mp.exp(x) * mp.e1(x))
        ref_ei = float(mp.exp(-x) * mp.ei(x))
        worst = max(worst,
                    abs(specfun.exp_e1(x) / ref_e1 - 1.0),
                    abs(specfun.exp_neg_ei(x) / ref_ei - 1.0))
    _check(failures, worst < 1e-10, f"worst relative error {worst:.2e}")
    # the scaled forms keep the exponential-cutoff integrand finite at
    # lam = 500, where the unscaled E1/Ei would overflow
    lam = 500.0
    e1s, eis, edn = specfun.exp_e1(lam), specfun.exp_neg_ei(lam), math.exp(-lam)
    f1 = lam * lam * complex(e1s - eis, math.pi * edn)
    f2 = complex(lam * lam - 1.0 - lam / math.pi * (e1s + eis), lam * edn)
    val = (f1 / f2).imag
    _check(failures, math.isfinite(val), "integrand not finite at lam=500")
    _report(9, "scaled exponential integrals vs slow oracle; integrand"
               " finite at lam=500", failures)
