"""Zero-temperature thermodynamics for continuous baths.

Generic quadrature paths give the excess energy E_s(0), the coupling free
energy F(0), and the second-law deficit K for any valid damping family;
specialized closed forms and one-dimensional integrands cover the Drude,
exponential-cutoff, and extended-Drude models, providing the independent
cross-checks the tables demand.

Closed Drude-family forms are written in regime-free real arithmetic
(asin/asinh pairs sharing a boundary series), so a single expression serves
both the underdamped (w0 > gamma/2) and overdamped regimes and is continuous
across the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import specfun
from .quadrature import (
    DivergenceClass,
    DivergenceTag,
    classify_tail,
    integrate_semi_infinite,
)
from .spectral import (
    Drude,
    Exponential,
    ExtendedDrude,
    ExtendedOhmic,
    InvalidModel,
    ModelStatus,
    Ohmic,
    SpectralModel,
    StatusTag,
    classify_model,
    g_plus,
    g_plus_derivative,
    gamma_plus,
    gamma_plus_derivative,
)

__all__ = [
    "ThermoReport",
    "DrudeParams",
    "EnergyOrDivergent",
    "drude_params_from_physical",
    "drude_params_to_physical",
    "system_energy_0_cont",
    "free_energy_0_cont",
    "k_cont",
    "es_drude_closed",
    "f_drude_closed",
    "k_drude_closed",
    "k_drude_lambda",
    "k_exponential",
    "k_extended_drude1",
    "k_extended_drude2_closed",
    "limit_checks",
    "thermo_report",
]

EnergyOrDivergent = Union[float, DivergenceClass]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ThermoReport:
    E_s0: EnergyOrDivergent
    F0: EnergyOrDivergent
    K: EnergyOrDivergent
    method: str
    error_estimate: float
    model_status: ModelStatus
    K_normalized: float | None = None  # K / (hbar omega_0 / 2)


@dataclass(frozen=True)
class DrudeParams:
    """The (w0, Omega, gamma) parametrization of a Drude-family cubic.

    ``w1`` is sqrt(|w0^2 - (gamma/2)^2|): the resonance frequency when
    underdamped, the real splitting when overdamped.
    """

    w0: float
    Omega: float
    gamma: float
    regime: str  # "underdamped" | "overdamped"
    w1: float


def _cubic_positive_roots(b: float, c: float, d: float) -> np.ndarray:
    # roots of s^3 + b s^2 + c s + d
    return np.roots([1.0, b, c, d])


def drude_params_from_physical(
    omega_0: float, omega_d: float, gamma_o: float, variant: str = "drude"
) -> DrudeParams:
    """Invert the (omega_0, omega_d, gamma_o) -> (w0, Omega, gamma) map.

    The three parameters are the negated imaginary parts of the
    susceptibility poles, i.e. the roots of a real cubic; Omega is the root
    that continues from omega_d at vanishing coupling.
    """
    if omega_0 <= 0 or omega_d <= 0 or gamma_o <= 0:
        raise ValueError("omega_0, omega_d, gamma_o must be positive")
    if variant == "drude":
        coeffs = [1.0, -omega_d, omega_0 ** 2 + gamma_o * omega_d, -omega_0 ** 2 * omega_d]
    elif variant == "xdrude2":
        coeffs = [1.0, -(omega_d + gamma_o), omega_0 ** 2, -omega_0 ** 2 * omega_d]
    else:
        raise ValueError(f"unknown variant {variant!r}")
    roots = np.roots(coeffs)
    real_mask = np.abs(roots.imag) < 1e-9 * np.abs(roots.real)
    real_roots = np.sort(roots[real_mask].real)
    if real_roots.size == 0:
        raise ArithmeticError("no real root of the pole cubic; cannot happen for positive parameters")
    if real_roots.size == 1 or roots[~real_mask].size == 2:
        # one real root: the complex pair is (z1, z2)
        Omega = float(real_roots[-1])
        z = roots[~real_mask][0]
        gamma = float(2.0 * z.real)
        w0sq = float(abs(z) ** 2)
    else:
        # fully overdamped: all roots real; Omega continues from omega_d
        idx = int(np.argmin(np.abs(real_roots - omega_d)))
        Omega = float(real_roots[idx])
        others = np.delete(real_roots, idx)
        gamma = float(others.sum())
        w0sq = float(others.prod())
    w0 = math.sqrt(w0sq)
    disc = w0sq - 0.25 * gamma * gamma
    regime = "underdamped" if disc > 0.0 else "overdamped"
    return DrudeParams(w0, Omega, gamma, regime, math.sqrt(abs(disc)))


def drude_params_to_physical(
    params: DrudeParams, variant: str = "drude"
) -> tuple[float, float, float]:
    """Forward map (w0, Omega, gamma) -> (omega_0, omega_d, gamma_o)."""
    w0, Om, g = params.w0, params.Omega, params.gamma
    if variant == "drude":
        omega_d = Om + g
        omega_0 = w0 * math.sqrt(Om / (Om + g))
        gamma_o = g * (Om * (Om + g) + w0 * w0) / (Om + g) ** 2
        return omega_0, omega_d, gamma_o
    if variant == "xdrude2":
        omega_0 = math.sqrt(Om * g + w0 * w0)
        omega_d = Om * w0 * w0 / (Om * g + w0 * w0)
        gamma_o = Om + g - omega_d
        return omega_0, omega_d, gamma_o
    raise ValueError(f"unknown variant {variant!r}")


# ---------------------------------------------------------------------------
# Drude closed forms, written to be regime-free


def _acos_ratio(w0: float, gamma: float) -> float:
    """arccos(gamma/2 w0) / w1 with w1^2 = w0^2 - (gamma/2)^2.

    Even in w1 and analytic through the critical damping point: equals
    asin(x)/(w0 x) with x = w1/w0 underdamped and asinh(x)/(w0 x) with
    x = wb1/w0 overdamped, with a shared series at the boundary.
    """
    disc = w0 * w0 - 0.25 * gamma * gamma
    u = disc / (w0 * w0)
    if abs(u) < 1e-8:
        # asin(x)/x = 1 + x^2/6 + 3 x^4/40 + ... with x^2 = u
        return (1.0 + u / 6.0 + 3.0 * u * u / 40.0) / w0
    if disc > 0.0:
        x = math.sqrt(u)
        return math.asin(x) / (w0 * x)
    x = math.sqrt(-u)
    return math.asinh(x) / (w0 * x)


def _drude_im_chi_integrals(params: DrudeParams) -> tuple[float, float]:
    """M * int Im chi dw and M * int w^2 Im chi dw for the Drude model."""
    w0, Om, g = params.w0, params.Omega, params.gamma
    t = _acos_ratio(w0, g)
    lg = math.log(Om / w0)
    den = w0 * w0 - Om * g + Om * Om
    i0 = ((w0 * w0 + Om * Om - 0.5 * g * g) * t - g * lg) / den
    i2 = ((w0 ** 4 + w0 ** 2 * Om ** 2 - 0.5 * Om ** 2 * g ** 2) * t
          + Om ** 2 * g * lg) / den
    return i0, i2


def es_drude_closed(
    omega_0: float, omega_d: float, gamma_o: float, hbar: float = 1.0
) -> float:
    """Exact Drude excess-bearing system energy E_s(0)."""
    params = drude_params_from_physical(omega_0, omega_d, gamma_o)
    i0, i2 = _drude_im_chi_integrals(params)
    return hbar / (2.0 * math.pi) * (omega_0 ** 2 * i0 + i2)


def f_drude_closed(
    omega_0: float, omega_d: float, gamma_o: float, hbar: float = 1.0
) -> float:
    """Exact Drude coupling free energy F(0)."""
    params = drude_params_from_physical(omega_0, omega_d, gamma_o)
    return _f_drude_params(params, hbar)


def _f_drude_params(params: DrudeParams, hbar: float = 1.0) -> float:
    w0, Om, g = params.w0, params.Omega, params.gamma
    w1sq = w0 * w0 - 0.25 * g * g
    val = ((Om + g) * math.log((Om + g) / Om)
           + g * math.log(Om / w0)
           + 2.0 * w1sq * _acos_ratio(w0, g))
    return hbar / (2.0 * math.pi) * val


def k_drude_closed(
    omega_0: float, omega_d: float, gamma_o: float, hbar: float = 1.0
) -> float:
    """Second-law deficit for the Drude model, fully closed form."""
    return (f_drude_closed(omega_0, omega_d, gamma_o, hbar)
            - es_drude_closed(omega_0, omega_d, gamma_o, hbar))


def k_drude_lambda(
    omega_0: float, omega_d: float, gamma_o: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> float:
    """Drude second-law deficit as a single dimensionless integral."""
    l0 = omega_0 / gamma_o
    ld = omega_d / gamma_o

    def integrand(lam: float) -> float:
        lam2 = lam * lam
        num = 2.0 * ld * ld * lam2 * lam2 * lam - (2.0 * l0 * l0 + ld) * ld * ld * lam2 * lam
        a = (lam2 + ld * ld) * (lam2 - l0 * l0) - ld * lam2
        b = ld * ld * lam
        return num / (a * a + b * b)

    res = integrate_semi_infinite(integrand, tol=tol, split_points=[l0, ld, l0 + ld])
    return hbar * gamma_o / (2.0 * math.pi) * res.value


# ---------------------------------------------------------------------------
# Exponential-cutoff and extended-Drude one-dimensional integrands


def k_exponential(
    omega_0: float, omega_e: float, gamma_o: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> float:
    """Second-law deficit for the exponentially cut-off model.

    Dimensionless variable lam = w/omega_e; the scaled exponential integrals
    keep the integrand finite at arbitrarily large lam.
    """
    we2 = omega_e * omega_e

    def integrand(lam: float) -> float:
        e1s = specfun.exp_e1(lam)
        eis = specfun.exp_neg_ei(lam)
        edn = math.exp(-lam)
        f1 = lam * lam * complex(e1s - eis, math.pi * edn)
        f2 = complex(
            we2 * lam * lam - omega_0 ** 2
            - gamma_o * omega_e / math.pi * lam * (e1s + eis),
            omega_e * gamma_o * lam * edn,
        )
        return (f1 / f2).imag

    res = integrate_semi_infinite(
        integrand, tol=tol, split_points=[omega_0 / omega_e, 1.0, omega_0 / omega_e + 1.0]
    )
    return hbar * gamma_o * we2 / (2.0 * math.pi ** 2) * res.value


def k_extended_drude1(
    omega_0: float, omega_d: float, gamma_o: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> float:
    """Second-law deficit for the extended Drude model with one extra power."""
    l0 = omega_0 / gamma_o
    ld = omega_d / gamma_o

    def integrand(lam: float) -> float:
        lam2 = lam * lam
        ld2 = ld * ld
        lg = math.log(lam / ld)
        g1 = lam2 * complex(
            2.0 * ld / math.pi * ((ld2 - lam2) * lg + lam2 + ld2),
            ld * (lam2 - ld2),
        )
        g2 = (lam2 + ld2) * complex(
            (lam2 - l0 * l0) * (lam2 + ld2) - 2.0 * ld * lam2 / math.pi * lg,
            ld * lam2,
        )
        return (g1 / g2).imag

    res = integrate_semi_infinite(integrand, tol=tol, split_points=[l0, ld, l0 + ld])
    return hbar * gamma_o / (2.0 * math.pi) * res.value


def k_extended_drude2_closed(
    w0: float, Omega: float, gamma: float, hbar: float = 1.0
) -> float:
    """Closed-form second-law deficit for the weakly divergent (d,2) model.

    Stated directly in the (w0, Omega, gamma) parametrization; negative over
    the physical parameter ranges.
    """
    if w0 <= 0 or Omega <= 0 or gamma < 0:
        raise ValueError("w0, Omega must be positive and gamma nonnegative")
    if gamma == 0.0:
        return 0.0
    delta = Omega * gamma - Omega * Omega - w0 * w0
    scale = max(w0 * w0, Omega * Omega, Omega * gamma)
    if abs(delta) < 1e-7 * scale:
        # Removable singularity: C below vanishes together with delta, so
        # evaluate C/delta as (1/Omega) dC/dgamma at the interval midpoint.
        gm = gamma - 0.5 * delta / Omega
        at = specfun.arctan_ratio(w0, gm)
        w1sq = w0 * w0 - 0.25 * gm * gm
        if abs(w1sq) < 1e-10 * gm * gm:
            dat = -2.0 / (3.0 * gm * gm) + 8.0 * w1sq / (5.0 * gm ** 4)
        else:
            dat = (gm * at - 2.0) / (4.0 * w1sq)
        om0sq = Omega * gm + w0 * w0
        dC = ((w0 * w0 - Omega * Omega) * (at + gm * dat)
              - Omega * math.log(om0sq)
              + (Omega * Omega + w0 * w0 - Omega * gm) * Omega / om0sq
              + 2.0 * Omega * math.log(Omega))
        pref = w0 * w0 / (Omega * gamma + w0 * w0)
        return hbar / (2.0 * math.pi) * pref * dC
    at = specfun.arctan_ratio(w0, gamma)  # (1/w1) arctan(2 w1/gamma), both regimes
    C = (gamma * (w0 * w0 - Omega * Omega) * at
         + (Omega * Omega + w0 * w0 - Omega * gamma) * math.log(Omega * gamma + w0 * w0)
         - 2.0 * (Omega * Omega + w0 * w0) * math.log(w0)
         + 2.0 * Omega * gamma * math.log(Omega))
    pref = Omega * w0 * w0 / ((Omega * gamma + w0 * w0) * delta)
    return hbar / (2.0 * math.pi) * pref * C


# ---------------------------------------------------------------------------
# Generic quadrature paths (fluctuation-dissipation / log-derivative / Eq-31)


def _split_points(model: SpectralModel, omega_0: float) -> list[float]:
    splits = [omega_0, 2.0 * omega_0]
    if isinstance(model, (Drude, ExtendedDrude)):
        splits.append(model.omega_d)
    elif isinstance(model, Exponential):
        splits.append(model.omega_e)
    return splits


def _check_valid(model: SpectralModel) -> ModelStatus:
    status = classify_model(model)
    if status.tag is StatusTag.INVALID_KERNEL:
        raise InvalidModel(str(status))
    return status


def system_energy_0_cont(
    model: SpectralModel, M: float, omega_0: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> EnergyOrDivergent:
    """E_s(0) by the fluctuation-dissipation integral over Im of the
    susceptibility; divergent families return their divergence class."""
    _check_valid(model)

    def integrand(w: float) -> float:
        gp = g_plus(model, M, omega_0, w)
        return (omega_0 ** 2 + w * w) * gp.imag / abs(gp) ** 2

    tail = classify_tail(integrand, window=(30.0 * _scale(model, omega_0), 1e8))
    if tail.tag is not DivergenceTag.CONVERGENT:
        return tail
    res = integrate_semi_infinite(integrand, tol=tol, split_points=_split_points(model, omega_0))
    return hbar / (2.0 * math.pi) * res.value


def free_energy_0_cont(
    model: SpectralModel, M: float, omega_0: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> EnergyOrDivergent:
    """F(0) by the logarithmic-derivative integrand w * Im(-G'/G)."""
    _check_valid(model)

    def integrand(w: float) -> float:
        gp = g_plus(model, M, omega_0, w)
        dgp = g_plus_derivative(model, M, omega_0, w)
        return w * (-(dgp / gp)).imag

    tail = classify_tail(integrand, window=(30.0 * _scale(model, omega_0), 1e8))
    if tail.tag is not DivergenceTag.CONVERGENT:
        return tail
    res = integrate_semi_infinite(integrand, tol=tol, split_points=_split_points(model, omega_0))
    return hbar / (2.0 * math.pi) * res.value


def _scale(model: SpectralModel, omega_0: float) -> float:
    s = omega_0
    if isinstance(model, (Drude, ExtendedDrude)):
        s = max(s, model.omega_d)
    elif isinstance(model, Exponential):
        s = max(s, model.omega_e)
    return s


def _k_divergent_integrand(model: SpectralModel, M: float, omega_0: float):
    """Finite part of the Eq-31-style integrand for the delta(0)-carrying
    families; the symbolic delta weight is dropped, which only strengthens
    the (negative, logarithmic) divergence it accompanies."""
    g = model.gamma_o
    if isinstance(model, ExtendedOhmic) and model.p == 2:
        beta = omega_0 ** 2 * g

        def integrand(w: float) -> float:
            num = 2.0 * w * w * complex(-w, 0.0)
            den = complex(w ** 3, -g * w * w + beta)
            return (num / den).imag

        return integrand
    if isinstance(model, ExtendedDrude) and model.n >= 4 and model.n % 2 == 0:
        wd = model.omega_d

        def integrand(w: float) -> float:
            # finite part of gamma_plus and its derivative for (d,4)
            gd = g * wd / complex(wd, -w)
            dgd = 1j * g * wd / complex(wd, -w) ** 2
            gp_val = gd - g + g * w * w / wd ** 2
            dgp_val = dgd + 2.0 * g * w / wd ** 2
            G = complex(w * w - omega_0 ** 2, 0.0) + 1j * w * gp_val
            return (w * w * (-1j) * dgp_val / G).imag

        return integrand
    raise ValueError("no divergent-K integrand for this model")


def _divergent_energy_classes(
    model: SpectralModel, M: float, omega_0: float
) -> tuple[DivergenceClass, DivergenceClass]:
    """Divergence classes of E_s(0) and F(0) for the delta(0)-carrying
    families, from the finite part of the damping kernel."""
    g = model.gamma_o
    if isinstance(model, ExtendedOhmic) and model.p == 2:

        def kernel(w: float) -> tuple[complex, complex]:
            return complex(w * w / g, 0.0), complex(2.0 * w / g, 0.0)

    elif isinstance(model, ExtendedDrude) and model.n >= 4 and model.n % 2 == 0:
        wd = model.omega_d

        def kernel(w: float) -> tuple[complex, complex]:
            gd = g * wd / complex(wd, -w)
            dgd = 1j * g * wd / complex(wd, -w) ** 2
            return gd - g + g * w * w / wd ** 2, dgd + 2.0 * g * w / wd ** 2

    else:
        raise ValueError("no divergent energy classes for this model")

    def es_integrand(w: float) -> float:
        gp_val, _ = kernel(w)
        G = complex(w * w - omega_0 ** 2, 0.0) + 1j * w * gp_val
        return (omega_0 ** 2 + w * w) * G.imag / abs(G) ** 2

    def f_integrand(w: float) -> float:
        gp_val, dgp_val = kernel(w)
        G = complex(w * w - omega_0 ** 2, 0.0) + 1j * w * gp_val
        dG = 2.0 * w + 1j * gp_val + 1j * w * dgp_val
        return w * (-(dG / G)).imag

    window = (30.0 * _scale(model, omega_0), 1e8)
    return classify_tail(es_integrand, window=window), classify_tail(
        f_integrand, window=window
    )


def k_cont(
    model: SpectralModel, M: float, omega_0: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> EnergyOrDivergent:
    """Second-law deficit by the generic frequency integral.

    Ohmic returns exactly zero (the integrand vanishes pointwise); the
    delta-weight families return a negative logarithmic divergence class.
    """
    status = _check_valid(model)
    if isinstance(model, Ohmic) or (isinstance(model, ExtendedOhmic) and model.p == 0):
        return 0.0
    if status.tag is StatusTag.VALID_BUT_K_DIVERGENT:
        integrand = _k_divergent_integrand(model, M, omega_0)
        tail = classify_tail(integrand, window=(30.0 * _scale(model, omega_0), 1e8))
        return tail

    def integrand(w: float) -> float:
        rp = -1j * gamma_plus_derivative(model, M, w)
        gp = g_plus(model, M, omega_0, w)
        return (w * w * rp / gp).imag

    res = integrate_semi_infinite(integrand, tol=tol, split_points=_split_points(model, omega_0))
    return hbar / (2.0 * math.pi) * res.value


def thermo_report(
    model: SpectralModel, M: float, omega_0: float,
    hbar: float = 1.0, tol: float = DEFAULT_TOL,
) -> ThermoReport:
    """Full report: E_s(0), F(0), K, with the best available method per model."""
    status = _check_valid(model)
    err = 0.0
    if status.tag is StatusTag.VALID_BUT_K_DIVERGENT:
        es, f0 = _divergent_energy_classes(model, M, omega_0)
        k = k_cont(model, M, omega_0, hbar, tol)
        return ThermoReport(
            E_s0=es, F0=f0, K=k, method="divergence-classification",
            error_estimate=0.0, model_status=status, K_normalized=None,
        )
    if isinstance(model, Drude) or (isinstance(model, ExtendedDrude) and model.n == 0):
        es = es_drude_closed(omega_0, model.omega_d, model.gamma_o, hbar)
        f0 = f_drude_closed(omega_0, model.omega_d, model.gamma_o, hbar)
        k = f0 - es
        method = "closed-form"
    elif isinstance(model, Exponential):
        es = system_energy_0_cont(model, M, omega_0, hbar, tol)
        f0 = free_energy_0_cont(model, M, omega_0, hbar, tol)
        k = k_exponential(omega_0, model.omega_e, model.gamma_o, hbar, tol)
        method = "special-integrand"
        err = tol
    elif isinstance(model, ExtendedDrude) and model.n == 1:
        es = system_energy_0_cont(model, M, omega_0, hbar, tol)
        f0 = free_energy_0_cont(model, M, omega_0, hbar, tol)
        k = k_extended_drude1(omega_0, model.omega_d, model.gamma_o, hbar, tol)
        method = "special-integrand"
        err = tol
    else:
        es = system_energy_0_cont(model, M, omega_0, hbar, tol)
        f0 = free_energy_0_cont(model, M, omega_0, hbar, tol)
        k = k_cont(model, M, omega_0, hbar, tol)
        method = "generic-quadrature"
        err = tol
    k_norm = k / (0.5 * hbar * omega_0) if isinstance(k, float) else None
    return ThermoReport(
        E_s0=es, F0=f0, K=k, method=method,
        error_estimate=err, model_status=status, K_normalized=k_norm,
    )


def limit_checks(hbar: float = 1.0, tol: float = DEFAULT_TOL) -> dict:
    """Large-cutoff behaviour of the Drude and exponential deficits.

    Returns the Drude residuals against the asymptotic value (gamma/pi w0) E_g
    for omega_d in {1e2, 1e3, 1e4}, and the exponential-model column at
    gamma_o = 1 with its limit hbar gamma_o/(2 pi).
    """
    gamma, w0 = 1.0, 1.0
    drude = []
    for target_wd in (1e2, 1e3, 1e4):
        Om = target_wd - gamma
        params = DrudeParams(w0, Om, gamma, "underdamped", math.sqrt(w0 ** 2 - 0.25 * gamma ** 2))
        omega_0, omega_d, gamma_o = drude_params_to_physical(params)
        k = k_drude_closed(omega_0, omega_d, gamma_o, hbar)
        e_g = 0.5 * hbar * w0 * math.sqrt(Om / (Om + gamma))
        limit = gamma / (math.pi * w0) * e_g
        expansion = hbar * gamma / (2.0 * math.pi) * (1.0 - 0.5 * gamma / Om)
        drude.append({
            "omega_d": omega_d, "K": k, "limit": limit,
            "residual": abs(k - limit), "expansion": expansion,
        })
    exp_col = []
    for we in (0.5, 1.0, 5.0, 10.0, 50.0, 80.0):
        exp_col.append({"omega_e": we, "K": k_exponential(1.0, we, 1.0, hbar, tol)})
    exp_limit = hbar * 1.0 / (2.0 * math.pi)
    return {"drude": drude, "exponential": exp_col, "exponential_limit": exp_limit}
