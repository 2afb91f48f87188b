"""Continuous damping families: spectral densities J(w), time-domain kernels,
frequency-domain boundary values gamma_plus(w), and validity classification.

Five families are supported: strict Ohmic, Drude (Lorentzian cutoff),
exponential cutoff, extended Ohmic with an extra power p, and extended Drude
with an extra power n. Odd powers (p odd; n odd with n >= 3) have
distributional kernels with no usable frequency-domain transform and are
rejected; p = 2 and even n >= 4 are well defined but carry a log-divergent
second-law deficit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

from . import specfun
from .quadrature import principal_value_integral

__all__ = [
    "Ohmic",
    "Drude",
    "Exponential",
    "ExtendedOhmic",
    "ExtendedDrude",
    "SpectralModel",
    "ModelStatus",
    "StatusTag",
    "InvalidModel",
    "UnsupportedKernel",
    "classify_model",
    "j_omega",
    "gamma_t",
    "gamma_plus",
    "gamma_plus_generic",
    "gamma_plus_derivative",
    "g_plus",
    "g_plus_derivative",
    "parse_model",
]


class InvalidModel(ValueError):
    """Requested an operation on a model with a distributional (unusable) kernel."""


class UnsupportedKernel(ValueError):
    """The requested quantity has no finite representation for this model."""


def _require_positive(name: str, value: float) -> float:
    v = float(value)
    if not v > 0.0 or not math.isfinite(v):
        raise ValueError(f"{name} must be a positive finite number, got {value}")
    return v


@dataclass(frozen=True)
class Ohmic:
    gamma_o: float

    def __post_init__(self):
        _require_positive("gamma_o", self.gamma_o)


@dataclass(frozen=True)
class Drude:
    gamma_o: float
    omega_d: float

    def __post_init__(self):
        _require_positive("gamma_o", self.gamma_o)
        _require_positive("omega_d", self.omega_d)


@dataclass(frozen=True)
class Exponential:
    gamma_o: float
    omega_e: float

    def __post_init__(self):
        _require_positive("gamma_o", self.gamma_o)
        _require_positive("omega_e", self.omega_e)


@dataclass(frozen=True)
class ExtendedOhmic:
    gamma_o: float
    p: int

    def __post_init__(self):
        _require_positive("gamma_o", self.gamma_o)
        if self.p < 0 or self.p != int(self.p):
            raise ValueError(f"p must be a nonnegative integer, got {self.p}")


@dataclass(frozen=True)
class ExtendedDrude:
    gamma_o: float
    omega_d: float
    n: int

    def __post_init__(self):
        _require_positive("gamma_o", self.gamma_o)
        _require_positive("omega_d", self.omega_d)
        if self.n < 0 or self.n != int(self.n):
            raise ValueError(f"n must be a nonnegative integer, got {self.n}")


SpectralModel = Union[Ohmic, Drude, Exponential, ExtendedOhmic, ExtendedDrude]


class StatusTag(enum.Enum):
    VALID = "Valid"
    INVALID_KERNEL = "InvalidKernel"
    VALID_BUT_K_DIVERGENT = "ValidButKDivergent"


@dataclass(frozen=True)
class ModelStatus:
    tag: StatusTag
    reason: str = ""
    sign: str = ""

    def __str__(self) -> str:
        if self.tag is StatusTag.INVALID_KERNEL:
            return f"InvalidKernel: {self.reason}"
        if self.tag is StatusTag.VALID_BUT_K_DIVERGENT:
            return f"ValidButKDivergent({self.sign})"
        return "Valid"


def classify_model(model: SpectralModel) -> ModelStatus:
    """Physical validity of the damping family.

    Odd extra powers produce a non-transformable P(1/t^2)-type kernel; even
    extra powers beyond the weakly-divergent cases give log-divergent K with
    negative sign.
    """
    if isinstance(model, ExtendedOhmic):
        if model.p == 0:
            return ModelStatus(StatusTag.VALID)
        if model.p % 2 == 1:
            return ModelStatus(
                StatusTag.INVALID_KERNEL,
                reason=f"extended Ohmic p={model.p}: kernel is a P(1/t^2)-type "
                       "distribution with no frequency-domain transform",
            )
        return ModelStatus(StatusTag.VALID_BUT_K_DIVERGENT, sign="-")
    if isinstance(model, ExtendedDrude):
        n = model.n
        if n in (0, 1, 2):
            return ModelStatus(StatusTag.VALID)
        if n % 2 == 1:
            return ModelStatus(
                StatusTag.INVALID_KERNEL,
                reason=f"extended Drude n={n}: kernel contains a P(1/t^2) part",
            )
        return ModelStatus(StatusTag.VALID_BUT_K_DIVERGENT, sign="-")
    return ModelStatus(StatusTag.VALID)


def _reject_invalid(model: SpectralModel) -> None:
    status = classify_model(model)
    if status.tag is StatusTag.INVALID_KERNEL:
        raise InvalidModel(str(status))


def j_omega(model: SpectralModel, M: float, omega: float) -> float:
    """Spectral density J(w) for w > 0."""
    _reject_invalid(model)
    w = _require_positive("omega", omega)
    g = model.gamma_o
    if isinstance(model, Ohmic):
        return M * g * w
    if isinstance(model, Drude):
        wd = model.omega_d
        return M * g * w * wd * wd / (w * w + wd * wd)
    if isinstance(model, Exponential):
        return M * g * w * math.exp(-w / model.omega_e)
    if isinstance(model, ExtendedOhmic):
        return M * g * w * (w / g) ** model.p
    wd = model.omega_d
    return M * g * w ** (model.n + 1) / (wd ** (model.n - 2) * (w * w + wd * wd))


def gamma_t(model: SpectralModel, t: float) -> float:
    """Time-domain damping kernel for models whose kernel is an ordinary function."""
    _require_positive("t", t)
    _reject_invalid(model)
    g = model.gamma_o
    if isinstance(model, Drude) or (isinstance(model, ExtendedDrude) and model.n == 0):
        return g * model.omega_d * math.exp(-model.omega_d * t)
    if isinstance(model, Exponential):
        we = model.omega_e
        return (2.0 / math.pi) * g * we / (1.0 + (we * t) ** 2)
    if isinstance(model, ExtendedDrude) and model.n == 1:
        x = model.omega_d * t
        return (g * model.omega_d / math.pi) * (specfun.exp_e1(x) - specfun.exp_neg_ei(x))
    raise UnsupportedKernel(
        f"{type(model).__name__}: time-domain kernel is distributional or unknown"
    )


def gamma_plus(model: SpectralModel, M: float, omega: float) -> complex:
    """Boundary value of the frequency-domain damping kernel, closed forms.

    The real (dissipative) part equals J(w)/(M w) identically; the imaginary
    (reactive) part is the principal-value transform of J.
    """
    _reject_invalid(model)
    w = _require_positive("omega", omega)
    g = model.gamma_o
    if isinstance(model, Ohmic):
        return complex(g, 0.0)
    if isinstance(model, Drude) or (isinstance(model, ExtendedDrude) and model.n == 0):
        wd = model.omega_d
        return g * wd / complex(wd, -w)
    if isinstance(model, Exponential):
        lam = w / model.omega_e
        re = g * math.exp(-lam)
        im = (g / math.pi) * (specfun.exp_e1(lam) + specfun.exp_neg_ei(lam))
        return complex(re, im)
    if isinstance(model, ExtendedDrude) and model.n == 1:
        wd = model.omega_d
        base = g * wd * w / (w * w + wd * wd)
        return complex(base, (2.0 / math.pi) * base * math.log(w / wd))
    if isinstance(model, ExtendedDrude) and model.n == 2:
        wd = model.omega_d
        return complex(g, 0.0) - g * wd / complex(wd, -w)
    if isinstance(model, ExtendedOhmic) and model.p == 0:
        return complex(g, 0.0)
    raise UnsupportedKernel(
        f"{type(model).__name__}: gamma_plus carries a delta(0) weight; "
        "only divergence classification is defined"
    )


def gamma_plus_generic(
    model: SpectralModel, M: float, omega: float, tol: float = 1e-9
) -> complex:
    """gamma_plus through the principal-value transform of J(w') directly.

    Independent route used to cross-check the closed forms; only defined when
    the PV integral over J(w')/w' converges.
    """
    _reject_invalid(model)
    w = _require_positive("omega", omega)
    re = j_omega(model, M, w) / (M * w)

    def integrand(wp: float) -> float:
        jw = j_omega(model, M, wp)
        return (jw / wp) * (1.0 / (wp + w) - 1.0 / (wp - w)) / math.pi

    splits = [w / 2, 2 * w]
    if isinstance(model, (Drude, ExtendedDrude)):
        splits.append(model.omega_d)
    elif isinstance(model, Exponential):
        splits.append(model.omega_e)
    res = principal_value_integral(integrand, w, tol=tol, split_points=splits)
    return complex(re, res.value / M)


def gamma_plus_derivative(model: SpectralModel, M: float, omega: float) -> complex:
    """d gamma_plus / d omega, analytic for the closed-form families."""
    _reject_invalid(model)
    w = _require_positive("omega", omega)
    g = model.gamma_o
    if isinstance(model, Ohmic) or (isinstance(model, ExtendedOhmic) and model.p == 0):
        return 0.0 + 0.0j
    if isinstance(model, Drude) or (isinstance(model, ExtendedDrude) and model.n == 0):
        wd = model.omega_d
        return 1j * g * wd / complex(wd, -w) ** 2
    if isinstance(model, Exponential):
        we = model.omega_e
        lam = w / we
        d_re = -g * math.exp(-lam)
        # d/dlam of (e^x E1 + e^-x Ei) = e^x E1 - e^-x Ei
        d_im = (g / math.pi) * (specfun.exp_e1(lam) - specfun.exp_neg_ei(lam))
        return complex(d_re, d_im) / we
    if isinstance(model, ExtendedDrude) and model.n == 1:
        wd = model.omega_d
        denom = w * w + wd * wd
        u = w / denom
        du = (wd * wd - w * w) / denom ** 2
        lg = math.log(w / wd)
        return g * wd * complex(du, (2.0 / math.pi) * (du * lg + u / w))
    if isinstance(model, ExtendedDrude) and model.n == 2:
        wd = model.omega_d
        return -1j * g * wd / complex(wd, -w) ** 2
    raise UnsupportedKernel(
        f"{type(model).__name__}: no finite frequency-domain derivative"
    )


def g_plus(model: SpectralModel, M: float, omega_0: float, omega: float) -> complex:
    """G_+(w) = w^2 - w0^2 + i w gamma_plus(w); Im G_+ = J(w)/M >= 0."""
    w = _require_positive("omega", omega)
    return complex(w * w - omega_0 * omega_0, 0.0) + 1j * w * gamma_plus(model, M, w)


def g_plus_derivative(
    model: SpectralModel, M: float, omega_0: float, omega: float
) -> complex:
    """dG_+/dw = 2w + i gamma_plus + i w gamma_plus'."""
    w = _require_positive("omega", omega)
    return (
        2.0 * w
        + 1j * gamma_plus(model, M, w)
        + 1j * w * gamma_plus_derivative(model, M, w)
    )


_MODEL_KEYS = {
    "ohmic": (Ohmic, {"g": "gamma_o"}),
    "drude": (Drude, {"g": "gamma_o", "wd": "omega_d"}),
    "exp": (Exponential, {"g": "gamma_o", "we": "omega_e"}),
    "xohmic": (ExtendedOhmic, {"g": "gamma_o", "p": "p"}),
    "xdrude": (ExtendedDrude, {"g": "gamma_o", "wd": "omega_d", "n": "n"}),
}


def parse_model(text: str) -> SpectralModel:
    """Parse a model description such as ``drude g=1 wd=5``.

    Grammar: ``ohmic g=<g>``, ``drude g=<g> wd=<wd>``, ``exp g=<g> we=<we>``,
    ``xohmic g=<g> p=<p>``, ``xdrude g=<g> wd=<wd> n=<n>``.
    """
    tokens = text.split()
    if not tokens:
        raise ValueError("empty model description")
    name = tokens[0].lower()
    if name not in _MODEL_KEYS:
        raise ValueError(
            f"unknown model '{name}' at position 0; expected one of "
            f"{sorted(_MODEL_KEYS)}"
        )
    cls, keymap = _MODEL_KEYS[name]
    kwargs = {}
    for pos, tok in enumerate(tokens[1:], start=1):
        if "=" not in tok:
            raise ValueError(f"expected key=value at position {pos}, got '{tok}'")
        key, _, raw = tok.partition("=")
        if key not in keymap:
            raise ValueError(
                f"unknown parameter '{key}' for model '{name}' at position {pos}"
            )
        field = keymap[key]
        try:
            kwargs[field] = int(raw) if field in ("p", "n") else float(raw)
        except ValueError as exc:
            raise ValueError(f"bad numeric value '{raw}' at position {pos}") from exc
    missing = set(keymap.values()) - set(kwargs)
    if missing:
        raise ValueError(f"model '{name}' missing parameters: {sorted(missing)}")
    return cls(**kwargs)
