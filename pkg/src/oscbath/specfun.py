"""Exponential integrals in overflow-safe scaled form, plus the analytic
continuations needed by the exponentially-cut-off and extended-Drude damping
kernels.

Only real positive arguments are supported; the complex continuation of E1
onto the negative axis is exposed explicitly through
:func:`e1_negative_continuation` with the side of the cut selected by the
caller.
"""

from __future__ import annotations

import cmath
import math

__all__ = [
    "EULER_GAMMA",
    "exp_e1",
    "exp_neg_ei",
    "e1",
    "ei",
    "e1_negative_continuation",
    "arccos_c",
    "arctan_ratio",
]

EULER_GAMMA = 0.5772156649015328606

_SERIES_MAX_TERMS = 500
_CF_MAX_ITER = 300
_TINY = 1e-300


def _e1_series(x: float) -> float:
    # E1(x) = -gamma - ln(x) + sum_{k>=1} (-1)^{k+1} x^k / (k k!), x <= 1
    total = -EULER_GAMMA - math.log(x)
    term = 1.0
    for k in range(1, _SERIES_MAX_TERMS):
        term *= -x / k
        delta = -term / k
        total += delta
        if abs(delta) < 1e-18 * abs(total):
            return total
    raise ArithmeticError(f"E1 series did not converge at x={x}")


def _exp_e1_cf(x: float) -> float:
    # Modified Lentz evaluation of the even continued fraction
    # e^x E1(x) = 1 / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _CF_MAX_ITER):
        a = -i * i
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError(f"E1 continued fraction did not converge at x={x}")


def exp_e1(x: float) -> float:
    """Scaled exponential integral e^x E1(x) for x > 0.

    Power series below x=1, continued fraction above; the scaled form stays
    representable for arbitrarily large x (asymptotically 1/x - 1/x^2).
    """
    if not x > 0.0:
        raise ValueError(f"exp_e1 requires x > 0, got {x}")
    if x <= 1.0:
        return math.exp(x) * _e1_series(x)
    return _exp_e1_cf(x)


def _ei_series(x: float) -> float:
    # Ei(x) = gamma + ln(x) + sum_{k>=1} x^k / (k k!); all terms positive.
    total = EULER_GAMMA + math.log(x)
    term = 1.0
    for k in range(1, _SERIES_MAX_TERMS):
        term *= x / k
        delta = term / k
        total += delta
        if delta < 1e-18 * abs(total):
            return total
    raise ArithmeticError(f"Ei series did not converge at x={x}")


def _exp_neg_ei_asymptotic(x: float) -> float:
    # e^-x Ei(x) ~ (1/x) sum_k k!/x^k, truncated at the smallest term.
    total = 0.0
    term = 1.0 / x
    for k in range(1, _CF_MAX_ITER):
        total += term
        nxt = term * k / x
        if nxt >= term:
            break
        term = nxt
    return total


def exp_neg_ei(x: float) -> float:
    """Scaled exponential integral e^-x Ei(x) for x > 0.

    Ascending series up to x=40, asymptotic series above (error below
    1e-15 there); asymptotically 1/x + 1/x^2.
    """
    if not x > 0.0:
        raise ValueError(f"exp_neg_ei requires x > 0, got {x}")
    if x <= 40.0:
        return math.exp(-x) * _ei_series(x)
    return _exp_neg_ei_asymptotic(x)


def e1(x: float) -> float:
    """Unscaled E1(x); overflows for x beyond ~700 are the caller's problem."""
    return exp_e1(x) * math.exp(-x)


def ei(x: float) -> float:
    """Unscaled Ei(x) for x > 0."""
    return exp_neg_ei(x) * math.exp(x)


def e1_negative_continuation(y: float, side: str) -> complex:
    """Boundary value E1(-y +- i0+) = -Ei(y) -+ i pi for y > 0.

    ``side`` is ``"above"`` (approach from Im > 0) or ``"below"``.
    """
    if not y > 0.0:
        raise ValueError(f"e1_negative_continuation requires y > 0, got {y}")
    if side == "above":
        return complex(-ei(y), -math.pi)
    if side == "below":
        return complex(-ei(y), math.pi)
    raise ValueError(f"side must be 'above' or 'below', got {side!r}")


def arccos_c(y: float) -> complex:
    """arccos extended to all real arguments, continuous across y = 1.

    Real branch on [-1, 1]; for y > 1 the purely imaginary value
    -i*ln(y + sqrt(y^2 - 1)), which joins the under- and overdamped closed
    forms of the Drude-family free energies.
    """
    if -1.0 <= y <= 1.0:
        return complex(math.acos(y), 0.0)
    if y > 1.0:
        return complex(0.0, -math.acosh(y))
    return complex(math.pi, math.acosh(-y))


def arctan_ratio(w0: float, gamma: float) -> float:
    """(1/w1) arctan(2 w1/gamma) with w1^2 = w0^2 - (gamma/2)^2.

    Even in w1, hence single-valued across the damping regimes: for
    w0 <= gamma/2 it equals (1/(2 wb1)) ln((gamma + 2 wb1)/(gamma - 2 wb1))
    with wb1^2 = (gamma/2)^2 - w0^2.
    """
    if w0 <= 0.0 or gamma < 0.0:
        raise ValueError("arctan_ratio requires w0 > 0 and gamma >= 0")
    disc = w0 * w0 - 0.25 * gamma * gamma
    scale = max(w0, gamma)
    if abs(disc) < 1e-12 * scale * scale:
        # series of arctan(z)/z about the critical point
        return 2.0 / gamma * (1.0 - (4.0 * disc / (gamma * gamma)) / 3.0)
    if disc > 0.0:
        w1 = math.sqrt(disc)
        return math.atan2(2.0 * w1, gamma) / w1 if gamma == 0.0 else math.atan(2.0 * w1 / gamma) / w1
    wb1 = math.sqrt(-disc)
    return math.log((gamma + 2.0 * wb1) / (gamma - 2.0 * wb1)) / (2.0 * wb1)


def _arctan_ratio_complex(w0: float, gamma: float) -> complex:
    # reference evaluation through the complex plane, used by the tests
    w1 = cmath.sqrt(complex(w0 * w0 - 0.25 * gamma * gamma))
    if abs(w1) == 0.0:
        return complex(2.0 / gamma)
    return cmath.atan(2.0 * w1 / gamma) / w1
