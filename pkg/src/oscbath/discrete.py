"""Exact zero-temperature thermodynamics of an oscillator coupled to a
finite bath: normal modes by bracketed bisection with interlacing, coupling
free energy, excess system energy by residues, the second-law deficit K with
its residue decomposition, and an independent eigen-decomposition oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "DiscreteBath",
    "NormalModes",
    "GroundStateReport",
    "SecondLawReport",
    "DegenerateBath",
    "BathParseError",
    "gamma_zero",
    "d_chi",
    "normal_modes",
    "free_energy_0",
    "system_energy_0",
    "k_second_law",
    "exact_ground_state_oracle",
    "parse_bath_file",
    "random_bath",
    "invariant_violations",
]

POLE_COINCIDENCE_RTOL = 1e-9


class DegenerateBath(ValueError):
    """Bracket collapse or pole coincidence beyond the resolvable tolerance."""


class BathParseError(ValueError):
    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class DiscreteBath:
    """System oscillator (M, omega_0) plus N bath oscillators (m_j, omega_j, c_j).

    Bath frequencies must be strictly increasing and couplings nonzero so
    that every susceptibility pole is simple.
    """

    M: float
    omega_0: float
    oscillators: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        if not self.M > 0.0 or not self.omega_0 > 0.0:
            raise ValueError("M and omega_0 must be positive")
        prev = 0.0
        for j, (m, w, c) in enumerate(self.oscillators):
            if not m > 0.0 or not w > 0.0:
                raise ValueError(f"oscillator {j}: mass and frequency must be positive")
            if c == 0.0:
                raise ValueError(f"oscillator {j}: zero coupling not allowed")
            if w <= prev:
                raise ValueError(
                    f"oscillator {j}: bath frequencies must be strictly increasing"
                )
            prev = w

    @property
    def n(self) -> int:
        return len(self.oscillators)

    @property
    def bath_frequencies(self) -> np.ndarray:
        return np.array([w for _, w, _ in self.oscillators])

    @property
    def coupling_weights(self) -> np.ndarray:
        """c_j^2 / (m_j omega_j^2) for each bath oscillator."""
        return np.array([c * c / (m * w * w) for m, w, c in self.oscillators])


@dataclass(frozen=True)
class NormalModes:
    frequencies: tuple[float, ...]
    brackets: tuple[tuple[float, float], ...]
    # extended-precision copies of the roots; the residue sums of
    # k_second_law cancel heavily and need the extra digits
    frequencies_hi: tuple = ()

    def hi(self) -> np.ndarray:
        if self.frequencies_hi:
            return np.array(self.frequencies_hi, dtype=np.longdouble)
        return np.array(self.frequencies, dtype=np.longdouble)


@dataclass(frozen=True)
class GroundStateReport:
    E_total: float
    E_s: float
    E_bath_j: tuple[float, ...]
    q_variance: float
    p_variance: float
    mode_weights_q: tuple[float, ...]  # squared q-components of eigenvectors
    mode_frequencies: tuple[float, ...] = ()


@dataclass(frozen=True)
class SecondLawReport:
    K: float
    per_mode_terms: tuple[float, ...]
    per_bath_pole_terms: tuple[float, ...]
    residue_total: float


def gamma_zero(bath: DiscreteBath) -> float:
    """Static damping kernel gamma(0) = (1/M) sum_j c_j^2/(m_j omega_j^2)."""
    return float(np.sum(bath.coupling_weights)) / bath.M


def _d_chi_raw(bath: DiscreteBath, omega, dtype=float):
    """Susceptibility denominator in product form, dtype-generic.

    Accepts float, longdouble, or complex longdouble omega so the same code
    serves bisection, extended-precision polishing, and complex-step
    differentiation.
    """
    lam = omega * omega
    w2 = bath.bath_frequencies.astype(dtype) ** 2
    kappa = bath.coupling_weights.astype(dtype)
    diffs = lam - w2
    first = (lam - dtype(bath.omega_0) ** 2) * np.prod(diffs)
    # sum_j kappa_j * prod_{j' != j} diffs[j'] via prefix/suffix products
    n = bath.n
    prefix = np.ones(n + 1, dtype=diffs.dtype)
    np.cumprod(diffs, out=prefix[1:])
    suffix = np.ones(n + 1, dtype=diffs.dtype)
    suffix[:-1] = np.cumprod(diffs[::-1])[::-1]
    second = np.sum(kappa * prefix[:-1] * suffix[1:])
    return first - lam * second / dtype(bath.M)


def d_chi(bath: DiscreteBath, omega: float) -> float:
    """Denominator polynomial of the susceptibility, evaluated in product form."""
    return float(_d_chi_raw(bath, float(omega)))


def _brackets(bath: DiscreteBath) -> list[tuple[float, float]]:
    w = bath.bath_frequencies
    hi = (w[-1] if bath.n else 0.0) + math.sqrt(gamma_zero(bath)) + bath.omega_0
    edges = [0.0, *w, hi]
    return list(zip(edges[:-1], edges[1:]))


def normal_modes(bath: DiscreteBath) -> NormalModes:
    """All N+1 normal-mode frequencies, one per interlacing bracket.

    Bisection on the susceptibility denominator inside each bracket, followed
    by Newton polishing; the interlacing theorem guarantees exactly one root
    per bracket.
    """
    if bath.n == 0:
        return NormalModes((bath.omega_0,), ((bath.omega_0, bath.omega_0),))
    roots = []
    brackets = _brackets(bath)
    scale = max(bath.omega_0, float(bath.bath_frequencies[-1]))
    for lo, hi in brackets:
        a, b = lo, hi
        fa = d_chi(bath, a) if a > 0.0 else d_chi(bath, 1e-30)
        fb = d_chi(bath, b)
        if fa == 0.0:
            roots.append(a)
            continue
        if fb == 0.0:
            roots.append(b)
            continue
        if fa * fb > 0.0:
            raise DegenerateBath(
                f"no sign change in bracket ({lo:.6g}, {hi:.6g}); "
                "frequencies too close to degeneracy"
            )
        for _ in range(200):
            mid = 0.5 * (a + b)
            if b - a < 1e-9 * scale or mid == a or mid == b:
                break
            fm = d_chi(bath, mid)
            if fm == 0.0:
                a = b = mid
                break
            if fa * fm < 0.0:
                b, fb = mid, fm
            else:
                a, fa = mid, fm
        root = 0.5 * (a + b)
        if hi - lo < 1e-13 * scale:
            raise DegenerateBath(
                f"bracket ({lo:.6g}, {hi:.6g}) collapsed below resolution"
            )
        roots.append(root)
    roots_hi = [_polish_root(bath, r, lo, hi) for r, (lo, hi) in zip(roots, brackets)]
    return NormalModes(
        tuple(float(r) for r in roots_hi), tuple(brackets), tuple(roots_hi)
    )


def _polish_root(bath: DiscreteBath, root: float, lo: float, hi: float):
    """Newton-polish a bisection root in 80-bit precision.

    The derivative comes from a complex step, which has no subtractive
    cancellation, so the root is accurate to the extended-precision epsilon.
    """
    x = np.longdouble(root)
    for _ in range(4):
        h = np.longdouble(1e-24) * x
        fc = _d_chi_raw(bath, np.clongdouble(x + 1j * h), dtype=np.clongdouble)
        f0 = np.real(fc)
        f1 = np.imag(fc) / h
        if f1 == 0.0:
            break
        step = f0 / f1
        cand = x - step
        if not (lo <= float(cand) <= hi):
            break
        if cand == x:
            x = cand
            break
        x = cand
    return x


def free_energy_0(bath: DiscreteBath, modes: NormalModes, hbar: float = 1.0) -> float:
    """Minimum coupling work at T=0: (hbar/2)(sum w_bar_k - sum w_j)."""
    return 0.5 * hbar * (
        math.fsum(modes.frequencies) - math.fsum(w for _, w, _ in bath.oscillators)
    )


def _residue_weights(bath: DiscreteBath, modes: NormalModes) -> np.ndarray:
    """prod_j (wbar_k^2 - w_j^2) / prod_{k' != k} (wbar_k^2 - wbar_k'^2).

    Evaluated in extended precision; near-coincidences between modes and bath
    poles make these products cancellation-prone.
    """
    wb2 = modes.hi() ** 2
    w2 = bath.bath_frequencies.astype(np.longdouble) ** 2
    weights = np.empty(len(wb2), dtype=np.longdouble)
    for k, lam in enumerate(wb2):
        num = np.prod(lam - w2)
        den = np.prod(np.delete(lam - wb2, k))
        weights[k] = num / den
    return weights


def system_energy_0(bath: DiscreteBath, modes: NormalModes, hbar: float = 1.0) -> float:
    """Excess-bearing system energy at T=0 from the residue sum over modes."""
    wb = modes.hi()
    weights = _residue_weights(bath, modes)
    w02 = np.longdouble(bath.omega_0) ** 2
    terms = (w02 + wb * wb) / wb * weights
    return float(0.25 * np.longdouble(hbar) * np.sum(terms))


def k_second_law(
    bath: DiscreteBath, modes: NormalModes, hbar: float = 1.0
) -> SecondLawReport:
    """Second-law deficit K = F(0) - E_s(0) with its residue decomposition.

    The residue sum runs over every simple pole of the contour integrand on
    the positive real axis: the normal-mode poles (each individually
    nonnegative) and the bath-frequency poles. Terms whose pole coincides
    with a normal mode carry no residue and are skipped.
    """
    K = free_energy_0(bath, modes, hbar) - system_energy_0(bath, modes, hbar)
    wb = modes.hi()
    wb2 = wb * wb
    w = bath.bath_frequencies.astype(np.longdouble)
    w2 = w * w
    kappa = bath.coupling_weights.astype(np.longdouble)
    M = np.longdouble(bath.M)
    hb = np.longdouble(hbar)

    def coincident(a, b) -> bool:
        return abs(a - b) < POLE_COINCIDENCE_RTOL * a

    mode_terms = []
    a1 = wb * _residue_weights(bath, modes)
    for k in range(len(wb)):
        a2 = np.longdouble(0.0)
        for l in range(bath.n):
            if coincident(w[l], wb[k]):
                continue
            a2 += kappa[l] * 0.5 * (
                1.0 / (w[l] + wb[k]) ** 2 + 1.0 / (w[l] - wb[k]) ** 2
            )
        mode_terms.append(hb / (4.0 * M) * a1[k] * a2)

    bath_terms = []
    for l in range(bath.n):
        if any(coincident(w[l], wb[k]) for k in range(len(wb))):
            bath_terms.append(np.longdouble(0.0))
            continue
        num = kappa[l] * w[l] ** 3 * np.prod(np.delete(w2[l] - w2, l))
        den = np.prod(w2[l] - wb2)
        bath_terms.append(hb / (2.0 * M) * num / den)
    residue_total = float(np.sum(mode_terms) + np.sum(bath_terms))
    return SecondLawReport(
        K=K,
        per_mode_terms=tuple(float(t) for t in mode_terms),
        per_bath_pole_terms=tuple(float(t) for t in bath_terms),
        residue_total=residue_total,
    )


def exact_ground_state_oracle(bath: DiscreteBath, hbar: float = 1.0) -> GroundStateReport:
    """Independent check: diagonalize the mass-weighted potential matrix.

    Builds the (N+1)x(N+1) potential (counter-term included), takes its
    eigen-decomposition, and assembles the ground-state covariances of every
    oscillator; eigenvalues must reproduce the normal-mode frequencies.
    """
    n = bath.n
    V = np.zeros((n + 1, n + 1))
    V[0, 0] = bath.omega_0 ** 2 + gamma_zero(bath)
    for j, (m, w, c) in enumerate(bath.oscillators, start=1):
        V[j, j] = w * w
        V[0, j] = V[j, 0] = -c / math.sqrt(bath.M * m)
    evals, U = np.linalg.eigh(V)
    if np.any(evals <= 0.0) or not np.all(np.isfinite(evals)):
        raise ArithmeticError("potential matrix is not positive definite")
    wbar = np.sqrt(evals)
    E_total = 0.5 * hbar * float(np.sum(wbar))

    u0 = U[0, :] ** 2
    q_var = hbar / (2.0 * bath.M) * float(np.sum(u0 / wbar))
    p_var = hbar * bath.M / 2.0 * float(np.sum(u0 * wbar))
    w02 = bath.omega_0 ** 2
    E_s = 0.25 * hbar * float(np.sum(u0 * (wbar + w02 / wbar)))

    E_bath = []
    for j, (m, w, c) in enumerate(bath.oscillators, start=1):
        uj = U[j, :] ** 2
        E_bath.append(0.25 * hbar * float(np.sum(uj * (wbar + w * w / wbar))))
    return GroundStateReport(
        E_total=E_total,
        E_s=E_s,
        E_bath_j=tuple(E_bath),
        q_variance=q_var,
        p_variance=p_var,
        mode_weights_q=tuple(u0),
        mode_frequencies=tuple(float(x) for x in wbar),
    )


def parse_bath_file(text: str) -> DiscreteBath:
    """Parse the line-oriented bath description.

    Comment lines start with '#'; the first data line is ``M <value>``, the
    second ``omega0 <value>``, and each further line ``<m_j> <omega_j> <c_j>``.
    """
    M = None
    omega_0 = None
    oscillators = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if M is None:
                if parts[0] != "M" or len(parts) != 2:
                    raise ValueError("expected 'M <value>'")
                M = float(parts[1])
            elif omega_0 is None:
                if parts[0] != "omega0" or len(parts) != 2:
                    raise ValueError("expected 'omega0 <value>'")
                omega_0 = float(parts[1])
            else:
                if len(parts) != 3:
                    raise ValueError("expected '<m_j> <omega_j> <c_j>'")
                oscillators.append(tuple(float(p) for p in parts))
        except (ValueError, IndexError) as exc:
            raise BathParseError(str(exc), line_no) from None
    if M is None or omega_0 is None:
        raise BathParseError("missing 'M' or 'omega0' header line", 0)
    try:
        return DiscreteBath(M, omega_0, tuple(oscillators))
    except ValueError as exc:
        raise BathParseError(str(exc), 0) from None


def invariant_violations(bath: DiscreteBath, hbar: float = 1.0) -> list[str]:
    """Check every exact-bath invariant; returns a description per violation.

    Covers interlacing, the sum and product rules, the bounds on the system
    and bath ground-state energies, nonnegativity of K and of the per-mode
    residue terms, the reconciliation of the residue sum with F - E_s, and
    agreement with the eigen-decomposition oracle.
    """
    out: list[str] = []
    modes = normal_modes(bath)
    wb = np.array(modes.frequencies)
    w = bath.bath_frequencies

    interleaved = np.empty(2 * bath.n + 1)
    interleaved[0::2] = wb
    interleaved[1::2] = w
    if not np.all(np.diff(interleaved) >= 0.0):
        out.append("interlacing violated")
    if not (wb[0] <= bath.omega_0 <= wb[-1]):
        out.append("omega_0 outside [wbar_min, wbar_max]")

    sum_lhs = math.fsum(wb ** 2)
    sum_rhs = math.fsum(w ** 2) + bath.omega_0 ** 2 + gamma_zero(bath)
    if abs(sum_lhs - sum_rhs) > 1e-10 * abs(sum_rhs):
        out.append(f"sum rule off by {abs(sum_lhs - sum_rhs) / abs(sum_rhs):.2e}")
    prod_lhs = math.fsum(np.log(wb ** 2))
    prod_rhs = math.fsum(np.log(w ** 2)) + 2.0 * math.log(bath.omega_0)
    if abs(prod_lhs - prod_rhs) > 1e-10 * max(1.0, abs(prod_rhs)):
        out.append("product rule violated")

    f0 = free_energy_0(bath, modes, hbar)
    es = system_energy_0(bath, modes, hbar)
    if not es > 0.5 * hbar * bath.omega_0:
        out.append("E_s(0) does not exceed the bare ground-state energy")
    if not (f0 > 0.5 * hbar * bath.omega_0 and f0 >= 0.5 * hbar * wb[0]):
        out.append("F(0) below the ground-state energy bounds")

    report = k_second_law(bath, modes, hbar)
    if report.K < 0.0:
        out.append(f"K negative: {report.K:.3e}")
    if abs(report.K - (f0 - es)) > 1e-8 * max(abs(report.K), 1e-300):
        out.append("K disagrees with F(0) - E_s(0)")
    if abs(report.residue_total - report.K) > 1e-8 * max(abs(report.K), 1e-12 * hbar * bath.omega_0):
        out.append(
            f"residue sum {report.residue_total:.6e} != K {report.K:.6e}"
        )
    if any(t < 0.0 for t in report.per_mode_terms):
        out.append("negative per-mode residue term")

    oracle = exact_ground_state_oracle(bath, hbar)
    if abs(oracle.E_s - es) > 1e-10 * es:
        out.append(f"oracle E_s mismatch: {abs(oracle.E_s - es) / es:.2e}")
    mode_err = max(
        abs(a - b) / b for a, b in zip(oracle.mode_frequencies, wb)
    )
    if mode_err > 1e-10:
        out.append(f"oracle mode-frequency mismatch: {mode_err:.2e}")
    if abs(oracle.E_total - 0.5 * hbar * math.fsum(wb)) > 1e-10 * oracle.E_total:
        out.append("oracle total energy mismatch")
    if any(ej <= 0.5 * hbar * wj for ej, wj in zip(oracle.E_bath_j, w)):
        out.append("bath oscillator without excess energy")
    return out


def random_bath(rng: np.random.Generator, n_max: int = 12) -> DiscreteBath:
    """Seeded random bath for the property suite.

    Log-uniform frequencies in [0.1, 10] with a minimum relative gap, and
    couplings rescaled so that gamma(0) <= 5 omega_0^2.
    """
    n = int(rng.integers(1, n_max + 1))
    omega_0 = float(10.0 ** rng.uniform(-1.0, 1.0))
    while True:
        freqs = np.sort(10.0 ** rng.uniform(-1.0, 1.0, size=n))
        if n == 1 or np.min(np.diff(freqs) / freqs[:-1]) > 0.02:
            break
    masses = 10.0 ** rng.uniform(-0.5, 0.5, size=n)
    couplings = rng.uniform(0.5, 1.5, size=n) * rng.choice([-1.0, 1.0], size=n)
    M = float(10.0 ** rng.uniform(-0.5, 0.5))
    raw = np.sum(couplings ** 2 / (masses * freqs ** 2)) / M
    target = rng.uniform(0.05, 1.0) * 5.0 * omega_0 ** 2
    couplings *= math.sqrt(target / raw)
    return DiscreteBath(
        M, omega_0, tuple(zip(masses.tolist(), freqs.tolist(), couplings.tolist()))
    )
