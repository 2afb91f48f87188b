"""Adaptive quadrature, principal values, and tail classification."""

import math

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oscbath.quadrature import (
    DivergenceTag,
    Inconclusive,
    NonConvergence,
    SingularityMisdeclared,
    classify_tail,
    integrate_interval,
    integrate_semi_infinite,
    principal_value_integral,
)

mp.mp.dps = 30


class TestSemiInfinite:
    def test_exponential(self):
        res = integrate_semi_infinite(lambda x: math.exp(-x), tol=1e-10)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-10)

    def test_lorentzian(self):
        res = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x * x), tol=1e-10)
        assert res.value == pytest.approx(math.pi / 2.0, abs=1e-10)

    def test_peaked_with_split_points(self):
        # narrow Lorentzian at x = 3; splits seed the refinement
        w = 1e-4
        f = lambda x: w / ((x - 3.0) ** 2 + w * w)
        res = integrate_semi_infinite(f, tol=1e-9, split_points=[3.0])
        expected = math.pi / 2.0 + math.atan(3.0 / w)
        assert res.value == pytest.approx(expected, abs=1e-8)

    def test_split_point_invariance(self):
        f = lambda x: math.exp(-x) * math.cos(3.0 * x)
        a = integrate_semi_infinite(f, tol=1e-11)
        b = integrate_semi_infinite(f, tol=1e-11, split_points=[0.5, 1.0, 2.0, 7.0])
        assert a.value == pytest.approx(b.value, abs=2e-11)
        assert a.value == pytest.approx(0.1, abs=1e-11)  # 1/(1+9)

    def test_error_estimate_bound(self):
        res = integrate_semi_infinite(lambda x: x * math.exp(-x), tol=1e-9)
        assert res.converged
        assert res.abs_error_estimate <= 1e-9
        assert abs(res.value - 1.0) <= 1e-9

    def test_nonconvergence_carries_partial(self):
        f = lambda x: math.sin(x * x) / (1.0 + x)
        with pytest.raises(NonConvergence) as exc:
            integrate_semi_infinite(f, tol=1e-14, max_evals=600)
        partial = exc.value.partial
        assert not partial.converged
        assert partial.evaluations <= 600

    @given(
        st.floats(min_value=0.1, max_value=10.0),
        st.floats(min_value=0.1, max_value=10.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_scaled_exponential(self, a, b):
        res = integrate_semi_infinite(lambda x: a * math.exp(-b * x), tol=1e-10)
        assert res.value == pytest.approx(a / b, rel=1e-9)


class TestInterval:
    def test_polynomial_exact(self):
        res = integrate_interval(lambda x: x * x, 0.0, 2.0, tol=1e-12)
        assert res.value == pytest.approx(8.0 / 3.0, abs=1e-12)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            integrate_interval(lambda x: x, 0.0, 1.0, tol=0.0)


class TestPrincipalValue:
    def test_exponential_over_simple_pole(self):
        # P int_0^inf e^{-x}/(x-1) dx = -Ei(1)/e
        res = principal_value_integral(lambda x: math.exp(-x) / (x - 1.0), 1.0, tol=1e-10)
        expected = float(-mp.ei(1) * mp.exp(-1))
        assert res.value == pytest.approx(expected, abs=1e-9)
        assert expected == pytest.approx(-0.697175, abs=1e-6)

    def test_odd_part_cancels(self):
        # P int_0^inf e^{-(x-1)^2}/(x-1) dx: the symmetric window about the
        # pole cancels exactly, leaving int_1^inf e^{-u^2}/u du = E1(1)/2
        f = lambda x: math.exp(-((x - 1.0) ** 2)) / (x - 1.0)
        res = principal_value_integral(f, 1.0, tol=1e-10)
        assert res.value == pytest.approx(float(mp.e1(1)) / 2.0, abs=1e-9)

    def test_pole_offset_by_smooth_part(self):
        # adding a smooth function changes the PV by its ordinary integral
        base = principal_value_integral(lambda x: math.exp(-x) / (x - 1.0), 1.0, tol=1e-10)
        combo = principal_value_integral(
            lambda x: math.exp(-x) / (x - 1.0) + math.exp(-2.0 * x), 1.0, tol=1e-10
        )
        assert combo.value - base.value == pytest.approx(0.5, abs=1e-8)

    def test_second_order_pole_detected(self):
        with pytest.raises(SingularityMisdeclared):
            principal_value_integral(
                lambda x: math.exp(-x) / (x - 1.0) ** 2, 1.0, tol=1e-8
            )

    def test_requires_positive_singularity(self):
        with pytest.raises(ValueError):
            principal_value_integral(lambda x: 1.0 / x, 0.0)


class TestClassifyTail:
    def test_canonical_log(self):
        c = classify_tail(lambda x: 1.0 / x, window=(10.0, 1e6))
        assert c.tag is DivergenceTag.LOG_DIVERGENT
        assert c.sign_of_tail == "+"

    def test_negative_log(self):
        c = classify_tail(lambda x: -1.0 / x, window=(10.0, 1e6))
        assert c.tag is DivergenceTag.LOG_DIVERGENT
        assert c.sign_of_tail == "-"

    def test_power_laws(self):
        for p, tag in [
            (0.5, DivergenceTag.POWER_DIVERGENT),
            (1.0, DivergenceTag.LOG_DIVERGENT),
            (1.5, DivergenceTag.CONVERGENT),
            (2.0, DivergenceTag.CONVERGENT),
        ]:
            c = classify_tail(lambda x, p=p: x ** (-p), window=(10.0, 1e6))
            assert c.tag is tag, f"p={p}"

    def test_exponential_tail(self):
        c = classify_tail(lambda x: math.exp(-x), window=(10.0, 1e4))
        assert c.tag is DivergenceTag.CONVERGENT

    def test_oscillatory_inconclusive(self):
        with pytest.raises(Inconclusive):
            classify_tail(lambda x: math.sin(x) / math.log(x), window=(10.0, 1e3))

    def test_window_validation(self):
        with pytest.raises(ValueError):
            classify_tail(lambda x: 1.0 / x, window=(5.0, 1.0))
