import math
from fractions import Fraction

import pytest

from hermquad.exactmath import Polynomial, X
from hermquad.expressions import derivative_function, evaluator, jet_provider, parse
from hermquad.kernel import kernel_set
from hermquad.oracle import OracleConfig, reference_integrate
from hermquad.quadrature import (
    ErrorReport,
    Partition,
    bound_l2,
    bound_uniform,
    e2_bound_f3,
    e2_classical_f4,
    error_exact,
    integrate_composite,
    integrate_single,
    observed_orders,
    refined_bounds,
    sample_uniform,
)

from conftest import monomial_jets

TIGHT = OracleConfig(abs_tol=1e-13, rel_tol=1e-13)

CORPUS = ("exp(x)", "sin(x)", "x^2*sin(x)", "1/(1+x^2)")


def poly_jets(p):
    def jets(x, m):
        return tuple(p.derivative(j)(x) for j in range(m + 1))

    return jets


def kink_antiderivative(x, c):
    # d/dt [(t-c) log|t-c| - t] = log|t-c| on both sides of the kink.
    u = x - c
    if u == 0.0:
        return -x
    return u * math.log(abs(u)) - x


def make_kink(c):
    """f(x) = integral_0^x log|t - c| dt, its value and first derivative."""

    def f(x):
        return kink_antiderivative(x, c) - kink_antiderivative(0.0, c)

    def fprime(x):
        u = x - c
        return math.log(abs(u)) if u != 0.0 else float("-inf")

    return f, fprime


class TestPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            Partition((0,))
        with pytest.raises(ValueError):
            Partition((0, 0))
        with pytest.raises(ValueError):
            Partition((0, 2, 1))

    def test_uniform_is_exact(self):
        part = Partition.uniform(0, 1, 3)
        assert part.nodes == (0, Fraction(1, 3), Fraction(2, 3), 1)
        assert part.panel_count == 3


class TestIntegrateSingle:
    def test_x2_sinx_motivating_value(self):
        value = integrate_single(
            jet_provider(parse("x^2*sin(x)")), 2, 0, Fraction(math.pi)
        )
        assert float(value) == pytest.approx(math.pi ** 4 / 12, abs=1e-12)

    def test_constant_any_order(self):
        for n in range(1, 6):
            jets = poly_jets(Polynomial((Fraction(5, 7),)))
            value = integrate_single(jets, n, Fraction(-1, 2), Fraction(9, 4))
            assert value == Fraction(5, 7) * Fraction(11, 4)

    def test_quartic_value(self):
        value = integrate_single(poly_jets(X ** 4), 2, 0, 1)
        assert value == Fraction(1, 6)


class TestIntegrateComposite:
    def test_single_panel_reduces_to_single(self):
        jets = jet_provider(parse("exp(x)"))
        single = integrate_single(jets, 3, 0, 1)
        composite = integrate_composite(jets, 3, Partition.uniform(0, 1, 1))
        assert float(composite) == pytest.approx(float(single), rel=1e-15)

    def test_exp_four_panels(self):
        jets = jet_provider(parse("exp(x)"))
        value = integrate_composite(jets, 2, Partition.uniform(0, 1, 4))
        assert abs(float(value) - (math.e - 1)) < 2e-5
        assert abs(float(value) - (math.e - 1)) > 1e-7

    def test_exact_for_low_degree_with_rational_nodes(self):
        p = Polynomial((Fraction(1, 3), -2, Fraction(7, 5), 1, Fraction(-1, 4), 2))
        part = Partition(
            (Fraction(-1), Fraction(-1, 3), Fraction(1, 2), Fraction(6, 5))
        )
        value = integrate_composite(poly_jets(p), 3, part)
        assert value == p.integrate(Fraction(-1), Fraction(6, 5))

    def test_convergence_order(self):
        jets = jet_provider(parse("exp(x)"))
        for n in (1, 2, 3):
            errors = [
                abs(float(integrate_composite(jets, n, Partition.uniform(0, 1, m))) - (math.e - 1))
                for m in (2, 4, 8, 16, 32)
            ]
            order = observed_orders(errors)[-1]
            assert order == pytest.approx(2 * n, abs=0.15)


class TestErrorExact:
    def test_x2_sinx(self):
        expr = parse("x^2*sin(x)")
        ks = kernel_set(2, 0, Fraction(math.pi))
        value = error_exact(derivative_function(expr, 2), ks)
        expected = (math.pi ** 2 - 4) - math.pi ** 4 / 12
        assert value == pytest.approx(expected, abs=1e-9)

    def test_zero_for_low_degree_polynomials(self):
        p = X ** 3 - 2 * X + 1
        ks = kernel_set(2, 0, 1)
        f2 = lambda x: float(p.derivative(2)(x))
        assert error_exact(f2, ks) == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_monomial_first_failure(self, n):
        p = Polynomial.monomial(2 * n)
        ks = kernel_set(n, 0, 1)
        fn = lambda x: float(p.derivative(n)(x))
        expected = (-1) ** n * math.factorial(n) ** 2 / math.factorial(2 * n + 1)
        assert error_exact(fn, ks) == pytest.approx(expected, rel=1e-10)

    @pytest.mark.parametrize("text", CORPUS)
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_reference_minus_quadrature(self, text, n):
        expr = parse(text)
        quad = float(integrate_single(jet_provider(expr), n, 0, 1))
        ref = reference_integrate(evaluator(expr), 0.0, 1.0, TIGHT)
        assert ref.converged
        exact = error_exact(derivative_function(expr, n), kernel_set(n, 0, 1))
        assert ref.value - quad == pytest.approx(exact, abs=1e-9)


class TestMildRegularity:
    def test_centered_log_kink(self):
        # f' = log|x - 1/2| is unbounded, yet the order-1 error identity holds.
        f, fprime = make_kink(0.5)
        jets = lambda x, m: (f(float(x)),)
        quad = float(integrate_single(jets, 1, 0, 1))
        ref = reference_integrate(f, 0.0, 1.0, OracleConfig(abs_tol=1e-11, rel_tol=1e-11))
        assert ref.converged
        exact = error_exact(
            fprime, kernel_set(1, 0, 1), OracleConfig(abs_tol=1e-10, rel_tol=1e-10)
        )
        assert (ref.value - quad) == pytest.approx(exact, abs=1e-6)

    def test_off_center_log_kink(self):
        # Same identity with the singularity off the midpoint, where the
        # error no longer vanishes by symmetry.
        f, fprime = make_kink(1.0 / 3.0)
        jets = lambda x, m: (f(float(x)),)
        quad = float(integrate_single(jets, 1, 0, 1))
        ref = reference_integrate(f, 0.0, 1.0, OracleConfig(abs_tol=1e-11, rel_tol=1e-11))
        assert ref.converged
        exact = error_exact(
            fprime, kernel_set(1, 0, 1), OracleConfig(abs_tol=1e-10, rel_tol=1e-10)
        )
        assert abs(exact) > 1e-3
        assert (ref.value - quad) == pytest.approx(exact, abs=1e-6)


class TestBounds:
    def test_zero_when_derivative_constant(self):
        ks = kernel_set(2, 0, 1)
        samples = [7.25] * 33
        assert bound_uniform(samples, ks) == 0.0
        assert bound_l2(samples, ks) == pytest.approx(0.0, abs=1e-15)

    def test_quartic_uniform_bound(self):
        # f = x^4: f'' = 12 x^2 has midrange deviation 6 on [0, 1].
        ks = kernel_set(2, 0, 1)
        samples = sample_uniform(lambda x: 12 * x * x, 0, 1, 257)
        bound = bound_uniform(samples, ks)
        assert bound == pytest.approx(6 * math.sqrt(3) / 54, rel=1e-12)
        assert bound >= 1 / 30

    def test_quartic_l2_bound(self):
        # ||12x^2 - 4||_2 = sqrt(12.8), so the bound is sqrt(12.8/720) = 2/15.
        ks = kernel_set(2, 0, 1)
        samples = sample_uniform(lambda x: 12 * x * x, 0, 1, 257)
        bound = bound_l2(samples, ks)
        assert bound == pytest.approx(2 / 15, rel=1e-3)
        assert bound >= 1 / 30

    def test_kernel_factor_n2(self):
        # With ||Phi||_2 = 1 the L2 bound reduces to 1/sqrt(720).
        ks = kernel_set(2, 0, 1)
        assert math.sqrt(float(ks.l2sq())) == pytest.approx(1 / math.sqrt(720), rel=1e-14)

    def test_needs_two_samples(self):
        ks = kernel_set(2, 0, 1)
        with pytest.raises(ValueError):
            bound_uniform([1.0], ks)
        with pytest.raises(ValueError):
            bound_l2([], ks)

    def test_refined_bounds_stable_for_smooth(self):
        ks = kernel_set(2, 0, 1)
        uniform, l2, stable = refined_bounds(derivative_function(parse("exp(x)"), 2), ks)
        assert stable
        assert uniform > 0 and l2 > 0


class TestE2SpecificBounds:
    def test_f3_zero_for_quadratics(self):
        ks = kernel_set(2, 0, 1)
        pair = e2_bound_f3([5.0] * 17, ks)
        assert pair.uniform == 0.0
        assert pair.l2 == pytest.approx(0.0, abs=1e-15)

    def test_f3_constants_on_unit_interval(self):
        # Unit-deviation constants: integral(|G|) = 1/192, ||G||_2 = 1/sqrt(30240).
        ks = kernel_set(2, 0, 1)
        g = ks.antiderivatives[0]
        from hermquad.kernel import kernel_abs_integral, kernel_l2sq

        assert kernel_abs_integral(g, 0, 1) == pytest.approx(1 / 192, rel=1e-12)
        assert math.sqrt(float(kernel_l2sq(g, 0, 1))) == pytest.approx(
            1 / math.sqrt(30240), rel=1e-14
        )

    def test_f3_quartic_bounds(self):
        # f = x^4: f''' = 24x - 12, midrange deviation 12 -> 12/192 = 1/16.
        ks = kernel_set(2, 0, 1)
        samples = sample_uniform(lambda x: 24 * x - 12, 0, 1, 257)
        pair = e2_bound_f3(samples, ks)
        assert pair.uniform == pytest.approx(1 / 16, rel=1e-12)
        assert pair.l2 == pytest.approx(math.sqrt(48 / 30240), rel=1e-3)
        assert pair.uniform >= 1 / 30
        assert pair.l2 >= 1 / 30

    def test_f3_requires_order_two(self):
        with pytest.raises(ValueError):
            e2_bound_f3([1.0, 2.0], kernel_set(3, 0, 1))


class TestE2ClassicalF4:
    def test_quartic_recovers_exact_error(self):
        value = e2_classical_f4(lambda x: 24.0, 0, 1)
        assert value == pytest.approx(1 / 30, abs=1e-11)

    def test_cubic_gives_zero(self):
        assert e2_classical_f4(lambda x: 0.0, 0, 1) == pytest.approx(0.0, abs=1e-14)

    def test_weight_polynomial_mass(self):
        h = X ** 2 * (X - 1) ** 2 / 24
        assert h.integrate(0, 1) == Fraction(1, 720)

    def test_matches_error_exact_for_smooth(self):
        expr = parse("exp(x)")
        via_f4 = e2_classical_f4(derivative_function(expr, 4), 0, 1)
        via_f2 = error_exact(derivative_function(expr, 2), kernel_set(2, 0, 1))
        assert via_f4 == pytest.approx(via_f2, rel=1e-8)


class TestErrorReport:
    def test_bound_dominates_actual_error(self):
        expr = parse("exp(x)")
        n = 2
        quad = float(integrate_single(jet_provider(expr), n, 0, 1))
        ref = reference_integrate(evaluator(expr), 0.0, 1.0, TIGHT)
        ks = kernel_set(n, 0, 1)
        samples = sample_uniform(derivative_function(expr, n), 0, 1, 257)
        report = ErrorReport(
            quadrature_value=quad,
            reference_value=ref.value,
            actual_error=quad - ref.value,
            bound_uniform=bound_uniform(samples, ks),
            bound_l2=bound_l2(samples, ks),
            bound_kind="midrange",
            derivative_order_used=n,
        )
        slack = 1.01
        assert abs(report.actual_error) <= report.bound_uniform * slack
        assert abs(report.actual_error) <= report.bound_l2 * slack


class TestObservedOrders:
    def test_ratios(self):
        orders = observed_orders([1.0, 0.25, 0.0625])
        assert orders[0] is None
        assert orders[1] == pytest.approx(2.0)
        assert orders[2] == pytest.approx(2.0)

    def test_zero_errors_give_none(self):
        assert observed_orders([1.0, 0.0])[1] is None
