"""Singular value functions, head integrals, weighted rearrangements."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncorlicz import (
    DomainError,
    F_x,
    StepForm,
    TracedAlgebra,
    WeightedContext,
    abs_value,
    constant,
    evaluate,
    exp_decay,
    fack_kosaki_checks,
    head_integral,
    rearrange_step,
    singular_values,
    submajorizes,
    trace,
    weighted_rearrangement,
)
from ncorlicz.quadrature import integrate_sentinel
from ncorlicz.sampling import (
    random_decreasing_step,
    random_element,
    random_weight_step,
)

INF = math.inf


class TestSingularValues:
    def test_unit_weights_sorted(self):
        alg = TracedAlgebra((3,), (1.0,))
        mu = singular_values(alg, alg.diagonal([[3.0, 1.0, 2.0]]))
        np.testing.assert_allclose(mu.values, [3.0, 2.0, 1.0])
        np.testing.assert_allclose(mu.durations, [1.0, 1.0, 1.0])
        assert mu.evaluate(0.5) == 3.0
        assert mu.evaluate(2.5) == 1.0
        assert mu.evaluate(3.0) == 0.0

    def test_weighted_durations(self):
        alg = TracedAlgebra((1, 1), (0.5, 2.0))
        mu = singular_values(alg, alg.diagonal([[4.0], [1.0]]))
        np.testing.assert_allclose(mu.values, [4.0, 1.0])
        np.testing.assert_allclose(mu.durations, [0.5, 2.0])
        assert mu.evaluate(0.25) == 4.0
        assert mu.evaluate(0.5) == 1.0
        assert mu.evaluate(2.4999) == 1.0
        assert mu.evaluate(2.5) == 0.0

    def test_distribution_definition_oracle(self):
        # mu_t(a) <= s exactly when the weighted count of spectrum above s is <= t
        alg = TracedAlgebra((2, 2), (0.75, 1.25))
        rng = np.random.default_rng(2)
        for _ in range(10):
            a = random_element(alg, rng)
            mu = singular_values(alg, a)
            eigs, weights = [], []
            for w, blk in zip(alg.weights, abs_value(a).blocks):
                for ev in np.linalg.eigvalsh(blk):
                    eigs.append(ev)
                    weights.append(w)
            eigs, weights = np.array(eigs), np.array(weights)
            for t in (0.0, 0.4, 1.1, 2.3):
                for s in np.linspace(0.0, float(eigs.max()) * 1.2, 9):
                    dist = float(weights[eigs > s + 1e-12].sum())
                    assert (mu.evaluate(t) <= s + 1e-10) == (dist <= t + 1e-12)

    def test_invariance_under_abs_and_adjoint(self):
        alg = TracedAlgebra((3,), (1.0,))
        rng = np.random.default_rng(4)
        a = random_element(alg, rng)
        mu = singular_values(alg, a)
        for other in (abs_value(a), a.adjoint()):
            mu2 = singular_values(alg, other)
            np.testing.assert_allclose(mu.values, mu2.values, atol=1e-10)
            np.testing.assert_allclose(mu.durations, mu2.durations, atol=1e-12)


class TestEvaluateAndHead:
    def test_parametric_at_zero(self):
        assert evaluate(exp_decay(), 0.0) == 1.0

    def test_head_integral_step(self):
        mu = StepForm.from_raw([1.0, 1.0, 1.0], [3.0, 2.0, 1.0])
        assert head_integral(mu, 2.0) == pytest.approx(5.0)
        assert head_integral(mu, 0.0) == 0.0
        assert head_integral(mu, INF) == pytest.approx(6.0)

    def test_head_integral_exp(self):
        assert head_integral(exp_decay(), INF) == pytest.approx(1.0, abs=1e-9)
        assert head_integral(exp_decay(), 2.0) == pytest.approx(1 - math.exp(-2), abs=1e-9)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            evaluate(exp_decay(), -1.0)

    def test_total_equals_trace_of_abs(self):
        alg = TracedAlgebra((2, 1), (1.0, 3.0))
        rng = np.random.default_rng(9)
        a = random_element(alg, rng)
        total = head_integral(singular_values(alg, a), INF)
        assert total == pytest.approx(trace(alg, abs_value(a)).real, rel=1e-12)


class TestCanonicalization:
    def test_merges_equal_and_drops_zeros(self):
        mu = StepForm.from_raw([1.0, 2.0, 1.0, 5.0], [2.0, 2.0, 1.0, 0.0])
        np.testing.assert_allclose(mu.values, [2.0, 1.0])
        np.testing.assert_allclose(mu.durations, [3.0, 1.0])

    def test_idempotent(self):
        mu = StepForm.from_raw([1.0, 2.0], [2.0, 1.0])
        again = StepForm(mu.durations.copy(), mu.values.copy())
        assert again == mu

    def test_rejects_increasing(self):
        with pytest.raises(DomainError):
            StepForm.from_raw([1.0, 1.0], [1.0, 2.0])


class TestSubmajorization:
    def test_spread_dominates_flat(self):
        flat = StepForm.from_raw([1.0, 1.0], [1.0, 1.0])
        spread = StepForm.from_raw([1.0], [2.0])
        assert submajorizes(spread, flat)
        assert not submajorizes(flat, spread)

    @given(st.lists(st.floats(0.01, 5.0), min_size=1, max_size=6),
           st.lists(st.floats(0.01, 5.0), min_size=1, max_size=6))
    @settings(max_examples=100, deadline=None)
    def test_triangle_of_sums(self, xs, ys):
        alg = TracedAlgebra((len(xs),), (1.0,)) if len(xs) == len(ys) else None
        if alg is None:
            return
        a = alg.diagonal([xs])
        b = alg.diagonal([ys])
        mu_a = singular_values(alg, a)
        mu_b = singular_values(alg, b)
        mu_ab = singular_values(alg, a + b)
        alphas = np.concatenate([mu_a.breakpoints, mu_b.breakpoints, mu_ab.breakpoints])
        for al in alphas:
            assert mu_ab.head_integral(float(al)) <= (
                mu_a.head_integral(float(al)) + mu_b.head_integral(float(al)) + 1e-10)


class TestWeightedContext:
    def test_running_integral_closed_form(self):
        ctx = WeightedContext(exp_decay())
        for t in (0.0, 0.5, 2.0, 10.0):
            want = 1.0 - math.exp(-t)
            assert F_x(ctx, t) == pytest.approx(want, abs=1e-12)
        # quadrature oracle, independent of the stored closed form
        got = integrate_sentinel(lambda s: math.exp(-s), 0.0, 2.0)
        assert F_x(ctx, 2.0) == pytest.approx(got, abs=1e-10)

    def test_limits(self):
        ctx = WeightedContext(exp_decay())
        assert F_x(ctx, 0.0) == 0.0
        assert ctx.mass == pytest.approx(1.0, abs=1e-9)

    def test_rejects_infinite_mass(self):
        with pytest.raises(DomainError):
            WeightedContext(constant(1.0))

    def test_inverse_of_running_integral(self):
        ctx = WeightedContext(random_weight_step(np.random.default_rng(3)))
        for s in np.linspace(0.0, ctx.mass * 0.99, 7):
            assert F_x(ctx, ctx.F_inverse(float(s))) == pytest.approx(float(s), abs=1e-10)


class TestWeightedRearrangement:
    def test_decreasing_fixed_point(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            h = random_decreasing_step(rng)
            w = random_weight_step(rng)
            ctx = WeightedContext(w)
            t = 0.4 * min(h.support, w.support)
            s = F_x(ctx, t)
            if s >= ctx.mass:
                continue
            assert weighted_rearrangement(h, ctx, s) == pytest.approx(
                h.evaluate(t), abs=1e-12)

    def test_constant_on_support(self):
        ctx = WeightedContext(StepForm.from_raw([2.0], [1.0]))
        h = constant(3.0, support=INF)
        assert weighted_rearrangement(h, ctx, 0.5) == 3.0
        assert weighted_rearrangement(h, ctx, ctx.mass) == 0.0

    def test_weighted_head_below_lebesgue(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            base = random_decreasing_step(rng)
            perm = rng.permutation(base.values.size)
            durations, values = base.durations, base.values[perm]
            w = random_weight_step(rng)
            ctx = WeightedContext(w)
            lebesgue = rearrange_step(durations, values, None)
            weighted = rearrange_step(durations, values, w)
            for t in np.linspace(0.05, base.support * 0.95, 5):
                assert weighted.evaluate(F_x(ctx, float(t))) <= (
                    lebesgue.evaluate(float(t)) + 1e-12)

    def test_rejects_weird_input(self):
        ctx = WeightedContext(exp_decay())
        with pytest.raises(Exception):
            weighted_rearrangement(object(), ctx, 0.1)


class TestFackKosaki:
    def test_product_example(self):
        alg = TracedAlgebra((2,), (1.0,))
        f = alg.diagonal([[2.0, 1.0]])
        rep = fack_kosaki_checks(alg, f, f)
        assert rep.passed
        mu_fg = singular_values(alg, f @ f)
        mu_f = singular_values(alg, f)
        assert mu_fg.evaluate(1.0) == 1.0 <= mu_f.evaluate(0.5) * mu_f.evaluate(0.5)

    def test_random_elements(self):
        alg = TracedAlgebra((3,), (1.0,))
        rng = np.random.default_rng(12)
        for _ in range(5):
            rep = fack_kosaki_checks(alg, random_element(alg, rng),
                                     random_element(alg, rng))
            assert rep.passed

    def test_homogeneity_negative_scalar(self):
        alg = TracedAlgebra((2,), (1.0,))
        rng = np.random.default_rng(14)
        a = random_element(alg, rng)
        mu = singular_values(alg, a)
        mu2 = singular_values(alg, -2.0 * a)
        np.testing.assert_allclose(mu2.values, 2.0 * mu.values, atol=1e-12)
