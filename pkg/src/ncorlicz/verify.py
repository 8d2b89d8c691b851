"""Named verification checks over seeded corpora.

Each check states a mathematical claim, runs it over a reproducible corpus,
and reports the worst observed slack (positive slack = violation).  The CLI
``verify`` command runs the whole registry; the acceptance tests run the
criteria-bearing checks at their contract scale.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from . import orlicz as og
from . import rearrangement as rg
from . import sampling as smp
from .algebra import TracedAlgebra, abs_value, apply_function, is_projection, \
    projection_trace_norm, trace
from .errors import NotMeasurableError
from .morphisms import (
    absolute_continuity_check,
    apply_jordan,
    build_tau_T,
    composition_bound_check,
    interpolation_contraction_check,
    modular_chain_check,
    purity_check,
    radon_nikodym,
)
from .norms import (
    amemiya_norm,
    holder_check,
    kunze_norm,
    luxemburg_norm,
    modular,
    moment_bound_check,
    pistone_sempi_equivalence,
    tau_x,
)
from .rearrangement import (
    StepForm,
    WeightedContext,
    rearrange_step,
    singular_values,
    weighted_rearrangement,
)

INF = math.inf


@dataclass(frozen=True)
class Tolerances:
    """Central tolerance ladder; reports echo the effective values."""

    bisect: float = 1e-9
    slack: float = 1e-8
    norm_equivalence_rel: float = 1e-7
    exchange: float = 1e-10
    chain: float = 1e-9
    bound_slack: float = 1e-7
    submajorization: float = 1e-10
    isometry: float = 1e-8


@dataclass
class CheckResult:
    name: str
    claim: str
    samples: int
    worst_slack: float
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    scale: float = 1.0
    tolerances: Tolerances = field(default_factory=Tolerances)
    moment_factor: float = 2.0  # lowering this below 2 must make moment_chain fail

    def count(self, base: int) -> int:
        return max(1, int(round(base * self.scale)))


def _rng_for(cfg: SuiteConfig, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([cfg.seed, index]))


def _norm_gauges() -> list[og.OrliczFunction]:
    return [og.power(1.0), og.power(2.0), og.power(3.0), og.cosh_minus_one(),
            og.linear_until_cap(1.0)]


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def check_kunze_luxemburg_equivalence(cfg: SuiteConfig, rng) -> CheckResult:
    """Trace-modular and rearrangement-integral norms agree on random elements."""
    shapes = smp.algebra_shapes()
    gauges = _norm_gauges()
    n = cfg.count(200)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        a = smp.random_element(alg, rng)
        mu = singular_values(alg, a)
        for phi in gauges:
            k = kunze_norm(alg, a, phi, tol=cfg.tolerances.bisect, cross_check=False)
            l = luxemburg_norm(mu, phi, tol=cfg.tolerances.bisect)
            worst = max(worst, abs(k - l) / max(1.0, k, l))
    return CheckResult(
        name="kunze_luxemburg_equivalence",
        claim="inf{lam : tr phi(|a|/lam) <= 1} equals the Luxemburg norm of the "
              "singular value function, for every gauge including a finite cap",
        samples=n * len(gauges), worst_slack=worst,
        passed=worst <= cfg.tolerances.norm_equivalence_rel)


def check_rearrangement_exchange(cfg: SuiteConfig, rng) -> CheckResult:
    """Gauge and rearrangement commute: mu(phi(|a|)) = phi(mu(a)) pointwise."""
    shapes = smp.algebra_shapes()
    cap = og.linear_until_cap(1.0)
    gauges = [og.power(2.0), og.cosh_minus_one(), og.zero_then_linear(0.5)]
    n = cfg.count(200)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        a = smp.random_element(alg, rng)
        mu = singular_values(alg, a)
        todo = list(gauges)
        if mu.sup_value > 0:  # cap gauge on elements with spectrum below the cap
            a_small = a * (0.9 / mu.sup_value)
            worst = max(worst, _exchange_gap(alg, a_small, cap))
        for phi in todo:
            worst = max(worst, _exchange_gap(alg, a, phi))
    return CheckResult(
        name="rearrangement_exchange",
        claim="singular values of phi(|a|) equal phi applied to the singular "
              "values of a, as step functions",
        samples=n * 4, worst_slack=worst, passed=worst <= cfg.tolerances.exchange)


def _exchange_gap(alg, a, phi) -> float:
    mu = singular_values(alg, a)
    left = singular_values(alg, apply_function(phi, a))
    right = StepForm(mu.durations.copy(), phi.eval_many(mu.values)) if not mu.is_zero \
        else StepForm(np.array([]), np.array([]))
    pts = np.concatenate([[0.0], left.breakpoints, right.breakpoints])
    pts = np.unique(np.concatenate([pts, 0.5 * (pts[1:] + pts[:-1]),
                                    [max(left.support, right.support) + 1.0]]))
    return max(abs(left.evaluate(float(t)) - right.evaluate(float(t))) for t in pts)


def check_holder_pairing(cfg: SuiteConfig, rng) -> CheckResult:
    """|tr(fg)| is dominated by the dual-gauge/gauge norm product."""
    shapes = smp.algebra_shapes()
    gauges = [og.power(2.0), og.cosh_minus_one(), og.exp_minus_one()]
    n = cfg.count(500)
    worst = 0.0
    cs_worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        f = smp.random_element(alg, rng)
        g = smp.random_element(alg, rng)
        for phi in gauges:
            rep = holder_check(alg, f, g, phi, tol=cfg.tolerances.slack)
            worst = max(worst, rep.lhs - rep.rhs)
        # the quadratic gauge reduces to Cauchy-Schwarz in the trace 2-norm
        mu_f = singular_values(alg, f)
        mu_g = singular_values(alg, g)
        two_f = math.sqrt(trace(alg, f @ f.adjoint()).real)
        two_g = math.sqrt(trace(alg, g @ g.adjoint()).real)
        ame = amemiya_norm(mu_f, og.conjugate(og.power(2.0)))
        lux = luxemburg_norm(mu_g, og.power(2.0))
        cs_worst = max(cs_worst, abs(ame - two_f) / max(1.0, two_f),
                       abs(lux - two_g) / max(1.0, two_g))
    passed = worst <= cfg.tolerances.slack and cs_worst <= cfg.tolerances.norm_equivalence_rel
    return CheckResult(
        name="holder_pairing",
        claim="|tr(fg)| <= (Amemiya norm of f in the conjugate gauge) * "
              "(Luxemburg norm of g); quadratic case matches the trace 2-norm",
        samples=n * len(gauges), worst_slack=max(worst, cs_worst), passed=passed,
        details={"cauchy_schwarz_rel_error": cs_worst})


def check_weighted_norm_axioms(cfg: SuiteConfig, rng) -> CheckResult:
    """The weighted Luxemburg functional is a norm: triangle + homogeneity."""
    shapes = smp.algebra_shapes()
    contexts = [
        WeightedContext(StepForm.from_raw([1.0, 1.0], [0.7, 0.3])),
        WeightedContext(StepForm.from_raw([0.5, 1.0, 2.0], [1.2, 0.6, 0.1])),
        WeightedContext(rg.exp_decay()),
    ]
    psi = og.cosh_minus_one()
    n = cfg.count(300)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        ctx = contexts[i % len(contexts)]
        a = smp.random_element(alg, rng)
        b = smp.random_element(alg, rng)
        na = luxemburg_norm(singular_values(alg, a), psi, ctx, tol=cfg.tolerances.bisect)
        nb = luxemburg_norm(singular_values(alg, b), psi, ctx, tol=cfg.tolerances.bisect)
        nab = luxemburg_norm(singular_values(alg, a + b), psi, ctx, tol=cfg.tolerances.bisect)
        worst = max(worst, nab - (na + nb))
        alpha = float(rng.uniform(0.2, 5.0))
        nscaled = luxemburg_norm(singular_values(alg, alpha * a), psi, ctx,
                                 tol=cfg.tolerances.bisect)
        worst = max(worst, abs(nscaled - alpha * na) / max(1.0, alpha * na))
    return CheckResult(
        name="weighted_norm_axioms",
        claim="triangle inequality and absolute homogeneity of the weighted "
              "Luxemburg norm over step and exponential weights",
        samples=n, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def check_weighted_rearrangement_identity(cfg: SuiteConfig, rng) -> CheckResult:
    """Decreasing functions are fixed points of the weighted rearrangement."""
    n = cfg.count(100)
    worst = 0.0
    ineq_worst = 0.0
    for _ in range(n):
        w = smp.random_weight_step(rng)
        ctx = WeightedContext(w)
        h = smp.random_decreasing_step(rng)
        # sample strictly inside pieces of h and inside the weight support
        for frac in (0.25, 0.5, 0.9):
            t = frac * min(h.support, w.support) * 0.999
            if t <= 0:
                continue
            s = ctx.F(t)
            if s >= ctx.mass:
                continue
            lhs = weighted_rearrangement(h, ctx, s)
            worst = max(worst, abs(lhs - h.evaluate(t)))
        # arbitrary (non-monotone) step: weighted head never exceeds Lebesgue
        perm = rng.permutation(h.values.size)
        hv = h.values[perm]
        lebesgue = rearrange_step(h.durations, hv, None)
        weighted = rearrange_step(h.durations, hv, w)
        for frac in (0.1, 0.5, 0.9):
            t = frac * h.support
            ineq_worst = max(ineq_worst,
                             weighted.evaluate(ctx.F(t)) - lebesgue.evaluate(t))
    return CheckResult(
        name="weighted_rearrangement_identity",
        claim="a decreasing step function equals its weighted rearrangement "
              "composed with the running weight integral; for arbitrary steps "
              "the weighted rearrangement is dominated by the Lebesgue one",
        samples=n, worst_slack=max(worst, ineq_worst),
        passed=worst <= cfg.tolerances.exchange and ineq_worst <= cfg.tolerances.exchange)


def check_pistone_sempi_catalog(cfg: SuiteConfig, rng) -> CheckResult:
    """Exponential-moment membership agrees with cosh-gauge norm membership."""
    mus = [
        ("bounded_step", StepForm.from_raw([1.0, 1.0], [1.5, 0.5]), True),
        ("log_divergent", rg.log_reciprocal(1.0), True),
        ("power_divergent", rg.power_decay(0.5, 1.0), False),
        ("reciprocal", rg.reciprocal(1.0), False),
    ]
    weights = [
        ("exp_decay", WeightedContext(rg.exp_decay())),
        ("step", WeightedContext(StepForm.from_raw([1.0, 1.0], [0.7, 0.3]))),
    ]
    rows = []
    agree = True
    correct = True
    for mname, mu, expected in mus:
        for wname, ctx in weights:
            rep = pistone_sempi_equivalence(mu, ctx)
            rows.append({"mu": mname, "weight": wname,
                         "laplace": rep.member_via_laplace,
                         "norm": rep.member_via_norm,
                         "expected": expected})
            agree = agree and rep.agree
            correct = correct and (rep.member_via_laplace == expected)
    return CheckResult(
        name="pistone_sempi_catalog",
        claim="two-sided exponential moments near zero are finite exactly when "
              "the cosh-minus-one weighted modular is finite at some scaling; "
              "catalog spans bounded, log-, power-divergent and reciprocal data",
        samples=len(rows), worst_slack=0.0 if (agree and correct) else 1.0,
        passed=agree and correct, details={"rows": rows})


def check_quasi_trace_suite(cfg: SuiteConfig, rng) -> CheckResult:
    """The rearrangement pairing behaves like a finite faithful normal trace."""
    shapes = smp.algebra_shapes()
    n = cfg.count(200)
    worst = 0.0
    exact_gap = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        x = smp.random_state(alg, rng)
        ctx = WeightedContext(singular_values(alg, x))
        a = smp.random_positive(alg, rng)
        b = smp.random_positive(alg, rng)
        mu_a = singular_values(alg, a)
        mu_b = singular_values(alg, b)
        t_a = tau_x(mu_a, ctx)
        t_b = tau_x(mu_b, ctx)
        t_ab = tau_x(singular_values(alg, a + b), ctx)
        worst = max(worst, t_ab - (t_a + t_b))  # subadditivity
        alpha = float(rng.uniform(0.1, 4.0))
        worst = max(worst, abs(tau_x(mu_a.scaled(alpha), ctx) - alpha * t_a))
        c = smp.random_element(alg, rng)
        worst = max(worst, abs(tau_x(singular_values(alg, c.adjoint() @ c), ctx)
                               - tau_x(singular_values(alg, c @ c.adjoint()), ctx)))
        if t_a <= 0:  # faithfulness on nonzero positives
            worst = max(worst, 1.0)
        # monotone continuity along spectral caps increasing to a
        sup_a = mu_a.sup_value
        caps = [sup_a * k / 6.0 for k in range(1, 6)] + [sup_a * 2.0]
        prev = -INF
        seq_vals = []
        for cpv in caps:
            capped = alg.element([
                _clip_spectrum(blk, cpv) for blk in a.blocks])
            v = tau_x(singular_values(alg, capped), ctx)
            worst = max(worst, prev - v - 1e-12)  # must be nondecreasing
            prev = v
            seq_vals.append(v)
        worst = max(worst, abs(seq_vals[-1] - t_a))
        # pairing against the identity gives back the weight mass exactly
        one = alg.identity()
        exact_gap = max(exact_gap, abs(tau_x(singular_values(alg, one), ctx) - ctx.mass))
    return CheckResult(
        name="quasi_trace_suite",
        claim="the pairing of rearrangements is subadditive, homogeneous, "
              "tracial, faithful, continuous along increasing sequences, and "
              "returns the weight mass on the identity",
        samples=n, worst_slack=max(worst, exact_gap),
        passed=worst <= cfg.tolerances.slack and exact_gap <= 1e-12)


def _clip_spectrum(block: np.ndarray, cap: float) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (block + block.conj().T))
    return v @ np.diag(np.minimum(w, cap)) @ v.conj().T


def check_moment_chain(cfg: SuiteConfig, rng) -> CheckResult:
    """tr(x y^n) <= 2n * integral mu(y)^n mu(x) for unit-trace positive x."""
    shapes = smp.algebra_shapes()
    n_pairs = cfg.count(200)
    worst = -INF
    count = 0
    for i in range(n_pairs):
        alg = shapes[i % len(shapes)]
        x = smp.random_state(alg, rng)
        y = smp.random_positive(alg, rng)
        for order in (1, 2, 3, 5):
            rep = moment_bound_check(alg, x, y, order, factor=cfg.moment_factor)
            worst = max(worst, rep.lhs - rep.rhs)
            count += 1
    return CheckResult(
        name="moment_chain",
        claim="moments of a positive variable against a state are dominated by "
              "2n times the rearrangement pairing of the n-th power",
        samples=count, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def check_gauge_threshold_bounds(cfg: SuiteConfig, rng) -> CheckResult:
    """Threshold inequalities tie gauge norms to the operator norm."""
    shapes = smp.algebra_shapes()
    low = og.zero_then_linear(0.7)
    cap = og.linear_until_cap(1.3)
    scalers = [og.power(2.0), og.cosh_minus_one()]
    n = cfg.count(200)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        a = smp.random_element(alg, rng)
        mu = singular_values(alg, a)
        if mu.is_zero:
            continue
        sup = mu.sup_value
        worst = max(worst, low.a_phi * luxemburg_norm(mu, low) - sup)
        worst = max(worst, sup - cap.b_phi * luxemburg_norm(mu, cap))
        beta = float(rng.uniform(0.05, 1.0))
        for phi in scalers:
            lhs = trace(alg, apply_function(phi, a, beta)).real
            rhs = beta * trace(alg, apply_function(phi, a, 1.0)).real
            worst = max(worst, lhs - rhs)
    return CheckResult(
        name="gauge_threshold_bounds",
        claim="a_phi * norm <= sup norm; b_phi * norm >= sup norm; and "
              "tr phi(beta |a|) <= beta tr phi(|a|) for beta <= 1",
        samples=n, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def check_projection_norm_formula(cfg: SuiteConfig, rng) -> CheckResult:
    """Projection norms come from the formal inverse of the gauge at 1/trace."""
    shapes = smp.algebra_shapes()
    gauges = [og.power(2.0), og.power(3.0), og.cosh_minus_one(),
              og.exp_minus_one(), og.linear_until_cap(1.0), og.t_log1p()]
    n = cfg.count(50)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        e = smp.random_projection(alg, rng)
        phi = gauges[i % len(gauges)]
        formula = projection_trace_norm(alg, e, phi)
        oracle = luxemburg_norm(singular_values(alg, e), phi, tol=1e-10)
        worst = max(worst, abs(formula - oracle) / max(1.0, formula))
    return CheckResult(
        name="projection_norm_formula",
        claim="the gauge norm of a projection equals one over the formal "
              "inverse of the gauge evaluated at the reciprocal trace",
        samples=n, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def _psi_phi2_pairs() -> list[tuple[str, og.OrliczFunction, og.OrliczFunction]]:
    return [
        ("identity*square", og.power(1.0), og.power(2.0)),
        ("square*square", og.power(2.0), og.power(2.0)),
        ("halfsquare*cosh", og.power_over_p(2.0), og.cosh_minus_one()),
        ("threshold*square", og.zero_then_linear(0.5), og.power(2.0)),
        ("exp*tlog", og.exp_minus_one(), og.t_log1p()),
    ]


def check_composition_bound(cfg: SuiteConfig, rng) -> CheckResult:
    """Composition operators are bounded by the dual-gauge norm of the density."""
    morphs = smp.morphism_catalog(rng)
    pairs = _psi_phi2_pairs()
    samples_per = max(2, cfg.count(6))
    worst = -INF
    chain_worst = 0.0
    total = 0
    for _, J in morphs:
        for _, psi, phi2 in pairs:
            rep = composition_bound_check(J, psi, phi2, samples=samples_per,
                                          rng=rng, tol=cfg.tolerances.bound_slack)
            worst = max(worst, rep.max_ratio - rep.bound)
            total += rep.samples
            for _ in range(2):
                a = smp.random_self_adjoint(J.source, rng)
                phi1 = og.compose_orlicz(psi, phi2)
                nrm = luxemburg_norm(singular_values(J.source, a), phi1)
                if nrm == 0:
                    continue
                chain = modular_chain_check(J, psi, phi2, a * (0.9 / nrm),
                                            tol=cfg.tolerances.chain)
                if chain.hypothesis_ok:
                    chain_worst = max(chain_worst, chain.max_pairwise_gap)
                    if not chain.passed:
                        worst = max(worst, 1.0)
    return CheckResult(
        name="composition_bound",
        claim="unit-ball self-adjoint elements map into the ball of radius "
              "max(1, dual-gauge norm of the trace density); the four modular "
              "evaluation routes agree along the way",
        samples=total, worst_slack=max(worst, 0.0),
        passed=worst <= cfg.tolerances.bound_slack and chain_worst <= 1e-6,
        details={"max_chain_gap": chain_worst})


def check_tau_T_construction(cfg: SuiteConfig, rng) -> CheckResult:
    """The kernel-patched pulled-back trace is tracial, faithful, dominating."""
    morphs = smp.morphism_catalog(rng)
    worst = 0.0
    total = 0
    for _, J in morphs:
        tau_T = build_tau_T(J)
        for _ in range(cfg.count(8)):
            a = smp.random_element(J.source, rng)
            lhs = tau_T(a.adjoint() @ a).real
            rhs = tau_T(a @ a.adjoint()).real
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs)))
            p = smp.random_positive(J.source, rng)
            tp = tau_T(p).real
            if tp <= 0:
                worst = max(worst, 1.0)
            pulled = trace(J.target, apply_jordan(J, p)).real
            worst = max(worst, pulled - tp)
            total += 1
    return CheckResult(
        name="tau_T_construction",
        claim="tr_source(e a) + tr_target(J((1-e) a)) is a faithful trace "
              "dominating the pulled-back trace on positives",
        samples=total, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def check_interpolation_contraction(cfg: SuiteConfig, rng) -> CheckResult:
    """Positive maps with trace and identity bounds contract gauge norms."""
    maps = smp.positive_map_catalog(rng)
    gauges = [og.power(2.0), og.cosh_minus_one()]
    per = max(2, cfg.count(300) // (len(maps) * len(gauges)))
    worst = -INF
    sub_ok = True
    total = 0
    for _, T in maps:
        for phi in gauges:
            rep = interpolation_contraction_check(T, phi, samples=per, rng=rng,
                                                  tol=cfg.tolerances.slack)
            worst = max(worst, rep.max_norm_excess / max(1.0, rep.bound))
            sub_ok = sub_ok and rep.submajorization_ok and rep.positivity_ok
            total += rep.samples
    return CheckResult(
        name="interpolation_contraction",
        claim="images under a positive map scaled by max(trace constant, "
              "image of identity) are submajorized by the input, and gauge "
              "norms contract accordingly",
        samples=total, worst_slack=max(worst, 0.0),
        passed=sub_ok and worst <= cfg.tolerances.slack)


def check_purity_detection(cfg: SuiteConfig, rng) -> CheckResult:
    """Choi rank one recognizes pure completely positive maps."""
    rows = []
    ok = True
    cases = [
        ("identity_channel", smp.identity_channel(2), True),
        ("isometry_compression", smp.isometry_compression_map(rng), True),
        ("depolarizing_m2", smp.depolarizing_map(2), False),
        ("pinching_m3", smp.pinching_map(3), False),
    ]
    for name, T, expected in cases:
        got = purity_check(T)
        rows.append({"map": name, "pure": got, "expected": expected})
        ok = ok and got == expected
    choi = smp.depolarizing_map(2).choi_matrix()
    eigs = np.sort(np.linalg.eigvalsh(choi))
    ok = ok and np.allclose(eigs, 0.5, atol=1e-10)  # four equal eigenvalues 1/2
    return CheckResult(
        name="purity_detection",
        claim="a completely positive map dominates only its scalar multiples "
              "exactly when its Choi matrix has rank one",
        samples=len(cases), worst_slack=0.0 if ok else 1.0, passed=ok,
        details={"rows": rows})


def check_jordan_structure(cfg: SuiteConfig, rng) -> CheckResult:
    """Constructed morphisms satisfy the Jordan axioms and trace duality."""
    morphs = smp.morphism_catalog(rng)
    worst = 0.0
    total = 0
    for _, J in morphs:
        one = J.source.identity()
        jold = apply_jordan(J, one)
        if not is_projection(jold, 1e-10):
            worst = max(worst, 1.0)
        f = radon_nikodym(J)
        for _ in range(cfg.count(6)):
            a = smp.random_element(J.source, rng)
            b = smp.random_element(J.source, rng)
            sym = 0.5 * ((a @ b) + (b @ a))
            lhs = apply_jordan(J, sym)
            ja, jb = apply_jordan(J, a), apply_jordan(J, b)
            rhs = 0.5 * ((ja @ jb) + (jb @ ja))
            worst = max(worst, (lhs - rhs).sup_norm())
            worst = max(worst, (apply_jordan(J, a.adjoint()) - ja.adjoint()).sup_norm())
            worst = max(worst, abs(trace(J.target, ja) - trace(J.source, f @ a)))
            total += 1
        rep = absolute_continuity_check(J, rng=rng)
        if not rep.verified:
            worst = max(worst, 1.0)
        sa = smp.random_self_adjoint(J.source, rng)
        gap = (abs_value(apply_jordan(J, sa))
               - apply_jordan(J, abs_value(sa))).sup_norm()
        worst = max(worst, gap)
    return CheckResult(
        name="jordan_structure",
        claim="block morphisms preserve the symmetrized product, adjoints and "
              "absolute values; their trace pulls back through a central "
              "density; the pulled-back trace is epsilon-delta continuous",
        samples=total, worst_slack=worst, passed=worst <= 1e-9)


def check_fack_kosaki(cfg: SuiteConfig, rng) -> CheckResult:
    """Singular-value product, symmetry and homogeneity inequalities."""
    from .rearrangement import fack_kosaki_checks
    shapes = smp.algebra_shapes()
    n = cfg.count(40)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        rep = fack_kosaki_checks(alg, smp.random_element(alg, rng),
                                 smp.random_element(alg, rng))
        worst = max(worst, rep.product_violation, rep.trace_symmetry_violation,
                    rep.homogeneity_violation)
    return CheckResult(
        name="fack_kosaki",
        claim="mu_{t+s}(fg) <= mu_t(f) mu_s(g); mu(f*f) = mu(ff*); "
              "mu(alpha f) = |alpha| mu(f)",
        samples=n, worst_slack=worst, passed=worst <= 1e-9)


def check_rearrangement_laws(cfg: SuiteConfig, rng) -> CheckResult:
    """Distribution-function definition, symmetry, head totals, idempotence."""
    shapes = smp.algebra_shapes()
    n = cfg.count(60)
    worst = 0.0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        a = smp.random_element(alg, rng)
        mu = singular_values(alg, a)
        mu_abs = singular_values(alg, abs_value(a))
        mu_adj = singular_values(alg, a.adjoint())
        pts = np.concatenate([[0.0], mu.breakpoints, [mu.support + 1.0]])
        for t in pts:
            worst = max(worst, abs(mu.evaluate(float(t)) - mu_abs.evaluate(float(t))))
            worst = max(worst, abs(mu.evaluate(float(t)) - mu_adj.evaluate(float(t))))
        worst = max(worst, abs(mu.total_integral()
                               - trace(alg, abs_value(a)).real))
        # distribution oracle: mu_t(a) <= s iff weighted count of spectrum > s is <= t
        eigs, weights = [], []
        for w, blk in zip(alg.weights, abs_value(a).blocks):
            ev = np.linalg.eigvalsh(blk)
            eigs.extend(ev)
            weights.extend([w] * len(ev))
        eigs, weights = np.array(eigs), np.array(weights)
        for t in [0.0, 0.3 * mu.support, 0.8 * mu.support]:
            for s in np.linspace(0, mu.sup_value * 1.1, 7):
                dist = float(weights[eigs > s].sum())
                lhs = mu.evaluate(float(t)) <= s + 1e-12
                rhs = dist <= t + 1e-12
                if lhs != rhs:
                    worst = max(worst, 1.0)
        # triangle submajorization of sums
        b = smp.random_element(alg, rng)
        mu_b = singular_values(alg, b)
        mu_ab = singular_values(alg, a + b)
        alphas = np.unique(np.concatenate([mu.breakpoints, mu_b.breakpoints,
                                           mu_ab.breakpoints]))
        for al in alphas:
            gap = (mu_ab.head_integral(float(al)) - mu.head_integral(float(al))
                   - mu_b.head_integral(float(al)))
            worst = max(worst, gap)
        # canonicalization is idempotent
        again = StepForm(mu.durations.copy(), mu.values.copy())
        if again != mu:
            worst = max(worst, 1.0)
    return CheckResult(
        name="rearrangement_laws",
        claim="singular values are invariant under absolute value and "
              "adjoints, integrate to the trace of |a|, obey the distribution "
              "definition and the head-integral triangle inequality",
        samples=n, worst_slack=worst, passed=worst <= 1e-9)


def check_orlicz_function_laws(cfg: SuiteConfig, rng) -> CheckResult:
    """Convexity, scaling, duality and inversion laws of the gauge catalog."""
    gauges = [og.power(1.0), og.power(2.0), og.power_over_p(3.0),
              og.cosh_minus_one(), og.exp_minus_one(), og.t_log1p(),
              og.zero_then_linear(1.0), og.linear_until_cap(1.0)]
    grid = np.concatenate([np.linspace(0.0, 3.0, 25), np.logspace(-3, 1, 15)])
    worst = 0.0
    for phi in gauges:
        worst = max(worst, og.convexity_gap(phi, grid))
        for beta in (0.1, 0.5, 0.9, 1.0):
            for t in grid:
                ft, fbt = phi(float(t)), phi(float(beta * t))
                if math.isfinite(ft):
                    worst = max(worst, fbt - beta * ft)
        star = og.conjugate(phi)
        for u in np.linspace(0.0, 2.5, 12):
            for v in np.linspace(0.0, 2.5, 12):
                fu, gv = phi(float(u)), star(float(v))
                if math.isfinite(fu) and math.isfinite(gv):
                    worst = max(worst, u * v - fu - gv)
        cap_value = phi.value_at_b if phi.b_phi < INF else INF
        for t in [0.0, 0.3, 1.0, 2.7, 11.0]:
            it = og.formal_inverse(phi, t)
            expected = min(t, cap_value) if phi.b_phi < INF else t
            if t <= 1e-15 and phi.a_phi > 0:
                worst = max(worst, abs(it - phi.a_phi))
            else:
                worst = max(worst, abs(phi(it) - expected) / max(1.0, expected)
                            if math.isfinite(expected) else 0.0)
    # biconjugation: closed-form pairs are exact, numeric path within 1e-7
    for phi in [og.power(2.0), og.power_over_p(2.0), og.cosh_minus_one(),
                og.t_log1p()]:
        bic = og.conjugate(og.conjugate(phi))
        for t in np.linspace(0.05, 4.0, 12):
            a, b = phi(float(t)), bic(float(t))
            worst = max(worst, abs(a - b) / max(1.0, a))
    # Delta2 probes: powers give the exact doubling constant, caps fail
    rep = og.delta2_probe(og.power(2.0))
    if not (rep.satisfied and abs(rep.constant - 4.0) <= 1e-12):
        worst = max(worst, 1.0)
    rep = og.delta2_probe(og.linear_until_cap(1.0))
    if rep.satisfied is not False:
        worst = max(worst, 1.0)
    rep = og.delta2_probe(og.cosh_minus_one())
    if rep.satisfied is not False:
        worst = max(worst, 1.0)
    return CheckResult(
        name="orlicz_function_laws",
        claim="midpoint convexity, sublinearity under shrinking, the pairing "
              "inequality with the conjugate, cap-aware inversion, "
              "biconjugation, and doubling-constant probes",
        samples=len(gauges), worst_slack=worst, passed=worst <= 1e-6)


def check_amemiya_sandwich(cfg: SuiteConfig, rng) -> CheckResult:
    """Luxemburg <= Amemiya <= 2 * Luxemburg, and the linear-gauge limit."""
    gauges = [og.power(1.0), og.power(2.0), og.cosh_minus_one(), og.exp_minus_one()]
    n = cfg.count(60)
    worst = 0.0
    for i in range(n):
        mu = smp.random_decreasing_step(rng)
        phi = gauges[i % len(gauges)]
        lux = luxemburg_norm(mu, phi, tol=1e-10)
        ame = amemiya_norm(mu, phi, tol=1e-10)
        worst = max(worst, lux - ame, ame - 2.0 * lux)
    mu = smp.random_decreasing_step(rng)
    total = mu.total_integral()
    worst = max(worst, abs(amemiya_norm(mu, og.power(1.0)) - total) / max(1.0, total))
    return CheckResult(
        name="amemiya_sandwich",
        claim="the Amemiya norm lies between the Luxemburg norm and twice it; "
              "for the linear gauge it reproduces the total integral in the "
              "large-k limit",
        samples=n, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def check_modular_at_norm(cfg: SuiteConfig, rng) -> CheckResult:
    """At the Luxemburg norm the modular sits at the unit boundary."""
    gauges = [og.power(2.0), og.cosh_minus_one(), og.exp_minus_one()]
    n = cfg.count(50)
    tol = 1e-9
    worst = 0.0
    for i in range(n):
        mu = smp.random_decreasing_step(rng)
        phi = gauges[i % len(gauges)]
        lam = luxemburg_norm(mu, phi, tol=tol)
        if lam == 0:
            continue
        at = modular(mu, phi, 1.0 / lam)
        worst = max(worst, at - (1.0 + tol * 10))
        below = modular(mu, phi, 1.0 / (lam * (1.0 - 10.0 * tol)))
        if below <= 1.0 - tol:
            worst = max(worst, (1.0 - tol) - below)
    return CheckResult(
        name="modular_at_norm",
        claim="the modular evaluated at the norm scaling is at most one, and "
              "any visibly smaller scaling pushes it above one",
        samples=n, worst_slack=worst, passed=worst <= 1e-6)


def check_delta2_norm_finiteness(cfg: SuiteConfig, rng) -> CheckResult:
    """Doubling gauges: finite norm iff finite modular; cap gauges break it."""
    shapes = smp.algebra_shapes()
    n = cfg.count(40)
    ok = True
    for i in range(n):
        alg = shapes[i % len(shapes)]
        a = smp.random_element(alg, rng) * float(rng.uniform(0.5, 1000.0))
        mu = singular_values(alg, a)
        for phi in [og.power(2.0), og.power(3.0)]:
            finite_norm = True
            try:
                luxemburg_norm(mu, phi)
            except Exception:
                finite_norm = False
            finite_modular = math.isfinite(modular(mu, phi, 1.0))
            ok = ok and (finite_norm == finite_modular)
    # converse failure witness for a non-doubling cap gauge
    cap = og.linear_until_cap(1.0)
    big = StepForm.from_raw([1.0], [5.0])
    witness_norm = luxemburg_norm(big, cap)
    witness_modular = modular(big, cap, 1.0)
    witness = math.isfinite(witness_norm) and math.isinf(witness_modular)
    return CheckResult(
        name="delta2_norm_finiteness",
        claim="under a doubling gauge the norm is finite exactly when the "
              "unscaled modular is; a cap gauge admits finite norm with "
              "infinite modular",
        samples=n, worst_slack=0.0 if (ok and witness) else 1.0,
        passed=ok and witness,
        details={"witness_norm": witness_norm})


def check_composed_gauge_norm_bound(cfg: SuiteConfig, rng) -> CheckResult:
    """Applying the inner gauge contracts from the composed to the outer norm."""
    shapes = smp.algebra_shapes()
    pairs = _psi_phi2_pairs()
    n = cfg.count(50)
    worst = 0.0
    used = 0
    for i in range(n):
        alg = shapes[i % len(shapes)]
        _, psi, phi2 = pairs[i % len(pairs)]
        phi1 = og.compose_orlicz(psi, phi2)
        a = smp.random_self_adjoint(alg, rng)
        nrm = luxemburg_norm(singular_values(alg, a), phi1)
        if nrm == 0:
            continue
        a = a * (0.85 / nrm)
        n1 = luxemburg_norm(singular_values(alg, a), phi1)
        try:
            inner = apply_function(phi2, a)
        except NotMeasurableError:
            continue
        npsi = luxemburg_norm(singular_values(alg, inner), psi)
        worst = max(worst, npsi - n1)
        used += 1
    return CheckResult(
        name="composed_gauge_norm_bound",
        claim="for unit-ball elements of the composed gauge, the outer-gauge "
              "norm of the inner-gauge image never exceeds the composed norm",
        samples=used, worst_slack=worst, passed=worst <= cfg.tolerances.slack)


def check_commutative_reweighting_isometry(cfg: SuiteConfig, rng) -> CheckResult:
    """Weighted norms over a diagonal density match re-weighted trace norms."""
    n = cfg.count(40)
    psi_list = [og.cosh_minus_one(), og.power(2.0)]
    worst = 0.0
    additive_worst = 0.0
    for i in range(n):
        dim = int(rng.integers(2, 6))
        alg = TracedAlgebra((1,) * dim, (1.0,) * dim)
        xs = np.sort(rng.uniform(0.2, 2.0, size=dim))[::-1]
        x = alg.diagonal([[v] for v in xs])
        ctx = WeightedContext(singular_values(alg, x))
        reweighted = TracedAlgebra((1,) * dim, tuple(float(v) for v in xs))

        def sorted_diag():
            vals = np.sort(rng.uniform(0.0, 3.0, size=dim))[::-1]
            return vals

        fa, fb = sorted_diag(), sorted_diag()
        # additivity of the pairing on the similarly-ordered cone comes first
        mu_a = StepForm.from_raw(np.ones(dim), fa)
        mu_b = StepForm.from_raw(np.ones(dim), fb)
        mu_ab = StepForm.from_raw(np.ones(dim), fa + fb)
        additive_worst = max(additive_worst, abs(
            tau_x(mu_ab, ctx) - tau_x(mu_a, ctx) - tau_x(mu_b, ctx)))
        psi = psi_list[i % len(psi_list)]
        f = alg.diagonal([[v] for v in fa])
        weighted = luxemburg_norm(mu_a, psi, ctx, tol=1e-10)
        rew_f = reweighted.diagonal([[v] for v in fa])
        rew = kunze_norm(reweighted, rew_f, psi, tol=1e-10, cross_check=False)
        worst = max(worst, abs(weighted - rew) / max(1.0, rew))
    return CheckResult(
        name="commutative_reweighting_isometry",
        claim="on commuting data ordered like the density, the weighted "
              "Luxemburg norm equals the trace-modular norm of the re-weighted "
              "algebra, after the pairing is verified additive on that cone",
        samples=n, worst_slack=max(worst, additive_worst),
        passed=worst <= cfg.tolerances.isometry and additive_worst <= 1e-10)


# ---------------------------------------------------------------------------
# Registry and runner
# ---------------------------------------------------------------------------

CHECKS: dict[str, Callable[[SuiteConfig, np.random.Generator], CheckResult]] = {
    fn.__name__.removeprefix("check_"): fn for fn in [
        check_amemiya_sandwich,
        check_commutative_reweighting_isometry,
        check_composed_gauge_norm_bound,
        check_composition_bound,
        check_delta2_norm_finiteness,
        check_fack_kosaki,
        check_gauge_threshold_bounds,
        check_holder_pairing,
        check_interpolation_contraction,
        check_jordan_structure,
        check_kunze_luxemburg_equivalence,
        check_modular_at_norm,
        check_moment_chain,
        check_orlicz_function_laws,
        check_pistone_sempi_catalog,
        check_projection_norm_formula,
        check_purity_detection,
        check_quasi_trace_suite,
        check_rearrangement_exchange,
        check_rearrangement_laws,
        check_tau_T_construction,
        check_weighted_norm_axioms,
        check_weighted_rearrangement_identity,
    ]
}


def run_suite(cfg: SuiteConfig, names: Optional[list[str]] = None) -> dict:
    """Run the named checks (all by default) and assemble a sorted report."""
    selected = sorted(CHECKS) if names is None else sorted(names)
    results = []
    for name in selected:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}; known: {sorted(CHECKS)}")
        rng = _rng_for(cfg, sorted(CHECKS).index(name))
        results.append(CHECKS[name](cfg, rng))
    report = {
        "suite": "ncorlicz-verify",
        "seed": cfg.seed,
        "scale": cfg.scale,
        "tolerances": asdict(cfg.tolerances),
        "checks": [
            {"name": r.name, "claim": r.claim, "samples": r.samples,
             "worst_slack": r.worst_slack, "pass": r.passed,
             **({"details": r.details} if r.details else {})}
            for r in results
        ],
        "all_pass": all(r.passed for r in results),
    }
    return report
