import numpy as np
import pytest

from divfrontier import (
    EXCLUSIVE,
    INCLUSIVE,
    Alpha,
    GaussianParams,
    MomentParams,
    NaturalParams,
    ParameterError,
    bernoulli_family,
    bregman_kl,
    expfam_curve_point,
    frontier_kl,
    gaussian_family,
    gaussian_to_natural,
    kl_endpoints,
    kl_gaussian,
    moment_to_natural,
    natural_to_gaussian,
    natural_to_moment,
    renyi_gaussian,
)
from tests.conftest import random_gaussian


class TestParameterMaps:
    def test_standard_normal_coordinates(self):
        theta = gaussian_to_natural(GaussianParams([1.0], [[1.0]]))
        np.testing.assert_allclose(theta.theta, [1.0, -0.5], atol=1e-12)
        fam = gaussian_family(1)
        eta = natural_to_moment(theta, fam)
        # mean 1, second moment var + mean^2 = 2
        np.testing.assert_allclose(eta.eta, [1.0, 2.0], atol=1e-12)

    def test_gaussian_round_trip(self, rng):
        for _ in range(30):
            d = int(rng.integers(1, 4))
            g = random_gaussian(rng, d)
            back = natural_to_gaussian(gaussian_to_natural(g))
            np.testing.assert_allclose(back.mean, g.mean, atol=1e-9)
            np.testing.assert_allclose(back.cov, g.cov, atol=1e-9)

    def test_natural_moment_round_trip(self, rng):
        fam = gaussian_family(2)
        for _ in range(30):
            theta = gaussian_to_natural(random_gaussian(rng, 2))
            back = moment_to_natural(natural_to_moment(theta, fam), fam)
            np.testing.assert_allclose(back.theta, theta.theta, atol=1e-8)

    def test_bernoulli_round_trip(self):
        fam = bernoulli_family()
        for t in (-3.0, -0.5, 0.0, 0.7, 4.0):
            theta = NaturalParams([t])
            back = moment_to_natural(natural_to_moment(theta, fam), fam)
            np.testing.assert_allclose(back.theta, theta.theta, atol=1e-9)

    def test_bernoulli_moment_domain(self):
        fam = bernoulli_family()
        with pytest.raises(ParameterError):
            moment_to_natural(MomentParams([1.5]), fam)

    def test_rejects_nonfinite(self):
        with pytest.raises(ParameterError):
            NaturalParams([np.nan])


class TestCurvePoint:
    def test_endpoints(self, rng):
        fam = gaussian_family(2)
        tp = gaussian_to_natural(random_gaussian(rng, 2))
        tq = gaussian_to_natural(random_gaussian(rng, 2))
        for side in (EXCLUSIVE, INCLUSIVE):
            np.testing.assert_allclose(
                expfam_curve_point(tp, tq, side, 1.0, fam).theta, tp.theta, atol=1e-9
            )
            np.testing.assert_allclose(
                expfam_curve_point(tp, tq, side, 0.0, fam).theta, tq.theta, atol=1e-9
            )

    def test_exclusive_midpoint_interpolates_means(self):
        fam = gaussian_family(1)
        tp = gaussian_to_natural(GaussianParams([0.0], [[1.0]]))
        tq = gaussian_to_natural(GaussianParams([2.0], [[1.0]]))
        mid = natural_to_gaussian(expfam_curve_point(tp, tq, EXCLUSIVE, 0.5, fam))
        np.testing.assert_allclose(mid.mean, [1.0], atol=1e-12)
        np.testing.assert_allclose(mid.cov, [[1.0]], atol=1e-12)

    def test_inclusive_midpoint_interpolates_moments(self):
        fam = gaussian_family(1)
        tp = gaussian_to_natural(GaussianParams([0.0], [[1.0]]))
        tq = gaussian_to_natural(GaussianParams([0.0], [[4.0]]))
        mid = natural_to_gaussian(expfam_curve_point(tp, tq, INCLUSIVE, 0.5, fam))
        np.testing.assert_allclose(mid.cov, [[2.5]], atol=1e-12)

    def test_lambda_domain(self):
        fam = gaussian_family(1)
        t = gaussian_to_natural(GaussianParams([0.0], [[1.0]]))
        with pytest.raises(ParameterError):
            expfam_curve_point(t, t, EXCLUSIVE, 1.5, fam)

    @pytest.mark.parametrize("side", [EXCLUSIVE, INCLUSIVE])
    def test_scalarization_optimality(self, side, rng):
        # the path point must beat 10^4 random natural-parameter
        # perturbations on the weighted objective it is claimed to minimize
        fam = gaussian_family(1)
        tp = gaussian_to_natural(GaussianParams([0.0], [[1.0]]))
        tq = gaussian_to_natural(GaussianParams([1.5], [[0.6]]))
        lam = 0.3
        gamma = expfam_curve_point(tp, tq, side, lam, fam)

        def objective(theta):
            if side == EXCLUSIVE:
                return lam * bregman_kl(theta, tp.theta, fam) + (1 - lam) * bregman_kl(
                    theta, tq.theta, fam
                )
            return lam * bregman_kl(tp.theta, theta, fam) + (1 - lam) * bregman_kl(
                tq.theta, theta, fam
            )

        base = objective(gamma.theta)
        for _ in range(10_000):
            cand = gamma.theta + rng.normal(0, 0.2, 2)
            if cand[1] >= -1e-3:  # precision must stay positive
                continue
            assert objective(cand) >= base - 1e-10


class TestFrontierKL:
    def test_endpoints_match_closed_form(self, rng):
        for _ in range(10):
            d = int(rng.integers(1, 4))
            P = random_gaussian(rng, d)
            Q = random_gaussian(rng, d)
            curve = frontier_kl(P, Q, EXCLUSIVE, 51)
            pts = [(x, y) for _, x, y in curve.points]
            prec_loss, rec_loss = kl_endpoints(P, Q)
            assert any(abs(x - prec_loss) <= 1e-9 and y <= 1e-9 for x, y in pts)
            assert any(x <= 1e-9 and abs(y - rec_loss) <= 1e-9 for x, y in pts)

    def test_kl_endpoints_orientation(self):
        P = GaussianParams([0.0], [[1.0]])
        Q = GaussianParams([0.0], [[4.0]])
        prec_loss, rec_loss = kl_endpoints(P, Q)
        assert prec_loss == pytest.approx(kl_gaussian(Q, P), abs=1e-12)
        assert rec_loss == pytest.approx(kl_gaussian(P, Q), abs=1e-12)
        # wide Q covers P (good recall) but wastes mass (poor precision)
        assert prec_loss > rec_loss

    def test_identical_inputs_collapse(self):
        g = GaussianParams([1.0, -1.0], np.eye(2))
        curve = frontier_kl(g, g, EXCLUSIVE, 21)
        assert {(x, y) for _, x, y in curve.points} == {(0.0, 0.0)}

    @pytest.mark.parametrize("side", [EXCLUSIVE, INCLUSIVE])
    def test_curve_is_monotone_tradeoff(self, side):
        P = GaussianParams([0.0], [[1.0]])
        Q = GaussianParams([2.0], [[2.0]])
        curve = frontier_kl(P, Q, side, 101)
        pts = [(x, y) for _, x, y in curve.points]
        xs = [x for x, _ in pts]
        ys = [y for _, y in pts]
        assert xs == sorted(xs, reverse=True)
        assert ys == sorted(ys)

    def test_no_dominating_gaussian_on_dense_grid(self):
        # 200 x 200 mean/variance sweep of 1-D Gaussians cannot strictly
        # dominate any exclusive frontier point
        P = GaussianParams([0.0], [[1.0]])
        Q = GaussianParams([1.0], [[0.5]])
        curve = frontier_kl(P, Q, EXCLUSIVE, 41)
        means = np.linspace(-2.0, 3.0, 200)
        variances = np.linspace(0.05, 3.0, 200)
        mu, var = np.meshgrid(means, variances)
        mu = mu.ravel()
        var = var.ravel()

        def kl_rows(mu_b, var_b):
            return 0.5 * (var / var_b + (mu - mu_b) ** 2 / var_b - 1.0 + np.log(var_b / var))

        to_p = kl_rows(0.0, 1.0)
        to_q = kl_rows(1.0, 0.5)
        for _, cx, cy in curve.points:
            dominates = (to_p < cx - 1e-9) & (to_q < cy - 1e-9)
            assert not np.any(dominates)


class TestBregmanDuality:
    def test_dual_divergence_swaps_arguments(self, rng):
        # B_A(t || t') equals the Bregman divergence of the convex
        # conjugate A* evaluated at the swapped dual coordinates
        fam = gaussian_family(1)

        def conjugate(eta):
            theta = fam.inv_grad_log_partition(eta)
            return float(np.dot(theta, eta)) - fam.log_partition(theta)

        for _ in range(25):
            t1 = gaussian_to_natural(random_gaussian(rng, 1)).theta
            t2 = gaussian_to_natural(random_gaussian(rng, 1)).theta
            e1 = fam.grad_log_partition(t1)
            e2 = fam.grad_log_partition(t2)
            primal = bregman_kl(t1, t2, fam)
            dual = conjugate(e1) - conjugate(e2) - float(np.dot(t2, e1 - e2))
            assert primal == pytest.approx(dual, abs=1e-8)


class TestAlphaProfile:
    def test_divergence_increases_with_alpha(self):
        P = GaussianParams([0.0], [[1.0]])
        for sigma2 in (0.4, 0.8, 1.5):
            Q = GaussianParams([0.3], [[sigma2]])
            alphas = [Alpha.finite(a) for a in (0.2, 0.5, 0.9)] + [Alpha.one()]
            if sigma2 > 1.0:  # interpolated variance stays positive
                alphas += [Alpha.finite(a) for a in (2.0, 5.0)]
            values = [renyi_gaussian(P, Q, a) for a in alphas]
            for lo, hi in zip(values, values[1:]):
                assert lo <= hi + 1e-10

    def test_profile_minimized_at_matching_variance(self):
        # for fixed alpha the divergence is smallest when Q matches P
        P = GaussianParams([0.0], [[1.0]])
        sigmas = np.linspace(0.5, 2.0, 31)
        vals = [
            renyi_gaussian(P, GaussianParams([0.0], [[s**2]]), Alpha.finite(0.5))
            for s in sigmas
        ]
        best = sigmas[int(np.argmin(vals))]
        assert best == pytest.approx(1.0, abs=0.06)
        # and decreases toward the minimum from both sides
        k = int(np.argmin(vals))
        assert all(a >= b for a, b in zip(vals[:k], vals[1 : k + 1]))
        assert all(a <= b for a, b in zip(vals[k:], vals[k + 1 :]))
