import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divfrontier import (
    EXCLUSIVE,
    INCLUSIVE,
    Alpha,
    Histogram,
    ParameterError,
    exclusive_curve_point,
    frontier,
    funk_metric,
    inclusive_curve_point,
    infinity_geodesic_point,
    kl_curve_point,
    kl_discrete,
    pareto_filter,
    prd_from_infinity_frontier,
    prd_reference,
    renyi_discrete,
)
from tests.conftest import random_histogram

P = Histogram([0.5, 0.5])
Q = Histogram([0.25, 0.75])


def simplex_grid_2(steps=200000):
    """Fine grid on the 1-simplex, kept off the boundary."""
    t = np.linspace(1e-9, 1 - 1e-9, steps)
    return np.stack([t, 1 - t], axis=1)


class TestExclusiveCurvePoint:
    def test_endpoints(self):
        np.testing.assert_array_equal(
            exclusive_curve_point(P, Q, Alpha.finite(2), 0.0).probs, P.probs
        )
        np.testing.assert_array_equal(
            exclusive_curve_point(P, Q, Alpha.finite(2), 1.0).probs, Q.probs
        )

    def test_harmonic_midpoint(self):
        # (0.5*q_i^-1 + 0.5*p_i^-1)^-1 = (1/3, 3/5); normalized (5/14, 9/14)
        got = exclusive_curve_point(P, Q, Alpha.finite(2), 0.5)
        np.testing.assert_allclose(got.probs, [5 / 14, 9 / 14], atol=1e-12)

    def test_midpoint_matches_scalarized_minimum(self):
        # grid minimization of the alpha-divergence scalarization
        # 0.5 * sum r^2/q + 0.5 * sum r^2/p, the barycenter objective
        R = simplex_grid_2()
        obj = 0.5 * np.sum(R**2 / Q.probs, axis=1) + 0.5 * np.sum(R**2 / P.probs, axis=1)
        best = R[np.argmin(obj)]
        got = exclusive_curve_point(P, Q, Alpha.finite(2), 0.5)
        np.testing.assert_allclose(got.probs, best, atol=1e-4)

    def test_rejects_limit_tags(self):
        for alpha in (Alpha.one(), Alpha.infinity(), Alpha.zero()):
            with pytest.raises(ParameterError):
                exclusive_curve_point(P, Q, alpha, 0.5)

    def test_zero_entry_forced_to_zero_for_large_alpha(self):
        p = Histogram([0.5, 0.5, 0.0])
        q = Histogram([0.2, 0.3, 0.5])
        g = exclusive_curve_point(p, q, Alpha.finite(2), 0.3)
        assert g.probs[2] == 0.0


class TestInclusiveCurvePoint:
    def test_endpoints(self):
        np.testing.assert_array_equal(inclusive_curve_point(P, Q, Alpha.finite(2), 0.0).probs, P.probs)
        np.testing.assert_array_equal(inclusive_curve_point(P, Q, Alpha.finite(2), 1.0).probs, Q.probs)

    def test_quadratic_midpoint(self):
        expected = np.sqrt(0.5 * Q.probs**2 + 0.5 * P.probs**2)
        expected /= expected.sum()
        got = inclusive_curve_point(P, Q, Alpha.finite(2), 0.5)
        np.testing.assert_allclose(got.probs, expected, atol=1e-12)

    def test_midpoint_not_dominated_on_grid(self):
        g = inclusive_curve_point(P, Q, Alpha.finite(2), 0.5)
        a = Alpha.finite(2)
        gx = renyi_discrete(P, g, a)
        gy = renyi_discrete(Q, g, a)
        R = simplex_grid_2(20000)
        for r in R[:: 200]:
            h = Histogram(r)
            assert not (
                renyi_discrete(P, h, a) < gx - 1e-9 and renyi_discrete(Q, h, a) < gy - 1e-9
            )


class TestKLCurvePoint:
    def test_endpoints(self):
        for side in (EXCLUSIVE, INCLUSIVE):
            np.testing.assert_array_equal(kl_curve_point(P, Q, side, 0.0).probs, P.probs)
            np.testing.assert_array_equal(kl_curve_point(P, Q, side, 1.0).probs, Q.probs)

    def test_arithmetic_midpoint_inclusive(self):
        got = kl_curve_point(P, Q, INCLUSIVE, 0.5)
        np.testing.assert_allclose(got.probs, [0.375, 0.625], atol=1e-15)

    def test_geometric_midpoint_exclusive(self):
        raw = np.sqrt(P.probs * Q.probs)
        expected = raw / raw.sum()
        got = kl_curve_point(P, Q, EXCLUSIVE, 0.5)
        np.testing.assert_allclose(got.probs, expected, atol=1e-12)
        np.testing.assert_allclose(got.probs, [0.3660, 0.6340], atol=1e-4)

    def test_exclusive_minimizes_scalarized_kl(self):
        lam = 0.5
        R = simplex_grid_2()
        obj = lam * np.sum(
            R * (np.log(R) - np.log(Q.probs)), axis=1
        ) + (1 - lam) * np.sum(R * (np.log(R) - np.log(P.probs)), axis=1)
        best = R[np.argmin(obj)]
        got = kl_curve_point(P, Q, EXCLUSIVE, lam)
        np.testing.assert_allclose(got.probs, best, atol=1e-4)


class TestInfinityGeodesic:
    def test_endpoints_at_ratio_extremes(self, rng):
        for _ in range(10):
            p = random_histogram(rng, 6, floor=0.01)
            q = random_histogram(rng, 6, floor=0.01)
            ratios = q.probs / p.probs
            np.testing.assert_allclose(
                infinity_geodesic_point(p, q, float(ratios.min())).probs, p.probs, atol=1e-12
            )
            np.testing.assert_allclose(
                infinity_geodesic_point(p, q, float(ratios.max())).probs, q.probs, atol=1e-12
            )

    def test_frozen_midpoint(self):
        got = infinity_geodesic_point(P, Q, 1.0)
        np.testing.assert_allclose(got.probs, [1 / 3, 2 / 3], atol=1e-15)

    def test_domain_error(self):
        with pytest.raises(ParameterError):
            infinity_geodesic_point(P, Q, 5.0)

    def test_geodesity(self, rng):
        # F(p,q) = F(p,gamma) + F(gamma,q) along the whole curve
        worst = 0.0
        for _ in range(50):
            n = int(rng.integers(2, 9))
            p = random_histogram(rng, n, floor=0.005)
            q = random_histogram(rng, n, floor=0.005)
            ratios = q.probs / p.probs
            total = funk_metric(p, q)
            for lam in np.geomspace(ratios.min(), ratios.max(), 201):
                g = infinity_geodesic_point(p, q, float(lam))
                gap = abs(total - funk_metric(p, g) - funk_metric(g, q))
                worst = max(worst, gap)
        assert worst <= 1e-9


class TestParetoFilter:
    def test_singleton(self):
        assert pareto_filter([(1.0, 1.0)]) == [(1.0, 1.0)]

    def test_dominated_removed(self):
        pts = [(0.0, 2.0), (1.0, 1.0), (2.0, 0.0), (2.0, 2.0)]
        assert pareto_filter(pts) == [(0.0, 2.0), (1.0, 1.0), (2.0, 0.0)]

    def test_duplicates_removed(self):
        assert pareto_filter([(1.0, 1.0), (1.0, 1.0)]) == [(1.0, 1.0)]

    def test_equal_coordinate_not_dominating(self):
        # strict dominance needs both coordinates strictly smaller
        assert pareto_filter([(1.0, 1.0), (1.0, 2.0)]) == [(1.0, 1.0), (1.0, 2.0)]

    @given(
        st.lists(
            st.tuples(st.integers(0, 8), st.integers(0, 8)).map(
                lambda t: (float(t[0]), float(t[1]))
            ),
            min_size=1,
            max_size=40,
        )
    )
    @settings(max_examples=100)
    def test_matches_quadratic_scan(self, pts):
        brute = sorted(
            {
                (x, y)
                for x, y in pts
                if not any(ox < x and oy < y for ox, oy in pts)
            }
        )
        assert pareto_filter(pts) == brute


class TestFrontier:
    def test_equal_inputs_collapse(self):
        curve = frontier(P, P, Alpha.finite(2), EXCLUSIVE, 51)
        pairs = {(x, y) for _, x, y in curve.points}
        assert pairs == {(0.0, 0.0)}

    def test_disjoint_support_interior_is_finite_for_small_alpha(self):
        # order 1/2 divergences stay finite whenever supports overlap, so
        # only the curve endpoints (gamma = p or q exactly) blow up
        p = Histogram([1.0, 0.0])
        q = Histogram([0.0, 1.0])
        a = Alpha.finite(0.5)
        curve = frontier(p, q, a, EXCLUSIVE, 21)
        assert renyi_discrete(p, q, a) == float("inf")
        interior = [(x, y) for lam, x, y in curve.points if 0.0 < lam < 1.0]
        assert interior and all(np.isfinite(x) and np.isfinite(y) for x, y in interior)

    def test_disjoint_support_large_alpha_path_undefined(self):
        # above order 1 the barycenter inherits the zeros of both inputs,
        # so disjoint supports leave no admissible path point
        p = Histogram([1.0, 0.0])
        q = Histogram([0.0, 1.0])
        with pytest.raises(ParameterError):
            frontier(p, q, Alpha.finite(2), EXCLUSIVE, 21)

    @pytest.mark.parametrize("alpha", [Alpha.finite(0.5), Alpha.one(), Alpha.finite(2)])
    @pytest.mark.parametrize("side", [EXCLUSIVE, INCLUSIVE])
    def test_endpoint_identities(self, alpha, side, rng):
        p = random_histogram(rng, 4, floor=0.02)
        q = random_histogram(rng, 4, floor=0.02)
        curve = frontier(p, q, alpha, side, 101)
        if side == EXCLUSIVE:
            dp = renyi_discrete(q, p, alpha)  # at gamma=q
            dq = renyi_discrete(p, q, alpha)  # at gamma=p
        else:
            dp = renyi_discrete(p, q, alpha)
            dq = renyi_discrete(q, p, alpha)
        xs = [(x, y) for _, x, y in curve.points]
        assert any(x <= 1e-9 and abs(y - dq) <= 1e-9 for x, y in xs)
        assert any(y <= 1e-9 and abs(x - dp) <= 1e-9 for x, y in xs)

    def test_no_strict_domination_within_curve(self, rng):
        p = random_histogram(rng, 5, floor=0.02)
        q = random_histogram(rng, 5, floor=0.02)
        curve = frontier(p, q, Alpha.finite(2), EXCLUSIVE, 101)
        pts = [(x, y) for _, x, y in curve.points]
        for i, (x, y) in enumerate(pts):
            assert not any(ox < x and oy < y for ox, oy in pts)

    def test_alpha_zero_unsupported(self):
        with pytest.raises(ParameterError):
            frontier(P, Q, Alpha.zero(), EXCLUSIVE, 11)

    def test_inclusive_infinity_unsupported(self):
        with pytest.raises(ParameterError):
            frontier(P, Q, Alpha.infinity(), INCLUSIVE, 11)

    def test_infinity_dispatches_to_geodesic(self):
        curve = frontier(P, Q, Alpha.infinity(), EXCLUSIVE, 51)
        lams = [lam for lam, _, _ in curve.points]
        ratios = Q.probs / P.probs
        assert min(lams) == pytest.approx(ratios.min())
        assert max(lams) == pytest.approx(ratios.max())


class TestPRD:
    def test_equal_inputs_contain_perfect_point(self):
        curve = frontier(P, P, Alpha.infinity(), EXCLUSIVE, 51)
        assert (1.0, 1.0) in prd_from_infinity_frontier(curve).points
        assert (1.0, 1.0) in prd_reference(P, P, 51).points

    def test_disjoint_supports(self):
        p = Histogram([1.0, 0.0])
        q = Histogram([0.0, 1.0])
        curve = frontier(p, q, Alpha.infinity(), EXCLUSIVE, 51)
        assert prd_from_infinity_frontier(curve).points == ((0.0, 0.0),)
        assert prd_reference(p, q, 51).points == ((0.0, 0.0),)

    def test_matches_reference_on_fixture(self):
        curve = frontier(P, Q, Alpha.infinity(), EXCLUSIVE, 101)
        got = prd_from_infinity_frontier(curve).points
        ref = prd_reference(P, Q, 101).points
        assert len(got) == len(ref)
        for (a1, b1), (a2, b2) in zip(got, ref):
            assert abs(a1 - a2) <= 1e-9 and abs(b1 - b2) <= 1e-9

    def test_matches_reference_random(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 11))
            p = random_histogram(rng, n)
            q = random_histogram(rng, n)
            curve = frontier(p, q, Alpha.infinity(), EXCLUSIVE, 101)
            got = prd_from_infinity_frontier(curve).points
            ref = prd_reference(p, q, 101).points
            assert len(got) == len(ref)
            for (a1, b1), (a2, b2) in zip(got, ref):
                assert abs(a1 - a2) <= 1e-9 and abs(b1 - b2) <= 1e-9

    def test_subset_support_reaches_full_precision_at_half_recall(self):
        # q uniform on the first half of p's support
        p = Histogram(np.ones(10))
        q = Histogram(np.concatenate([np.ones(5), np.zeros(5)]))
        prd = prd_reference(p, q, 201)
        best_precision = max(prec for prec, _ in prd.points)
        assert best_precision == pytest.approx(1.0, abs=1e-12)
        recalls = [rec for prec, rec in prd.points if prec == best_precision]
        assert max(recalls) == pytest.approx(0.5, abs=1e-12)
        curve = frontier(p, q, Alpha.infinity(), EXCLUSIVE, 201)
        image = prd_from_infinity_frontier(curve)
        assert any(
            prec == pytest.approx(1.0, abs=1e-9) and rec == pytest.approx(0.5, abs=1e-9)
            for prec, rec in image.points
        )

    def test_all_coordinates_in_unit_square(self, rng):
        p = random_histogram(rng, 6)
        q = random_histogram(rng, 6)
        prd = prd_from_infinity_frontier(frontier(p, q, Alpha.infinity(), EXCLUSIVE, 101))
        for prec, rec in prd.points:
            assert 0.0 <= prec <= 1.0 and 0.0 <= rec <= 1.0
