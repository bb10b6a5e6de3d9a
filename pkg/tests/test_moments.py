import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from censored_evi import (
    GPD,
    ReverseBurr,
    beta_function,
    d_term,
    fit,
    from_observations,
    limit_l_alpha,
    log_excesses,
    make_censored,
    moment_km,
    moment_leurgans,
    moment_set,
    moment_unweighted,
    scale_a_nk,
    theory_from_indices,
    xi_terms,
)

from conftest import DESIGNS, FIGURE1_C, FIGURE1_X, draw_sample_with_k, sample_from

# Pooled upper quantile of the Figure-1 pair, solved to 40 digits with
# mpmath and frozen here (t = n/k).
U_T40 = 9.953584469161693
A_NK_T40 = 2.7979185377154606e-3
GAP_T100 = 0.022910085730201303
U_T100 = 9.9770899142697987
# Conditional tail expectation ratios E[log^a(Z/U(t))|Z>U(t)]/a_nk^a at
# t = 40 (mpmath quadrature against the pooled survival), frozen.
COND_RATIO_A1 = 0.721800699316
COND_RATIO_A2 = 0.718224188973


def sample_and_k(seed, n_max=250):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, n_max))
    design = DESIGNS[int(rng.integers(len(DESIGNS)))]
    return draw_sample_with_k(rng, n, design)


class TestLogExcesses:
    def make(self):
        return sample_from([0.5, 1.0, 2.0, 4.0], [1, 0, 1, 1])

    def test_values_largest_first(self):
        ell = log_excesses(self.make(), 2, 1.0)
        assert ell == pytest.approx([math.log(4.0), math.log(2.0)], rel=1e-15)

    def test_alpha_powers(self):
        s = self.make()
        assert log_excesses(s, 2, 2.0) == pytest.approx(
            log_excesses(s, 2, 1.0) ** 2, rel=1e-15
        )

    @given(seed=st.integers(0, 2**32 - 1), alpha=st.sampled_from([1.0, 2.0, 3.0]))
    @settings(max_examples=40, deadline=None)
    def test_non_increasing_and_non_negative(self, seed, alpha):
        s, k = sample_and_k(seed)
        ell = log_excesses(s, k, alpha)
        assert ell.shape == (k,)
        assert np.all(np.diff(ell) <= 0.0)
        assert np.all(ell >= 0.0)
        assert ell[-1] >= 0.0

    @pytest.mark.parametrize("k", [0, -1, 4, 10])
    def test_k_out_of_range(self, k):
        with pytest.raises(ValueError, match="k must satisfy"):
            log_excesses(self.make(), k, 1.0)

    def test_alpha_below_one(self):
        with pytest.raises(ValueError, match="alpha"):
            log_excesses(self.make(), 2, 0.5)

    def test_non_positive_threshold(self):
        s = make_censored(
            np.array([-1.0, 1.0, 2.0]), np.array([9.0, 9.0, 9.0]), require_positive=False
        )
        with pytest.raises(ValueError, match="positive"):
            log_excesses(s, 2, 1.0)


class TestXiTerms:
    def test_small_example(self):
        s = sample_from([0.5, 1.0, 2.0, 4.0], [1, 0, 1, 1])
        xi = xi_terms(s, 2, 1.0)
        # 1*(log4 - log2), 2*(log2 - 0)
        assert xi == pytest.approx([math.log(2.0), 2.0 * math.log(2.0)], rel=1e-14)

    def test_k_equal_one(self):
        s = sample_from([1.0, 3.0], [1, 1])
        assert xi_terms(s, 1, 1.0) == pytest.approx([math.log(3.0)], rel=1e-15)

    @given(seed=st.integers(0, 2**32 - 1), alpha=st.sampled_from([1.0, 2.0, 3.0]))
    @settings(max_examples=40, deadline=None)
    def test_total_mass_is_preserved(self, seed, alpha):
        s, k = sample_and_k(seed)
        total_xi = float(np.sum(xi_terms(s, k, alpha)))
        total_ell = float(np.sum(log_excesses(s, k, alpha)))
        assert total_xi == pytest.approx(total_ell, rel=1e-12, abs=1e-300)


class TestMomentUnweighted:
    def test_small_example(self):
        s = sample_from([0.5, 1.0, 2.0, 4.0], [1, 0, 1, 1])
        assert moment_unweighted(s, 2, 1.0) == pytest.approx(1.5 * math.log(2.0), rel=1e-14)

    def test_tied_top_gives_zero(self):
        with pytest.warns(UserWarning, match="tied"):
            s = sample_from([1.0, 1.0, 1.0], [1, 1, 1])
        assert moment_unweighted(s, 2, 1.0) == 0.0

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_equals_mean_of_increments(self, seed):
        s, k = sample_and_k(seed)
        assert moment_unweighted(s, k, 2.0) == pytest.approx(
            float(np.mean(xi_terms(s, k, 2.0))), rel=1e-12, abs=1e-300
        )


class TestWeightedMoments:
    def test_km_small_example(self):
        # top observation uncensored behind one censored point: weight 2,
        # normalizer 3*(2/3), so the single term survives unchanged
        s = sample_from([1.0, 2.0, 3.0], [1, 0, 1])
        cur = fit(s)
        assert moment_km(s, 1, 1.0, cur) == pytest.approx(math.log(1.5), rel=1e-14)

    def test_km_zero_when_top_censored(self):
        s = sample_from([1.0, 2.0, 3.0], [1, 1, 0])
        cur = fit(s)
        assert moment_km(s, 1, 1.0, cur) == 0.0

    def test_leurgans_small_example(self):
        s = sample_from([1.0, 2.0, 3.0], [1, 0, 1])
        cur = fit(s)
        assert moment_leurgans(s, 1, 1.0, cur) == pytest.approx(math.log(1.5), rel=1e-14)

    def test_leurgans_picks_up_censored_top(self):
        # same numerator as the KM form would have had if delta_(n)=1
        s = sample_from([1.0, 2.0, 3.0], [1, 1, 0])
        cur = fit(s)
        assert moment_leurgans(s, 1, 1.0, cur) == pytest.approx(math.log(1.5), rel=1e-14)

    def test_d_term_small_example(self):
        s = sample_from([1.0, 2.0, 3.0], [1, 0, 1])
        cur = fit(s)
        assert d_term(s, 1, 1.0, cur) == pytest.approx(math.log(1.5), rel=1e-14)

    def test_d_term_zero_when_top_ties_threshold(self):
        with pytest.warns(UserWarning, match="tied"):
            s = sample_from([1.0, 1.0], [1, 1])
        assert d_term(s, 1, 1.0, fit(s)) == 0.0


class TestTopCorrectionIdentity:
    # moment_leurgans = moment_km + (1 - delta_(n)) * d_term on every
    # sample; this is the primary regression for the weighted moments.
    @given(seed=st.integers(0, 2**32 - 1), alpha=st.sampled_from([1.0, 2.0, 3.0]))
    @settings(max_examples=80, deadline=None)
    def test_identity(self, seed, alpha):
        s, k = sample_and_k(seed)
        cur = fit(s)
        ml = moment_leurgans(s, k, alpha, cur)
        mk = moment_km(s, k, alpha, cur)
        d = d_term(s, k, alpha, cur)
        gap = ml - (mk + (1 - int(s.delta[-1])) * d)
        assert abs(gap) <= 1e-12 * max(1.0, abs(ml))

    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=60, deadline=None)
    def test_agreement_when_top_uncensored(self, seed):
        s, k = sample_and_k(seed)
        assume(s.delta[-1] == 1)
        cur = fit(s)
        ml = moment_leurgans(s, k, 2.0, cur)
        mk = moment_km(s, k, 2.0, cur)
        assert abs(ml - mk) <= 1e-12 * max(1.0, abs(ml))


class TestUncensoredReduction:
    @given(seed=st.integers(0, 2**32 - 1))
    @settings(max_examples=30, deadline=None)
    def test_all_three_coincide(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(5, 200))
        x = GPD(-0.5, 1).sample(rng, n)
        s = make_censored(x, np.full(n, 3.0))
        assert np.all(s.delta == 1)
        k = int(rng.integers(1, n))
        cur = fit(s)
        mu = moment_unweighted(s, k, 2.0)
        mk = moment_km(s, k, 2.0, cur)
        ml = moment_leurgans(s, k, 2.0, cur)
        assert mk == pytest.approx(mu, rel=1e-12, abs=1e-300)
        assert ml == pytest.approx(mu, rel=1e-12, abs=1e-300)


class TestScaleInvariance:
    # moments depend on z only through ratios to the threshold
    @given(seed=st.integers(0, 2**32 - 1), c=st.floats(0.01, 100.0))
    @settings(max_examples=30, deadline=None)
    def test_rescaling_observations(self, seed, c):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(5, 150))
        s, k = draw_sample_with_k(rng, n, DESIGNS[3])
        scaled = from_observations(c * s.z, s.delta)
        cur, cur2 = fit(s), fit(scaled)
        for alpha in (1.0, 2.0):
            assert moment_unweighted(scaled, k, alpha) == pytest.approx(
                moment_unweighted(s, k, alpha), rel=1e-12, abs=1e-300
            )
            assert moment_km(scaled, k, alpha, cur2) == pytest.approx(
                moment_km(s, k, alpha, cur), rel=1e-12, abs=1e-300
            )
            assert moment_leurgans(scaled, k, alpha, cur2) == pytest.approx(
                moment_leurgans(s, k, alpha, cur), rel=1e-12, abs=1e-300
            )


class TestMomentSet:
    def test_bundles_the_individual_functions(self, rng):
        s, k = draw_sample_with_k(rng, 80, DESIGNS[0])
        cur = fit(s)
        ms = moment_set(s, k, 2.0, cur)
        assert ms.k == k and ms.alpha == 2.0
        assert ms.m_unweighted == moment_unweighted(s, k, 2.0)
        assert ms.m_km == moment_km(s, k, 2.0, cur)
        assert ms.m_leurgans == moment_leurgans(s, k, 2.0, cur)
        assert ms.d_term == d_term(s, k, 2.0, cur)
        assert ms.delta_max == int(s.delta[-1])


class TestBetaFunction:
    def test_known_values(self):
        assert beta_function(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)
        assert beta_function(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-14)
        for x in (0.25, 1.0, 7.5):
            assert beta_function(1.0, x) == pytest.approx(1.0 / x, rel=1e-14)

    def test_symmetry_is_exact(self):
        for a, b in [(0.3, 4.7), (1.5, 9.0), (12.0, 0.125)]:
            assert beta_function(a, b) == beta_function(b, a)

    def test_domain(self):
        for a, b in [(0.0, 1.0), (1.0, 0.0), (-2.0, 3.0)]:
            with pytest.raises(ValueError):
                beta_function(a, b)

    @given(
        a=st.floats(0.01, 100.0, allow_nan=False),
        b=st.floats(0.01, 100.0, allow_nan=False),
    )
    @settings(max_examples=60, deadline=None)
    def test_against_mpmath(self, a, b):
        mp = pytest.importorskip("mpmath")
        want = float(mp.beta(a, b))
        assert beta_function(a, b) == pytest.approx(want, rel=1e-12)


class TestLimitConstant:
    def test_exact_rational_values(self):
        assert limit_l_alpha(-1.0, -1.5, 1.0) == pytest.approx(5.0 / 6.0, rel=1e-13)
        assert limit_l_alpha(-1.0, -1.5, 2.0) == pytest.approx(25.0 / 27.0, rel=1e-13)
        assert limit_l_alpha(-0.25, -0.2, 1.0) == pytest.approx(1.8, rel=1e-13)

    def test_alpha_domain(self):
        with pytest.raises(ValueError, match="alpha"):
            limit_l_alpha(-1.0, -1.5, 0.5)

    @pytest.mark.parametrize("gx,gc", [(0.0, -1.0), (-1.0, 0.2), (1.0, -1.0)])
    def test_requires_negative_indices(self, gx, gc):
        with pytest.raises(ValueError):
            limit_l_alpha(gx, gc, 1.0)

    @given(
        gx=st.floats(-4.0, -0.05),
        gc=st.floats(-4.0, -0.05),
        alpha=st.sampled_from([1.0, 2.0, 3.0]),
    )
    @settings(max_examples=40, deadline=None)
    def test_against_mpmath(self, gx, gc, alpha):
        mp = pytest.importorskip("mpmath")
        g = gx * gc / (gx + gc)
        want = float(
            (1.0 / abs(gx)) * mp.mpf(abs(g)) ** (-alpha) * mp.beta(1.0 / abs(gx), alpha + 1)
        )
        assert limit_l_alpha(gx, gc, alpha) == pytest.approx(want, rel=1e-11)


class TestScaleANk:
    def test_frozen_quantile_at_t40(self):
        sc = scale_a_nk(FIGURE1_X, FIGURE1_C, 20000, 500)
        assert sc.t == 40.0
        assert sc.u_of_t == pytest.approx(U_T40, rel=1e-10)
        assert sc.a_nk == pytest.approx(A_NK_T40, rel=1e-9)
        assert sc.xstar == 10.0

    def test_frozen_quantile_at_t100(self):
        sc = scale_a_nk(FIGURE1_X, FIGURE1_C, 10000, 100)
        assert sc.u_of_t == pytest.approx(U_T100, rel=1e-10)
        assert sc.xstar - sc.u_of_t == pytest.approx(GAP_T100, rel=1e-9)

    def test_depends_only_on_the_ratio(self):
        a = scale_a_nk(FIGURE1_X, FIGURE1_C, 4000, 100)
        b = scale_a_nk(FIGURE1_X, FIGURE1_C, 8000, 200)
        assert a == b

    @pytest.mark.parametrize("fx,gc", DESIGNS)
    def test_solves_the_pooled_survival(self, fx, gc):
        sc = scale_a_nk(fx, gc, 1000, 50)
        pooled = float(fx.survival(sc.u_of_t)) * float(gc.survival(sc.u_of_t))
        assert pooled == pytest.approx(50.0 / 1000.0, rel=1e-10)
        th = theory_from_indices(fx.theoretical_evi(), gc.theoretical_evi())
        assert sc.a_of_t == pytest.approx(abs(th.gamma) * (sc.xstar - sc.u_of_t), rel=1e-14)
        assert sc.a_nk == pytest.approx(sc.a_of_t / sc.u_of_t, rel=1e-14)

    def test_scale_shrinks_as_threshold_rises(self):
        vals = [scale_a_nk(FIGURE1_X, FIGURE1_C, n, 100).a_nk for n in (1000, 4000, 16000, 64000)]
        assert all(b < a for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-3

    def test_endpoint_mismatch(self):
        with pytest.raises(ValueError, match="endpoint"):
            scale_a_nk(ReverseBurr(1, 1, 1, 10), ReverseBurr(1, 1, 1, 9), 100, 10)

    @pytest.mark.parametrize("n,k", [(100, 0), (100, 100), (100, -3)])
    def test_k_domain(self, n, k):
        with pytest.raises(ValueError, match="k must satisfy"):
            scale_a_nk(FIGURE1_X, FIGURE1_C, n, k)

    def test_negative_endpoint_rejected(self):
        with pytest.raises(ValueError, match="non-positive"):
            scale_a_nk(ReverseBurr(1, 1, 1, -5), ReverseBurr(1, 1, 1, -5), 100, 10)


@pytest.fixture(scope="module")
def figure1_big_medians():
    """Medians over 100 pinned-seed replicates at n=20000, k=500."""
    n, k, reps, seed = 20000, 500, 100, 20140401
    cols = {"u1": [], "u2": [], "w1": [], "w2": []}
    for rep in range(reps):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(seed, rep)))
        x = FIGURE1_X.sample(rng, n)
        c = FIGURE1_C.sample(rng, n)
        s = make_censored(x, c, require_positive=False)
        cur = fit(s)
        cols["u1"].append(moment_unweighted(s, k, 1.0))
        cols["u2"].append(moment_unweighted(s, k, 2.0))
        cols["w1"].append(moment_km(s, k, 1.0, cur))
        cols["w2"].append(moment_km(s, k, 2.0, cur))
    med = {key: float(np.median(v)) for key, v in cols.items()}
    med["a_nk"] = scale_a_nk(FIGURE1_X, FIGURE1_C, n, k).a_nk
    return med


class TestLargeSampleRatios:
    def test_weighted_moments_approach_limit_constants(self, figure1_big_medians):
        m = figure1_big_medians
        assert m["w1"] / m["a_nk"] == pytest.approx(5.0 / 6.0, rel=0.10)
        assert m["w2"] / m["a_nk"] ** 2 == pytest.approx(25.0 / 27.0, rel=0.10)

    @pytest.mark.xfail(
        strict=True,
        reason="at n/k = 40 the unweighted ratios still carry a +16%/+27% "
        "finite-threshold excess over their limit constants; the 10% band "
        "needs n/k beyond a few hundred (see the finite-t expectations "
        "asserted below)",
    )
    def test_unweighted_moments_within_ten_percent_of_limits(self, figure1_big_medians):
        m = figure1_big_medians
        assert m["u1"] / m["a_nk"] == pytest.approx(0.625, rel=0.10)
        assert m["u2"] / m["a_nk"] ** 2 == pytest.approx(25.0 / 44.0, rel=0.10)

    def test_unweighted_moments_match_finite_threshold_expectation(self, figure1_big_medians):
        # exact conditional expectations at this threshold, not the limits
        m = figure1_big_medians
        assert m["u1"] / m["a_nk"] == pytest.approx(COND_RATIO_A1, rel=0.03)
        assert m["u2"] / m["a_nk"] ** 2 == pytest.approx(COND_RATIO_A2, rel=0.03)
