#include <hexacarpet/analysis.hpp>
#include <hexacarpet/report.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace hexacarpet;

namespace {

const SimplicialComplex& shared()
{
	static const SimplicialComplex c = SimplicialComplex::build(5);
	return c;
}

SolverOptions tight()
{
	SolverOptions o;
	o.tol = 1e-12;
	return o;
}

} // namespace

TEST(Analysis, SpectralDimension)
{
	EXPECT_NEAR(spectral_dimension(1.306), 1.7406, 5e-4);
	EXPECT_NEAR(spectral_dimension(1.5), 1.631, 1e-3);
	EXPECT_NEAR(spectral_dimension(1.25), 1.778, 1e-3);
	EXPECT_NEAR(spectral_dimension(0.8), 2.28, 5e-3);
	EXPECT_THROW(spectral_dimension(0.1), InvalidArgument);
}

TEST(Analysis, FitGrowthRecoversGeometricRate)
{
	std::vector<int> x{2, 3, 4, 5};
	std::vector<double> y;
	for (int k : x)
		y.push_back(3.0 * std::pow(1.3, k));
	EXPECT_NEAR(fit_growth(x, y), 1.3, 1e-12);
	EXPECT_THROW(fit_growth({1}, {1.0}), InvalidArgument);
}

TEST(Analysis, DualityLowLevels)
{
	for (int n = 1; n <= 4; ++n) {
		const auto r = verify_duality(shared(), n);
		EXPECT_TRUE(r.pass) << n << " " << r.product;
		EXPECT_NEAR(r.product, 1.0, 1e-8);
	}
	const auto r1 = verify_duality(shared(), 1);
	EXPECT_NEAR(r1.R, 1.5, 1e-9);
	EXPECT_NEAR(r1.R_T, 2.0 / 3.0, 1e-9);
	// R_n increases, R_n^T decreases.
	EXPECT_LT(r1.R, verify_duality(shared(), 2).R);
	EXPECT_GT(r1.R_T, verify_duality(shared(), 2).R_T);
}

TEST(Analysis, SymmetrizedFlows)
{
	const auto& c = shared();
	for (int n = 1; n <= 3; ++n) {
		const auto g = build_hexacarpet(c, n);
		const auto r = effective_resistance(g, tight());
		const auto t = build_symmetrized_flows(c, g, r.flow);
		EXPECT_NEAR(t.energy_I, r.resistance, 1e-8);
		EXPECT_NEAR(t.energy_H01, r.resistance, 1e-8);
		EXPECT_NEAR(t.energy_H02, r.resistance, 1e-8);
		EXPECT_NEAR(t.flux_H01, 1.0, 1e-9);
		EXPECT_NEAR(t.flux_H02, 1.0, 1e-9);
		EXPECT_LE(t.max_divergence, 1e-9);
	}
	EXPECT_THROW(build_symmetrized_flows(c, build_skeleton(c, 1), Flow(12)), InvalidArgument);
}

TEST(Analysis, YDecompositionInvariants)
{
	const auto& c = shared();
	for (int m = 1; m <= 3; ++m) {
		const auto g = build_hexacarpet(c, m);
		const auto r = effective_resistance(g, tight());
		const auto y = y_decomposition(c, g, r.flow);
		ASSERT_EQ(y.cells.size(), c.triangle_count(m));
		EXPECT_NEAR(y.half_sum_squares, r.resistance, 1e-8);
		for (const auto& yc : y.cells) {
			EXPECT_GE(yc.a1() * yc.a2(), -1e-12);
			EXPECT_NEAR(yc.a0() + yc.a1() + yc.a2(), 0.0, 1e-9);
			EXPECT_GE(yc.a1() * yc.a1() + yc.a2() * yc.a2(), yc.a0() * yc.a0() / 2 - 1e-12);
		}
	}
}

TEST(Analysis, ComposedFlowRespectsBound)
{
	const auto& c = shared();
	for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}}) {
		const auto gm = build_hexacarpet(c, m);
		const auto gn = build_hexacarpet(c, n);
		const auto rm = effective_resistance(gm, tight());
		const auto rn = effective_resistance(gn, tight());
		const auto J = compose_flow(c, m, n, build_symmetrized_flows(c, gn, rn.flow), y_decomposition(c, gm, rm.flow));
		EXPECT_NEAR(J.flux, 1.0, 1e-9);
		EXPECT_LE(J.max_divergence, 1e-9);
		const double bound = 4.0 / 3.0 * rm.resistance * rn.resistance;
		EXPECT_LE(J.energy, bound + 1e-8);
		EXPECT_GE(J.energy, hexacarpet_resistance(c, m + n, tight()) - 1e-8);
	}
}

TEST(Analysis, ComposedFlowLevelMismatch)
{
	const auto& c = shared();
	const auto g = build_hexacarpet(c, 1);
	const auto r = effective_resistance(g);
	const auto t = build_symmetrized_flows(c, g, r.flow);
	const auto y = y_decomposition(c, g, r.flow);
	EXPECT_THROW(compose_flow(c, 2, 1, t, y), InvalidArgument);
}

TEST(Analysis, PotentialDecomposition)
{
	const auto& c = shared();
	for (int n = 2; n <= 4; ++n) {
		const auto d = potential_decomposition(c, n, tight());
		EXPECT_LE(std::abs(d.cross), 1e-8 * d.energy_u);
		EXPECT_LE(d.identity_gap, 1e-8);
		EXPECT_LE(d.self_similarity_gap, 1e-10);
		EXPECT_LE(d.w_vs_v_sigma, 1e-10);
		EXPECT_LE(d.u_vs_u_sigma, 1e-10);
		EXPECT_TRUE(d.sigma_isometry);
		EXPECT_NEAR(d.energy_v, d.energy_w, 1e-10);
		EXPECT_NEAR(d.energy_phi, 1.0 / skeleton_resistance(c, n, tight()), 1e-9);
	}
	EXPECT_THROW(potential_decomposition(c, 1), InvalidArgument);
}

TEST(Analysis, MultiplicativeBounds)
{
	const auto t = compute_resistances(shared(), 5, tight(), 2);
	for (int m = 1; m <= 4; ++m)
		for (int n = 1; m + n <= 5; ++n) {
			const auto r = verify_supermultiplicative(t, m, n);
			EXPECT_TRUE(r.pass) << m << "," << n;
			EXPECT_GE(r.sub_margin, -1e-8);
			EXPECT_GE(r.super_margin, -1e-8);
		}
	EXPECT_THROW(verify_supermultiplicative(t, 3, 3), InvalidArgument);
}

TEST(Analysis, CutBound)
{
	const auto& c = shared();
	const auto r1 = cut_bound(c, 1);
	EXPECT_EQ(r1.lengths, (std::vector<std::int64_t>{2, 4}));
	EXPECT_NEAR(r1.R_hat, 4.0 / 3.0, 1e-15);
	EXPECT_NEAR(r1.R_hat_solver, 4.0 / 3.0, 1e-9);
	EXPECT_TRUE(r1.pass());
	double prev = r1.R_n;
	for (int n = 2; n <= 5; ++n) {
		const auto r = cut_bound(c, n, tight(), std::nullopt, prev);
		EXPECT_TRUE(r.pass()) << n;
		EXPECT_NEAR(r.R_hat, r.R_hat_solver, 1e-9 * r.R_hat);
		prev = r.R_n;
	}
}

TEST(Analysis, ShortBound)
{
	const auto& c = shared();
	std::optional<double> prev;
	for (int n = 1; n <= 5; ++n) {
		const auto r = short_bound(c, n, tight(), std::nullopt, prev);
		EXPECT_TRUE(r.pass()) << n;
		if (n >= 2) {
			EXPECT_NEAR(r.ratio, 1.25, 1e-3);
		}
		prev = r.R_tilde;
	}
	EXPECT_NEAR(short_bound(c, 1).R_tilde, 15.0 / 16.0, 1e-10);
}

TEST(Analysis, EstimateRhoSmall)
{
	const auto rep = estimate_rho(shared(), 4, {}, 1);
	ASSERT_EQ(rep.rows.size(), 4u);
	EXPECT_TRUE(std::isnan(rep.rows[0].ratio));
	EXPECT_TRUE(std::isnan(rep.rows[1].fit_rho));
	EXPECT_FALSE(std::isnan(rep.rows[2].fit_rho));
	EXPECT_GT(rep.rho_fit, 1.25);
	EXPECT_LT(rep.rho_fit, 1.5);
	EXPECT_NEAR(rep.rho_fit * rep.rho_T_fit, 1.0, 1e-6);
	EXPECT_TRUE(rep.monotone_ratios);
	EXPECT_TRUE(rep.pass());
	EXPECT_THROW(estimate_rho(shared(), 2), InvalidArgument);
}

TEST(Analysis, ThreadedSweepIsDeterministic)
{
	const auto a = estimate_rho(shared(), 4, {}, 1);
	const auto b = estimate_rho(shared(), 4, {}, 3);
	std::ostringstream sa, sb;
	write_scaling_csv(sa, a);
	write_scaling_csv(sb, b);
	EXPECT_EQ(sa.str(), sb.str());
	EXPECT_EQ(sa.str().substr(0, sa.str().find('\n')), "n,R_n,R_n_T,product,R_hat,R_tilde,ratio,fit_rho,d_S");
	const auto j = scaling_to_json(a);
	EXPECT_EQ(j["rows"].size(), 4u);
	EXPECT_TRUE(j["rows"][0]["ratio"].is_null());
}

TEST(Analysis, ParallelForPropagatesLowestFailure)
{
	try {
		parallel_for(8, 4, [](std::size_t i) {
			if (i == 3 || i == 6)
				throw InvalidArgument(std::to_string(i));
		});
		FAIL();
	} catch (const InvalidArgument& e) {
		EXPECT_STREQ(e.what(), "3");
	}
}
