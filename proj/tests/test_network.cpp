#include "oracle.hpp"

#include <hexacarpet/network.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace hexacarpet;

namespace {

const SimplicialComplex& shared()
{
	static const SimplicialComplex c = SimplicialComplex::build(4);
	return c;
}

WeightedGraph unit_triangle()
{
	WeightedGraph g(3, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {1, 2, Rational(1)}});
	g.set_boundary("A", {0});
	g.set_boundary("B", {1});
	return g;
}

using RPot = BasicPotential<Rational>;
using RFlow = BasicFlow<Rational>;

} // namespace

TEST(Network, TriangleResistance)
{
	const auto g = unit_triangle();
	const auto r = effective_resistance(g);
	EXPECT_NEAR(r.resistance, 2.0 / 3.0, 1e-12);
	EXPECT_NEAR(r.potential[2], 0.5, 1e-12);
	EXPECT_NEAR(flux(g, g.boundary("A"), g.boundary("B"), r.flow), 1.0, 1e-12);
	EXPECT_NEAR(dissipation(g, r.flow), r.resistance, 1e-12);
}

TEST(Network, SeriesAndParallel)
{
	// 0 -(1)- 1 -(1/2)- 2, plus a parallel branch 0 -(1/3)- 2.
	WeightedGraph g(3, {{0, 1, Rational(1)}, {1, 2, Rational(1, 2)}, {0, 2, Rational(1, 3)}});
	const std::vector<VertexIndex> a{0}, b{2};
	// series: 1 + 2 = 3 ohm; parallel with 3 ohm -> 3/2
	EXPECT_NEAR(effective_resistance(g, a, b).resistance, 1.5, 1e-12);
	EXPECT_NEAR(static_cast<double>(oracle::resistance(g, a, b)), 1.5, 1e-15);
}

TEST(Network, ThompsonTriangleCirculation)
{
	const auto g = unit_triangle();
	const auto r = effective_resistance(g);
	// Unit circulation 0 -> 1 -> 2 -> 0 in edge orientation (0,1), (0,2), (1,2).
	Flow k(std::vector<double>{1.0, -1.0, 1.0});
	for (double d : divergence(g, k).values)
		EXPECT_NEAR(d, 0.0, 1e-15);
	Flow sum = r.flow;
	for (std::size_t i = 0; i < 3; ++i)
		sum[i] += k[i];
	EXPECT_NEAR(dissipation(g, sum) - dissipation(g, r.flow), 3.0, 1e-12);
	EXPECT_NEAR(dissipation(g, k), 3.0, 1e-15);
}

TEST(Network, ExactCalculusIdentities)
{
	std::mt19937_64 rng(7);
	std::uniform_int_distribution<int> val(-5, 5);
	const auto g = build_skeleton(shared(), 2);
	RPot f(g.vertex_count()), h(g.vertex_count());
	for (std::size_t i = 0; i < f.size(); ++i) {
		f[i] = Rational(val(rng));
		h[i] = Rational(val(rng), 2);
	}
	RFlow j(g.edge_count());
	for (std::size_t i = 0; i < j.size(); ++i)
		j[i] = Rational(val(rng), 3);
	// <f, div J> = -E(J, grad f)
	EXPECT_EQ(inner(f, divergence(g, j)), -dissipation(g, j, gradient(g, f)));
	// E(f, h) = -<f, Lap h>
	EXPECT_EQ(energy(g, f, h), -inner(f, laplacian(g, h)));
	EXPECT_EQ(energy(g, f, h), energy(g, h, f));
	// E(grad f) as a flow equals E(f) as a potential
	EXPECT_EQ(dissipation(g, gradient(g, f)), energy(g, f));
}

// Each skeleton edge of T_n that lies inside a seam collects 1/2 from both
// cells, so the energy splits exactly over the six copies of T_{n-1}.
TEST(Network, SkeletonEnergySelfSimilarExact)
{
	const auto& c = shared();
	std::mt19937_64 rng(11);
	std::uniform_int_distribution<int> val(-6, 6);
	for (int n = 1; n <= 4; ++n) {
		const auto g = build_skeleton(c, n);
		const auto g1 = n > 1 ? build_skeleton(c, n - 1) : WeightedGraph();
		RPot phi(g.vertex_count());
		for (auto& x : phi.values)
			x = Rational(val(rng));
		Rational parts(0);
		for (int i = 0; i < 6; ++i) {
			const auto& map = c.self_similar_map(i);
			if (n == 1) {
				// T_0 with its three sides each in one cell boundary: conductance 1/2.
				const auto& e0 = c.edges(0);
				for (const auto& e : e0) {
					const auto d = phi[map(e[0])] - phi[map(e[1])];
					parts += Rational(1, 2) * d * d;
				}
				continue;
			}
			RPot pulled(g1.vertex_count());
			for (std::size_t v = 0; v < pulled.size(); ++v)
				pulled[v] = phi[map(static_cast<VertexId>(v))];
			parts += energy(g1, pulled);
		}
		EXPECT_EQ(energy(g, phi), parts) << n;
	}
}

TEST(Network, HexacarpetSeriesReducesToDual)
{
	const auto& c = shared();
	for (int n = 1; n <= 3; ++n) {
		const auto hex = build_hexacarpet(c, n);
		// Dual graph plus one pendant vertex per boundary edge (two resistances
		// 1/2 in series across every interior edge-vertex).
		const auto dual = build_dual(c, n);
		const auto nt = static_cast<VertexIndex>(c.triangle_count(n));
		std::vector<WeightedEdge> edges = dual.edges();
		std::vector<VertexIndex> a, b;
		VertexIndex next = nt;
		for (const auto& e : hex.edges()) {
			const bool in_a = std::binary_search(hex.boundary("A").begin(), hex.boundary("A").end(), e.v);
			const bool in_b = std::binary_search(hex.boundary("B").begin(), hex.boundary("B").end(), e.v);
			if (in_a || in_b) {
				edges.push_back({e.u, next, Rational(2)});
				(in_a ? a : b).push_back(next++);
			}
		}
		const WeightedGraph reduced(next, std::move(edges));
		EXPECT_NEAR(effective_resistance(hex).resistance, effective_resistance(reduced, a, b).resistance, 1e-9);
	}
}

TEST(Network, LevelOneExactValues)
{
	const auto& c = shared();
	EXPECT_NEAR(static_cast<double>(oracle::resistance(build_hexacarpet(c, 1), build_hexacarpet(c, 1).boundary("A"),
														build_hexacarpet(c, 1).boundary("B"))),
				1.5, 1e-15);
	EXPECT_NEAR(effective_resistance(build_hexacarpet(c, 1)).resistance, 1.5, 1e-10);
	EXPECT_NEAR(effective_resistance(build_skeleton(c, 1)).resistance, 2.0 / 3.0, 1e-10);
	EXPECT_NEAR(effective_resistance(build_cut_graph(c, 1)).resistance, 4.0 / 3.0, 1e-10);
	EXPECT_NEAR(effective_resistance(build_short_graph(c, 1)).resistance, 15.0 / 16.0, 1e-10);
}

TEST(Network, SolverAgreesWithOracles)
{
	const auto& c = shared();
	for (auto fam : {Family::skeleton, Family::dual, Family::hexacarpet, Family::cut, Family::short_circuit})
		for (int n = 1; n <= 4; ++n) {
			const auto g = build_graph(c, fam, n);
			if (g.vertex_count() > oracle_vertex_limit)
				continue;
			const auto a = g.boundary("A"), b = g.boundary("B");
			const double cg = effective_resistance(g).resistance;
			const double dense = oracle_resistance(g, a, b).resistance;
			EXPECT_NEAR(cg, dense, 1e-9 * dense) << family_name(fam) << n;
			if (g.vertex_count() <= 700) {
				EXPECT_NEAR(cg, static_cast<double>(oracle::resistance(g, a, b)), 1e-9 * cg) << family_name(fam) << n;
			}
		}
	EXPECT_THROW(oracle_resistance(build_hexacarpet(c, 4), std::vector<VertexIndex>{0}, std::vector<VertexIndex>{1}), CapacityError);
}

TEST(Network, RandomGraphsAgainstOracles)
{
	std::mt19937_64 rng(2024);
	for (int trial = 0; trial < 50; ++trial) {
		const auto rc = oracle::random_graph(rng);
		const double cg = effective_resistance(rc.graph, rc.a, rc.b).resistance;
		const double dense = oracle_resistance(rc.graph, rc.a, rc.b).resistance;
		const double ld = static_cast<double>(oracle::resistance(rc.graph, rc.a, rc.b));
		EXPECT_NEAR(cg, dense, 1e-9 * dense);
		EXPECT_NEAR(cg, ld, 1e-9 * ld);
	}
}

TEST(Network, MonotonicityUnderSubgraphAndQuotient)
{
	std::mt19937_64 rng(99);
	for (int trial = 0; trial < 50; ++trial) {
		const auto rc = oracle::random_graph(rng, 8, 40);
		const double r = effective_resistance(rc.graph, rc.a, rc.b).resistance;
		// Drop a random set of edges (may disconnect).
		std::vector<char> drop(rc.graph.edge_count());
		for (auto& d : drop)
			d = (rng() % 4 == 0);
		const auto sub = drop_edges(rc.graph, [&](const WeightedEdge&, std::uint32_t i) { return drop[i] != 0; });
		const auto rs = effective_resistance(sub, rc.a, rc.b);
		EXPECT_TRUE(rs.disconnected || rs.resistance >= r - 1e-10);
		// Merge two vertices outside A u B.
		std::vector<std::uint32_t> free;
		for (std::uint32_t v = 0; v < rc.graph.vertex_count(); ++v)
			if (!std::binary_search(rc.a.begin(), rc.a.end(), v) && !std::binary_search(rc.b.begin(), rc.b.end(), v))
				free.push_back(v);
		ASSERT_GE(free.size(), 2u);
		const auto x = free[rng() % free.size()], y = free[rng() % free.size()];
		VertexPartition p;
		std::uint32_t next = 0;
		p.representative.assign(rc.graph.vertex_count(), 0);
		for (std::uint32_t v = 0; v < rc.graph.vertex_count(); ++v)
			if (v != y || x == y)
				p.representative[v] = next++;
		if (x != y)
			p.representative[y] = p.representative[x];
		p.class_count = next;
		const auto q = quotient(rc.graph, p);
		EXPECT_LE(effective_resistance(q).resistance, r + 1e-10);
	}
}

TEST(Network, ThompsonRandomCompetitors)
{
	const auto& c = shared();
	for (int n = 2; n <= 3; ++n) {
		const auto g = build_hexacarpet(c, n);
		SolverOptions o;
		o.tol = 1e-12;
		const auto r = effective_resistance(g, o);
		const auto rep = verify_thompson(g, g.boundary("A"), g.boundary("B"), r, 100, 5);
		EXPECT_TRUE(rep.pass()) << rep.violations;
		EXPECT_GE(rep.min_energy_gap, -1e-10);
	}
	std::mt19937_64 rng(3);
	for (int trial = 0; trial < 10; ++trial) {
		const auto rc = oracle::random_graph(rng);
		const auto r = effective_resistance(rc.graph, rc.a, rc.b);
		EXPECT_TRUE(verify_thompson(rc.graph, rc.a, rc.b, r, 100, trial).pass());
	}
}

TEST(Network, ErrorsAndEdgeCases)
{
	WeightedGraph g(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}});
	const std::vector<VertexIndex> a{0}, b{3};
	const auto r = effective_resistance(g, a, b);
	EXPECT_TRUE(r.disconnected);
	EXPECT_TRUE(std::isinf(r.resistance));
	SolverOptions strict;
	strict.allow_disconnected = false;
	EXPECT_THROW(effective_resistance(g, a, b, strict), DisconnectedError);
	EXPECT_THROW(effective_resistance(g, std::vector<VertexIndex>{0}, std::vector<VertexIndex>{0}), InvalidArgument);
	EXPECT_THROW(effective_resistance(g, std::vector<VertexIndex>{}, b), InvalidArgument);

	SolverOptions tiny;
	tiny.max_iter = 1;
	try {
		effective_resistance(build_hexacarpet(shared(), 3), tiny);
		FAIL() << "expected SolverError";
	} catch (const SolverError& e) {
		EXPECT_EQ(e.iterations(), 1);
		EXPECT_GT(e.residual(), 1e-10);
	}

	const auto t = unit_triangle();
	Flow bad(std::vector<double>{0.0, 1.0, 0.0}); // only on edge (0,2)
	try {
		flux(t, t.boundary("A"), t.boundary("B"), bad);
		FAIL() << "expected FlowError";
	} catch (const FlowError& e) {
		ASSERT_FALSE(e.witnesses().empty());
		EXPECT_EQ(e.witnesses()[0], 2u);
	}
}
