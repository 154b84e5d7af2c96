#pragma once

// Reference computations that share no code with the library: closed-form
// counts, subdivision driven purely by coordinates, and a dense long double
// Gaussian elimination for effective resistance.

#include <hexacarpet/graph.hpp>
#include <hexacarpet/rational.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using hexacarpet::Rational;

struct Counts
{
	long long v, e, f;
};

/// V' = V + E + F, E' = 2E + 6F, F' = 6F from (3, 3, 1).
inline Counts counts(int n)
{
	Counts c{3, 3, 1};
	for (int k = 0; k < n; ++k)
		c = {c.v + c.e + c.f, 2 * c.e + 6 * c.f, 6 * c.f};
	return c;
}

using Pt = std::pair<Rational, Rational>;

inline Pt mid(const Pt& a, const Pt& b)
{
	return {(a.first + b.first) / Rational(2), (a.second + b.second) / Rational(2)};
}

inline Pt centroid(const Pt& a, const Pt& b, const Pt& c)
{
	return {(a.first + b.first + c.first) / Rational(3), (a.second + b.second + c.second) / Rational(3)};
}

/// Level n of the subdivision as sets of coordinate tuples, starting from the
/// level-1 hexagon. Each triangle (a, b, c) becomes the six triangles
/// (corner, side midpoint, centroid).
struct GeometricLevel
{
	std::set<Pt> vertices;
	std::set<std::pair<Pt, Pt>> edges;
	std::vector<std::array<Pt, 3>> triangles;
};

inline std::pair<Pt, Pt> edge_key(const Pt& a, const Pt& b)
{
	return a < b ? std::pair{a, b} : std::pair{b, a};
}

inline GeometricLevel geometric_level(int n)
{
	// Hexagon in the lattice basis (1,0), (1/2, sqrt3/2).
	const std::array<Pt, 6> hex = {Pt{1, 0}, Pt{0, 1}, Pt{-1, 1}, Pt{-1, 0}, Pt{0, -1}, Pt{1, -1}};
	const Pt centre{0, 0};
	std::vector<std::array<Pt, 3>> tris;
	if (n == 0) {
		tris.push_back({hex[0], hex[2], hex[4]});
	} else {
		for (int k = 0; k < 6; ++k)
			tris.push_back({centre, hex[static_cast<std::size_t>(k)], hex[static_cast<std::size_t>((k + 1) % 6)]});
		for (int level = 1; level < n; ++level) {
			std::vector<std::array<Pt, 3>> next;
			for (const auto& t : tris) {
				const auto g = centroid(t[0], t[1], t[2]);
				for (int i = 0; i < 3; ++i)
					for (int j = 0; j < 3; ++j)
						if (i != j)
							next.push_back({t[static_cast<std::size_t>(i)],
											mid(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)]), g});
			}
			tris = std::move(next);
		}
	}
	GeometricLevel out;
	for (const auto& t : tris) {
		for (const auto& p : t)
			out.vertices.insert(p);
		out.edges.insert(edge_key(t[0], t[1]));
		out.edges.insert(edge_key(t[0], t[2]));
		out.edges.insert(edge_key(t[1], t[2]));
	}
	out.triangles = std::move(tris);
	return out;
}

/// Effective resistance by dense Gaussian elimination with partial pivoting in
/// long double. Vertices not connected to A u B are dropped first.
inline long double resistance(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, long double>>& edges,
							  const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
	std::vector<int> role(n, 0);
	for (auto v : a)
		role[v] = -1;
	for (auto v : b)
		role[v] = 1;
	// reachability from A u B
	std::vector<std::vector<std::size_t>> adj(n);
	for (const auto& [u, v, c] : edges) {
		adj[u].push_back(v);
		adj[v].push_back(u);
	}
	std::vector<char> seen(n, 0);
	std::vector<std::size_t> stack;
	for (std::size_t v = 0; v < n; ++v)
		if (role[v] != 0) {
			seen[v] = 1;
			stack.push_back(v);
		}
	while (!stack.empty()) {
		auto v = stack.back();
		stack.pop_back();
		for (auto w : adj[v])
			if (!seen[w]) {
				seen[w] = 1;
				stack.push_back(w);
			}
	}
	std::vector<long> slot(n, -1);
	std::size_t m = 0;
	for (std::size_t v = 0; v < n; ++v)
		if (seen[v] && role[v] == 0)
			slot[v] = static_cast<long>(m++);
	std::vector<std::vector<long double>> M(m, std::vector<long double>(m + 1, 0.0L));
	for (const auto& [u, v, c] : edges) {
		for (auto [p, q] : {std::pair{u, v}, std::pair{v, u}}) {
			if (slot[p] < 0)
				continue;
			auto i = static_cast<std::size_t>(slot[p]);
			M[i][i] += c;
			if (slot[q] >= 0)
				M[i][static_cast<std::size_t>(slot[q])] -= c;
			else if (role[q] == 1)
				M[i][m] += c;
		}
	}
	for (std::size_t col = 0; col < m; ++col) {
		std::size_t piv = col;
		for (std::size_t r = col + 1; r < m; ++r)
			if (std::fabs(M[r][col]) > std::fabs(M[piv][col]))
				piv = r;
		std::swap(M[col], M[piv]);
		for (std::size_t r = col + 1; r < m; ++r) {
			const long double f = M[r][col] / M[col][col];
			if (f == 0.0L)
				continue;
			for (std::size_t k = col; k <= m; ++k)
				M[r][k] -= f * M[col][k];
		}
	}
	std::vector<long double> x(m);
	for (std::size_t r = m; r-- > 0;) {
		long double s = M[r][m];
		for (std::size_t k = r + 1; k < m; ++k)
			s -= M[r][k] * x[k];
		x[r] = s / M[r][r];
	}
	auto phi = [&](std::size_t v) -> long double {
		if (role[v] == 1)
			return 1.0L;
		if (slot[v] >= 0)
			return x[static_cast<std::size_t>(slot[v])];
		return 0.0L;
	};
	long double e = 0;
	for (const auto& [u, v, c] : edges) {
		const long double d = phi(u) - phi(v);
		e += c * d * d;
	}
	return 1.0L / e;
}

inline long double resistance(const hexacarpet::WeightedGraph& g, const std::vector<std::uint32_t>& a,
							  const std::vector<std::uint32_t>& b)
{
	std::vector<std::tuple<std::size_t, std::size_t, long double>> edges;
	for (const auto& e : g.edges())
		edges.emplace_back(e.u, e.v,
						   static_cast<long double>(e.conductance.num()) / static_cast<long double>(e.conductance.den()));
	return resistance(g.vertex_count(), edges, std::vector<std::size_t>(a.begin(), a.end()),
					  std::vector<std::size_t>(b.begin(), b.end()));
}

/// Connected random graph with small rational conductances and disjoint
/// terminal sets.
struct RandomCase
{
	hexacarpet::WeightedGraph graph;
	std::vector<std::uint32_t> a, b;
};

inline RandomCase random_graph(std::mt19937_64& rng, std::size_t min_v = 6, std::size_t max_v = 60)
{
	std::uniform_int_distribution<std::size_t> nv(min_v, max_v);
	const std::size_t n = nv(rng);
	std::uniform_int_distribution<int> num(1, 9), den(1, 4);
	std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> pick;
	for (std::uint32_t v = 1; v < n; ++v) {
		std::uniform_int_distribution<std::uint32_t> parent(0, v - 1);
		pick[{parent(rng), v}] = Rational(num(rng), den(rng));
	}
	std::uniform_int_distribution<std::uint32_t> any(0, static_cast<std::uint32_t>(n - 1));
	for (std::size_t extra = 0; extra < n; ++extra) {
		auto u = any(rng), v = any(rng);
		if (u == v)
			continue;
		if (u > v)
			std::swap(u, v);
		pick.try_emplace({u, v}, Rational(num(rng), den(rng)));
	}
	std::vector<hexacarpet::WeightedEdge> edges;
	for (const auto& [k, c] : pick)
		edges.push_back({k.first, k.second, c});
	RandomCase rc{hexacarpet::WeightedGraph(n, std::move(edges)), {}, {}};
	std::vector<std::uint32_t> order(n);
	for (std::uint32_t i = 0; i < n; ++i)
		order[i] = i;
	std::shuffle(order.begin(), order.end(), rng);
	const std::size_t ka = 1 + rng() % 3, kb = 1 + rng() % 3;
	rc.a.assign(order.begin(), order.begin() + static_cast<long>(ka));
	rc.b.assign(order.begin() + static_cast<long>(ka), order.begin() + static_cast<long>(ka + kb));
	std::sort(rc.a.begin(), rc.a.end());
	std::sort(rc.b.begin(), rc.b.end());
	rc.graph.set_boundary("A", rc.a);
	rc.graph.set_boundary("B", rc.b);
	return rc;
}

} // namespace oracle
