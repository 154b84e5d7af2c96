#pragma once

#include "complex.hpp"
#include "error.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <vector>

namespace hexacarpet {

using VertexIndex = std::uint32_t;

struct WeightedEdge
{
	VertexIndex u = 0;
	VertexIndex v = 0;
	Rational conductance{1};
};

enum class Family
{
	skeleton,
	dual,
	hexacarpet,
	cut,
	short_circuit
};

inline std::string family_name(Family f)
{
	switch (f) {
	case Family::skeleton:
		return "skeleton";
	case Family::dual:
		return "dual";
	case Family::hexacarpet:
		return "hexacarpet";
	case Family::cut:
		return "cut";
	case Family::short_circuit:
		return "short";
	}
	return "?";
}

/**
 * Finite graph with positive rational conductances and named boundary sets.
 *
 * Edges are stored once per unordered pair with u < v, sorted. Boundary set
 * names used by the builders: "A", "B" (the resistance query pair) and
 * "L0".."L5" (hexagon sides).
 */
class WeightedGraph
{
  public:
	WeightedGraph() = default;

	WeightedGraph(std::size_t vertex_count, std::vector<WeightedEdge> edges,
				  std::vector<SimplexId> labels = {})
		: vertex_count_(vertex_count), edges_(std::move(edges)), labels_(std::move(labels))
	{
		for (auto& e : edges_) {
			if (e.u == e.v)
				throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
			if (e.u > e.v)
				std::swap(e.u, e.v);
			if (e.v >= vertex_count_)
				throw InvalidArgument("edge endpoint out of range");
			if (e.conductance <= Rational(0))
				throw InvalidArgument("non-positive conductance");
		}
		std::sort(edges_.begin(), edges_.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
			return a.u != b.u ? a.u < b.u : a.v < b.v;
		});
		for (std::size_t i = 1; i < edges_.size(); ++i)
			if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
				throw InvalidArgument("duplicate edge");
		if (!labels_.empty() && labels_.size() != vertex_count_)
			throw InvalidArgument("label table size mismatch");
	}

	std::size_t vertex_count() const noexcept { return vertex_count_; }
	std::size_t edge_count() const noexcept { return edges_.size(); }
	const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
	const std::vector<SimplexId>& labels() const noexcept { return labels_; }

	void set_boundary(const std::string& name, std::vector<VertexIndex> members)
	{
		std::sort(members.begin(), members.end());
		members.erase(std::unique(members.begin(), members.end()), members.end());
		for (auto v : members)
			if (v >= vertex_count_)
				throw InvalidArgument("boundary vertex out of range");
		boundary_[name] = std::move(members);
	}

	bool has_boundary(const std::string& name) const { return boundary_.count(name) != 0; }

	const std::vector<VertexIndex>& boundary(const std::string& name) const
	{
		auto it = boundary_.find(name);
		if (it == boundary_.end())
			throw InvalidArgument("no boundary set named " + name);
		return it->second;
	}

	const std::map<std::string, std::vector<VertexIndex>>& boundaries() const noexcept
	{
		return boundary_;
	}

	Family family = Family::hexacarpet;
	int level = 0;

  private:
	std::size_t vertex_count_ = 0;
	std::vector<WeightedEdge> edges_;
	std::vector<SimplexId> labels_;
	std::map<std::string, std::vector<VertexIndex>> boundary_;
};

/// Map vertex -> class; classes are 0..class_count-1 and all non-empty.
struct VertexPartition
{
	std::vector<std::uint32_t> representative;
	std::uint32_t class_count = 0;

	static VertexPartition identity(std::size_t n)
	{
		VertexPartition p;
		p.representative.resize(n);
		std::iota(p.representative.begin(), p.representative.end(), 0u);
		p.class_count = static_cast<std::uint32_t>(n);
		return p;
	}

	void validate(std::size_t n) const
	{
		if (representative.size() != n)
			throw InvalidArgument("partition size does not match the graph");
		std::vector<char> seen(class_count, 0);
		for (auto r : representative) {
			if (r >= class_count)
				throw InvalidArgument("partition class out of range");
			seen[r] = 1;
		}
		if (std::find(seen.begin(), seen.end(), 0) != seen.end())
			throw InvalidArgument("partition has an empty class");
	}
};

/// Adjacency lists, one entry (neighbor, edge index) per incident edge.
inline std::vector<std::vector<std::pair<VertexIndex, std::uint32_t>>>
adjacency(const WeightedGraph& g)
{
	std::vector<std::vector<std::pair<VertexIndex, std::uint32_t>>> adj(g.vertex_count());
	const auto& es = g.edges();
	for (std::uint32_t i = 0; i < es.size(); ++i) {
		adj[es[i].u].push_back({es[i].v, i});
		adj[es[i].v].push_back({es[i].u, i});
	}
	return adj;
}

/// Component label per vertex, numbered in order of the smallest vertex.
inline std::vector<std::uint32_t> connected_components(const WeightedGraph& g,
													   std::uint32_t* count = nullptr)
{
	const auto adj = adjacency(g);
	std::vector<std::uint32_t> comp(g.vertex_count(), UINT32_MAX);
	std::uint32_t next = 0;
	std::vector<VertexIndex> stack;
	for (VertexIndex s = 0; s < g.vertex_count(); ++s) {
		if (comp[s] != UINT32_MAX)
			continue;
		comp[s] = next;
		stack.push_back(s);
		while (!stack.empty()) {
			const auto v = stack.back();
			stack.pop_back();
			for (auto [w, e] : adj[v])
				if (comp[w] == UINT32_MAX) {
					comp[w] = next;
					stack.push_back(w);
				}
		}
		++next;
	}
	if (count)
		*count = next;
	return comp;
}

inline bool is_connected(const WeightedGraph& g)
{
	std::uint32_t k = 0;
	connected_components(g, &k);
	return k <= 1;
}

namespace detail {

inline void require_graph_level(const SimplicialComplex& c, int n)
{
	if (n < 1)
		throw InvalidArgument("graphs need level n >= 1 (level 0 boundary sets degenerate)");
	c.require_level(n);
}

template <class Pred>
std::vector<VertexIndex> select(std::size_t count, Pred pred)
{
	std::vector<VertexIndex> out;
	for (VertexIndex v = 0; v < count; ++v)
		if (pred(v))
			out.push_back(v);
	return out;
}

inline std::vector<VertexIndex> merge(std::vector<VertexIndex> a, const std::vector<VertexIndex>& b)
{
	a.insert(a.end(), b.begin(), b.end());
	std::sort(a.begin(), a.end());
	return a;
}

} // namespace detail

/// 1-skeleton G_n^T: conductance 1 inside, 1/2 on the hexagon boundary.
/// Boundary sets: L0..L5, A = L2, B = L5.
inline WeightedGraph build_skeleton(const SimplicialComplex& c, int n)
{
	detail::require_graph_level(c, n);
	const auto& l = c.level(n);
	const auto inc = c.edge_incidence(n);
	std::vector<WeightedEdge> edges;
	edges.reserve(l.edges.size());
	for (std::size_t e = 0; e < l.edges.size(); ++e)
		edges.push_back({l.edges[e][0], l.edges[e][1], inc[e] == 2 ? Rational(1) : Rational(1, 2)});
	std::vector<SimplexId> labels(l.vertex_count);
	for (std::uint32_t v = 0; v < l.vertex_count; ++v)
		labels[v] = {n, Dim::vertex, v};
	WeightedGraph g(l.vertex_count, std::move(edges), std::move(labels));
	g.family = Family::skeleton;
	g.level = n;
	for (int s = 0; s < 6; ++s)
		g.set_boundary("L" + std::to_string(s),
					   detail::select(l.vertex_count, [&](VertexIndex v) { return c.vertex_sides(v).contains(s); }));
	g.set_boundary("A", g.boundary("L2"));
	g.set_boundary("B", g.boundary("L5"));
	return g;
}

/// Dual graph G_n: triangles adjacent when they share an edge; unit conductance.
/// Boundary set L_i holds the triangles with a side in L_i; A = L0 u L1, B = L3 u L4.
inline WeightedGraph build_dual(const SimplicialComplex& c, int n)
{
	detail::require_graph_level(c, n);
	const auto& l = c.level(n);
	std::vector<std::array<std::int64_t, 2>> owner(l.edges.size(), {-1, -1});
	for (std::uint32_t t = 0; t < l.triangles.size(); ++t) {
		const auto& f = l.triangles[t];
		for (auto e : {c.edge_index(n, f[0], f[1]), c.edge_index(n, f[0], f[2]), c.edge_index(n, f[1], f[2])})
			owner[e][owner[e][0] < 0 ? 0 : 1] = t;
	}
	std::vector<WeightedEdge> edges;
	std::array<std::vector<VertexIndex>, 6> sides;
	for (std::uint32_t e = 0; e < l.edges.size(); ++e) {
		if (owner[e][1] >= 0)
			edges.push_back({static_cast<VertexIndex>(owner[e][0]), static_cast<VertexIndex>(owner[e][1]), Rational(1)});
		else if (l.edge_side[e] >= 0)
			sides[static_cast<std::size_t>(l.edge_side[e])].push_back(static_cast<VertexIndex>(owner[e][0]));
	}
	std::vector<SimplexId> labels(l.triangles.size());
	for (std::uint32_t t = 0; t < l.triangles.size(); ++t)
		labels[t] = {n, Dim::triangle, t};
	WeightedGraph g(l.triangles.size(), std::move(edges), std::move(labels));
	g.family = Family::dual;
	g.level = n;
	for (int s = 0; s < 6; ++s)
		g.set_boundary("L" + std::to_string(s), sides[static_cast<std::size_t>(s)]);
	g.set_boundary("A", detail::merge(g.boundary("L0"), g.boundary("L1")));
	g.set_boundary("B", detail::merge(g.boundary("L3"), g.boundary("L4")));
	return g;
}

/**
 * Modified hexacarpet G_n^H.
 *
 * Vertices 0..|E_n^2|-1 are the triangles, followed by one vertex per edge of
 * T_n. Each triangle is joined to its three sides with conductance 2
 * (resistance 1/2). Boundary sets: L0..L5 (edge-vertices on each side),
 * A = L0 u L1, B = L3 u L4.
 */
inline WeightedGraph build_hexacarpet(const SimplicialComplex& c, int n)
{
	detail::require_graph_level(c, n);
	const auto& l = c.level(n);
	const auto nt = static_cast<VertexIndex>(l.triangles.size());
	std::vector<WeightedEdge> edges;
	edges.reserve(3 * l.triangles.size());
	for (VertexIndex t = 0; t < nt; ++t) {
		const auto& f = l.triangles[t];
		std::array<std::uint32_t, 3> es = {c.edge_index(n, f[0], f[1]), c.edge_index(n, f[0], f[2]),
										   c.edge_index(n, f[1], f[2])};
		std::sort(es.begin(), es.end());
		for (auto e : es)
			edges.push_back({t, nt + e, Rational(2)});
	}
	std::vector<SimplexId> labels(nt + l.edges.size());
	for (VertexIndex t = 0; t < nt; ++t)
		labels[t] = {n, Dim::triangle, t};
	for (std::uint32_t e = 0; e < l.edges.size(); ++e)
		labels[nt + e] = {n, Dim::edge, e};
	const auto total = labels.size();
	WeightedGraph g(total, std::move(edges), std::move(labels));
	g.family = Family::hexacarpet;
	g.level = n;
	std::array<std::vector<VertexIndex>, 6> sides;
	for (std::uint32_t e = 0; e < l.edges.size(); ++e)
		if (l.edge_side[e] >= 0)
			sides[static_cast<std::size_t>(l.edge_side[e])].push_back(nt + e);
	for (int s = 0; s < 6; ++s)
		g.set_boundary("L" + std::to_string(s), sides[static_cast<std::size_t>(s)]);
	g.set_boundary("A", detail::merge(g.boundary("L0"), g.boundary("L1")));
	g.set_boundary("B", detail::merge(g.boundary("L3"), g.boundary("L4")));
	return g;
}

/// Index of the H-edge (triangle t, edge-vertex of edge e) in a hexacarpet graph.
inline std::uint32_t hexacarpet_edge(const WeightedGraph& g, std::uint32_t triangle, std::uint32_t edge_vertex)
{
	const auto& es = g.edges();
	for (std::uint32_t k = 3 * triangle; k < 3 * triangle + 3; ++k)
		if (es[k].v == edge_vertex)
			return k;
	throw InvalidArgument("edge-vertex is not a side of the triangle");
}

/**
 * Subgraph on the same vertex set without the edges for which `drop` is true.
 * Boundary sets are kept.
 */
inline WeightedGraph drop_edges(const WeightedGraph& g,
								const std::function<bool(const WeightedEdge&, std::uint32_t)>& drop)
{
	std::vector<WeightedEdge> kept;
	const auto& es = g.edges();
	for (std::uint32_t i = 0; i < es.size(); ++i)
		if (!drop(es[i], i))
			kept.push_back(es[i]);
	WeightedGraph out(g.vertex_count(), std::move(kept), g.labels());
	out.family = g.family;
	out.level = g.level;
	for (const auto& [name, members] : g.boundaries())
		out.set_boundary(name, members);
	return out;
}

/**
 * Quotient by a vertex partition. Conductances between classes add; edges
 * inside a class disappear. Boundary sets map to the set of classes they hit.
 * Throws if the images of A and B intersect.
 */
inline WeightedGraph quotient(const WeightedGraph& g, const VertexPartition& p)
{
	p.validate(g.vertex_count());
	std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> merged;
	for (const auto& e : g.edges()) {
		auto a = p.representative[e.u];
		auto b = p.representative[e.v];
		if (a == b)
			continue;
		if (a > b)
			std::swap(a, b);
		auto [it, fresh] = merged.try_emplace({a, b}, e.conductance);
		if (!fresh)
			it->second += e.conductance;
	}
	std::vector<WeightedEdge> edges;
	edges.reserve(merged.size());
	for (const auto& [key, cond] : merged)
		edges.push_back({key.first, key.second, cond});
	std::vector<SimplexId> labels;
	if (!g.labels().empty()) {
		labels.resize(p.class_count);
		std::vector<char> set(p.class_count, 0);
		for (std::size_t v = 0; v < g.vertex_count(); ++v) {
			const auto k = p.representative[v];
			if (!set[k]) {
				labels[k] = g.labels()[v];
				set[k] = 1;
			}
		}
	}
	WeightedGraph out(p.class_count, std::move(edges), std::move(labels));
	out.family = g.family;
	out.level = g.level;
	for (const auto& [name, members] : g.boundaries()) {
		std::vector<VertexIndex> mapped;
		mapped.reserve(members.size());
		for (auto v : members)
			mapped.push_back(p.representative[v]);
		out.set_boundary(name, std::move(mapped));
	}
	if (out.has_boundary("A") && out.has_boundary("B")) {
		const auto& a = out.boundary("A");
		const auto& b = out.boundary("B");
		std::vector<VertexIndex> both;
		std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
		if (!both.empty())
			throw InvalidArgument("quotient identifies vertices of A with vertices of B");
	}
	return out;
}

/// One simple path of the cut graph.
struct CutPath
{
	VertexIndex start = 0;             // edge-vertex on L0 u L1
	VertexIndex end = 0;               // edge-vertex on L4 u L5
	std::uint32_t hedges = 0;          // number of H-edges
	std::int64_t length = 0;           // resistance of the path (hedges / 2)
	std::vector<VertexIndex> vertices; // start .. end
};

namespace detail {

/// Level-n edges removed in the cut graph, built through the twisted gluing
/// maps F_i o g_i (see build_cut_graph).
inline std::vector<char> cut_edges(const SimplicialComplex& c, int n)
{
	using namespace named;
	auto top_cut = [&](int k) {
		const auto& l = c.level(k);
		const auto s0 = c.edge_index(1, p0s, center);
		const auto s2 = c.edge_index(1, p2s, center);
		std::vector<char> cut(l.edges.size(), 0);
		for (std::size_t e = 0; e < l.edges.size(); ++e) {
			const auto a = l.edge_level1[e];
			cut[e] = (a == static_cast<std::int32_t>(s0) || a == static_cast<std::int32_t>(s2)) ? 1 : 0;
		}
		return cut;
	};
	std::vector<char> cur = top_cut(1);
	if (n == 1)
		return cur;
	// Gluing maps: cells 0,1,4,5 carry the copy with p0 and p1 exchanged.
	const auto swap01 = c.corner_permutation({1, 0, 2});
	std::array<std::vector<VertexId>, 6> glue;
	for (int i = 0; i < 6; ++i) {
		const auto& f = c.self_similar_map(i);
		const bool twist = (i != 2 && i != 3);
		auto& img = glue[static_cast<std::size_t>(i)];
		img.resize(f.image.size());
		for (VertexId v = 0; v < img.size(); ++v)
			img[v] = f.image[twist ? swap01.image[v] : v];
	}
	for (int k = 1; k < n; ++k) {
		auto next = top_cut(k + 1);
		const auto& l = c.level(k);
		for (std::size_t e = 0; e < l.edges.size(); ++e) {
			if (!cur[e])
				continue;
			for (const auto& img : glue)
				next[c.edge_index(k + 1, img[l.edges[e][0]], img[l.edges[e][1]])] = 1;
		}
		cur = std::move(next);
	}
	return cur;
}

} // namespace detail

/**
 * Decomposes a cut graph into its simple paths from "A" (L0 u L1) to "B"
 * (L4 u L5).
 *
 * Pendant leaves outside A u B are ignored; everything else must be a
 * vertex-disjoint family of simple paths covering every triangle, one per
 * A-vertex. Paths are ordered by the position of their A-endpoint along the
 * side from p0 to p1. Throws StructureError on any violation.
 */
inline std::vector<CutPath> cut_paths(const SimplicialComplex& c, const WeightedGraph& g)
{
	const int n = g.level;
	const auto triangles = static_cast<VertexIndex>(c.triangle_count(n));
	const auto adj = adjacency(g);
	const auto& a_set = g.boundary("A");
	const auto& b_set = g.boundary("B");
	std::vector<char> terminal(g.vertex_count(), 0);
	for (auto v : a_set)
		terminal[v] = 1;
	for (auto v : b_set)
		terminal[v] = 2;
	auto is_leaf = [&](VertexIndex v) { return adj[v].size() == 1 && terminal[v] == 0; };

	std::vector<char> visited(g.vertex_count(), 0);
	std::vector<CutPath> paths;
	for (auto s : a_set) {
		CutPath p;
		p.start = s;
		p.vertices.push_back(s);
		visited[s] = 1;
		if (adj[s].size() != 1)
			throw StructureError("A-vertex " + std::to_string(s) + " does not start a path");
		VertexIndex prev = s;
		VertexIndex cur = adj[s][0].first;
		while (true) {
			if (visited[cur])
				throw StructureError("paths intersect at vertex " + std::to_string(cur));
			visited[cur] = 1;
			p.vertices.push_back(cur);
			++p.hedges;
			if (terminal[cur] == 2)
				break;
			if (terminal[cur] == 1)
				throw StructureError("path returns to A at vertex " + std::to_string(cur));
			VertexIndex next = UINT32_MAX;
			for (auto [w, e] : adj[cur]) {
				if (w == prev || is_leaf(w))
					continue;
				if (next != UINT32_MAX)
					throw StructureError("branching at vertex " + std::to_string(cur));
				next = w;
			}
			if (next == UINT32_MAX)
				throw StructureError("dead end at vertex " + std::to_string(cur));
			prev = cur;
			cur = next;
		}
		p.end = cur;
		if (p.hedges % 2 != 0)
			throw StructureError("odd path length");
		p.length = p.hedges / 2;
		paths.push_back(std::move(p));
	}
	for (VertexIndex t = 0; t < triangles; ++t)
		if (!visited[t])
			throw StructureError("triangle " + std::to_string(t) + " lies on no path");

	// Order by the A-endpoint's distance from p0; along L0 u L1 the first lattice
	// coordinate decreases strictly from p0 to p1.
	auto position = [&](VertexIndex v) {
		const auto& e = c.level(n).edges[v - triangles];
		return c.coordinate(e[0]).a + c.coordinate(e[1]).a;
	};
	std::sort(paths.begin(), paths.end(),
			  [&](const CutPath& x, const CutPath& y) { return position(x.start) > position(y.start); });
	return paths;
}

/**
 * Cut graph: the hexacarpet with every H-edge removed whose edge-vertex lies
 * in the diagonals [p'_0, p'] or [p'_2, p'] of some cell, at every scale.
 *
 * Level n+1 is glued from six level-n copies, cell i receiving its copy
 * through F_i o g_i, where g_i exchanges p0 and p1 for i in {0,1,4,5} and is
 * the identity for i in {2,3}; this keeps each copy's path ends on the cell
 * sides that meet neighbouring copies. Boundary sets: A = L0 u L1 and
 * B = L4 u L5 (the path terminals), plus L0..L5. The 2^n-path structure is
 * checked before returning.
 */
inline WeightedGraph build_cut_graph(const SimplicialComplex& c, int n)
{
	detail::require_graph_level(c, n);
	const auto hex = build_hexacarpet(c, n);
	const auto cut = detail::cut_edges(c, n);
	const auto nt = static_cast<VertexIndex>(c.triangle_count(n));
	auto g = drop_edges(hex, [&](const WeightedEdge& e, std::uint32_t) { return cut[e.v - nt] != 0; });
	g.family = Family::cut;
	g.set_boundary("A", detail::merge(g.boundary("L0"), g.boundary("L1")));
	g.set_boundary("B", detail::merge(g.boundary("L4"), g.boundary("L5")));
	const auto paths = cut_paths(c, g);
	if (paths.size() != (std::size_t{1} << n))
		throw StructureError("cut graph has " + std::to_string(paths.size()) + " paths");
	return g;
}

/// Partition of G_n^H vertices that merges edge-vertices with a common coarsest
/// edge ancestor; triangles stay singletons. Classes are numbered by first vertex.
inline VertexPartition short_circuit_partition(const SimplicialComplex& c, int n)
{
	const auto& l = c.level(n);
	const auto nt = l.triangles.size();
	VertexPartition p;
	p.representative.resize(nt + l.edges.size());
	std::map<std::pair<int, std::uint32_t>, std::uint32_t> ids;
	std::uint32_t next = 0;
	for (std::size_t t = 0; t < nt; ++t)
		p.representative[t] = next++;
	for (std::size_t e = 0; e < l.edges.size(); ++e) {
		const auto& r = l.edge_root[e];
		auto [it, fresh] = ids.try_emplace({r.level, r.index}, next);
		if (fresh)
			++next;
		p.representative[nt + e] = it->second;
	}
	p.class_count = next;
	return p;
}

/// Short-circuited graph: quotient of G_n^H under short_circuit_partition.
inline WeightedGraph build_short_graph(const SimplicialComplex& c, int n)
{
	detail::require_graph_level(c, n);
	auto g = quotient(build_hexacarpet(c, n), short_circuit_partition(c, n));
	g.family = Family::short_circuit;
	return g;
}

inline WeightedGraph build_graph(const SimplicialComplex& c, Family f, int n)
{
	switch (f) {
	case Family::skeleton:
		return build_skeleton(c, n);
	case Family::dual:
		return build_dual(c, n);
	case Family::hexacarpet:
		return build_hexacarpet(c, n);
	case Family::cut:
		return build_cut_graph(c, n);
	case Family::short_circuit:
		return build_short_graph(c, n);
	}
	throw InvalidArgument("unknown family");
}

} // namespace hexacarpet
