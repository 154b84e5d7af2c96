#pragma once

#include "complex.hpp"
#include "graph.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace hexacarpet {

/// Complex level as JSON: level, vertices, edges, triangles, barycenters (in
/// that order). Vertices are [a_num, a_den, b_num, b_den] in the lattice basis
/// (1,0), (1/2, sqrt(3)/2). Barycenters give the level-n vertex of each
/// level-(n-1) edge and triangle.
inline nlohmann::ordered_json complex_to_json(const SimplicialComplex& c, int n)
{
	const auto& l = c.level(n);
	nlohmann::ordered_json j;
	j["level"] = n;
	auto verts = nlohmann::ordered_json::array();
	for (VertexId v = 0; v < l.vertex_count; ++v) {
		const auto& p = c.coordinate(v);
		verts.push_back({p.a.num(), p.a.den(), p.b.num(), p.b.den()});
	}
	j["vertices"] = std::move(verts);
	auto edges = nlohmann::ordered_json::array();
	for (const auto& e : l.edges)
		edges.push_back({e[0], e[1]});
	j["edges"] = std::move(edges);
	auto tris = nlohmann::ordered_json::array();
	for (const auto& t : l.triangles)
		tris.push_back({t[0], t[1], t[2]});
	j["triangles"] = std::move(tris);
	auto bary = nlohmann::ordered_json::object();
	if (n > 0) {
		const auto& prev = c.level(n - 1);
		auto be = nlohmann::ordered_json::array();
		for (std::uint32_t e = 0; e < prev.edges.size(); ++e)
			be.push_back(c.barycenter(n - 1, Dim::edge, e));
		auto bt = nlohmann::ordered_json::array();
		for (std::uint32_t t = 0; t < prev.triangles.size(); ++t)
			bt.push_back(c.barycenter(n - 1, Dim::triangle, t));
		bary["edges"] = std::move(be);
		bary["triangles"] = std::move(bt);
	}
	j["barycenters"] = std::move(bary);
	return j;
}

/// `#boundary NAME: v v v` header lines, then one `u v num/den` line per edge.
inline void write_edge_list(std::ostream& os, const WeightedGraph& g)
{
	os << "# family " << family_name(g.family) << " level " << g.level << " vertices " << g.vertex_count()
	   << " edges " << g.edge_count() << '\n';
	for (const auto& [name, members] : g.boundaries()) {
		os << "#boundary " << name << ':';
		for (auto v : members)
			os << ' ' << v;
		os << '\n';
	}
	for (const auto& e : g.edges())
		os << e.u << ' ' << e.v << ' ' << e.conductance.num() << '/' << e.conductance.den() << '\n';
}

/// Undirected DOT graph; A is drawn red, B blue.
inline void write_dot(std::ostream& os, const WeightedGraph& g)
{
	os << "graph " << family_name(g.family) << "_" << g.level << " {\n";
	std::vector<const char*> color(g.vertex_count(), nullptr);
	if (g.has_boundary("A"))
		for (auto v : g.boundary("A"))
			color[v] = "red";
	if (g.has_boundary("B"))
		for (auto v : g.boundary("B"))
			color[v] = "blue";
	for (std::size_t v = 0; v < g.vertex_count(); ++v) {
		os << "  " << v;
		if (color[v])
			os << " [color=" << color[v] << ", style=filled]";
		os << ";\n";
	}
	for (const auto& e : g.edges())
		os << "  " << e.u << " -- " << e.v << " [label=\"" << e.conductance.str() << "\"];\n";
	os << "}\n";
}

} // namespace hexacarpet
