#pragma once

#include "error.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

namespace hexacarpet {

using VertexId = std::uint32_t;

inline constexpr int default_cap_level = 8;

/// Level cap: HEXACARPET_CAP if set to a valid integer, otherwise 8.
inline int level_cap()
{
	if (const char* env = std::getenv("HEXACARPET_CAP")) {
		char* end = nullptr;
		const long v = std::strtol(env, &end, 10);
		if (end != env && *end == '\0' && v >= 0 && v <= 12)
			return static_cast<int>(v);
	}
	return default_cap_level;
}

/// Names of the seven level-1 vertices. Vertex ids are stable across levels,
/// so these stay valid at every level n >= 1.
namespace named {
inline constexpr VertexId p0 = 0;
inline constexpr VertexId p1 = 1;
inline constexpr VertexId p2 = 2;
inline constexpr VertexId p0s = 3; // barycenter of [p0,p1]
inline constexpr VertexId p2s = 4; // barycenter of [p0,p2]
inline constexpr VertexId p1s = 5; // barycenter of [p1,p2]
inline constexpr VertexId center = 6;

/// Corner p_k and edge midpoint p'_k = b([p_k, p_{k+1}]).
inline constexpr std::array<VertexId, 3> corner = {p0, p1, p2};
inline constexpr std::array<VertexId, 3> midpoint = {p0s, p1s, p2s};

/// Hexagon sides L_0..L_5 as level-1 vertex pairs.
inline constexpr std::array<std::array<VertexId, 2>, 6> side = {{
	{p0, p0s}, // L0
	{p1, p0s}, // L1
	{p1, p1s}, // L2
	{p2, p1s}, // L3
	{p2, p2s}, // L4
	{p0, p2s}, // L5
}};
} // namespace named

enum class Dim : std::uint8_t
{
	vertex = 0,
	edge = 1,
	triangle = 2
};

/// Identity of a simplex: (level, dimension, canonical index).
struct SimplexId
{
	int level = 0;
	Dim dim = Dim::vertex;
	std::uint32_t index = 0;

	friend auto operator<=>(const SimplexId&, const SimplexId&) = default;
};

/// Point in the hexagonal lattice basis: position = a*(1,0) + b*(1/2, sqrt(3)/2).
/// Affine relations (averages, collinearity) are the same in either basis.
struct Point
{
	Rational a;
	Rational b;

	friend bool operator==(const Point&, const Point&) = default;
};

/// Level n-1 simplex whose geometric realization contains a level-n edge.
struct Parent
{
	Dim dim = Dim::edge;
	std::uint32_t index = 0;
};

/// Coarsest edge (over all levels) that contains a given edge.
struct EdgeRoot
{
	int level = 0;
	std::uint32_t index = 0;

	friend bool operator==(const EdgeRoot&, const EdgeRoot&) = default;
};

/// Set of hexagon sides, bit i for L_i.
struct SideSet
{
	std::uint8_t bits = 0;

	bool empty() const noexcept { return bits == 0; }
	bool contains(int side) const noexcept { return (bits >> side) & 1u; }
	int size() const noexcept { return __builtin_popcount(bits); }
	std::vector<int> members() const
	{
		std::vector<int> out;
		for (int i = 0; i < 6; ++i)
			if (contains(i))
				out.push_back(i);
		return out;
	}
	friend bool operator==(const SideSet&, const SideSet&) = default;
};

using Edge2 = std::array<VertexId, 2>;
using Triangle3 = std::array<VertexId, 3>;

/// Tables of one level T_n. Edges and triangles hold sorted vertex tuples and
/// are themselves sorted, which fixes the canonical numbering.
struct Level
{
	std::uint32_t vertex_count = 0;
	std::vector<Edge2> edges;
	std::vector<Triangle3> triangles;
	std::vector<Parent> edge_parent;              // empty at level 0
	std::vector<std::uint32_t> triangle_parent;   // empty at level 0
	std::vector<EdgeRoot> edge_root;
	std::vector<std::int32_t> edge_level1;        // level-1 edge ancestor or -1
	std::vector<std::int8_t> edge_side;           // hexagon side or -1 (n >= 1)
};

/**
 * Map on vertex ids that sends level-n vertices to level-(n + shift)
 * vertices, for every n up to a fixed domain level.
 *
 * Automorphisms of T_n have shift 0; the self-similar maps F_i have shift 1.
 * Because vertex ids are stable across levels, one table serves all levels.
 */
struct VertexMap
{
	int shift = 0;
	int domain_level = 0;
	std::vector<VertexId> image;

	VertexId operator()(VertexId v) const { return image.at(v); }
};

/// Word w = w_1 ... w_m over {0..5}; F_w = F_{w_1} o ... o F_{w_m}.
struct CellWord
{
	std::vector<std::uint8_t> letters;

	std::size_t size() const noexcept { return letters.size(); }
	friend auto operator<=>(const CellWord&, const CellWord&) = default;
};

/// Cell of level m: its word and the images of p0, p1, p2 under F_w.
struct Cell
{
	CellWord word;
	std::array<VertexId, 3> corners{};
	std::uint32_t triangle = 0;
};

class SimplicialComplex
{
  public:
	/// T_0: one triangle on p0, p1, p2.
	static SimplicialComplex base(int cap = level_cap())
	{
		SimplicialComplex c;
		c.cap_ = cap;
		Level l;
		l.vertex_count = 3;
		l.edges = {{0, 1}, {0, 2}, {1, 2}};
		l.triangles = {{0, 1, 2}};
		l.edge_root = {{0, 0}, {0, 1}, {0, 2}};
		l.edge_level1 = {-1, -1, -1};
		l.edge_side = {-1, -1, -1};
		c.levels_.push_back(std::move(l));
		// Level-0 corners sit where they sit on the hexagon.
		c.coords_ = {Point{1, 0}, Point{-1, 1}, Point{0, -1}};
		c.vertex_sides_ = {0, 0, 0};
		return c;
	}

	/// T_0 subdivided n times.
	static SimplicialComplex build(int n, int cap = level_cap())
	{
		if (n < 0)
			throw InvalidArgument("negative level");
		if (n > cap)
			throw CapacityError("level " + std::to_string(n) + " exceeds cap " +
								std::to_string(cap));
		auto c = base(cap);
		while (c.max_level() < n)
			c.subdivide();
		return c;
	}

	int cap() const noexcept { return cap_; }
	int max_level() const noexcept { return static_cast<int>(levels_.size()) - 1; }

	const Level& level(int n) const
	{
		require_level(n);
		return levels_[static_cast<std::size_t>(n)];
	}

	std::size_t vertex_count(int n) const { return level(n).vertex_count; }
	std::size_t edge_count(int n) const { return level(n).edges.size(); }
	std::size_t triangle_count(int n) const { return level(n).triangles.size(); }

	void require_level(int n) const
	{
		if (n < 0 || n > max_level())
			throw InvalidArgument("level " + std::to_string(n) + " not built (max " +
								  std::to_string(max_level()) + ")");
	}

	/// Extends the complex by one barycentric subdivision.
	void subdivide();

	std::optional<std::uint32_t> find_edge(int n, VertexId a, VertexId b) const
	{
		const auto& es = level(n).edges;
		const Edge2 key = a < b ? Edge2{a, b} : Edge2{b, a};
		auto it = std::lower_bound(es.begin(), es.end(), key);
		if (it == es.end() || *it != key)
			return std::nullopt;
		return static_cast<std::uint32_t>(it - es.begin());
	}

	std::optional<std::uint32_t> find_triangle(int n, VertexId a, VertexId b, VertexId c) const
	{
		const auto& ts = level(n).triangles;
		Triangle3 key{a, b, c};
		std::sort(key.begin(), key.end());
		auto it = std::lower_bound(ts.begin(), ts.end(), key);
		if (it == ts.end() || *it != key)
			return std::nullopt;
		return static_cast<std::uint32_t>(it - ts.begin());
	}

	std::uint32_t edge_index(int n, VertexId a, VertexId b) const
	{
		if (auto e = find_edge(n, a, b))
			return *e;
		throw InvalidArgument("no edge [" + std::to_string(a) + "," + std::to_string(b) +
							  "] at level " + std::to_string(n));
	}

	std::uint32_t triangle_index(int n, VertexId a, VertexId b, VertexId c) const
	{
		if (auto t = find_triangle(n, a, b, c))
			return *t;
		throw InvalidArgument("no triangle at level " + std::to_string(n));
	}

	/// Level-(n+1) vertex b(s) for a level-n edge or triangle s.
	VertexId barycenter(int n, Dim dim, std::uint32_t index) const
	{
		require_level(n + 1);
		const auto& l = level(n);
		switch (dim) {
		case Dim::edge:
			return l.vertex_count + index;
		case Dim::triangle:
			return l.vertex_count + static_cast<VertexId>(l.edges.size()) + index;
		default:
			throw InvalidArgument("barycenter of a vertex");
		}
	}

	/// The level-(n-1) simplex whose barycenter is level-n vertex v, or nullopt
	/// if v already existed at level n-1.
	std::optional<SimplexId> barycenter_origin(int n, VertexId v) const
	{
		require_level(n);
		if (n == 0 || v < level(n - 1).vertex_count)
			return std::nullopt;
		const auto& prev = level(n - 1);
		const std::uint32_t k = v - prev.vertex_count;
		if (k < prev.edges.size())
			return SimplexId{n - 1, Dim::edge, k};
		return SimplexId{n - 1, Dim::triangle, static_cast<std::uint32_t>(k - prev.edges.size())};
	}

	/// Exact position of a vertex in the hexagonal embedding (lattice basis).
	const Point& coordinate(VertexId v) const { return coords_.at(v); }

	/// Sides of the hexagon containing a vertex. Defined for levels n >= 1;
	/// at level 0 the corners report the sides they have from level 1 on.
	SideSet vertex_sides(VertexId v) const { return SideSet{vertex_sides_.at(v)}; }

	int edge_side(int n, std::uint32_t e) const { return level(n).edge_side.at(e); }

	std::vector<Edge2> const& edges(int n) const { return level(n).edges; }
	std::vector<Triangle3> const& triangles(int n) const { return level(n).triangles; }

	/// Number of triangles incident to each edge of level n (1 on the hexagon
	/// boundary, 2 inside).
	std::vector<std::uint8_t> edge_incidence(int n) const
	{
		const auto& l = level(n);
		std::vector<std::uint8_t> inc(l.edges.size(), 0);
		for (const auto& t : l.triangles) {
			++inc[edge_index(n, t[0], t[1])];
			++inc[edge_index(n, t[0], t[2])];
			++inc[edge_index(n, t[1], t[2])];
		}
		return inc;
	}

	/// Self-similar map F_i (i in 0..5) on vertices of every level below max.
	const VertexMap& self_similar_map(int i) const
	{
		if (i < 0 || i > 5)
			throw InvalidArgument("self-similar map index out of range");
		if (max_level() < 1)
			throw InvalidArgument("F_i needs level 1");
		return fmaps_[static_cast<std::size_t>(i)];
	}

	/// Extends a seed map defined on the vertices of `seed_level` (sending them to
	/// level seed_level + shift) through b o F = F o b to all levels the complex holds.
	VertexMap extend_map(int seed_level, int shift, const std::vector<VertexId>& seed) const;

	/// Automorphism of T_n (all n) that permutes the corners p0, p1, p2:
	/// corner p_k goes to p_{perm[k]}.
	VertexMap corner_permutation(std::array<int, 3> perm) const
	{
		std::vector<VertexId> seed(3);
		for (int k = 0; k < 3; ++k)
			seed[static_cast<std::size_t>(k)] = named::corner[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
		return extend_map(0, 0, seed);
	}

	/// Automorphism of T_n, n >= 1, given by a symmetry of the level-1 hexagon.
	/// `hex_image[k]` is where the hexagon vertex at angle 60k degrees goes
	/// (as an index 0..5 of angle); the center is fixed.
	VertexMap hexagon_symmetry(std::array<int, 6> hex_image) const;

	/// F_w on vertices, for words whose image level is built.
	VertexMap word_map(const CellWord& w) const;

	/// All 6^m cells of level m with their oriented corners.
	std::vector<Cell> cells(int m) const;

	/// Image of a simplex under a vertex map.
	SimplexId apply(const VertexMap& map, const SimplexId& s) const;

  private:
	static constexpr std::array<VertexId, 6> hexagon_order = {
		named::p0, named::p0s, named::p1, named::p1s, named::p2, named::p2s};

	void rebuild_fmaps();

	int cap_ = default_cap_level;
	std::vector<Level> levels_;
	std::vector<Point> coords_;
	std::vector<std::uint8_t> vertex_sides_;
	std::array<VertexMap, 6> fmaps_{};
};

inline void SimplicialComplex::subdivide()
{
	const int n = max_level();
	if (n + 1 > cap_)
		throw CapacityError("level " + std::to_string(n + 1) + " exceeds cap " +
							std::to_string(cap_));
	const Level& cur = levels_.back();
	const VertexId nv = cur.vertex_count;
	const auto ne = static_cast<VertexId>(cur.edges.size());
	const auto nt = static_cast<VertexId>(cur.triangles.size());

	struct NewEdge
	{
		Edge2 v;
		Parent parent;
	};
	struct NewTri
	{
		Triangle3 v;
		std::uint32_t parent;
	};
	std::vector<NewEdge> new_edges;
	new_edges.reserve(2 * cur.edges.size() + 6 * cur.triangles.size());
	std::vector<NewTri> new_tris;
	new_tris.reserve(6 * cur.triangles.size());

	auto sorted2 = [](VertexId a, VertexId b) { return a < b ? Edge2{a, b} : Edge2{b, a}; };

	for (std::uint32_t e = 0; e < ne; ++e) {
		const VertexId be = nv + e;
		new_edges.push_back({sorted2(cur.edges[e][0], be), {Dim::edge, e}});
		new_edges.push_back({sorted2(cur.edges[e][1], be), {Dim::edge, e}});
	}
	for (std::uint32_t f = 0; f < nt; ++f) {
		const auto& t = cur.triangles[f];
		const VertexId bf = nv + ne + f;
		for (VertexId q : t)
			new_edges.push_back({sorted2(q, bf), {Dim::triangle, f}});
		const std::array<std::array<VertexId, 2>, 3> sides = {{{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}}};
		for (const auto& s : sides) {
			const VertexId be = nv + edge_index(n, s[0], s[1]);
			new_edges.push_back({sorted2(be, bf), {Dim::triangle, f}});
			for (VertexId q : s) {
				Triangle3 tri{q, be, bf};
				std::sort(tri.begin(), tri.end());
				new_tris.push_back({tri, f});
			}
		}
	}
	std::sort(new_edges.begin(), new_edges.end(),
			  [](const NewEdge& x, const NewEdge& y) { return x.v < y.v; });
	std::sort(new_tris.begin(), new_tris.end(),
			  [](const NewTri& x, const NewTri& y) { return x.v < y.v; });

	Level next;
	next.vertex_count = nv + ne + nt;
	const int m = n + 1;
	next.edges.reserve(new_edges.size());
	next.edge_parent.reserve(new_edges.size());
	next.edge_root.reserve(new_edges.size());
	next.edge_level1.reserve(new_edges.size());
	next.edge_side.reserve(new_edges.size());
	for (std::uint32_t i = 0; i < new_edges.size(); ++i) {
		const auto& ne_ = new_edges[i];
		next.edges.push_back(ne_.v);
		next.edge_parent.push_back(ne_.parent);
		if (ne_.parent.dim == Dim::edge) {
			next.edge_root.push_back(cur.edge_root[ne_.parent.index]);
			next.edge_level1.push_back(m == 1 ? static_cast<std::int32_t>(i)
											  : cur.edge_level1[ne_.parent.index]);
		} else {
			next.edge_root.push_back({m, i});
			next.edge_level1.push_back(m == 1 ? static_cast<std::int32_t>(i) : -1);
		}
	}
	next.triangles.reserve(new_tris.size());
	next.triangle_parent.reserve(new_tris.size());
	for (const auto& t : new_tris) {
		next.triangles.push_back(t.v);
		next.triangle_parent.push_back(t.parent);
	}

	// Hexagon sides: explicit on level 1, inherited from the level-1 ancestor above.
	if (m == 1) {
		next.edge_side.assign(next.edges.size(), -1);
		for (int s = 0; s < 6; ++s) {
			const auto& pr = named::side[static_cast<std::size_t>(s)];
			const Edge2 key = sorted2(pr[0], pr[1]);
			auto it = std::lower_bound(next.edges.begin(), next.edges.end(), key);
			next.edge_side[static_cast<std::size_t>(it - next.edges.begin())] = static_cast<std::int8_t>(s);
		}
	} else {
		const auto& l1 = levels_[1].edge_side;
		for (auto a : next.edge_level1)
			next.edge_side.push_back(a < 0 ? std::int8_t{-1} : l1[static_cast<std::size_t>(a)]);
	}

	// Coordinates and side masks of the new vertices.
	coords_.resize(next.vertex_count);
	vertex_sides_.resize(next.vertex_count, 0);
	if (m == 1) {
		using namespace named;
		coords_[p0s] = Point{0, 1};
		coords_[p2s] = Point{1, -1};
		coords_[p1s] = Point{-1, 0};
		coords_[center] = Point{0, 0};
		for (int s = 0; s < 6; ++s)
			for (VertexId v : named::side[static_cast<std::size_t>(s)])
				vertex_sides_[v] |= static_cast<std::uint8_t>(1u << s);
	} else {
		const Rational half(1, 2), third(1, 3);
		for (std::uint32_t e = 0; e < ne; ++e) {
			const auto& pa = coords_[cur.edges[e][0]];
			const auto& pb = coords_[cur.edges[e][1]];
			coords_[nv + e] = Point{(pa.a + pb.a) * half, (pa.b + pb.b) * half};
			const int s = cur.edge_side[e];
			vertex_sides_[nv + e] = s < 0 ? 0 : static_cast<std::uint8_t>(1u << s);
		}
		for (std::uint32_t f = 0; f < nt; ++f) {
			const auto& t = cur.triangles[f];
			const auto& pa = coords_[t[0]];
			const auto& pb = coords_[t[1]];
			const auto& pc = coords_[t[2]];
			coords_[nv + ne + f] = Point{(pa.a + pb.a + pc.a) * third, (pa.b + pb.b + pc.b) * third};
		}
	}

	levels_.push_back(std::move(next));
	rebuild_fmaps();
}

inline VertexMap SimplicialComplex::extend_map(int seed_level, int shift,
											   const std::vector<VertexId>& seed) const
{
	require_level(seed_level + shift);
	if (seed.size() != level(seed_level).vertex_count)
		throw InvalidArgument("seed map size does not match its level");
	VertexMap map;
	map.shift = shift;
	map.domain_level = seed_level;
	map.image = seed;
	for (int k = seed_level; k + 1 + shift <= max_level(); ++k) {
		const Level& src = level(k);
		const int tk = k + shift;
		map.image.resize(level(k + 1).vertex_count);
		for (std::uint32_t e = 0; e < src.edges.size(); ++e) {
			const auto te = edge_index(tk, map.image[src.edges[e][0]], map.image[src.edges[e][1]]);
			map.image[src.vertex_count + e] = barycenter(tk, Dim::edge, te);
		}
		const auto ne = static_cast<std::uint32_t>(src.edges.size());
		for (std::uint32_t f = 0; f < src.triangles.size(); ++f) {
			const auto& t = src.triangles[f];
			const auto tt = triangle_index(tk, map.image[t[0]], map.image[t[1]], map.image[t[2]]);
			map.image[src.vertex_count + ne + f] = barycenter(tk, Dim::triangle, tt);
		}
		map.domain_level = k + 1;
	}
	return map;
}

inline void SimplicialComplex::rebuild_fmaps()
{
	using namespace named;
	for (int i = 0; i < 6; ++i) {
		// F_i(p0) = p', F_i(p1) = p_{ceil(i/2) mod 3}, F_i(p2) = p'_{floor(i/2)}.
		const std::vector<VertexId> seed = {center, corner[static_cast<std::size_t>(((i + 1) / 2) % 3)],
											midpoint[static_cast<std::size_t>(i / 2)]};
		fmaps_[static_cast<std::size_t>(i)] = extend_map(0, 1, seed);
	}
}

inline VertexMap SimplicialComplex::hexagon_symmetry(std::array<int, 6> hex_image) const
{
	require_level(1);
	std::vector<VertexId> seed(7);
	for (std::size_t k = 0; k < 6; ++k)
		seed[hexagon_order[k]] = hexagon_order[static_cast<std::size_t>(hex_image[k])];
	seed[named::center] = named::center;
	// Must be an automorphism of T_1.
	for (const auto& e : level(1).edges)
		if (!find_edge(1, seed[e[0]], seed[e[1]]))
			throw InvalidArgument("hexagon map is not a symmetry of T_1");
	return extend_map(1, 0, seed);
}

inline VertexMap SimplicialComplex::word_map(const CellWord& w) const
{
	const int m = static_cast<int>(w.size());
	if (m > max_level())
		throw InvalidArgument("word longer than the built levels");
	VertexMap out;
	out.shift = m;
	out.domain_level = max_level() - m;
	out.image.resize(level(out.domain_level).vertex_count);
	for (VertexId v = 0; v < out.image.size(); ++v) {
		VertexId x = v;
		for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
			x = fmaps_[*it].image[x];
		out.image[v] = x;
	}
	return out;
}

inline std::vector<Cell> SimplicialComplex::cells(int m) const
{
	require_level(m);
	std::vector<Cell> cur = {Cell{{}, {named::p0, named::p1, named::p2}, 0}};
	for (int k = 1; k <= m; ++k) {
		std::vector<Cell> next;
		next.reserve(cur.size() * 6);
		for (std::uint8_t i = 0; i < 6; ++i) {
			const auto& f = fmaps_[i].image;
			for (const auto& c : cur) {
				Cell d;
				d.word.letters.reserve(c.word.size() + 1);
				d.word.letters.push_back(i);
				d.word.letters.insert(d.word.letters.end(), c.word.letters.begin(), c.word.letters.end());
				d.corners = {f[c.corners[0]], f[c.corners[1]], f[c.corners[2]]};
				d.triangle = triangle_index(k, d.corners[0], d.corners[1], d.corners[2]);
				next.push_back(std::move(d));
			}
		}
		cur = std::move(next);
	}
	return cur;
}

inline SimplexId SimplicialComplex::apply(const VertexMap& map, const SimplexId& s) const
{
	if (s.level > map.domain_level)
		throw InvalidArgument("simplex level outside the map's domain");
	const int t = s.level + map.shift;
	require_level(t);
	switch (s.dim) {
	case Dim::vertex:
		return {t, Dim::vertex, map.image.at(s.index)};
	case Dim::edge: {
		const auto& e = level(s.level).edges.at(s.index);
		return {t, Dim::edge, edge_index(t, map.image[e[0]], map.image[e[1]])};
	}
	case Dim::triangle: {
		const auto& f = level(s.level).triangles.at(s.index);
		return {t, Dim::triangle, triangle_index(t, map.image[f[0]], map.image[f[1]], map.image[f[2]])};
	}
	}
	throw InvalidArgument("bad simplex dimension");
}

/// Fresh T_0.
inline SimplicialComplex base_complex(int cap = level_cap()) { return SimplicialComplex::base(cap); }

/// Returns c extended by one level.
inline SimplicialComplex subdivide(SimplicialComplex c)
{
	c.subdivide();
	return c;
}

/// Image of s under F_w.
inline SimplexId apply_map(const SimplicialComplex& c, const CellWord& w, const SimplexId& s)
{
	if (s.level + static_cast<int>(w.size()) > c.max_level())
		throw InvalidArgument("target level " + std::to_string(s.level + static_cast<int>(w.size())) +
							  " not built");
	SimplexId out = s;
	for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
		out = c.apply(c.self_similar_map(*it), out);
	return out;
}

/**
 * Hexagon sides containing the geometric realization of a simplex.
 *
 * Decided from ancestry: an edge lies in side i iff its chain of parent edges
 * reaches the level-1 boundary edge of side i. Triangles never lie in a side.
 * Corners of the hexagon belong to two sides.
 */
inline SideSet boundary_membership(const SimplicialComplex& c, int n, const SimplexId& s)
{
	if (n < 1)
		throw InvalidArgument("hexagon sides are defined for levels n >= 1");
	if (s.level != n)
		throw InvalidArgument("simplex is not at the requested level");
	switch (s.dim) {
	case Dim::vertex:
		if (s.index >= c.vertex_count(n))
			throw InvalidArgument("vertex index out of range");
		return c.vertex_sides(s.index);
	case Dim::edge: {
		const int side = c.edge_side(n, s.index);
		return side < 0 ? SideSet{} : SideSet{static_cast<std::uint8_t>(1u << side)};
	}
	case Dim::triangle:
		return {};
	}
	return {};
}

} // namespace hexacarpet
