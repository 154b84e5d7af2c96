#pragma once

#include "error.hpp"
#include "graph.hpp"
#include "rational.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace hexacarpet {

/// Function on the vertices of a graph.
template <class Scalar = double>
struct BasicPotential
{
	std::vector<Scalar> values;

	BasicPotential() = default;
	explicit BasicPotential(std::size_t n, Scalar fill = Scalar(0)) : values(n, fill) {}
	explicit BasicPotential(std::vector<Scalar> v) : values(std::move(v)) {}

	std::size_t size() const noexcept { return values.size(); }
	Scalar& operator[](std::size_t i) { return values[i]; }
	const Scalar& operator[](std::size_t i) const { return values[i]; }
};

/// Antisymmetric function on edges, stored per edge in the orientation u -> v
/// of the graph's edge list.
template <class Scalar = double>
struct BasicFlow
{
	std::vector<Scalar> values;

	BasicFlow() = default;
	explicit BasicFlow(std::size_t m, Scalar fill = Scalar(0)) : values(m, fill) {}
	explicit BasicFlow(std::vector<Scalar> v) : values(std::move(v)) {}

	std::size_t size() const noexcept { return values.size(); }
	Scalar& operator[](std::size_t i) { return values[i]; }
	const Scalar& operator[](std::size_t i) const { return values[i]; }
};

using Potential = BasicPotential<double>;
using Flow = BasicFlow<double>;

namespace detail {

template <class Scalar>
Scalar conductance_as(const Rational& c)
{
	if constexpr (std::is_same_v<Scalar, Rational>)
		return c;
	else
		return static_cast<Scalar>(c.to_double());
}

template <class Scalar>
Scalar resistance_as(const Rational& c)
{
	if constexpr (std::is_same_v<Scalar, Rational>)
		return Rational(1) / c;
	else
		return static_cast<Scalar>(1.0 / c.to_double());
}

template <class V>
void require_size(const V& v, std::size_t n, const char* what)
{
	if (v.size() != n)
		throw InvalidArgument(std::string(what) + " has the wrong size");
}

} // namespace detail

/// E(f, h) = sum over edges of c(p,q) (f(p) - f(q)) (h(p) - h(q)).
template <class Scalar>
Scalar energy(const WeightedGraph& g, const BasicPotential<Scalar>& f, const BasicPotential<Scalar>& h)
{
	detail::require_size(f, g.vertex_count(), "potential");
	detail::require_size(h, g.vertex_count(), "potential");
	Scalar sum(0);
	for (const auto& e : g.edges())
		sum += detail::conductance_as<Scalar>(e.conductance) * (f[e.u] - f[e.v]) * (h[e.u] - h[e.v]);
	return sum;
}

template <class Scalar>
Scalar energy(const WeightedGraph& g, const BasicPotential<Scalar>& f)
{
	return energy(g, f, f);
}

/// E(J, K) = sum over edges of r(p,q) J(p,q) K(p,q).
template <class Scalar>
Scalar dissipation(const WeightedGraph& g, const BasicFlow<Scalar>& j, const BasicFlow<Scalar>& k)
{
	detail::require_size(j, g.edge_count(), "flow");
	detail::require_size(k, g.edge_count(), "flow");
	Scalar sum(0);
	const auto& es = g.edges();
	for (std::size_t i = 0; i < es.size(); ++i)
		sum += detail::resistance_as<Scalar>(es[i].conductance) * j[i] * k[i];
	return sum;
}

template <class Scalar>
Scalar dissipation(const WeightedGraph& g, const BasicFlow<Scalar>& j)
{
	return dissipation(g, j, j);
}

/// grad f(p,q) = c(p,q) (f(p) - f(q)).
template <class Scalar>
BasicFlow<Scalar> gradient(const WeightedGraph& g, const BasicPotential<Scalar>& f)
{
	detail::require_size(f, g.vertex_count(), "potential");
	BasicFlow<Scalar> out(g.edge_count());
	const auto& es = g.edges();
	for (std::size_t i = 0; i < es.size(); ++i)
		out[i] = detail::conductance_as<Scalar>(es[i].conductance) * (f[es[i].u] - f[es[i].v]);
	return out;
}

/// div J(p) = -sum over q of J(p,q).
template <class Scalar>
BasicPotential<Scalar> divergence(const WeightedGraph& g, const BasicFlow<Scalar>& j)
{
	detail::require_size(j, g.edge_count(), "flow");
	BasicPotential<Scalar> out(g.vertex_count());
	const auto& es = g.edges();
	for (std::size_t i = 0; i < es.size(); ++i) {
		out[es[i].u] -= j[i];
		out[es[i].v] += j[i];
	}
	return out;
}

/// Laplacian = div o grad, so that -Lf(p) = sum c(p,q) (f(p) - f(q)).
template <class Scalar>
BasicPotential<Scalar> laplacian(const WeightedGraph& g, const BasicPotential<Scalar>& f)
{
	return divergence(g, gradient(g, f));
}

template <class Scalar>
Scalar inner(const BasicPotential<Scalar>& f, const BasicPotential<Scalar>& h)
{
	if (f.size() != h.size())
		throw InvalidArgument("inner product of potentials of different sizes");
	Scalar sum(0);
	for (std::size_t i = 0; i < f.size(); ++i)
		sum += f[i] * h[i];
	return sum;
}

/// Largest |div J| over vertices outside A u B.
inline double max_interior_divergence(const WeightedGraph& g, std::span<const VertexIndex> a,
									  std::span<const VertexIndex> b, const Flow& j,
									  std::vector<std::size_t>* witnesses = nullptr, double tol = 0.0)
{
	const auto div = divergence(g, j);
	std::vector<char> bnd(g.vertex_count(), 0);
	for (auto v : a)
		bnd[v] = 1;
	for (auto v : b)
		bnd[v] = 1;
	double worst = 0.0;
	for (std::size_t p = 0; p < g.vertex_count(); ++p) {
		if (bnd[p])
			continue;
		const double d = std::abs(div[p]);
		worst = std::max(worst, d);
		if (witnesses && d > tol)
			witnesses->push_back(p);
	}
	return worst;
}

/**
 * flux(A, B, J) = sum over A of div J. Throws FlowError listing the vertices
 * outside A u B where |div J| exceeds tol.
 */
inline double flux(const WeightedGraph& g, std::span<const VertexIndex> a, std::span<const VertexIndex> b,
				   const Flow& j, double tol = 1e-9)
{
	std::vector<std::size_t> bad;
	max_interior_divergence(g, a, b, j, &bad, tol);
	if (!bad.empty())
		throw FlowError("divergence off A u B at " + std::to_string(bad.size()) + " vertices", bad);
	const auto div = divergence(g, j);
	double s = 0.0;
	for (auto v : a)
		s += div[v];
	return s;
}

struct SolverOptions
{
	double tol = 1e-10; // relative residual of the reduced system
	int max_iter = 0;   // 0: 50 sqrt(N)
	bool allow_disconnected = true;
};

struct ResistanceResult
{
	bool disconnected = false;
	double resistance = std::numeric_limits<double>::infinity();
	double energy = 0.0;
	Potential potential; // harmonic, 0 on A and 1 on B
	Flow flow;           // unit flow R grad(potential)
	int iterations = 0;
	double residual = 0.0;
};

class DisconnectedError : public Error
{
  public:
	using Error::Error;
};

namespace detail {

inline void check_terminals(const WeightedGraph& g, std::span<const VertexIndex> a, std::span<const VertexIndex> b,
							std::vector<signed char>& mark)
{
	if (a.empty() || b.empty())
		throw InvalidArgument("empty boundary set");
	mark.assign(g.vertex_count(), 0);
	for (auto v : a) {
		if (v >= g.vertex_count())
			throw InvalidArgument("boundary vertex out of range");
		mark[v] = -1;
	}
	for (auto v : b) {
		if (v >= g.vertex_count())
			throw InvalidArgument("boundary vertex out of range");
		if (mark[v] == -1)
			throw InvalidArgument("A and B intersect at vertex " + std::to_string(v));
		mark[v] = 1;
	}
}

/// Vertices whose component meets A u B, and whether some component meets both.
inline std::vector<char> active_vertices(const WeightedGraph& g, const std::vector<signed char>& mark, bool& joined)
{
	std::uint32_t k = 0;
	const auto comp = connected_components(g, &k);
	std::vector<char> has_a(k, 0), has_b(k, 0);
	for (std::size_t v = 0; v < g.vertex_count(); ++v) {
		if (mark[v] == -1)
			has_a[comp[v]] = 1;
		if (mark[v] == 1)
			has_b[comp[v]] = 1;
	}
	joined = false;
	for (std::uint32_t i = 0; i < k; ++i)
		joined = joined || (has_a[i] && has_b[i]);
	std::vector<char> active(g.vertex_count(), 0);
	for (std::size_t v = 0; v < g.vertex_count(); ++v)
		active[v] = has_a[comp[v]] || has_b[comp[v]];
	return active;
}

inline ResistanceResult finish(const WeightedGraph& g, Potential phi, int iterations, double residual)
{
	ResistanceResult r;
	r.energy = energy(g, phi);
	if (!(r.energy > 0.0))
		throw SolverError("harmonic potential has zero energy", residual, iterations);
	r.resistance = 1.0 / r.energy;
	r.flow = gradient(g, phi);
	for (auto& x : r.flow.values)
		x *= r.resistance;
	r.potential = std::move(phi);
	r.iterations = iterations;
	r.residual = residual;
	return r;
}

inline ResistanceResult disconnected_result(const WeightedGraph& g, bool allow)
{
	if (!allow)
		throw DisconnectedError("A and B lie in different components");
	ResistanceResult r;
	r.disconnected = true;
	r.potential = Potential(g.vertex_count());
	r.flow = Flow(g.edge_count());
	return r;
}

} // namespace detail

/**
 * Effective resistance between A and B by Jacobi-preconditioned conjugate
 * gradients on the Dirichlet problem (0 on A, 1 on B).
 *
 * Components that touch neither A nor B are left at potential 0. If no
 * component meets both sets the result is flagged disconnected (or
 * DisconnectedError is thrown when that is not allowed).
 */
inline ResistanceResult effective_resistance(const WeightedGraph& g, std::span<const VertexIndex> a,
											 std::span<const VertexIndex> b, const SolverOptions& opt = {})
{
	std::vector<signed char> mark;
	detail::check_terminals(g, a, b, mark);
	bool joined = false;
	const auto active = detail::active_vertices(g, mark, joined);
	if (!joined)
		return detail::disconnected_result(g, opt.allow_disconnected);

	// Unknowns: active vertices outside A u B.
	const std::size_t n = g.vertex_count();
	std::vector<std::int64_t> slot(n, -1);
	std::vector<VertexIndex> free;
	for (VertexIndex v = 0; v < n; ++v)
		if (active[v] && mark[v] == 0) {
			slot[v] = static_cast<std::int64_t>(free.size());
			free.push_back(v);
		}
	const std::size_t m = free.size();

	Potential phi(n);
	for (VertexIndex v = 0; v < n; ++v)
		if (mark[v] == 1)
			phi[v] = 1.0;
	if (m == 0)
		return detail::finish(g, std::move(phi), 0, 0.0);

	// CSR matrix of the reduced Laplacian.
	std::vector<double> diag(m, 0.0), rhs(m, 0.0);
	std::vector<std::uint32_t> count(m + 1, 0);
	const auto& es = g.edges();
	for (const auto& e : es) {
		if (slot[e.u] >= 0 && slot[e.v] >= 0) {
			++count[static_cast<std::size_t>(slot[e.u]) + 1];
			++count[static_cast<std::size_t>(slot[e.v]) + 1];
		}
	}
	for (std::size_t i = 0; i < m; ++i)
		count[i + 1] += count[i];
	std::vector<std::uint32_t> col(count[m]);
	std::vector<double> val(count[m]);
	std::vector<std::uint32_t> fill(count.begin(), count.end() - 1);
	for (const auto& e : es) {
		const double c = e.conductance.to_double();
		const auto su = slot[e.u], sv = slot[e.v];
		if (su >= 0)
			diag[static_cast<std::size_t>(su)] += c;
		if (sv >= 0)
			diag[static_cast<std::size_t>(sv)] += c;
		if (su >= 0 && sv >= 0) {
			col[fill[static_cast<std::size_t>(su)]] = static_cast<std::uint32_t>(sv);
			val[fill[static_cast<std::size_t>(su)]++] = c;
			col[fill[static_cast<std::size_t>(sv)]] = static_cast<std::uint32_t>(su);
			val[fill[static_cast<std::size_t>(sv)]++] = c;
		} else if (su >= 0 && mark[e.v] == 1) {
			rhs[static_cast<std::size_t>(su)] += c;
		} else if (sv >= 0 && mark[e.u] == 1) {
			rhs[static_cast<std::size_t>(sv)] += c;
		}
	}
	auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
		for (std::size_t i = 0; i < m; ++i) {
			double s = diag[i] * x[i];
			for (auto k = count[i]; k < count[i + 1]; ++k)
				s -= val[k] * x[col[k]];
			y[i] = s;
		}
	};
	auto dot = [m](const std::vector<double>& x, const std::vector<double>& y) {
		double s = 0.0;
		for (std::size_t i = 0; i < m; ++i)
			s += x[i] * y[i];
		return s;
	};

	const int max_iter = opt.max_iter > 0
							 ? opt.max_iter
							 : std::max(100, static_cast<int>(50.0 * std::sqrt(static_cast<double>(n))));
	const double bnorm = std::sqrt(dot(rhs, rhs));
	std::vector<double> x(m, 0.0), r = rhs, z(m), p(m), q(m);
	double rel = 0.0;
	int it = 0;
	if (bnorm > 0.0) {
		for (std::size_t i = 0; i < m; ++i)
			z[i] = r[i] / diag[i];
		p = z;
		double rz = dot(r, z);
		rel = 1.0;
		while (rel > opt.tol) {
			if (it >= max_iter)
				throw SolverError("conjugate gradients did not converge", rel, it);
			apply(p, q);
			const double alpha = rz / dot(p, q);
			for (std::size_t i = 0; i < m; ++i) {
				x[i] += alpha * p[i];
				r[i] -= alpha * q[i];
			}
			++it;
			rel = std::sqrt(dot(r, r)) / bnorm;
			for (std::size_t i = 0; i < m; ++i)
				z[i] = r[i] / diag[i];
			const double rz_next = dot(r, z);
			const double beta = rz_next / rz;
			rz = rz_next;
			for (std::size_t i = 0; i < m; ++i)
				p[i] = z[i] + beta * p[i];
		}
	}
	for (std::size_t i = 0; i < m; ++i)
		phi[free[i]] = x[i];
	return detail::finish(g, std::move(phi), it, rel);
}

/// Resistance between the graph's own "A" and "B" sets.
inline ResistanceResult effective_resistance(const WeightedGraph& g, const SolverOptions& opt = {})
{
	return effective_resistance(g, g.boundary("A"), g.boundary("B"), opt);
}

inline constexpr std::size_t oracle_vertex_limit = 2000;

/// Dense direct solve of the same Dirichlet problem. Small graphs only.
inline ResistanceResult oracle_resistance(const WeightedGraph& g, std::span<const VertexIndex> a,
										  std::span<const VertexIndex> b)
{
	if (g.vertex_count() > oracle_vertex_limit)
		throw CapacityError("dense oracle limited to " + std::to_string(oracle_vertex_limit) + " vertices");
	std::vector<signed char> mark;
	detail::check_terminals(g, a, b, mark);
	bool joined = false;
	const auto active = detail::active_vertices(g, mark, joined);
	if (!joined)
		return detail::disconnected_result(g, true);
	const std::size_t n = g.vertex_count();
	std::vector<Eigen::Index> slot(n, -1);
	Eigen::Index m = 0;
	for (std::size_t v = 0; v < n; ++v)
		if (active[v] && mark[v] == 0)
			slot[v] = m++;
	Potential phi(n);
	for (std::size_t v = 0; v < n; ++v)
		if (mark[v] == 1)
			phi[v] = 1.0;
	if (m > 0) {
		Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(m, m);
		Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
		for (const auto& e : g.edges()) {
			const double c = e.conductance.to_double();
			const auto su = slot[e.u], sv = slot[e.v];
			if (su >= 0)
				lap(su, su) += c;
			if (sv >= 0)
				lap(sv, sv) += c;
			if (su >= 0 && sv >= 0) {
				lap(su, sv) -= c;
				lap(sv, su) -= c;
			} else if (su >= 0 && mark[e.v] == 1) {
				rhs(su) += c;
			} else if (sv >= 0 && mark[e.u] == 1) {
				rhs(sv) += c;
			}
		}
		const Eigen::VectorXd x = lap.ldlt().solve(rhs);
		for (std::size_t v = 0; v < n; ++v)
			if (slot[v] >= 0)
				phi[v] = x(slot[v]);
	}
	return detail::finish(g, std::move(phi), 0, 0.0);
}

struct ThompsonReport
{
	int trials = 0;
	int violations = 0;
	double max_cross_term = 0.0;    // |E(I, K)| over trials
	double min_energy_gap = 0.0;    // min E(I + K) - E(I)
	double max_dirichlet_gap = 0.0; // max 1/E(f) - R over admissible f
	double energy_vs_resistance = 0.0; // |E(I) - R|
	double potential_vs_resistance = 0.0; // |1/E(phi) - R|
	std::vector<int> witnesses;
	bool pass() const noexcept { return violations == 0; }
};

/**
 * Checks Thompson's principle and the three other characterizations of the
 * effective resistance against random competitors.
 *
 * Each trial adds a random combination of fundamental cycles (a circulation,
 * so I + K is again a unit flow) and a random perturbation of the potential
 * supported off A u B.
 */
inline ThompsonReport verify_thompson(const WeightedGraph& g, std::span<const VertexIndex> a,
									  std::span<const VertexIndex> b, const ResistanceResult& res, int trials,
									  std::uint64_t seed, double tol = 1e-8)
{
	if (res.disconnected)
		throw InvalidArgument("Thompson check on a disconnected pair");
	ThompsonReport rep;
	rep.trials = trials;
	const double r = res.resistance;
	const double e_i = dissipation(g, res.flow);
	rep.energy_vs_resistance = std::abs(e_i - r);
	rep.potential_vs_resistance = std::abs(1.0 / energy(g, res.potential) - r);
	const double scale = std::max(1.0, r);
	if (rep.energy_vs_resistance > tol * scale || rep.potential_vs_resistance > tol * scale)
		++rep.violations;

	// Spanning forest and the edges that close cycles.
	const auto adj = adjacency(g);
	const std::size_t n = g.vertex_count();
	std::vector<std::int64_t> parent_edge(n, -1);
	std::vector<std::uint32_t> depth(n, 0);
	std::vector<char> seen(n, 0), tree(g.edge_count(), 0);
	for (VertexIndex s = 0; s < n; ++s) {
		if (seen[s])
			continue;
		seen[s] = 1;
		std::vector<VertexIndex> queue{s};
		for (std::size_t h = 0; h < queue.size(); ++h) {
			const auto v = queue[h];
			for (auto [w, e] : adj[v])
				if (!seen[w]) {
					seen[w] = 1;
					parent_edge[w] = e;
					depth[w] = depth[v] + 1;
					tree[e] = 1;
					queue.push_back(w);
				}
		}
	}
	std::vector<std::uint32_t> chords;
	for (std::uint32_t e = 0; e < g.edge_count(); ++e)
		if (!tree[e])
			chords.push_back(e);

	std::vector<char> bnd(n, 0);
	for (auto v : a)
		bnd[v] = 1;
	for (auto v : b)
		bnd[v] = 1;

	const auto& es = g.edges();
	auto other = [&](std::uint32_t e, VertexIndex v) { return es[e].u == v ? es[e].v : es[e].u; };
	// Adds t units around the cycle chord u -> v, then tree path v -> u.
	auto add_cycle = [&](Flow& k, std::uint32_t chord, double t) {
		k[chord] += t;
		VertexIndex x = es[chord].v, y = es[chord].u;
		auto push = [&](VertexIndex from, std::uint32_t e, double amount) {
			k[e] += es[e].u == from ? amount : -amount;
		};
		// Walk x up (flow leaves x toward its parent) and y up (flow arrives at y).
		while (x != y) {
			if (depth[x] >= depth[y]) {
				const auto e = static_cast<std::uint32_t>(parent_edge[x]);
				push(x, e, t);
				x = other(e, x);
			} else {
				const auto e = static_cast<std::uint32_t>(parent_edge[y]);
				push(other(e, y), e, t);
				y = other(e, y);
			}
		}
	};

	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> coef(-1.0, 1.0);
	rep.min_energy_gap = std::numeric_limits<double>::infinity();
	for (int trial = 0; trial < trials; ++trial) {
		bool bad = false;
		if (!chords.empty()) {
			Flow k(g.edge_count());
			const std::size_t picks = std::min<std::size_t>(chords.size(), 1 + rng() % 5);
			for (std::size_t i = 0; i < picks; ++i)
				add_cycle(k, chords[rng() % chords.size()], coef(rng));
			const auto div = divergence(g, k);
			for (double d : div.values)
				bad = bad || std::abs(d) > 1e-12;
			const double cross = dissipation(g, res.flow, k);
			Flow sum = res.flow;
			for (std::size_t i = 0; i < sum.size(); ++i)
				sum[i] += k[i];
			const double gap = dissipation(g, sum) - e_i;
			rep.max_cross_term = std::max(rep.max_cross_term, std::abs(cross));
			rep.min_energy_gap = std::min(rep.min_energy_gap, gap);
			bad = bad || std::abs(cross) > tol * scale || gap < -tol * scale;
		}
		Potential f = res.potential;
		for (std::size_t v = 0; v < n; ++v)
			if (!bnd[v])
				f[v] += 0.1 * coef(rng);
		const double dir_gap = 1.0 / energy(g, f) - r;
		rep.max_dirichlet_gap = std::max(rep.max_dirichlet_gap, dir_gap);
		bad = bad || dir_gap > tol * scale;
		if (bad) {
			++rep.violations;
			rep.witnesses.push_back(trial);
		}
	}
	if (chords.empty())
		rep.min_energy_gap = 0.0;
	return rep;
}

} // namespace hexacarpet
