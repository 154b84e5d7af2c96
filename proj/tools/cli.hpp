#pragma once

#include <hexacarpet/analysis.hpp>
#include <hexacarpet/io.hpp>
#include <hexacarpet/report.hpp>

#include <CLI11.hpp>
#include <Eigen/Core>
#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hexacarpet::cli {

enum ExitCode : int
{
	ok = 0,
	verdict_failed = 1,
	config_error = 2,
	capacity_error = 3,
	solver_error = 4
};

inline constexpr const char* version = "1.0.0";

struct RunConfig
{
	std::string command;
	std::string family = "hexacarpet";
	int level = 1;
	int max_level = 6;
	double tol = 1e-10;
	int max_iter = 0;
	int threads = 1;
	std::string format;
	std::string out;
	bool allow_disconnected = false;
	std::uint64_t seed = 1;
	std::string which = "all";
	int m = 1;
	int n = 1;
	int trials = 100;
};

inline Family parse_family(const std::string& s)
{
	static const std::map<std::string, Family> names = {{"skeleton", Family::skeleton},
														{"dual", Family::dual},
														{"hexacarpet", Family::hexacarpet},
														{"cut", Family::cut},
														{"short", Family::short_circuit}};
	auto it = names.find(s);
	if (it == names.end())
		throw InvalidArgument("unknown family " + s);
	return it->second;
}

inline SolverOptions solver_options(const RunConfig& cfg)
{
	SolverOptions o;
	o.tol = cfg.tol;
	o.max_iter = cfg.max_iter;
	o.allow_disconnected = cfg.allow_disconnected;
	return o;
}

inline nlohmann::ordered_json manifest(const RunConfig& cfg, double seconds)
{
	nlohmann::ordered_json m;
	m["command"] = cfg.command;
	nlohmann::ordered_json c;
	c["family"] = cfg.family;
	c["level"] = cfg.level;
	c["max_level"] = cfg.max_level;
	c["tol"] = cfg.tol;
	c["max_iter"] = cfg.max_iter;
	c["threads"] = cfg.threads;
	c["format"] = cfg.format;
	c["allow_disconnected"] = cfg.allow_disconnected;
	c["seed"] = cfg.seed;
	c["cap"] = level_cap();
	m["config"] = std::move(c);
	nlohmann::ordered_json v;
	v["hexacarpet"] = version;
	v["compiler"] = __VERSION__;
	v["eigen"] = fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
	v["json"] = fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
							NLOHMANN_JSON_VERSION_PATCH);
	m["versions"] = std::move(v);
	m["elapsed_seconds"] = seconds;
	return m;
}

/// Writes to --out when given, otherwise to `fallback`.
class Sink
{
  public:
	Sink(const std::string& path, std::ostream& fallback) : os_(&fallback)
	{
		if (!path.empty()) {
			file_ = std::make_unique<std::ofstream>(path);
			if (!*file_)
				throw InvalidArgument("cannot open " + path);
			os_ = file_.get();
		}
	}
	std::ostream& operator*() { return *os_; }
	bool is_file() const { return file_ != nullptr; }

  private:
	std::unique_ptr<std::ofstream> file_;
	std::ostream* os_;
};

class Runner
{
  public:
	Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

	int dispatch()
	{
		validate();
		if (cfg_.command == "build")
			return build();
		if (cfg_.command == "resistance")
			return resistance();
		if (cfg_.command == "rho")
			return rho();
		if (cfg_.command == "bounds")
			return bounds();
		if (cfg_.command == "submult")
			return submult();
		if (cfg_.command == "duality")
			return duality();
		if (cfg_.command == "thompson")
			return thompson();
		throw InvalidArgument("no command given");
	}

  private:
	void validate() const
	{
		if (!(cfg_.tol > 0))
			throw InvalidArgument("--tol must be positive");
		if (cfg_.threads < 1)
			throw InvalidArgument("--threads must be at least 1");
		if (cfg_.max_iter < 0)
			throw InvalidArgument("--max-iter must be non-negative");
		if (cfg_.level < 1 || cfg_.max_level < 1)
			throw InvalidArgument("levels start at 1");
	}

	double elapsed() const
	{
		return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
	}

	SimplicialComplex complex(int n) const { return SimplicialComplex::build(n); }

	void emit(const CsvTable& t, nlohmann::ordered_json extra = {})
	{
		Sink sink(cfg_.out, out_);
		if (cfg_.format == "json") {
			nlohmann::ordered_json j;
			j["manifest"] = manifest(cfg_, elapsed());
			j["rows"] = t.to_json();
			for (auto& [k, v] : extra.items())
				j[k] = v;
			*sink << j.dump(2) << '\n';
		} else {
			t.write(*sink);
		}
	}

	void require_format(std::initializer_list<const char*> allowed, const char* fallback)
	{
		if (cfg_.format.empty())
			cfg_.format = fallback;
		for (const char* a : allowed)
			if (cfg_.format == a)
				return;
		throw InvalidArgument("--format " + cfg_.format + " not supported by " + cfg_.command);
	}

	int build()
	{
		require_format({"edgelist", "dot", "json"}, "edgelist");
		const auto c = complex(cfg_.level);
		const auto g = build_graph(c, parse_family(cfg_.family), cfg_.level);
		Sink sink(cfg_.out, out_);
		if (cfg_.format == "edgelist") {
			write_edge_list(*sink, g);
		} else if (cfg_.format == "dot") {
			write_dot(*sink, g);
		} else {
			nlohmann::ordered_json j;
			j["manifest"] = manifest(cfg_, elapsed());
			j["complex"] = complex_to_json(c, cfg_.level);
			nlohmann::ordered_json gj;
			gj["family"] = family_name(g.family);
			gj["level"] = g.level;
			gj["vertices"] = g.vertex_count();
			auto edges = nlohmann::ordered_json::array();
			for (const auto& e : g.edges())
				edges.push_back({e.u, e.v, e.conductance.str()});
			gj["edges"] = std::move(edges);
			nlohmann::ordered_json b;
			for (const auto& [name, members] : g.boundaries())
				b[name] = members;
			gj["boundary"] = std::move(b);
			j["graph"] = std::move(gj);
			*sink << j.dump(2) << '\n';
		}
		std::ostream& table = sink.is_file() ? out_ : err_;
		table << fmt::format("{:>5} {:>10} {:>10} {:>10}\n", "level", "vertices", "edges", "triangles");
		for (int k = 0; k <= cfg_.level; ++k)
			table << fmt::format("{:>5} {:>10} {:>10} {:>10}\n", k, c.vertex_count(k), c.edge_count(k),
								 c.triangle_count(k));
		table << fmt::format("{} graph: {} vertices, {} edges\n", family_name(g.family), g.vertex_count(),
							 g.edge_count());
		return ok;
	}

	int resistance()
	{
		require_format({"text", "csv", "json"}, "text");
		const auto c = complex(cfg_.level);
		const auto g = build_graph(c, parse_family(cfg_.family), cfg_.level);
		const auto r = effective_resistance(g, solver_options(cfg_));
		Sink sink(cfg_.out, out_);
		const std::string value = r.disconnected ? "disconnected" : format_number(r.resistance);
		if (cfg_.format == "text") {
			*sink << fmt::format("{} level {}: R = {} (residual {:.3e}, {} iterations)\n", cfg_.family, cfg_.level,
								 value, r.residual, r.iterations);
		} else if (cfg_.format == "csv") {
			CsvTable t({"family", "level", "R", "residual", "iterations"});
			t.add({cfg_.family, std::to_string(cfg_.level), value, format_number(r.residual),
				   std::to_string(r.iterations)});
			t.write(*sink);
		} else {
			nlohmann::ordered_json j;
			j["manifest"] = manifest(cfg_, elapsed());
			j["family"] = cfg_.family;
			j["level"] = cfg_.level;
			j["disconnected"] = r.disconnected;
			j["R"] = r.disconnected ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.resistance);
			j["residual"] = r.residual;
			j["iterations"] = r.iterations;
			*sink << j.dump(2) << '\n';
		}
		return ok;
	}

	int rho()
	{
		require_format({"csv", "json"}, "csv");
		if (cfg_.max_level < 3)
			throw InvalidArgument("rho needs --max-level >= 3");
		const auto c = complex(cfg_.max_level);
		const auto rep = estimate_rho(c, cfg_.max_level, solver_options(cfg_), cfg_.threads);
		Sink sink(cfg_.out, out_);
		if (cfg_.format == "csv") {
			write_scaling_csv(*sink, rep);
		} else {
			auto j = scaling_to_json(rep);
			nlohmann::ordered_json doc;
			doc["manifest"] = manifest(cfg_, elapsed());
			for (auto& [k, v] : j.items())
				doc[k] = v;
			*sink << doc.dump(2) << '\n';
		}
		err_ << fmt::format("rho_fit {:.6f}  rho_ratio {:.6f}  rho_T_fit {:.6f}  d_S {:.4f}  d_S_T {:.4f}\n",
							rep.rho_fit, rep.rho_ratio, rep.rho_T_fit, rep.d_S, rep.d_S_T);
		for (const auto& v : rep.verdicts)
			if (!v.pass)
				err_ << "FAIL " << v.name << " (margin " << format_number(v.margin) << ")\n";
		return rep.pass() ? ok : verdict_failed;
	}

	int bounds()
	{
		require_format({"csv", "json"}, "csv");
		const bool cut = cfg_.which == "cut" || cfg_.which == "all";
		const bool sc = cfg_.which == "short" || cfg_.which == "all";
		if (!cut && !sc)
			throw InvalidArgument("--which must be cut, short or all");
		const int N = cfg_.max_level;
		const auto c = complex(N);
		const auto opt = solver_options(cfg_);
		const auto table = compute_resistances(c, N, opt, cfg_.threads);
		std::vector<CutBoundReport> cuts(static_cast<std::size_t>(N) + 1);
		std::vector<double> rt(static_cast<std::size_t>(N) + 1);
		parallel_for(static_cast<std::size_t>(N), cfg_.threads, [&](std::size_t i) {
			const int n = static_cast<int>(i) + 1;
			const double R = table.R[static_cast<std::size_t>(n)];
			if (cut)
				cuts[static_cast<std::size_t>(n)] = cut_bound(
					c, n, opt, R, n > 1 ? std::optional<double>(table.R[static_cast<std::size_t>(n) - 1]) : std::nullopt);
			if (sc)
				rt[static_cast<std::size_t>(n)] = effective_resistance(build_short_graph(c, n), opt).resistance;
		});
		std::vector<std::string> header{"n", "R_n"};
		if (cut)
			header.insert(header.end(), {"sum_lengths", "R_hat", "R_hat_solver", "jensen", "cut_pass"});
		if (sc)
			header.insert(header.end(), {"R_tilde", "ratio", "constant", "short_pass"});
		CsvTable t(header);
		bool pass = true;
		for (int n = 1; n <= N; ++n) {
			const auto k = static_cast<std::size_t>(n);
			std::vector<std::string> row{std::to_string(n), format_number(table.R[k])};
			if (cut) {
				const auto& r = cuts[k];
				row.insert(row.end(), {std::to_string(r.sum_lengths), format_number(r.R_hat),
									   format_number(r.R_hat_solver), format_number(r.jensen),
									   r.pass() ? "true" : "false"});
				pass = pass && r.pass();
			}
			if (sc) {
				ShortBoundReport r;
				r.level = n;
				r.R_tilde = rt[k];
				r.R_n = table.R[k];
				r.constant = r.R_tilde * std::pow(0.8, n);
				r.below_R = r.R_tilde <= r.R_n + 1e-8;
				if (n > 1) {
					r.ratio = rt[k] / rt[k - 1];
					if (n >= 3)
						r.ratio_ok = std::abs(r.ratio - 1.25) <= 1e-3;
				}
				row.insert(row.end(), {format_number(r.R_tilde), format_number(r.ratio), format_number(r.constant),
									   r.pass() ? "true" : "false"});
				pass = pass && r.pass();
			}
			t.add(std::move(row));
		}
		emit(t, {{"pass", pass}});
		return pass ? ok : verdict_failed;
	}

	int submult()
	{
		require_format({"csv", "json"}, "csv");
		if (cfg_.m < 1 || cfg_.n < 1)
			throw InvalidArgument("--m and --n must be at least 1");
		const int top = cfg_.m + cfg_.n;
		const auto c = complex(top);
		const auto opt = solver_options(cfg_);
		const auto table = compute_resistances(c, top, opt, cfg_.threads);
		const auto rep = verify_supermultiplicative(table, cfg_.m, cfg_.n);

		SolverOptions tight = opt;
		tight.tol = std::min(opt.tol, 1e-12);
		const auto gm = build_hexacarpet(c, cfg_.m);
		const auto gn = build_hexacarpet(c, cfg_.n);
		const auto im = effective_resistance(gm, tight);
		const auto in = effective_resistance(gn, tight);
		const auto triple = build_symmetrized_flows(c, gn, in.flow);
		const auto y = y_decomposition(c, gm, im.flow);
		const auto J = compose_flow(c, cfg_.m, cfg_.n, triple, y);
		const double bound = 4.0 / 3.0 * table.R[static_cast<std::size_t>(cfg_.m)] *
							 table.R[static_cast<std::size_t>(cfg_.n)];
		const bool flow_ok = J.energy <= bound + 1e-8 && J.max_divergence <= 1e-9;

		CsvTable t({"m", "n", "R_m", "R_n", "R_m_plus_n", "sub_margin", "super_margin", "sub_margin_T",
					"super_margin_T", "E_J", "J_bound", "pass"});
		const bool pass = rep.pass && flow_ok;
		t.add({std::to_string(cfg_.m), std::to_string(cfg_.n), format_number(table.R[static_cast<std::size_t>(cfg_.m)]),
			   format_number(table.R[static_cast<std::size_t>(cfg_.n)]),
			   format_number(table.R[static_cast<std::size_t>(top)]), format_number(rep.sub_margin),
			   format_number(rep.super_margin), format_number(rep.sub_margin_T), format_number(rep.super_margin_T),
			   format_number(J.energy), format_number(bound), pass ? "true" : "false"});
		emit(t, {{"pass", pass}});
		return pass ? ok : verdict_failed;
	}

	int duality()
	{
		require_format({"csv", "json"}, "csv");
		const int N = cfg_.max_level;
		const auto c = complex(N);
		const auto table = compute_resistances(c, N, solver_options(cfg_), cfg_.threads);
		CsvTable t({"n", "R_n", "R_n_T", "product", "pass"});
		bool pass = true;
		for (int n = 1; n <= N; ++n) {
			const auto k = static_cast<std::size_t>(n);
			const double p = table.R[k] * table.R_T[k];
			const bool ok_n = std::abs(p - 1.0) <= 1e-8;
			pass = pass && ok_n;
			t.add({std::to_string(n), format_number(table.R[k]), format_number(table.R_T[k]), format_number(p),
				   ok_n ? "true" : "false"});
		}
		emit(t, {{"pass", pass}});
		return pass ? ok : verdict_failed;
	}

	int thompson()
	{
		require_format({"csv", "json"}, "csv");
		const auto c = complex(cfg_.level);
		const auto g = build_graph(c, parse_family(cfg_.family), cfg_.level);
		const auto res = effective_resistance(g, solver_options(cfg_));
		const auto rep = verify_thompson(g, g.boundary("A"), g.boundary("B"), res, cfg_.trials, cfg_.seed);
		CsvTable t({"family", "level", "R", "trials", "violations", "max_cross_term", "min_energy_gap",
					"max_dirichlet_gap"});
		t.add({cfg_.family, std::to_string(cfg_.level), format_number(res.resistance), std::to_string(rep.trials),
			   std::to_string(rep.violations), format_number(rep.max_cross_term), format_number(rep.min_energy_gap),
			   format_number(rep.max_dirichlet_gap)});
		emit(t, {{"pass", rep.pass()}});
		return rep.pass() ? ok : verdict_failed;
	}

	RunConfig cfg_;
	std::ostream& out_;
	std::ostream& err_;
	std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Parses argv and runs one subcommand. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
	RunConfig cfg;
	CLI::App app{"Resistance scaling on barycentric subdivisions of a triangle"};
	app.require_subcommand(1);
	app.set_version_flag("--version", version);

	auto common = [&](CLI::App* sub, bool levels, bool sweep) {
		sub->add_option("--family", cfg.family, "skeleton, dual, hexacarpet, cut or short")
			->check(CLI::IsMember({"skeleton", "dual", "hexacarpet", "cut", "short"}));
		if (levels)
			sub->add_option("--level", cfg.level, "subdivision level");
		if (sweep)
			sub->add_option("--max-level", cfg.max_level, "largest level of the sweep");
		sub->add_option("--tol", cfg.tol, "relative residual for conjugate gradients");
		sub->add_option("--max-iter", cfg.max_iter, "iteration limit (0: automatic)");
		sub->add_option("--threads", cfg.threads, "worker threads");
		sub->add_option("--format", cfg.format, "output format");
		sub->add_option("--out", cfg.out, "output file (default stdout)");
		sub->add_flag("--allow-disconnected", cfg.allow_disconnected, "report disconnected pairs instead of failing");
		sub->add_option("--seed", cfg.seed, "random seed");
	};
	auto* build = app.add_subcommand("build", "build a graph and export it");
	common(build, true, false);
	auto* res = app.add_subcommand("resistance", "effective resistance of one graph");
	common(res, true, false);
	auto* rho = app.add_subcommand("rho", "resistance sweep and scaling estimates");
	common(rho, false, true);
	auto* bounds = app.add_subcommand("bounds", "cut and short-circuit bounds");
	common(bounds, false, true);
	bounds->add_option("--which", cfg.which, "cut, short or all")->check(CLI::IsMember({"cut", "short", "all"}));
	auto* sub = app.add_subcommand("submult", "multiplicative bounds for one (m, n)");
	common(sub, false, false);
	sub->add_option("--m", cfg.m, "first level")->required();
	sub->add_option("--n", cfg.n, "second level")->required();
	auto* dual = app.add_subcommand("duality", "R_n R_n^T = 1 sweep");
	common(dual, false, true);
	auto* th = app.add_subcommand("thompson", "random checks of the minimal-energy characterizations");
	common(th, true, false);
	th->add_option("--trials", cfg.trials, "number of random competitors");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		const int code = app.exit(e, out, err);
		return code == 0 ? ok : config_error;
	}
	for (auto* s : app.get_subcommands())
		cfg.command = s->get_name();

	try {
		Runner runner(cfg, out, err);
		return runner.dispatch();
	} catch (const CapacityError& e) {
		err << "capacity: " << e.what() << '\n';
		return capacity_error;
	} catch (const SolverError& e) {
		err << "solver: " << e.what() << " (residual " << e.residual() << ", " << e.iterations() << " iterations)\n";
		return solver_error;
	} catch (const DisconnectedError& e) {
		err << "disconnected: " << e.what() << " (pass --allow-disconnected to report it)\n";
		return solver_error;
	} catch (const InvalidArgument& e) {
		err << "config: " << e.what() << '\n';
		return config_error;
	} catch (const Error& e) {
		err << "check failed: " << e.what() << '\n';
		return verdict_failed;
	}
}

} // namespace hexacarpet::cli
