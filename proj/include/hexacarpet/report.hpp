#pragma once

#include "analysis.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

namespace hexacarpet {

/// 17 significant digits; NaN prints as an empty field.
inline std::string format_number(double x)
{
	if (std::isnan(x))
		return "";
	return fmt::format("{:.17g}", x);
}

inline nlohmann::ordered_json json_number(double x)
{
	if (std::isnan(x))
		return nullptr;
	return x;
}

/// Comma-separated table with a header row.
class CsvTable
{
  public:
	explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

	void add(std::vector<std::string> row)
	{
		if (row.size() != header_.size())
			throw InvalidArgument("CSV row width mismatch");
		rows_.push_back(std::move(row));
	}

	void write(std::ostream& os) const
	{
		auto line = [&](const std::vector<std::string>& cells) {
			for (std::size_t i = 0; i < cells.size(); ++i)
				os << (i ? "," : "") << cells[i];
			os << '\n';
		};
		line(header_);
		for (const auto& r : rows_)
			line(r);
	}

	nlohmann::ordered_json to_json() const
	{
		auto arr = nlohmann::ordered_json::array();
		for (const auto& r : rows_) {
			nlohmann::ordered_json o;
			for (std::size_t i = 0; i < header_.size(); ++i)
				o[header_[i]] = r[i];
			arr.push_back(std::move(o));
		}
		return arr;
	}

  private:
	std::vector<std::string> header_;
	std::vector<std::vector<std::string>> rows_;
};

inline void write_scaling_csv(std::ostream& os, const ScalingReport& rep)
{
	CsvTable t({"n", "R_n", "R_n_T", "product", "R_hat", "R_tilde", "ratio", "fit_rho", "d_S"});
	for (const auto& r : rep.rows)
		t.add({std::to_string(r.n), format_number(r.R), format_number(r.R_T), format_number(r.product),
			   format_number(r.R_hat), format_number(r.R_tilde), format_number(r.ratio), format_number(r.fit_rho),
			   format_number(r.d_S)});
	t.write(os);
}

inline nlohmann::ordered_json scaling_to_json(const ScalingReport& rep)
{
	nlohmann::ordered_json j;
	auto rows = nlohmann::ordered_json::array();
	for (const auto& r : rep.rows) {
		nlohmann::ordered_json o;
		o["n"] = r.n;
		o["R_n"] = json_number(r.R);
		o["R_n_T"] = json_number(r.R_T);
		o["product"] = json_number(r.product);
		o["R_hat"] = json_number(r.R_hat);
		o["R_tilde"] = json_number(r.R_tilde);
		o["ratio"] = json_number(r.ratio);
		o["fit_rho"] = json_number(r.fit_rho);
		o["d_S"] = json_number(r.d_S);
		rows.push_back(std::move(o));
	}
	j["rows"] = std::move(rows);
	nlohmann::ordered_json est;
	est["rho_ratio"] = rep.rho_ratio;
	est["rho_fit"] = rep.rho_fit;
	est["rho_T_ratio"] = rep.rho_T_ratio;
	est["rho_T_fit"] = rep.rho_T_fit;
	est["d_S"] = rep.d_S;
	est["d_S_T"] = rep.d_S_T;
	est["d_S_T_upper_endpoint_reconciled"] = false;
	est["monotone_ratios"] = rep.monotone_ratios;
	j["estimates"] = std::move(est);
	auto ver = nlohmann::ordered_json::array();
	for (const auto& v : rep.verdicts)
		ver.push_back({{"name", v.name}, {"pass", v.pass}, {"margin", v.margin}});
	j["verdicts"] = std::move(ver);
	j["pass"] = rep.pass();
	return j;
}

} // namespace hexacarpet
