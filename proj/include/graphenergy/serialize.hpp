#ifndef GRAPHENERGY_SERIALIZE_HPP_
#define GRAPHENERGY_SERIALIZE_HPP_

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "graphenergy/experiments.hpp"
#include "graphenergy/predict.hpp"

namespace graphenergy {

/// 17 significant digits: parses back to the same double.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

inline std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::vector<std::string> parse_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

inline std::string alpha_field(const WeightFunctionSpec& spec) {
  return spec.has_alpha() ? format_real(spec.alpha()) : std::string();
}

inline std::string status_field(const ExperimentRecord& r) { return r.ok ? "ok" : "failed: " + r.failure; }

inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> cols = {"n",     "p",       "index", "alpha", "trial",   "energy",
                                                "predicted_t3", "predicted_cor", "ratio_t3", "ks", "m2", "m4",
                                                "wall_ms", "status"};
  return cols;
}

inline std::optional<double> moment_of(const ExperimentRecord& r, unsigned k) {
  auto it = r.moments.find(k);
  if (it == r.moments.end()) return std::nullopt;
  return it->second;
}

inline std::vector<std::string> record_fields(const ExperimentRecord& r) {
  return {std::to_string(r.n),
          format_real(r.p),
          std::string(r.spec.name()),
          alpha_field(r.spec),
          std::to_string(r.trial_index),
          format_real(r.energy),
          format_real(r.predicted_t3),
          format_real(r.predicted_cor),
          format_real(r.ratio_t3),
          format_real(r.ks),
          format_real(moment_of(r, 2)),
          format_real(moment_of(r, 4)),
          format_real(r.wall_ms),
          status_field(r)};
}

inline const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols = {"n",          "p",            "index",   "alpha",    "trials",
                                                "failed",     "ratio_mean",   "ratio_stddev", "ks_mean", "ks_stddev"};
  return cols;
}

inline std::vector<std::string> summary_fields(const CellSummary& c) {
  return {std::to_string(c.n),
          format_real(c.p),
          std::string(c.spec.name()),
          alpha_field(c.spec),
          std::to_string(c.trials),
          std::to_string(c.failed),
          format_real(c.ratio_mean),
          format_real(c.ratio_stddev),
          format_real(c.ks_mean),
          format_real(c.ks_stddev)};
}

namespace detail {

inline nlohmann::json json_real(const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(); }

}  // namespace detail

inline nlohmann::json record_json(const ExperimentRecord& r) {
  nlohmann::json j = nlohmann::json::object();
  j["n"] = r.n;
  j["p"] = r.p;
  j["index"] = std::string(r.spec.name());
  j["alpha"] = r.spec.has_alpha() ? nlohmann::json(r.spec.alpha()) : nlohmann::json();
  j["trial"] = r.trial_index;
  j["energy"] = detail::json_real(r.energy);
  j["predicted_t3"] = detail::json_real(r.predicted_t3);
  j["predicted_cor"] = detail::json_real(r.predicted_cor);
  j["ratio_t3"] = detail::json_real(r.ratio_t3);
  j["ks"] = detail::json_real(r.ks);
  j["m2"] = detail::json_real(moment_of(r, 2));
  j["m4"] = detail::json_real(moment_of(r, 4));
  j["wall_ms"] = r.wall_ms;
  j["status"] = status_field(r);
  return j;
}

inline nlohmann::json summary_json(const CellSummary& c) {
  nlohmann::json j = nlohmann::json::object();
  j["n"] = c.n;
  j["p"] = c.p;
  j["index"] = std::string(c.spec.name());
  j["alpha"] = c.spec.has_alpha() ? nlohmann::json(c.spec.alpha()) : nlohmann::json();
  j["trials"] = c.trials;
  j["failed"] = c.failed;
  j["ratio_mean"] = detail::json_real(c.ratio_mean);
  j["ratio_stddev"] = detail::json_real(c.ratio_stddev);
  j["ks_mean"] = detail::json_real(c.ks_mean);
  j["ks_stddev"] = detail::json_real(c.ks_stddev);
  return j;
}

/// Records table, a blank line, then the per-cell summary table.
inline void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  write_csv_row(out, record_columns());
  for (const auto& r : result.records) write_csv_row(out, record_fields(r));
  out << '\n';
  write_csv_row(out, summary_columns());
  for (const auto& c : result.summary) write_csv_row(out, summary_fields(c));
}

inline void write_sweep_json(std::ostream& out, const SweepResult& result) {
  nlohmann::json j;
  j["metadata"] = {
      {"tolerance_note",
       "finite-n acceptance bands are chosen by this tool; the asymptotic law states no convergence rate"},
      {"seed_policy", "trial t of every cell uses stream (master_seed, t)"}};
  j["records"] = nlohmann::json::array();
  for (const auto& r : result.records) j["records"].push_back(record_json(r));
  j["summary"] = nlohmann::json::array();
  for (const auto& c : result.summary) j["summary"].push_back(summary_json(c));
  out << j.dump(2) << '\n';
}

/// Parses one row produced by record_fields. The spectrum, failure edge and
/// moments other than 2 and 4 are not part of the row.
inline ExperimentRecord parse_record_fields(const std::vector<std::string>& f) {
  if (f.size() != record_columns().size()) throw std::runtime_error("record row: wrong column count");
  auto real = [](const std::string& s) -> std::optional<double> {
    if (s.empty()) return std::nullopt;
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::runtime_error("record row: bad number '" + s + "'");
    return v;
  };
  const auto id = parse_weight_id(f[2]);
  if (!id) throw std::runtime_error("record row: unknown index '" + f[2] + "'");
  ExperimentRecord r;
  r.n = std::stoull(f[0]);
  r.p = *real(f[1]);
  r.spec = WeightFunctionSpec(*id, f[3].empty() ? 0.0 : *real(f[3]));
  r.trial_index = std::stoull(f[4]);
  r.energy = real(f[5]);
  r.predicted_t3 = real(f[6]);
  r.predicted_cor = real(f[7]);
  r.ratio_t3 = real(f[8]);
  r.ks = real(f[9]);
  if (auto m = real(f[10])) r.moments[2] = *m;
  if (auto m = real(f[11])) r.moments[4] = *m;
  r.wall_ms = *real(f[12]);
  r.ok = f[13] == "ok";
  if (!r.ok) r.failure = f[13].substr(f[13].find(": ") == std::string::npos ? 0 : f[13].find(": ") + 2);
  return r;
}

/// Accepts "name" or "general_randic(alpha)"; `default_alpha` applies to a
/// bare general_randic.
inline WeightFunctionSpec parse_spec(std::string_view text, std::optional<double> default_alpha = std::nullopt) {
  std::string name(text);
  std::optional<double> alpha = default_alpha;
  if (const auto open = name.find('('); open != std::string::npos) {
    if (name.back() != ')') throw std::invalid_argument("index '" + std::string(text) + "': missing ')'");
    const std::string arg = name.substr(open + 1, name.size() - open - 2);
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (arg.empty() || used != arg.size()) {
      throw std::invalid_argument("index '" + std::string(text) + "': bad alpha");
    }
    alpha = a;
    name.resize(open);
  }
  const auto id = parse_weight_id(name);
  if (!id) throw std::invalid_argument("unknown index '" + name + "'");
  if (*id == WeightId::general_randic) {
    if (!alpha) throw std::invalid_argument("general_randic requires alpha");
    return WeightFunctionSpec(*id, *alpha);
  }
  if (alpha && name.size() != text.size()) {
    throw std::invalid_argument("index '" + name + "' takes no parameter");
  }
  return WeightFunctionSpec(*id);
}

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

template <class T>
T parse_number(const std::string& s, const std::string& what) {
  std::istringstream in(s);
  T v{};
  if constexpr (std::is_unsigned_v<T>) {
    if (!s.empty() && s[0] == '-') throw std::invalid_argument(what + ": expected a nonnegative integer, got '" + s + "'");
  }
  if (!(in >> v) || !in.eof()) throw std::invalid_argument(what + ": cannot parse '" + s + "'");
  return v;
}

}  // namespace detail

/// Applies one "key=value" setting to the config. Throws std::invalid_argument.
inline void apply_config_setting(ExperimentConfig& cfg, std::optional<double>& alpha,
                                 std::vector<std::string>& index_names, const std::string& key,
                                 const std::string& value) {
  using detail::parse_number;
  using detail::split_list;
  if (key == "n") {
    cfg.n_values.clear();
    for (const auto& s : split_list(value)) cfg.n_values.push_back(parse_number<std::size_t>(s, "n"));
  } else if (key == "p") {
    cfg.p_values.clear();
    for (const auto& s : split_list(value)) cfg.p_values.push_back(parse_number<double>(s, "p"));
  } else if (key == "index") {
    index_names = split_list(value);
  } else if (key == "alpha") {
    alpha = parse_number<double>(value, "alpha");
  } else if (key == "trials") {
    cfg.trials = parse_number<std::size_t>(value, "trials");
  } else if (key == "seed") {
    cfg.master_seed = parse_number<std::uint64_t>(value, "seed");
  } else if (key == "moments") {
    cfg.moment_orders.clear();
    if (!value.empty())
      for (const auto& s : split_list(value)) cfg.moment_orders.push_back(parse_number<unsigned>(s, "moments"));
  } else if (key == "ks") {
    if (value == "true" || value == "1") cfg.compute_ks = true;
    else if (value == "false" || value == "0") cfg.compute_ks = false;
    else throw std::invalid_argument("ks: expected true or false, got '" + value + "'");
  } else if (key == "parallelism") {
    cfg.parallelism = parse_number<std::size_t>(value, "parallelism");
  } else {
    throw std::invalid_argument("unknown key '" + key + "'");
  }
}

inline void finish_config(ExperimentConfig& cfg, const std::optional<double>& alpha,
                          const std::vector<std::string>& index_names) {
  cfg.specs.clear();
  for (const auto& name : index_names) cfg.specs.push_back(parse_spec(name, alpha));
  cfg.validate();
}

/// Reads "key = value" lines into cfg without validating the result.
/// Errors carry `source` and the line number.
inline void read_config_lines(std::istream& in, ExperimentConfig& cfg, std::optional<double>& alpha,
                              std::vector<std::string>& index_names, const std::string& source = "config") {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = source + ": line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected key=value");
    try {
      apply_config_setting(cfg, alpha, index_names, detail::trim(body.substr(0, eq)), detail::trim(body.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + e.what());
    }
  }
}

/// Flat "key = value" text; lists are comma-separated, '#' starts a comment.
/// Keys: n, p, index, alpha, trials, seed, moments, ks, parallelism.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::optional<double> alpha;
  std::vector<std::string> index_names;
  read_config_lines(in, cfg, alpha, index_names);
  try {
    finish_config(cfg, alpha, index_names);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_SERIALIZE_HPP_
