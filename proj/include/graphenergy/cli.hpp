#ifndef GRAPHENERGY_CLI_HPP_
#define GRAPHENERGY_CLI_HPP_

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphenergy/experiments.hpp"
#include "graphenergy/graph.hpp"
#include "graphenergy/predict.hpp"
#include "graphenergy/selftest.hpp"
#include "graphenergy/semicircle.hpp"
#include "graphenergy/serialize.hpp"

namespace graphenergy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDomain = 3;

/// Bad flag value; the message names the flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct CommonFlags {
  std::string n = "";
  std::string p = "";
  std::string index = "";
  std::optional<double> alpha;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out_path;
  std::size_t parallelism = 1;
};

inline std::size_t single_n(const std::string& text, const char* flag = "--n") {
  try {
    const auto v = graphenergy::detail::parse_number<std::size_t>(text, flag);
    if (v == 0) throw std::invalid_argument("");
    return v;
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": expected a positive integer, got '" + text + "'");
  }
}

inline double single_p(const std::string& text) {
  double v = 0.0;
  try {
    v = graphenergy::detail::parse_number<double>(text, "--p");
  } catch (const std::invalid_argument&) {
    throw UsageError("--p: expected a number, got '" + text + "'");
  }
  if (!(v > 0.0 && v < 1.0)) throw UsageError("--p: must lie in (0,1), got '" + text + "'");
  return v;
}

inline WeightFunctionSpec single_spec(const std::string& text, std::optional<double> alpha) {
  try {
    return parse_spec(text, alpha);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--index: ") + e.what());
  }
}

inline void check_format(const std::string& f) {
  if (f != "csv" && f != "json") throw UsageError("--format: expected csv or json, got '" + f + "'");
}

/// Where command output goes: --out PATH or the given stream. Content is
/// buffered and written only once the command has succeeded.
class Sink {
 public:
  Sink(std::ostream& fallback, std::string path) : fallback_(fallback), path_(std::move(path)) {}

  std::ostream& stream() { return buffer_; }

  void commit() {
    if (path_.empty()) {
      fallback_ << buffer_.str();
      fallback_.flush();
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw UsageError("--out: cannot open '" + path_ + "'");
    file << buffer_.str();
  }

 private:
  std::ostream& fallback_;
  std::string path_;
  std::ostringstream buffer_;
};

inline void add_common(CLI::App* cmd, CommonFlags& f, bool with_seed) {
  cmd->add_option("--format", f.format, "Output format: csv or json");
  cmd->add_option("--out", f.out_path, "Write output to PATH instead of stdout");
  cmd->add_option("--alpha", f.alpha, "Exponent for general_randic");
  if (with_seed) cmd->add_option("--seed", f.seed, "Master seed");
}

inline int cmd_predict(const CommonFlags& f, bool argmax, std::ostream& out_stream) {
  check_format(f.format);
  if (f.index.empty()) throw UsageError("--index: required");
  const WeightFunctionSpec spec = single_spec(f.index, f.alpha);
  Sink sink(out_stream, f.out_path);
  auto& out = sink.stream();

  if (argmax) {
    const std::size_t n = f.n.empty() ? 1000 : single_n(f.n);
    if (n < 2) throw UsageError("--n: must be at least 2");
    const ArgmaxResult r = argmax_p(spec, n);
    const std::vector<std::string> cols = {"index", "alpha", "n", "trend", "p_star", "closed_form",
                                           "closed_form_in_stated_range"};
    const std::vector<std::string> row = {std::string(spec.name()),
                                          alpha_field(spec),
                                          std::to_string(n),
                                          std::string(to_string(r.trend)),
                                          format_real(r.p_star),
                                          format_real(r.closed_form),
                                          r.closed_form_in_stated_range ? "true" : "false"};
    if (f.format == "csv") {
      write_csv_row(out, cols);
      write_csv_row(out, row);
    } else {
      nlohmann::json j = nlohmann::json::object();
      j["index"] = row[0];
      j["alpha"] = spec.has_alpha() ? nlohmann::json(spec.alpha()) : nlohmann::json();
      j["n"] = n;
      j["trend"] = row[3];
      j["p_star"] = graphenergy::detail::json_real(r.p_star);
      j["closed_form"] = graphenergy::detail::json_real(r.closed_form);
      j["closed_form_in_stated_range"] = r.closed_form_in_stated_range;
      out << j.dump(2) << '\n';
    }
    sink.commit();
    return kExitOk;
  }

  if (f.n.empty()) throw UsageError("--n: required");
  if (f.p.empty()) throw UsageError("--p: required");
  const std::size_t n = single_n(f.n);
  if (n < 2) throw UsageError("--n: must be at least 2");
  const double p = single_p(f.p);

  const Prediction cor = predict_energy(spec, n, p, PredictionSource::corollary_closed_form);
  const double fc = center_value(spec, n, p);
  const double t3 = predict_energy(spec, n, p, PredictionSource::theorem3_general).predicted_energy;
  const std::vector<std::string> cols = {"n",         "p",   "index",          "alpha",
                                         "center_value", "predicted_t3", "predicted_cor", "paper_displayed",
                                         "leading_exponent", "log_factor"};
  const std::vector<std::string> row = {std::to_string(n),
                                        format_real(p),
                                        std::string(spec.name()),
                                        alpha_field(spec),
                                        format_real(fc),
                                        format_real(t3),
                                        format_real(cor.predicted_energy),
                                        format_real(cor.paper_displayed),
                                        format_real(cor.leading_exponent),
                                        cor.log_factor ? "true" : "false"};
  if (f.format == "csv") {
    write_csv_row(out, cols);
    write_csv_row(out, row);
  } else {
    nlohmann::json j = nlohmann::json::object();
    j["n"] = n;
    j["p"] = p;
    j["index"] = row[2];
    j["alpha"] = spec.has_alpha() ? nlohmann::json(spec.alpha()) : nlohmann::json();
    j["center_value"] = fc;
    j["predicted_t3"] = t3;
    j["predicted_cor"] = cor.predicted_energy;
    j["paper_displayed"] = graphenergy::detail::json_real(cor.paper_displayed);
    j["leading_exponent"] = cor.leading_exponent;
    j["log_factor"] = cor.log_factor;
    out << j.dump(2) << '\n';
  }
  sink.commit();
  return kExitOk;
}

struct EnergyFlags {
  std::string graph_path;
  std::string esd_out;
  std::uint64_t trial = 0;
};

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--graph: cannot open '" + path + "'");
  try {
    return read_edge_list(in);
  } catch (const std::runtime_error& e) {
    throw UsageError(std::string("--graph: ") + e.what());
  }
}

/// Graph plus the p used for normalization: either sampled from (--n, --p,
/// --seed, --trial) or read from --graph, where --p defaults to the edge density.
inline std::pair<Graph, double> resolve_graph(const CommonFlags& f, const EnergyFlags& e) {
  if (!e.graph_path.empty()) {
    Graph g = load_graph(e.graph_path);
    double p = 0.0;
    if (!f.p.empty()) {
      p = single_p(f.p);
    } else {
      const double pairs = static_cast<double>(g.order()) * static_cast<double>(g.order() - 1) / 2.0;
      p = pairs > 0 ? static_cast<double>(g.size()) / pairs : 0.0;
      if (!(p > 0.0 && p < 1.0)) throw UsageError("--p: required when the graph's edge density is 0 or 1");
    }
    return {std::move(g), p};
  }
  if (f.n.empty()) throw UsageError("--n: required (or --graph)");
  if (f.p.empty()) throw UsageError("--p: required");
  const std::size_t n = single_n(f.n);
  const double p = single_p(f.p);
  return {sample_gnp(n, p, Seed{f.seed, e.trial}), p};
}

inline int cmd_energy(const CommonFlags& f, const EnergyFlags& e, std::ostream& out_stream, std::ostream& err) {
  check_format(f.format);
  if (f.index.empty()) throw UsageError("--index: required");
  const WeightFunctionSpec spec = single_spec(f.index, f.alpha);
  auto [g, p] = resolve_graph(f, e);

  TrialOptions opt;
  opt.keep_centered_spectrum = !e.esd_out.empty();
  const ExperimentRecord rec = run_trial_on_graph(g, p, spec, e.trial, opt);

  Sink sink(out_stream, f.out_path);
  if (f.format == "csv") {
    write_csv_row(sink.stream(), record_columns());
    write_csv_row(sink.stream(), record_fields(rec));
  } else {
    sink.stream() << record_json(rec).dump(2) << '\n';
  }
  if (!rec.ok) {
    err << "energy: " << rec.failure << '\n';
    sink.commit();
    return kExitDomain;
  }
  if (!e.esd_out.empty()) {
    std::ofstream esd(e.esd_out, std::ios::binary);
    if (!esd) throw UsageError("--esd-out: cannot open '" + e.esd_out + "'");
    for (double x : rec.centered_spectrum) esd << format_real(x) << '\n';
  }
  sink.commit();
  return kExitOk;
}

/// ESD of n^{-1/2} A~ at each of its jump points next to the semicircle CDF.
inline int cmd_esd(const CommonFlags& f, const EnergyFlags& e, std::ostream& out_stream, std::ostream& err) {
  check_format(f.format);
  if (f.index.empty()) throw UsageError("--index: required");
  const WeightFunctionSpec spec = single_spec(f.index, f.alpha);
  auto [g, p] = resolve_graph(f, e);

  TrialOptions opt;
  opt.moment_orders.clear();
  opt.keep_centered_spectrum = true;
  const ExperimentRecord rec = run_trial_on_graph(g, p, spec, e.trial, opt);
  if (!rec.ok) {
    err << "esd: " << rec.failure << '\n';
    return kExitDomain;
  }
  const SemicircleLaw law = SemicircleLaw::for_probability(p);
  const Spectrum scaled(rec.centered_spectrum);
  Sink sink(out_stream, f.out_path);
  auto& out = sink.stream();
  if (f.format == "csv") {
    write_csv_row(out, {"x", "esd", "semicircle_cdf"});
    for (double x : scaled.values()) write_csv_row(out, {format_real(x), format_real(esd(scaled, x)), format_real(cdf(law, x))});
  } else {
    nlohmann::json j = nlohmann::json::object();
    j["n"] = rec.n;
    j["p"] = p;
    j["index"] = std::string(spec.name());
    j["ks"] = graphenergy::detail::json_real(rec.ks);
    j["ks_uncentered"] = graphenergy::detail::json_real(rec.ks_uncentered);
    j["x"] = scaled.values();
    out << j.dump(2) << '\n';
  }
  err << "esd: ks=" << format_real(rec.ks) << " ks_uncentered=" << format_real(rec.ks_uncentered) << '\n';
  sink.commit();
  return kExitOk;
}

struct SweepFlags {
  std::string config_path;
  std::string trials;
  std::string moments;
  std::string ks;
};

inline ExperimentConfig build_sweep_config(const CommonFlags& f, const SweepFlags& s, bool seed_given,
                                           bool parallelism_given) {
  ExperimentConfig cfg;
  std::optional<double> alpha;
  std::vector<std::string> names;
  if (!s.config_path.empty()) {
    std::ifstream in(s.config_path);
    if (!in) throw UsageError("--config: cannot open '" + s.config_path + "'");
    read_config_lines(in, cfg, alpha, names, s.config_path);
  }
  auto flag = [&](const char* key, const std::string& flag_name, const std::string& value) {
    if (value.empty()) return;
    try {
      apply_config_setting(cfg, alpha, names, key, value);
    } catch (const std::invalid_argument& e) {
      throw UsageError(flag_name + ": " + e.what());
    }
  };
  flag("n", "--n", f.n);
  flag("p", "--p", f.p);
  flag("index", "--index", f.index);
  if (f.alpha) alpha = f.alpha;
  flag("trials", "--trials", s.trials);
  flag("moments", "--moments", s.moments);
  flag("ks", "--ks", s.ks);
  if (seed_given) cfg.master_seed = f.seed;
  if (parallelism_given) cfg.parallelism = f.parallelism;
  try {
    finish_config(cfg, alpha, names);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

inline int cmd_sweep(const CommonFlags& f, const SweepFlags& s, bool seed_given, bool parallelism_given,
                     std::ostream& out_stream, std::ostream& err) {
  check_format(f.format);
  const ExperimentConfig cfg = build_sweep_config(f, s, seed_given, parallelism_given);
  const SweepResult result = run_sweep(cfg);
  Sink sink(out_stream, f.out_path);
  if (f.format == "csv") {
    write_sweep_csv(sink.stream(), result);
  } else {
    write_sweep_json(sink.stream(), result);
  }
  sink.commit();
  if (!result.ok()) {
    err << "sweep: " << result.failed_trials() << " of " << result.records.size()
        << " trials failed (more than 1%)\n";
    return kExitDomain;
  }
  return kExitOk;
}

inline int cmd_sample(const CommonFlags& f, const EnergyFlags& e, std::ostream& out_stream) {
  if (f.n.empty()) throw UsageError("--n: required");
  if (f.p.empty()) throw UsageError("--p: required");
  const Graph g = sample_gnp(single_n(f.n), single_p(f.p), Seed{f.seed, e.trial});
  Sink sink(out_stream, f.out_path);
  write_edge_list(sink.stream(), g);
  sink.commit();
  return kExitOk;
}

inline int cmd_selftest(std::ostream& out) {
  bool all = true;
  for (const auto& r : run_selftest()) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    all = all && r.passed;
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace detail

/// Entry point of the `graphenergy` executable. Data goes to `out`,
/// diagnostics to `err`. Exit codes: 0 success, 1 selftest failure,
/// 2 usage or config error, 3 weight domain failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy of degree-weighted Erdos-Renyi random graphs", "graphenergy"};
  app.require_subcommand(1);

  detail::CommonFlags common;
  detail::EnergyFlags energy_flags;
  detail::SweepFlags sweep_flags;
  bool argmax = false;

  auto* predict = app.add_subcommand("predict", "Closed-form energy predictions for one index");
  predict->add_option("--index", common.index, "Catalog identifier")->required();
  predict->add_option("--n", common.n, "Vertex count");
  predict->add_option("--p", common.p, "Edge probability in (0,1)");
  predict->add_flag("--argmax-p", argmax, "Report the p maximizing the predicted energy");
  detail::add_common(predict, common, false);

  auto* energy_cmd = app.add_subcommand("energy", "Energy of one sampled or loaded graph");
  energy_cmd->add_option("--index", common.index, "Catalog identifier")->required();
  energy_cmd->add_option("--n", common.n, "Vertex count");
  energy_cmd->add_option("--p", common.p, "Edge probability in (0,1)");
  energy_cmd->add_option("--trial", energy_flags.trial, "Trial index within the seed's streams");
  energy_cmd->add_option("--graph", energy_flags.graph_path, "Edge-list file instead of sampling");
  energy_cmd->add_option("--esd-out", energy_flags.esd_out, "Write sorted eigenvalues of n^-1/2 A~ to PATH");
  detail::add_common(energy_cmd, common, true);

  auto* esd_cmd = app.add_subcommand("esd", "Empirical spectral distribution against the semicircle law");
  esd_cmd->add_option("--index", common.index, "Catalog identifier")->required();
  esd_cmd->add_option("--n", common.n, "Vertex count");
  esd_cmd->add_option("--p", common.p, "Edge probability in (0,1)");
  esd_cmd->add_option("--trial", energy_flags.trial, "Trial index within the seed's streams");
  esd_cmd->add_option("--graph", energy_flags.graph_path, "Edge-list file instead of sampling");
  detail::add_common(esd_cmd, common, true);

  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over (n, p, index, trial)");
  sweep->add_option("--config", sweep_flags.config_path, "key=value config file");
  sweep->add_option("--n", common.n, "Comma-separated vertex counts");
  sweep->add_option("--p", common.p, "Comma-separated probabilities");
  sweep->add_option("--index", common.index, "Comma-separated catalog identifiers");
  sweep->add_option("--trials", sweep_flags.trials, "Trials per cell");
  sweep->add_option("--moments", sweep_flags.moments, "Comma-separated moment orders");
  sweep->add_option("--ks", sweep_flags.ks, "Compute KS distances (true/false)");
  auto* parallel_opt = sweep->add_option("--parallelism", common.parallelism, "Worker threads");
  detail::add_common(sweep, common, true);

  auto* sample = app.add_subcommand("sample", "Sample G(n,p) and print it as an edge list");
  sample->add_option("--n", common.n, "Vertex count")->required();
  sample->add_option("--p", common.p, "Edge probability in (0,1)")->required();
  sample->add_option("--seed", common.seed, "Master seed");
  sample->add_option("--trial", energy_flags.trial, "Trial index within the seed's streams");
  sample->add_option("--out", common.out_path, "Write output to PATH instead of stdout");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "graphenergy: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (predict->parsed()) return detail::cmd_predict(common, argmax, out);
    if (energy_cmd->parsed()) return detail::cmd_energy(common, energy_flags, out, err);
    if (esd_cmd->parsed()) return detail::cmd_esd(common, energy_flags, out, err);
    if (sweep->parsed()) {
      const bool seed_given = sweep->count("--seed") > 0;
      return detail::cmd_sweep(common, sweep_flags, seed_given, parallel_opt->count() > 0, out, err);
    }
    if (sample->parsed()) return detail::cmd_sample(common, energy_flags, out);
    if (selftest->parsed()) return detail::cmd_selftest(out);
  } catch (const UsageError& e) {
    err << "graphenergy: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "graphenergy: config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const WeightDomainError& e) {
    err << "graphenergy: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << "graphenergy: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace graphenergy::cli

#endif  // GRAPHENERGY_CLI_HPP_
