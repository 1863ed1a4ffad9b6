#ifndef GRAPHENERGY_EXPERIMENTS_HPP_
#define GRAPHENERGY_EXPERIMENTS_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "graphenergy/graph.hpp"
#include "graphenergy/predict.hpp"
#include "graphenergy/semicircle.hpp"
#include "graphenergy/spectral.hpp"
#include "graphenergy/weights.hpp"

namespace graphenergy {

struct TrialOptions {
  /// Orders k of M_k(n^{-1/2} A~) to record.
  std::vector<unsigned> moment_orders{2, 4};
  bool compute_ks = true;
  /// Keep the sorted eigenvalues of n^{-1/2} A~ in the record.
  bool keep_centered_spectrum = false;
};

struct ExperimentRecord {
  std::size_t n = 0;
  double p = 0.0;
  WeightFunctionSpec spec{WeightId::unit};
  std::uint64_t trial_index = 0;

  std::optional<double> energy;
  std::optional<double> predicted_t3;
  std::optional<double> predicted_cor;
  std::optional<double> ratio_t3;
  /// KS distance of the ESD of n^{-1/2} A~ to the semicircle law.
  std::optional<double> ks;
  /// Same, for n^{-1/2} (A / f(np,np) + p I), i.e. the uncentered matrix
  /// with the diagonal shift undone.
  std::optional<double> ks_uncentered;
  std::map<unsigned, double> moments;
  double wall_ms = 0.0;

  bool ok = true;
  std::string failure;
  std::optional<Edge> failed_edge;

  std::vector<double> centered_spectrum;
};

namespace detail {

inline bool needs_centered_spectrum(const TrialOptions& opt) {
  return opt.compute_ks || !opt.moment_orders.empty() || opt.keep_centered_spectrum;
}

}  // namespace detail

/// One trial on a given graph: weighted adjacency, its energy, and the
/// comparison against both predictors. Weight domain errors produce a record
/// with ok = false rather than an exception.
inline ExperimentRecord run_trial_on_graph(const Graph& g, double p, const WeightFunctionSpec& spec,
                                           std::uint64_t trial_index, const TrialOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentRecord rec;
  rec.n = g.order();
  rec.p = p;
  rec.spec = spec;
  rec.trial_index = trial_index;
  for (unsigned k : opt.moment_orders) {
    if (k > kMaxMomentOrder) throw std::invalid_argument("run_trial: moment order above " + std::to_string(kMaxMomentOrder));
  }

  try {
    const std::size_t n = g.order();
    const double fc = center_value(spec, n, p);
    if (n >= 2) {
      rec.predicted_t3 = predict_energy(spec, n, p, PredictionSource::theorem3_general).predicted_energy;
      rec.predicted_cor = predict_energy(spec, n, p, PredictionSource::corollary_closed_form).predicted_energy;
    }

    const SymmetricMatrix a = build_weighted_adjacency(g, spec);
    const Spectrum spectrum = eigenvalues_symmetric(a);
    rec.energy = energy(spectrum);
    if (rec.predicted_t3) rec.ratio_t3 = *rec.energy / *rec.predicted_t3;

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    const SemicircleLaw law = SemicircleLaw::for_probability(p);
    if (opt.compute_ks) {
      std::vector<double> shifted(spectrum.values().begin(), spectrum.values().end());
      for (double& l : shifted) l = l / fc + p;
      rec.ks_uncentered = ks_distance(Spectrum(std::move(shifted)), scale, law);
    }
    if (detail::needs_centered_spectrum(opt)) {
      const Spectrum centered = eigenvalues_symmetric(center_scale(a, fc, p));
      if (opt.compute_ks) rec.ks = ks_distance(centered, scale, law);
      for (unsigned k : opt.moment_orders) {
        rec.moments[k] = trace_moment(centered, k) * std::pow(scale, static_cast<double>(k));
      }
      if (opt.keep_centered_spectrum) {
        rec.centered_spectrum.assign(centered.values().begin(), centered.values().end());
        for (double& l : rec.centered_spectrum) l *= scale;
      }
    }
  } catch (const WeightDomainError& e) {
    rec.ok = false;
    rec.failure = e.what();
    rec.failed_edge = e.edge();
    rec.energy.reset();
    rec.ratio_t3.reset();
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Samples G(n,p) from `seed` and runs one trial on it.
inline ExperimentRecord run_trial(std::size_t n, double p, const WeightFunctionSpec& spec, const Seed& seed,
                                  const TrialOptions& opt = {}) {
  const Graph g = sample_gnp(n, p, seed);
  return run_trial_on_graph(g, p, spec, seed.trial_index, opt);
}

struct ExperimentConfig {
  std::vector<std::size_t> n_values;
  std::vector<double> p_values;
  std::vector<WeightFunctionSpec> specs;
  std::size_t trials = 1;
  std::uint64_t master_seed = 1;
  std::vector<unsigned> moment_orders{2, 4};
  bool compute_ks = true;
  std::size_t parallelism = 1;

  void validate() const {
    if (n_values.empty() || p_values.empty() || specs.empty()) {
      throw std::invalid_argument("sweep config: n, p and index lists must be nonempty");
    }
    for (auto n : n_values)
      if (n < 2) throw std::invalid_argument("sweep config: every n must be at least 2");
    for (double p : p_values)
      if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("sweep config: every p must lie in (0,1)");
    if (trials < 1) throw std::invalid_argument("sweep config: trials must be at least 1");
    for (unsigned k : moment_orders)
      if (k > kMaxMomentOrder) throw std::invalid_argument("sweep config: moment order above 12");
  }
};

struct CellSummary {
  std::size_t n = 0;
  double p = 0.0;
  WeightFunctionSpec spec{WeightId::unit};
  std::size_t trials = 0;
  std::size_t failed = 0;
  std::optional<double> ratio_mean;
  std::optional<double> ratio_stddev;
  std::optional<double> ks_mean;
  std::optional<double> ks_stddev;
};

struct SweepResult {
  std::vector<ExperimentRecord> records;
  std::vector<CellSummary> summary;

  std::size_t failed_trials() const {
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.ok; }));
  }
  /// A sweep fails when more than 1% of its trials hit a weight domain error.
  bool ok() const { return 100 * failed_trials() <= records.size(); }
};

namespace detail {

struct MeanStd {
  std::optional<double> mean;
  std::optional<double> stddev;
};

inline MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  out.mean = mean;
  if (xs.size() >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace detail

/// Runs every (n, p, index, trial) cell. Records are ordered by n ascending,
/// then p ascending, then index in config order, then trial; trial t of every
/// cell draws its graph from Seed{master_seed, t}. Trials may run on
/// `parallelism` threads; the output does not depend on it.
inline SweepResult run_sweep(ExperimentConfig cfg) {
  cfg.validate();
  std::sort(cfg.n_values.begin(), cfg.n_values.end());
  cfg.n_values.erase(std::unique(cfg.n_values.begin(), cfg.n_values.end()), cfg.n_values.end());
  std::sort(cfg.p_values.begin(), cfg.p_values.end());
  cfg.p_values.erase(std::unique(cfg.p_values.begin(), cfg.p_values.end()), cfg.p_values.end());

  struct Job {
    std::size_t n;
    double p;
    std::size_t spec_index;
    std::uint64_t trial;
  };
  std::vector<Job> jobs;
  for (auto n : cfg.n_values)
    for (double p : cfg.p_values)
      for (std::size_t s = 0; s < cfg.specs.size(); ++s)
        for (std::uint64_t t = 0; t < cfg.trials; ++t) jobs.push_back({n, p, s, t});

  TrialOptions opt;
  opt.moment_orders = cfg.moment_orders;
  opt.compute_ks = cfg.compute_ks;

  SweepResult result;
  result.records.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> stop{false};
  auto worker = [&] {
    for (std::size_t j; !stop && (j = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[j];
      try {
        result.records[j] =
            run_trial(job.n, job.p, cfg.specs[job.spec_index], Seed{cfg.master_seed, job.trial}, opt);
      } catch (...) {
        if (!stop.exchange(true)) error = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.parallelism, 1, std::max<std::size_t>(jobs.size(), 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);

  for (std::size_t begin = 0; begin < jobs.size(); begin += cfg.trials) {
    CellSummary cell;
    const auto& first = result.records[begin];
    cell.n = first.n;
    cell.p = first.p;
    cell.spec = first.spec;
    cell.trials = cfg.trials;
    std::vector<double> ratios, kss;
    for (std::size_t j = begin; j < begin + cfg.trials; ++j) {
      const auto& r = result.records[j];
      if (!r.ok) ++cell.failed;
      if (r.ratio_t3) ratios.push_back(*r.ratio_t3);
      if (r.ks) kss.push_back(*r.ks);
    }
    const auto rs = detail::mean_std(ratios);
    const auto ks = detail::mean_std(kss);
    cell.ratio_mean = rs.mean;
    cell.ratio_stddev = rs.stddev;
    cell.ks_mean = ks.mean;
    cell.ks_stddev = ks.stddev;
    result.summary.push_back(cell);
  }
  return result;
}

}  // namespace graphenergy

#endif  // GRAPHENERGY_EXPERIMENTS_HPP_
