#include "motifsketch/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kahan.hpp"
#include "motifsketch/error.hpp"

namespace motifsketch {
namespace {

constexpr std::uint64_t kInstanceDomain = 0x696e7374616e6365ULL;  // "instance"

double round_half_up(double x) { return std::floor(x + 0.5); }

std::uint32_t to_count(double x) {
  constexpr double kMax = static_cast<double>(std::numeric_limits<std::uint32_t>::max());
  return static_cast<std::uint32_t>(std::min(x, kMax));
}

}  // namespace

Plan plan_parameters(const PlanInput& in) {
  if (!(in.target_count > 0.0)) {
    throw ConfigError(
        "target count must be positive; supply a lower-bound guess for the number of copies "
        "(for example from an exploratory run with a small instance count)");
  }
  if (!(in.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(in.directed_edges >= 1.0)) throw ConfigError("edge count must be at least 1");
  if (in.pattern_vertices < 1 || in.pattern_edges < 1) throw ConfigError("pattern size must be positive");
  if (!(in.relative_variance > 0.0)) throw ConfigError("relative variance must be positive");
  if (in.max_dimension < 2) throw ConfigError("max dimension must be at least 2");

  const double t = in.pattern_vertices;
  const double k = in.pattern_edges;
  const double log_m = std::log(in.directed_edges);
  const double log_target = std::log(in.target_count);
  const double excess = 2.0 * k - t;

  Plan plan;
  double log_bound = std::min(2.0 * in.alpha * log_m, log_m / 3.0);
  if (excess > 0.0) log_bound = std::min(log_bound, (k * log_m - 2.0 * log_target) / excess);
  plan.color_bound = std::exp(log_bound);

  const double floored = std::floor(plan.color_bound * (1.0 + 1e-9));
  plan.colors = static_cast<std::uint32_t>(std::clamp(floored, t, 65535.0));
  if (plan.color_bound < t) {
    plan.warnings.push_back("color bound " + std::to_string(plan.color_bound) +
                            " is below t; using C = t, outside the variance guarantee");
  }

  const double log_value = k * log_m - 2.0 * log_target - excess * std::log(plan.colors);
  plan.instance_value = std::exp(log_value);

  if (log_value > 0.0) {
    const double d = std::clamp(round_half_up(plan.instance_value), 2.0,
                                static_cast<double>(in.max_dimension));
    plan.group = GroupSpec::signed_powers(static_cast<std::uint32_t>(d));
    const double n = std::exp(log_value - std::log(d) - std::log(in.relative_variance));
    plan.instances = to_count(std::max(1.0, round_half_up(n)));
  } else {
    plan.group = GroupSpec::roots_of_unity(in.roots_order);
    plan.instances = to_count(std::max(1.0, round_half_up(1.0 / in.relative_variance)));
  }

  const double degree_cap = std::exp((0.5 - in.alpha) * log_m);
  if (in.max_degree && *in.max_degree > degree_cap * (1.0 + 1e-9)) {
    plan.warnings.push_back("max degree " + std::to_string(*in.max_degree) + " exceeds m^(1/2-alpha) = " +
                            std::to_string(degree_cap) + "; the variance bound does not apply");
  }
  const double cells = static_cast<double>(plan.instances) * k * plan.colors * plan.colors *
                       plan.group.dimension();
  if (in.storage_budget && cells > *in.storage_budget) {
    plan.warnings.push_back("plan needs " + std::to_string(cells) + " cells, above the storage budget");
  }
  const double per_edge = static_cast<double>(plan.instances) * 2.0 * k;
  if (in.time_budget && per_edge > *in.time_budget) {
    plan.warnings.push_back("plan needs " + std::to_string(per_edge) +
                            " cell updates per edge, above the time budget");
  }
  return plan;
}

std::uint64_t instance_seed(std::uint64_t master_seed, std::uint64_t index) {
  return derive_seed(master_seed ^ kInstanceDomain, index);
}

EnsembleConfig EnsembleConfig::from_plan(Pattern pattern, const Plan& plan, Algorithm algorithm,
                                         std::uint64_t master_seed) {
  return EnsembleConfig{std::move(pattern), plan.colors, plan.group, plan.instances,
                        algorithm,          Finalizer::Auto, master_seed};
}

SketchConfig EnsembleConfig::instance_config(std::uint32_t index) const {
  return SketchConfig{pattern, group, colors, algorithm, instance_seed(master_seed, index)};
}

Ensemble::Ensemble(EnsembleConfig config, std::size_t block_size)
    : config_(std::move(config)), block_size_(std::max<std::size_t>(block_size, 1)) {
  if (config_.instances == 0) throw ConfigError("need at least one instance");
  instances_.reserve(config_.instances);
  for (std::uint32_t i = 0; i < config_.instances; ++i) instances_.emplace_back(config_.instance_config(i));
}

void Ensemble::update(const EdgeEvent& event) {
  if (event.u == event.v) throw InputError("self-loop on vertex " + std::to_string(event.u));
  stats_.add(event);
  block_.add(event);
  if (block_.size() >= block_size_) flush();
}

void Ensemble::update(std::span<const EdgeEvent> events) {
  for (const auto& e : events) update(e);
}

void Ensemble::flush() {
  if (block_.empty()) return;
  for (auto& sketch : instances_) sketch.update(block_);
  block_.clear();
}

std::uint64_t Ensemble::cells_touched() const noexcept {
  std::uint64_t total = 0;
  for (const auto& s : instances_) total += s.cells_touched();
  return total;
}

EstimateReport Ensemble::report() {
  flush();
  std::vector<Estimate> estimates;
  estimates.reserve(instances_.size());
  for (const auto& s : instances_) estimates.push_back(s.finalize_detailed(config_.finalizer));
  return summarize(estimates, config_, stats_);
}

void Ensemble::merge(Ensemble& other) {
  if (!(config_ == other.config_)) throw ConfigError("cannot merge ensembles with different configs");
  flush();
  other.flush();
  for (std::size_t i = 0; i < instances_.size(); ++i) instances_[i].merge(other.instances_[i]);
  stats_.events += other.stats_.events;
  stats_.inserts += other.stats_.inserts;
  stats_.deletes += other.stats_.deletes;
}

EstimateReport summarize(std::span<const Estimate> estimates, const EnsembleConfig& config,
                         const StreamStats& stream) {
  EstimateReport report;
  report.config = config;
  report.stream = stream;
  report.per_instance_estimates.reserve(estimates.size());
  detail::CompensatedSum sum;
  detail::CompensatedSum imaginary;
  for (const auto& e : estimates) {
    report.per_instance_estimates.push_back(e.value);
    sum.add(e.value);
    imaginary.add(e.imaginary);
  }
  const double n = static_cast<double>(estimates.size());
  if (!estimates.empty()) {
    report.mean_estimate = sum.value() / n;
    report.imaginary_diagnostic = imaginary.value() / n;
  }
  if (estimates.size() > 1) {
    detail::CompensatedSum squares;
    for (const auto& e : estimates) {
      const double dev = e.value - report.mean_estimate;
      squares.add(dev * dev);
    }
    report.standard_error = std::sqrt(squares.value() / (n - 1.0)) / std::sqrt(n);
  }
  report.instance_seeds.reserve(config.instances);
  for (std::uint32_t i = 0; i < config.instances; ++i) {
    report.instance_seeds.push_back(instance_seed(config.master_seed, i));
  }
  return report;
}

EstimateReport run_ensemble(std::span<const EdgeEvent> events, const EnsembleConfig& config) {
  Ensemble ensemble(config);
  ensemble.update(events);
  return ensemble.report();
}

EstimateReport run_ensemble(StreamReader& reader, const EnsembleConfig& config) {
  Ensemble ensemble(config);
  while (auto e = reader.next()) ensemble.update(*e);
  return ensemble.report();
}

}  // namespace motifsketch
