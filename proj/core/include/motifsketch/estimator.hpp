#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifsketch/algebra.hpp"
#include "motifsketch/pattern.hpp"
#include "motifsketch/sketch.hpp"
#include "motifsketch/streamio.hpp"

namespace motifsketch {

/// Inputs to the parameter planner. `directed_edges` is m for the doubled
/// graph, i.e. twice the number of undirected edges.
struct PlanInput {
  double directed_edges = 0.0;
  /// Exponent with max degree <= m^(1/2 - alpha); must be positive.
  double alpha = 0.0;
  /// Lower-bound guess for the number of copies; must be positive.
  double target_count = 0.0;
  /// Pattern size: t vertices, k edges.
  int pattern_vertices = 0;
  int pattern_edges = 0;
  /// Known max degree of the host graph, checked against m^(1/2 - alpha).
  std::optional<double> max_degree;
  /// Upper clamp for the matrix dimension d.
  std::uint32_t max_dimension = 1024;
  /// r used when a roots-of-unity group is chosen.
  std::uint32_t roots_order = 4;
  /// Target variance relative to target_count^2; instance counts scale by its inverse.
  double relative_variance = 1.0;
  /// Optional caps: total sketch cells, and cell updates per streamed edge.
  std::optional<double> storage_budget;
  std::optional<double> time_budget;
};

struct Plan {
  std::uint32_t colors = 0;
  GroupSpec group = GroupSpec::roots_of_unity(4);
  std::uint32_t instances = 1;
  /// Unrounded min(m^(2 alpha), m^(1/3), (m^k / X^2)^(1/(2k-t))).
  double color_bound = 0.0;
  /// m^k / (X^2 C^(2k-t)) at the chosen C.
  double instance_value = 0.0;
  std::vector<std::string> warnings;
};

/// Chooses C, the group and the instance count.
///
///   C = max(t, floor(min(m^(2 alpha), m^(1/3), (m^k / X^2)^(1/(2k-t)))))
///   V = m^k / (X^2 C^(2k-t))
///   V > 1:  matrix:d with d = clamp(round(V), 2, max_dimension),
///           N = max(1, round(V / (d * relative_variance)))
///   V <= 1: roots:r, N = max(1, round(1 / relative_variance))
///
/// Rounding is half-up; the floor for C tolerates a relative 1e-9 shortfall
/// from floating-point roots (so m = 10^6 gives C = 100, not 99).
/// Everything is computed in log space, so large m^k does not overflow.
Plan plan_parameters(const PlanInput& input);

/// Seed of instance `index` in an ensemble.
std::uint64_t instance_seed(std::uint64_t master_seed, std::uint64_t index);

struct EnsembleConfig {
  Pattern pattern;
  std::uint32_t colors = 0;
  GroupSpec group = GroupSpec::roots_of_unity(4);
  std::uint32_t instances = 1;
  Algorithm algorithm = Algorithm::Accumulators;
  Finalizer finalizer = Finalizer::Auto;
  std::uint64_t master_seed = 0;

  static EnsembleConfig from_plan(Pattern pattern, const Plan& plan, Algorithm algorithm,
                                  std::uint64_t master_seed);

  SketchConfig instance_config(std::uint32_t index) const;

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

struct EstimateReport {
  double mean_estimate = 0.0;
  std::vector<double> per_instance_estimates;
  /// Sample standard deviation over sqrt(N); 0 when N = 1.
  double standard_error = 0.0;
  /// Mean imaginary part of the scaled trace; zero in expectation.
  double imaginary_diagnostic = 0.0;
  EnsembleConfig config;
  std::vector<std::uint64_t> instance_seeds;
  StreamStats stream;
};

/// N independent sketches fed from one pass over the stream.
///
/// Events are buffered into blocks so each instance hashes every distinct
/// vertex of a block once. Output depends only on (stream, config).
class Ensemble {
 public:
  explicit Ensemble(EnsembleConfig config, std::size_t block_size = 4096);

  const EnsembleConfig& config() const noexcept { return config_; }

  void update(const EdgeEvent& event);
  void update(std::span<const EdgeEvent> events);
  /// Applies buffered events to every instance.
  void flush();

  /// Flushes, then finalizes every instance.
  EstimateReport report();

  std::span<const Sketch> instances() const noexcept { return instances_; }
  const StreamStats& stream_stats() const noexcept { return stats_; }
  std::uint64_t cells_touched() const noexcept;

  /// Cellwise merge with an ensemble over another part of the stream.
  void merge(Ensemble& other);

  std::string dump();
  static Ensemble load(std::string_view json);

 private:
  EnsembleConfig config_;
  std::size_t block_size_;
  std::vector<Sketch> instances_;
  EventBlock block_;
  StreamStats stats_;
};

EstimateReport run_ensemble(std::span<const EdgeEvent> events, const EnsembleConfig& config);
EstimateReport run_ensemble(StreamReader& reader, const EnsembleConfig& config);

/// Mean, standard error and config echo from finalized per-instance values.
EstimateReport summarize(std::span<const Estimate> estimates, const EnsembleConfig& config,
                         const StreamStats& stream);

std::string report_to_json(const EstimateReport& report);
std::string report_to_text(const EstimateReport& report);
std::string plan_to_json(const Plan& plan);
std::string plan_to_text(const Plan& plan);

}  // namespace motifsketch
