#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "motifsketch/algebra.hpp"
#include "motifsketch/hashing.hpp"
#include "motifsketch/pattern.hpp"
#include "motifsketch/streamio.hpp"

namespace motifsketch {

enum class Algorithm : int {
  Accumulators = 1,  // add embedded group elements to complex accumulators
  Counters = 2,      // count occurrences of +-M^j; SignedPowers only
};

enum class Finalizer {
  Auto,    // Cycle4 when the pattern is the canonical 4-cycle, else Naive
  Naive,   // every ordered tuple of distinct colors
  Cycle4,  // inclusion-exclusion over the two middle colors, O(C^3 d)
};

std::string to_string(Algorithm a);
std::string to_string(Finalizer f);
Finalizer parse_finalizer(std::string_view text);

struct SketchConfig {
  Pattern pattern;
  GroupSpec group;
  std::uint32_t colors = 0;
  Algorithm algorithm = Algorithm::Counters;
  std::uint64_t seed = 0;

  friend bool operator==(const SketchConfig&, const SketchConfig&) = default;
};

/// Throws ConfigError if the combination is unusable.
void validate(const SketchConfig& config);

/// The accumulators Z_i^{c1,c2} in dense form, indexed from zero:
/// edge index 0..k-1, color indices 0..C-1, diagonal entry 0..dim-1.
class ZTable {
 public:
  ZTable(int edges, std::uint32_t colors, std::uint32_t dimension);

  int edges() const noexcept { return edges_; }
  std::uint32_t colors() const noexcept { return colors_; }
  std::uint32_t dimension() const noexcept { return dimension_; }

  std::span<const std::complex<double>> at(int edge_index, std::uint32_t c1, std::uint32_t c2) const {
    return {values_.data() + offset(edge_index, c1, c2), dimension_};
  }
  std::span<std::complex<double>> at(int edge_index, std::uint32_t c1, std::uint32_t c2) {
    return {values_.data() + offset(edge_index, c1, c2), dimension_};
  }

  /// Z_i^{c1,c2} with 1-based edge and colors.
  Accumulator z(int edge, std::uint32_t c1, std::uint32_t c2) const;

  std::span<const std::complex<double>> values() const noexcept { return values_; }
  std::span<std::complex<double>> values() noexcept { return values_; }

 private:
  std::size_t offset(int edge_index, std::uint32_t c1, std::uint32_t c2) const noexcept {
    return ((static_cast<std::size_t>(edge_index) * colors_ + c1) * colors_ + c2) * dimension_;
  }

  int edges_;
  std::uint32_t colors_;
  std::uint32_t dimension_;
  std::vector<std::complex<double>> values_;
};

/// A batch of events with endpoints replaced by indices into a table of
/// distinct vertices, so per-vertex hashing runs once per batch.
class EventBlock {
 public:
  struct IndexedEvent {
    std::int32_t delta;  // +1 insert, -1 delete
    std::uint32_t u;
    std::uint32_t v;
  };

  void add(const EdgeEvent& event);
  void clear();

  bool empty() const noexcept { return events_.empty(); }
  std::size_t size() const noexcept { return events_.size(); }
  std::span<const VertexId> vertices() const noexcept { return vertices_; }
  std::span<const IndexedEvent> events() const noexcept { return events_; }

 private:
  std::uint32_t index_of(VertexId v);

  std::unordered_map<VertexId, std::uint32_t> index_;
  std::vector<VertexId> vertices_;
  std::vector<IndexedEvent> events_;
};

/// Real part and imaginary diagnostic of one instance's estimate.
struct Estimate {
  double value = 0.0;
  double imaginary = 0.0;
};

/// One estimator instance.
///
/// Every undirected stream edge {u,v} is processed as the two directed edges
/// u->v and v->u. For directed w->x and each pattern edge i, the element
/// M_i = X_{2i-1}(w) X_{2i}(x) is added to (or, for deletions, subtracted
/// from) the cell for colors (C(w), C(x)):
///   - Algorithm::Accumulators keeps dim complex entries per cell;
///   - Algorithm::Counters keeps d signed counts per cell, one per power of M,
///     and touches exactly one count per (edge, direction, i).
///
/// Single writer. Instances with equal configs merge by cellwise addition.
class Sketch {
 public:
  explicit Sketch(SketchConfig config, HashOverrides overrides = {});

  const SketchConfig& config() const noexcept { return config_; }
  const HalfEdgeHashes& hashes() const noexcept { return hashes_; }

  /// Throws InputError for a self-loop.
  void update(const EdgeEvent& event);
  void update(std::span<const EdgeEvent> events);
  void update(const EventBlock& block);

  /// Z accumulators; for Algorithm::Counters entry l is sum_j Count(i,j) w^(jl).
  ZTable materialize() const;

  /// S_(c1..ct) for one tuple of distinct colors in 1..C.
  Accumulator subproduct(std::span<const std::uint32_t> colors) const;

  /// S: the sum of S_(c1..ct) over all ordered tuples of distinct colors.
  Accumulator total_product(Finalizer finalizer = Finalizer::Auto) const;

  /// C^t / (C (C-1) ... (C-t+1) * d * auto(H)).
  double scale() const;

  Estimate finalize_detailed(Finalizer finalizer = Finalizer::Auto) const;
  double finalize() const { return finalize_detailed(Finalizer::Naive).value; }
  /// Requires the canonical 4-cycle pattern.
  double finalize_cycle4_fast() const { return finalize_detailed(Finalizer::Cycle4).value; }

  /// Cellwise sum. Configs must match; hash overrides are not compared.
  void merge(const Sketch& other);
  Sketch negated() const;

  bool is_fresh() const noexcept;

  /// Algorithm::Counters cells, layout [i][c1][c2][j]; empty otherwise.
  std::span<const std::int64_t> counters() const noexcept { return counters_; }
  /// Algorithm::Accumulators cells, layout [i][c1][c2][l]; empty otherwise.
  std::span<const std::complex<double>> accumulators() const noexcept { return accumulators_; }

  /// Counter cells (or accumulator entries) modified so far.
  std::uint64_t cells_touched() const noexcept { return cells_touched_; }
  /// Stream events applied so far.
  std::uint64_t events() const noexcept { return events_; }

  /// Restores cells from a dump; sizes must match the config.
  void load_cells(std::vector<std::int64_t> counters, std::vector<std::complex<double>> accumulators,
                  std::uint64_t events);

  /// Same config and identical cells.
  friend bool operator==(const Sketch& a, const Sketch& b) {
    return a.config_ == b.config_ && a.counters_ == b.counters_ && a.accumulators_ == b.accumulators_;
  }

 private:
  void apply_directed(std::uint32_t color_w, std::span<const GroupElement> xw, std::uint32_t color_x,
                      std::span<const GroupElement> xx, std::int64_t delta);
  void count_event();

  SketchConfig config_;
  HalfEdgeHashes hashes_;
  RootTable roots_;
  std::vector<std::int64_t> counters_;
  std::vector<std::complex<double>> accumulators_;
  std::uint64_t cells_touched_ = 0;
  std::uint64_t events_ = 0;
};

Sketch merge(const Sketch& a, const Sketch& b);

/// Versioned JSON dump: config echo plus cells. Round-trips exactly.
std::string dump_sketch(const Sketch& sketch);
Sketch load_sketch(std::string_view json);

}  // namespace motifsketch
