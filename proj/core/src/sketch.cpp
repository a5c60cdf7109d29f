#include "motifsketch/sketch.hpp"

#include <algorithm>
#include <cassert>

#include "kahan.hpp"
#include "motifsketch/error.hpp"

namespace motifsketch {

std::string to_string(Algorithm a) { return a == Algorithm::Accumulators ? "1" : "2"; }

std::string to_string(Finalizer f) {
  switch (f) {
    case Finalizer::Auto: return "auto";
    case Finalizer::Naive: return "naive";
    case Finalizer::Cycle4: return "cycle4";
  }
  return "auto";
}

Finalizer parse_finalizer(std::string_view text) {
  if (text == "auto") return Finalizer::Auto;
  if (text == "naive") return Finalizer::Naive;
  if (text == "cycle4") return Finalizer::Cycle4;
  throw ConfigError("unknown finalizer '" + std::string(text) + "'");
}

void validate(const SketchConfig& config) {
  if (config.colors < static_cast<std::uint32_t>(config.pattern.vertex_count())) {
    throw ConfigError("need C >= t colors (C=" + std::to_string(config.colors) +
                      ", t=" + std::to_string(config.pattern.vertex_count()) + ")");
  }
  if (config.algorithm == Algorithm::Counters && config.group.kind() != GroupKind::SignedPowers) {
    throw ConfigError("algorithm 2 requires a matrix:<d> group");
  }
}

ZTable::ZTable(int edges, std::uint32_t colors, std::uint32_t dimension)
    : edges_(edges),
      colors_(colors),
      dimension_(dimension),
      values_(static_cast<std::size_t>(edges) * colors * colors * dimension) {}

Accumulator ZTable::z(int edge, std::uint32_t c1, std::uint32_t c2) const {
  const auto cell = at(edge - 1, c1 - 1, c2 - 1);
  return Accumulator(std::vector<std::complex<double>>(cell.begin(), cell.end()));
}

void EventBlock::add(const EdgeEvent& event) {
  const std::uint32_t u = index_of(event.u);
  const std::uint32_t v = index_of(event.v);
  events_.push_back({event.op == EdgeOp::Insert ? 1 : -1, u, v});
}

void EventBlock::clear() {
  index_.clear();
  vertices_.clear();
  events_.clear();
}

std::uint32_t EventBlock::index_of(VertexId v) {
  const auto [it, inserted] = index_.try_emplace(v, static_cast<std::uint32_t>(vertices_.size()));
  if (inserted) vertices_.push_back(v);
  return it->second;
}

namespace {

constexpr std::uint64_t kMaxEvents = std::uint64_t{1} << 62;

std::size_t cell_count(const SketchConfig& c) {
  return static_cast<std::size_t>(c.pattern.edge_count()) * c.colors * c.colors *
         c.group.dimension();
}

}  // namespace

Sketch::Sketch(SketchConfig config, HashOverrides overrides)
    : config_((validate(config), std::move(config))),
      hashes_(config_.pattern, config_.group, config_.colors, config_.seed, std::move(overrides)),
      roots_(config_.group) {
  if (config_.algorithm == Algorithm::Counters) {
    counters_.assign(cell_count(config_), 0);
  } else {
    accumulators_.assign(cell_count(config_), {});
  }
}

void Sketch::count_event() {
  // Counters move by at most one per event, so they cannot overflow before this.
  if (++events_ >= kMaxEvents) throw Error("sketch event count reached 2^62");
}

void Sketch::apply_directed(std::uint32_t color_w, std::span<const GroupElement> xw,
                            std::uint32_t color_x, std::span<const GroupElement> xx,
                            std::int64_t delta) {
  const int k = config_.pattern.edge_count();
  const std::size_t colors = config_.colors;
  const std::size_t dim = config_.group.dimension();
  const std::size_t color_cell = static_cast<std::size_t>(color_w) * colors + color_x;
  for (int i = 0; i < k; ++i) {
    const GroupElement m = multiply(xw[2 * i], xx[2 * i + 1], config_.group);
    const std::size_t base = (static_cast<std::size_t>(i) * colors * colors + color_cell) * dim;
    if (config_.algorithm == Algorithm::Counters) {
      counters_[base + m.exponent] += delta * m.sign;
      ++cells_touched_;
    } else {
      const double scale = static_cast<double>(delta);
      for (std::uint32_t l = 0; l < dim; ++l) accumulators_[base + l] += scale * roots_.entry(m, l);
      cells_touched_ += dim;
    }
  }
}

void Sketch::update(const EdgeEvent& event) {
  if (event.u == event.v) throw InputError("self-loop on vertex " + std::to_string(event.u));
  count_event();
  const std::size_t half_edges = static_cast<std::size_t>(config_.pattern.half_edge_count());
  std::vector<GroupElement> xu(half_edges);
  std::vector<GroupElement> xv(half_edges);
  const std::uint32_t cu = hashes_.signature(event.u, xu);
  const std::uint32_t cv = hashes_.signature(event.v, xv);
  const std::int64_t delta = event.op == EdgeOp::Insert ? 1 : -1;
  apply_directed(cu, xu, cv, xv, delta);
  apply_directed(cv, xv, cu, xu, delta);
}

void Sketch::update(std::span<const EdgeEvent> events) {
  for (const auto& e : events) update(e);
}

void Sketch::update(const EventBlock& block) {
  thread_local std::vector<GroupElement> xs;
  thread_local std::vector<std::uint32_t> colors;
  const std::size_t half_edges = static_cast<std::size_t>(config_.pattern.half_edge_count());
  const auto vertices = block.vertices();
  xs.resize(vertices.size() * half_edges);
  colors.resize(vertices.size());
  for (std::size_t n = 0; n < vertices.size(); ++n) {
    colors[n] = hashes_.signature(vertices[n], std::span(xs).subspan(n * half_edges, half_edges));
  }
  const std::span<const GroupElement> all(xs);
  for (const auto& e : block.events()) {
    if (e.u == e.v) throw InputError("self-loop on vertex " + std::to_string(vertices[e.u]));
    count_event();
    const auto xu = all.subspan(e.u * half_edges, half_edges);
    const auto xv = all.subspan(e.v * half_edges, half_edges);
    apply_directed(colors[e.u], xu, colors[e.v], xv, e.delta);
    apply_directed(colors[e.v], xv, colors[e.u], xu, e.delta);
  }
}

ZTable Sketch::materialize() const {
  const std::uint32_t dim = config_.group.dimension();
  ZTable table(config_.pattern.edge_count(), config_.colors, dim);
  auto out = table.values();
  if (config_.algorithm == Algorithm::Accumulators) {
    std::copy(accumulators_.begin(), accumulators_.end(), out.begin());
    return table;
  }
  // Direct summation: entry l of cell = sum_j Count(j) w^(j l).
  const std::size_t cells = counters_.size() / dim;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::int64_t* count = counters_.data() + cell * dim;
    if (std::all_of(count, count + dim, [](std::int64_t c) { return c == 0; })) continue;
    for (std::uint32_t l = 0; l < dim; ++l) {
      std::complex<double> sum{};
      for (std::uint32_t j = 0; j < dim; ++j) {
        if (count[j] != 0) {
          sum += static_cast<double>(count[j]) * roots_.power(static_cast<std::uint64_t>(j) * l);
        }
      }
      out[cell * dim + l] = sum;
    }
  }
  return table;
}

Accumulator Sketch::subproduct(std::span<const std::uint32_t> colors) const {
  const Pattern& p = config_.pattern;
  if (colors.size() != static_cast<std::size_t>(p.vertex_count())) {
    throw ConfigError("color tuple must have one color per pattern vertex");
  }
  for (std::size_t a = 0; a < colors.size(); ++a) {
    if (colors[a] < 1 || colors[a] > config_.colors) throw ConfigError("tuple color outside 1..C");
    for (std::size_t b = 0; b < a; ++b) {
      if (colors[a] == colors[b]) throw ConfigError("tuple colors must be distinct");
    }
  }
  const ZTable z = materialize();
  std::vector<std::complex<double>> product(config_.group.dimension(), {1.0, 0.0});
  for (int i = 0; i < p.edge_count(); ++i) {
    const auto& e = p.edges()[static_cast<std::size_t>(i)];
    const auto cell = z.at(i, colors[e.tail - 1] - 1, colors[e.head - 1] - 1);
    for (std::size_t l = 0; l < product.size(); ++l) product[l] *= cell[l];
  }
  return Accumulator(std::move(product));
}

namespace {

// Sum over ordered tuples of distinct colors of prod_i Z_i^{c(tail_i), c(head_i)}.
// Vertices receive colors in label order; an edge's factor is applied as soon
// as both of its endpoints are colored.
class NaiveTupleSum {
 public:
  NaiveTupleSum(const Pattern& pattern, const ZTable& z)
      : pattern_(pattern),
        z_(z),
        dim_(z.dimension()),
        t_(pattern.vertex_count()),
        color_of_(static_cast<std::size_t>(t_)),
        used_(z.colors(), false),
        partial_(static_cast<std::size_t>(t_ + 1) * dim_),
        sums_(dim_),
        completes_at_(static_cast<std::size_t>(t_)) {
    for (int i = 0; i < pattern.edge_count(); ++i) {
      const auto& e = pattern.edges()[static_cast<std::size_t>(i)];
      completes_at_[static_cast<std::size_t>(std::max(e.tail, e.head) - 1)].push_back(i);
    }
  }

  std::vector<std::complex<double>> run() {
    std::fill(partial_.begin(), partial_.begin() + dim_, std::complex<double>{1.0, 0.0});
    descend(0);
    std::vector<std::complex<double>> out(dim_);
    for (std::size_t l = 0; l < dim_; ++l) out[l] = sums_[l].value();
    return out;
  }

 private:
  void descend(int vertex) {
    if (vertex == t_) {
      const auto* leaf = partial_.data() + static_cast<std::size_t>(t_) * dim_;
      for (std::size_t l = 0; l < dim_; ++l) sums_[l].add(leaf[l]);
      return;
    }
    const auto* parent = partial_.data() + static_cast<std::size_t>(vertex) * dim_;
    auto* child = partial_.data() + static_cast<std::size_t>(vertex + 1) * dim_;
    for (std::uint32_t c = 0; c < z_.colors(); ++c) {
      if (used_[c]) continue;
      used_[c] = true;
      color_of_[static_cast<std::size_t>(vertex)] = c;
      std::copy(parent, parent + dim_, child);
      bool zero = false;
      for (int i : completes_at_[static_cast<std::size_t>(vertex)]) {
        const auto& e = pattern_.edges()[static_cast<std::size_t>(i)];
        const auto cell = z_.at(i, color_of_[static_cast<std::size_t>(e.tail - 1)],
                                color_of_[static_cast<std::size_t>(e.head - 1)]);
        zero = true;
        for (std::size_t l = 0; l < dim_; ++l) {
          child[l] *= cell[l];
          if (child[l] != std::complex<double>{}) zero = false;
        }
      }
      // Products that are exactly zero stay zero; skip the subtree.
      if (!zero) descend(vertex + 1);
      used_[c] = false;
    }
  }

  const Pattern& pattern_;
  const ZTable& z_;
  std::size_t dim_;
  int t_;
  std::vector<std::uint32_t> color_of_;
  std::vector<bool> used_;
  std::vector<std::complex<double>> partial_;
  std::vector<detail::CompensatedComplexSum> sums_;
  std::vector<std::vector<int>> completes_at_;
};

std::vector<std::complex<double>> cycle4_sum(const ZTable& z) {
  const std::uint32_t colors = z.colors();
  const std::size_t dim = z.dimension();
  std::vector<detail::CompensatedComplexSum> total(dim);
  std::vector<std::complex<double>> a(dim);
  std::vector<std::complex<double>> b(dim);
  std::vector<std::complex<double>> overlap(dim);
  for (std::uint32_t c1 = 0; c1 < colors; ++c1) {
    for (std::uint32_t c3 = 0; c3 < colors; ++c3) {
      if (c1 == c3) continue;
      std::fill(a.begin(), a.end(), std::complex<double>{});
      std::fill(b.begin(), b.end(), std::complex<double>{});
      std::fill(overlap.begin(), overlap.end(), std::complex<double>{});
      for (std::uint32_t c = 0; c < colors; ++c) {
        if (c == c1 || c == c3) continue;
        const auto z1 = z.at(0, c1, c);
        const auto z2 = z.at(1, c, c3);
        const auto z3 = z.at(2, c3, c);
        const auto z4 = z.at(3, c, c1);
        for (std::size_t l = 0; l < dim; ++l) {
          const auto left = z1[l] * z2[l];
          const auto right = z3[l] * z4[l];
          a[l] += left;
          b[l] += right;
          overlap[l] += left * right;
        }
      }
      for (std::size_t l = 0; l < dim; ++l) total[l].add(a[l] * b[l] - overlap[l]);
    }
  }
  std::vector<std::complex<double>> out(dim);
  for (std::size_t l = 0; l < dim; ++l) out[l] = total[l].value();
  return out;
}

}  // namespace

Accumulator Sketch::total_product(Finalizer finalizer) const {
  if (finalizer == Finalizer::Auto) {
    finalizer = config_.pattern.is_canonical_cycle4() ? Finalizer::Cycle4 : Finalizer::Naive;
  }
  if (config_.colors < static_cast<std::uint32_t>(config_.pattern.vertex_count())) {
    throw ConfigError("no tuple of distinct colors exists with C < t");
  }
  const ZTable z = materialize();
  if (finalizer == Finalizer::Cycle4) {
    if (!config_.pattern.is_canonical_cycle4()) {
      throw ConfigError("the cycle4 finalizer needs the pattern (1,2),(2,3),(3,4),(4,1)");
    }
    return Accumulator(cycle4_sum(z));
  }
  return Accumulator(NaiveTupleSum(config_.pattern, z).run());
}

double Sketch::scale() const {
  const double colors = static_cast<double>(config_.colors);
  double s = 1.0;
  for (int j = 0; j < config_.pattern.vertex_count(); ++j) s *= colors / (colors - j);
  return s / (static_cast<double>(config_.group.dimension()) *
              static_cast<double>(config_.pattern.automorphisms()));
}

Estimate Sketch::finalize_detailed(Finalizer finalizer) const {
  const auto tr = trace(total_product(finalizer));
  const double s = scale();
  return {tr.real() * s, tr.imag() * s};
}

void Sketch::merge(const Sketch& other) {
  if (!(config_ == other.config_)) throw ConfigError("cannot merge sketches with different configs");
  for (std::size_t n = 0; n < counters_.size(); ++n) counters_[n] += other.counters_[n];
  for (std::size_t n = 0; n < accumulators_.size(); ++n) accumulators_[n] += other.accumulators_[n];
  cells_touched_ += other.cells_touched_;
  events_ += other.events_;
}

Sketch merge(const Sketch& a, const Sketch& b) {
  Sketch out = a;
  out.merge(b);
  return out;
}

Sketch Sketch::negated() const {
  Sketch out = *this;
  for (auto& c : out.counters_) c = -c;
  for (auto& z : out.accumulators_) z = -z;
  return out;
}

bool Sketch::is_fresh() const noexcept {
  return std::all_of(counters_.begin(), counters_.end(), [](std::int64_t c) { return c == 0; }) &&
         std::all_of(accumulators_.begin(), accumulators_.end(),
                     [](std::complex<double> z) { return z == std::complex<double>{}; });
}

void Sketch::load_cells(std::vector<std::int64_t> counters,
                        std::vector<std::complex<double>> accumulators, std::uint64_t events) {
  if (counters.size() != counters_.size() || accumulators.size() != accumulators_.size()) {
    throw InputError("sketch dump cell count does not match its config");
  }
  counters_ = std::move(counters);
  accumulators_ = std::move(accumulators);
  events_ = events;
}

}  // namespace motifsketch
