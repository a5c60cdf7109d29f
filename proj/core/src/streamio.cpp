#include "motifsketch/streamio.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "motifsketch/error.hpp"
#include "text_util.hpp"

namespace motifsketch {

std::optional<EdgeEvent> parse_event_line(std::string_view line, std::size_t line_number) {
  auto fields = detail::split_fields(detail::strip_comment(line));
  if (fields.empty()) return std::nullopt;

  EdgeOp op = EdgeOp::Insert;
  std::size_t first = 0;
  if (fields[0] == "+" || fields[0] == "-") {
    op = fields[0] == "+" ? EdgeOp::Insert : EdgeOp::Delete;
    first = 1;
  }
  if (fields.size() - first != 2) {
    throw FormatError("expected `[+|-] u v`", line_number);
  }
  const auto u = detail::parse_int<VertexId>(fields[first], line_number, "vertex id");
  const auto v = detail::parse_int<VertexId>(fields[first + 1], line_number, "vertex id");
  if (u == v) throw FormatError("self-loop on vertex " + std::to_string(u), line_number);
  return EdgeEvent{op, u, v};
}

std::optional<EdgeEvent> StreamReader::next() {
  while (std::getline(in_, buffer_)) {
    ++line_;
    if (auto e = parse_event_line(buffer_, line_)) return e;
  }
  if (in_.bad()) throw InputError("I/O error while reading edge stream");
  return std::nullopt;
}

std::vector<EdgeEvent> parse_stream(std::string_view text) {
  std::vector<EdgeEvent> out;
  detail::LineReader lines(text);
  while (lines.next()) {
    if (auto e = parse_event_line(lines.current(), lines.line_number())) out.push_back(*e);
  }
  return out;
}

std::vector<EdgeEvent> read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge stream '" + path + "'");
  StreamReader reader(in);
  std::vector<EdgeEvent> out;
  while (auto e = reader.next()) out.push_back(*e);
  return out;
}

std::string to_text(const EdgeEvent& event) {
  return std::string(event.op == EdgeOp::Insert ? "+ " : "- ") + std::to_string(event.u) + ' ' +
         std::to_string(event.v);
}

std::string serialize_stream(std::span<const EdgeEvent> events) {
  std::string out;
  out.reserve(events.size() * 16);
  for (const auto& e : events) {
    out += to_text(e);
    out += '\n';
  }
  return out;
}

StreamStats stream_stats(std::span<const EdgeEvent> events) {
  StreamStats stats;
  for (const auto& e : events) stats.add(e);
  return stats;
}

namespace {

std::uint64_t edge_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return mix64(u) ^ (v * 0x9e3779b97f4a7c15ULL);
}

struct PairHash {
  std::size_t operator()(const std::pair<VertexId, VertexId>& p) const noexcept {
    return static_cast<std::size_t>(edge_key(p.first, p.second));
  }
};

std::pair<VertexId, VertexId> ordered(VertexId u, VertexId v) {
  return u < v ? std::pair{u, v} : std::pair{v, u};
}

// Unbiased draw from [0, bound).
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<EdgeEvent> generate_stream(const GenerateOptions& opt) {
  if (opt.edges > 0 && opt.nodes < 2) throw ConfigError("need at least two nodes for random edges");
  const long double cap_limit = static_cast<long double>(opt.nodes) * opt.max_degree / 2.0L;
  const long double simple_limit = static_cast<long double>(opt.nodes) * (opt.nodes - 1) / 2.0L;
  if (static_cast<long double>(opt.edges) > std::min(cap_limit, simple_limit)) {
    throw ConfigError("cannot place " + std::to_string(opt.edges) + " edges on " +
                      std::to_string(opt.nodes) + " nodes with max degree " +
                      std::to_string(opt.max_degree));
  }
  if (opt.plant) {
    int pattern_max_degree = 0;
    for (int b = 1; b <= opt.plant->pattern.vertex_count(); ++b) {
      pattern_max_degree = std::max(pattern_max_degree, opt.plant->pattern.degree(b));
    }
    if (opt.plant->copies > 0 && static_cast<std::uint32_t>(pattern_max_degree) > opt.max_degree) {
      throw ConfigError("planted pattern has a vertex of degree above the degree cap");
    }
  }

  std::mt19937_64 rng(derive_seed(opt.seed, 1));
  std::unordered_set<std::pair<VertexId, VertexId>, PairHash> present;
  std::unordered_map<VertexId, std::uint32_t> degree;
  std::vector<EdgeEvent> base;
  base.reserve(opt.edges);

  const std::uint64_t max_attempts = 1000 * opt.edges + 1'000'000;
  std::uint64_t attempts = 0;
  while (base.size() < opt.edges) {
    if (++attempts > max_attempts) {
      throw ConfigError("gave up placing random edges under the degree cap after " +
                        std::to_string(max_attempts) + " attempts");
    }
    const VertexId u = 1 + draw_below(rng, opt.nodes);
    const VertexId v = 1 + draw_below(rng, opt.nodes);
    if (u == v || degree[u] >= opt.max_degree || degree[v] >= opt.max_degree) continue;
    if (!present.insert(ordered(u, v)).second) continue;
    ++degree[u];
    ++degree[v];
    base.push_back(insert_edge(u, v));
  }

  if (opt.plant) {
    const Pattern& p = opt.plant->pattern;
    VertexId next_fresh = opt.nodes + 1;
    for (std::uint32_t copy = 0; copy < opt.plant->copies; ++copy) {
      const VertexId offset = next_fresh - 1;
      for (const auto& e : p.edges()) {
        const VertexId u = offset + static_cast<VertexId>(e.tail);
        const VertexId v = offset + static_cast<VertexId>(e.head);
        present.insert(ordered(u, v));
        ++degree[u];
        ++degree[v];
        base.push_back(insert_edge(u, v));
      }
      next_fresh += static_cast<VertexId>(p.vertex_count());
    }
  }

  if (opt.churn_pairs == 0) return base;

  // Churn edges avoid the final edge set, and endpoints keep
  // final degree + live churn edges below the cap, so every prefix stays
  // simple and within the cap.
  const VertexId vertex_span = opt.nodes + (opt.plant ? static_cast<VertexId>(
                                                          opt.plant->copies *
                                                          opt.plant->pattern.vertex_count())
                                                    : 0);
  if (vertex_span < 2) throw ConfigError("churn needs at least two vertices");
  std::mt19937_64 churn_rng(derive_seed(opt.seed, 2));
  std::unordered_set<std::pair<VertexId, VertexId>, PairHash> churn_used;
  struct Placement {
    std::uint64_t position;
    std::uint64_t order;
    EdgeEvent event;
  };
  std::vector<Placement> placements;
  std::uint64_t order = 0;
  attempts = 0;
  const std::uint64_t churn_attempts = 1000 * opt.churn_pairs + 1'000'000;
  while (placements.size() < 2 * opt.churn_pairs) {
    if (++attempts > churn_attempts) throw ConfigError("could not place churn pairs under the degree cap");
    const VertexId u = 1 + draw_below(churn_rng, vertex_span);
    const VertexId v = 1 + draw_below(churn_rng, vertex_span);
    if (u == v || degree[u] >= opt.max_degree || degree[v] >= opt.max_degree) continue;
    const auto key = ordered(u, v);
    if (present.contains(key) || !churn_used.insert(key).second) continue;
    ++degree[u];
    ++degree[v];
    std::uint64_t a = draw_below(churn_rng, base.size() + 1);
    std::uint64_t b = draw_below(churn_rng, base.size() + 1);
    if (a > b) std::swap(a, b);
    placements.push_back({a, order++, insert_edge(u, v)});
    placements.push_back({b, order++, delete_edge(u, v)});
  }
  std::stable_sort(placements.begin(), placements.end(), [](const Placement& x, const Placement& y) {
    return x.position != y.position ? x.position < y.position : x.order < y.order;
  });

  std::vector<EdgeEvent> out;
  out.reserve(base.size() + placements.size());
  std::size_t next = 0;
  for (std::uint64_t pos = 0; pos <= base.size(); ++pos) {
    while (next < placements.size() && placements[next].position == pos) {
      out.push_back(placements[next++].event);
    }
    if (pos < base.size()) out.push_back(base[pos]);
  }
  return out;
}

}  // namespace motifsketch
