#include "motifsketch/oracle.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "motifsketch/error.hpp"

namespace motifsketch {

void MaterializedGraph::insert(VertexId u, VertexId v) {
  if (u == v) throw InputError("self-loop on vertex " + std::to_string(u));
  if (has_edge(u, v)) {
    throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " inserted twice");
  }
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
  ++edges_;
}

void MaterializedGraph::erase(VertexId u, VertexId v) {
  if (!has_edge(u, v)) {
    throw InputError("edge " + std::to_string(u) + "-" + std::to_string(v) + " deleted while absent");
  }
  auto drop = [this](VertexId a, VertexId b) {
    auto& list = adjacency_[a];
    list.erase(std::find(list.begin(), list.end(), b));
    if (list.empty()) adjacency_.erase(a);
  };
  drop(u, v);
  drop(v, u);
  --edges_;
}

bool MaterializedGraph::has_edge(VertexId u, VertexId v) const {
  const auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return false;
  return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
}

std::uint32_t MaterializedGraph::degree(VertexId v) const {
  const auto it = adjacency_.find(v);
  return it == adjacency_.end() ? 0 : static_cast<std::uint32_t>(it->second.size());
}

std::uint32_t MaterializedGraph::max_degree() const {
  std::uint32_t best = 0;
  for (const auto& [v, list] : adjacency_) best = std::max(best, static_cast<std::uint32_t>(list.size()));
  return best;
}

std::vector<VertexId> MaterializedGraph::vertices() const {
  std::vector<VertexId> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, list] : adjacency_) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

std::span<const VertexId> MaterializedGraph::neighbors(VertexId v) const {
  const auto it = adjacency_.find(v);
  if (it == adjacency_.end()) return {};
  return it->second;
}

MaterializedGraph replay(std::span<const EdgeEvent> events) {
  MaterializedGraph g;
  for (std::size_t n = 0; n < events.size(); ++n) {
    try {
      if (events[n].op == EdgeOp::Insert) {
        g.insert(events[n].u, events[n].v);
      } else {
        g.erase(events[n].u, events[n].v);
      }
    } catch (const InputError& e) {
      throw InputError("event " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  return g;
}

namespace {

// Backtracking enumerator of injective homomorphisms on a compacted copy of
// the host graph.
class HomomorphismCounter {
 public:
  HomomorphismCounter(const MaterializedGraph& graph, const Pattern& pattern,
                      std::optional<std::vector<std::uint32_t>> host_colors,
                      std::span<const std::uint32_t> tuple)
      : pattern_(pattern), tuple_(tuple.begin(), tuple.end()) {
    if (graph.vertex_count() > kOracleMaxVertices) {
      throw LimitError("exact counting is limited to " + std::to_string(kOracleMaxVertices) +
                       " vertices; graph has " + std::to_string(graph.vertex_count()));
    }
    const auto ids = graph.vertices();
    std::unordered_map<VertexId, std::uint32_t> index;
    index.reserve(ids.size());
    for (std::uint32_t n = 0; n < ids.size(); ++n) index.emplace(ids[n], n);
    adjacency_.resize(ids.size());
    for (std::uint32_t n = 0; n < ids.size(); ++n) {
      for (VertexId w : graph.neighbors(ids[n])) adjacency_[n].push_back(index.at(w));
      std::sort(adjacency_[n].begin(), adjacency_[n].end());
    }
    colors_ = std::move(host_colors);
    build_order();
  }

  std::uint64_t run() {
    image_.assign(static_cast<std::size_t>(pattern_.vertex_count()), 0);
    used_.assign(adjacency_.size(), false);
    count_ = 0;
    extend(0);
    return count_;
  }

 private:
  void build_order() {
    const int t = pattern_.vertex_count();
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(t), std::vector<bool>(t, false));
    for (const auto& e : pattern_.edges()) {
      adj[e.tail - 1][e.head - 1] = true;
      adj[e.head - 1][e.tail - 1] = true;
    }
    std::vector<bool> placed(static_cast<std::size_t>(t), false);
    for (int step = 0; step < t; ++step) {
      int best = -1;
      int best_links = -1;
      for (int b = 0; b < t; ++b) {
        if (placed[b]) continue;
        int links = 0;
        for (int o : order_) links += adj[b][o];
        if (step > 0 && links == 0) continue;  // keep the order connected
        if (best < 0 || links > best_links ||
            (links == best_links && pattern_.degree(b + 1) > pattern_.degree(best + 1))) {
          best = b;
          best_links = links;
        }
      }
      placed[best] = true;
      std::vector<int> earlier;
      for (int o : order_) {
        if (adj[best][o]) earlier.push_back(o);
      }
      order_.push_back(best);
      earlier_neighbors_.push_back(std::move(earlier));
    }
  }

  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    return std::binary_search(adjacency_[a].begin(), adjacency_[a].end(), b);
  }

  bool admissible(int b, std::uint32_t host, std::size_t step) const {
    if (used_[host]) return false;
    if (adjacency_[host].size() < static_cast<std::size_t>(pattern_.degree(b + 1))) return false;
    if (colors_ && (*colors_)[host] != tuple_[static_cast<std::size_t>(b)]) return false;
    for (int o : earlier_neighbors_[step]) {
      if (!adjacent(host, image_[static_cast<std::size_t>(o)])) return false;
    }
    return true;
  }

  void extend(std::size_t step) {
    if (step == order_.size()) {
      ++count_;
      return;
    }
    const int b = order_[step];
    auto place = [&](std::uint32_t host) {
      if (!admissible(b, host, step)) return;
      used_[host] = true;
      image_[static_cast<std::size_t>(b)] = host;
      extend(step + 1);
      used_[host] = false;
    };
    if (step == 0) {
      for (std::uint32_t host = 0; host < adjacency_.size(); ++host) place(host);
    } else {
      const std::uint32_t anchor = image_[static_cast<std::size_t>(earlier_neighbors_[step].front())];
      for (std::uint32_t host : adjacency_[anchor]) place(host);
    }
  }

  const Pattern& pattern_;
  std::vector<std::uint32_t> tuple_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::optional<std::vector<std::uint32_t>> colors_;
  std::vector<int> order_;
  std::vector<std::vector<int>> earlier_neighbors_;
  std::vector<std::uint32_t> image_;
  std::vector<bool> used_;
  std::uint64_t count_ = 0;
};

}  // namespace

std::uint64_t injective_homomorphisms(const MaterializedGraph& graph, const Pattern& pattern) {
  return HomomorphismCounter(graph, pattern, std::nullopt, {}).run();
}

std::uint64_t exact_count(const MaterializedGraph& graph, const Pattern& pattern) {
  const std::uint64_t homs = injective_homomorphisms(graph, pattern);
  // Every copy is hit exactly auto(H) times.
  return homs / pattern.automorphisms();
}

std::uint64_t exact_compatible_count(const MaterializedGraph& graph, const Pattern& pattern,
                                     const Coloring& coloring, std::span<const std::uint32_t> tuple) {
  if (tuple.size() != static_cast<std::size_t>(pattern.vertex_count())) {
    throw ConfigError("color tuple must have one color per pattern vertex");
  }
  for (std::size_t a = 0; a < tuple.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (tuple[a] == tuple[b]) throw ConfigError("tuple colors must be distinct");
    }
  }
  const auto ids = graph.vertices();
  std::vector<std::uint32_t> colors;
  colors.reserve(ids.size());
  for (VertexId v : ids) colors.push_back(coloring(v));
  return HomomorphismCounter(graph, pattern, std::move(colors), tuple).run();
}

}  // namespace motifsketch
