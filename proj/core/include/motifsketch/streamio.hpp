#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "motifsketch/hashing.hpp"
#include "motifsketch/pattern.hpp"

namespace motifsketch {

enum class EdgeOp : std::int8_t { Insert = 1, Delete = -1 };

/// One turnstile stream element on the undirected host graph.
struct EdgeEvent {
  EdgeOp op = EdgeOp::Insert;
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

inline EdgeEvent insert_edge(VertexId u, VertexId v) { return {EdgeOp::Insert, u, v}; }
inline EdgeEvent delete_edge(VertexId u, VertexId v) { return {EdgeOp::Delete, u, v}; }

/// Reads the edge-stream text format one event at a time.
///
/// One event per line: an optional `+` (insert, the default) or `-`
/// (delete) followed by two decimal vertex ids. `#` starts a comment.
class StreamReader {
 public:
  explicit StreamReader(std::istream& in) : in_(in) {}

  /// Next event, or nullopt at end of input. Throws FormatError.
  std::optional<EdgeEvent> next();

  std::size_t line_number() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::string buffer_;
  std::size_t line_ = 0;
};

/// Parses one line; nullopt for blank and comment lines.
std::optional<EdgeEvent> parse_event_line(std::string_view line, std::size_t line_number);

std::vector<EdgeEvent> parse_stream(std::string_view text);
std::vector<EdgeEvent> read_stream_file(const std::string& path);

std::string to_text(const EdgeEvent& event);
std::string serialize_stream(std::span<const EdgeEvent> events);

struct StreamStats {
  std::uint64_t events = 0;
  std::uint64_t inserts = 0;
  std::uint64_t deletes = 0;

  void add(const EdgeEvent& e) {
    ++events;
    (e.op == EdgeOp::Insert ? inserts : deletes) += 1;
  }
  /// Net undirected edges, assuming a consistent stream.
  std::int64_t net_edges() const {
    return static_cast<std::int64_t>(inserts) - static_cast<std::int64_t>(deletes);
  }
  /// Each undirected edge counts as two directed edges.
  std::int64_t directed_edges() const { return 2 * net_edges(); }

  friend bool operator==(const StreamStats&, const StreamStats&) = default;
};

StreamStats stream_stats(std::span<const EdgeEvent> events);

struct PlantSpec {
  Pattern pattern;
  std::uint32_t copies = 0;
};

struct GenerateOptions {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;  // undirected random edges
  std::uint32_t max_degree = 0;
  std::optional<PlantSpec> plant;
  /// Insert/delete pairs of non-edges mixed into the stream; they cancel.
  std::uint64_t churn_pairs = 0;
  std::uint64_t seed = 0;
};

/// Random simple graph on vertices 1..nodes with every degree capped at
/// max_degree on every prefix of the stream. Planted copies use fresh vertex
/// ids above `nodes`. The random part and the churn use separate derived
/// seeds, so toggling churn leaves the net graph unchanged.
std::vector<EdgeEvent> generate_stream(const GenerateOptions& options);

}  // namespace motifsketch
