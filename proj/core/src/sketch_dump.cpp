#include "json.hpp"

#include "dump_format.hpp"
#include "motifsketch/error.hpp"
#include "motifsketch/sketch.hpp"

namespace motifsketch {
namespace detail {

nlohmann::json config_to_json(const SketchConfig& c) {
  return {
      {"pattern", c.pattern.to_text()},
      {"allow_leaves", c.pattern.allows_leaves()},
      {"group", c.group.to_string()},
      {"colors", c.colors},
      {"algorithm", static_cast<int>(c.algorithm)},
      {"seed", c.seed},
  };
}

SketchConfig config_from_json(const nlohmann::json& j) {
  const int algorithm = j.at("algorithm").get<int>();
  if (algorithm != 1 && algorithm != 2) throw InputError("sketch dump: algorithm must be 1 or 2");
  return SketchConfig{
      Pattern::parse(j.at("pattern").get<std::string>(),
                     PatternOptions{j.value("allow_leaves", false)}),
      GroupSpec::parse(j.at("group").get<std::string>()),
      j.at("colors").get<std::uint32_t>(),
      static_cast<Algorithm>(algorithm),
      j.at("seed").get<std::uint64_t>(),
  };
}

nlohmann::json cells_to_json(const Sketch& sketch) {
  if (sketch.hashes().has_overrides()) {
    throw ConfigError("sketches built with hash overrides cannot be dumped");
  }
  nlohmann::json out = {{"events", sketch.events()}};
  if (sketch.config().algorithm == Algorithm::Counters) {
    out["counters"] = std::vector<std::int64_t>(sketch.counters().begin(), sketch.counters().end());
  } else {
    // Interleaved real, imaginary.
    std::vector<double> flat;
    flat.reserve(2 * sketch.accumulators().size());
    for (const auto& z : sketch.accumulators()) {
      flat.push_back(z.real());
      flat.push_back(z.imag());
    }
    out["accumulators"] = std::move(flat);
  }
  return out;
}

void cells_from_json(const nlohmann::json& j, Sketch& sketch) {
  std::vector<std::int64_t> counters;
  std::vector<std::complex<double>> accumulators;
  if (sketch.config().algorithm == Algorithm::Counters) {
    counters = j.at("counters").get<std::vector<std::int64_t>>();
  } else {
    const auto flat = j.at("accumulators").get<std::vector<double>>();
    if (flat.size() % 2 != 0) throw InputError("sketch dump: odd accumulator length");
    accumulators.reserve(flat.size() / 2);
    for (std::size_t n = 0; n < flat.size(); n += 2) accumulators.emplace_back(flat[n], flat[n + 1]);
  }
  sketch.load_cells(std::move(counters), std::move(accumulators), j.at("events").get<std::uint64_t>());
}

}  // namespace detail

std::string dump_sketch(const Sketch& sketch) {
  nlohmann::json j = {
      {"format", detail::kSketchFormat},
      {"version", detail::kDumpVersion},
      {"config", detail::config_to_json(sketch.config())},
      {"state", detail::cells_to_json(sketch)},
  };
  return j.dump();
}

Sketch load_sketch(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != detail::kSketchFormat) {
      throw InputError("not a sketch dump");
    }
    if (j.at("version").get<int>() != detail::kDumpVersion) {
      throw InputError("unsupported sketch dump version");
    }
    Sketch sketch(detail::config_from_json(j.at("config")));
    detail::cells_from_json(j.at("state"), sketch);
    return sketch;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed sketch dump: ") + e.what());
  }
}

}  // namespace motifsketch
