#include <iomanip>
#include <sstream>

#include "dump_format.hpp"
#include "json.hpp"
#include "motifsketch/error.hpp"
#include "motifsketch/estimator.hpp"

namespace motifsketch {
namespace {

nlohmann::json ensemble_config_json(const EnsembleConfig& c) {
  return {
      {"pattern", c.pattern.to_text()},
      {"allow_leaves", c.pattern.allows_leaves()},
      {"colors", c.colors},
      {"group", c.group.to_string()},
      {"instances", c.instances},
      {"algorithm", static_cast<int>(c.algorithm)},
      {"finalizer", to_string(c.finalizer)},
      {"master_seed", c.master_seed},
  };
}

EnsembleConfig ensemble_config_from_json(const nlohmann::json& j) {
  const int algorithm = j.at("algorithm").get<int>();
  if (algorithm != 1 && algorithm != 2) throw InputError("ensemble dump: algorithm must be 1 or 2");
  return EnsembleConfig{
      Pattern::parse(j.at("pattern").get<std::string>(), PatternOptions{j.value("allow_leaves", false)}),
      j.at("colors").get<std::uint32_t>(),
      GroupSpec::parse(j.at("group").get<std::string>()),
      j.at("instances").get<std::uint32_t>(),
      static_cast<Algorithm>(algorithm),
      parse_finalizer(j.at("finalizer").get<std::string>()),
      j.at("master_seed").get<std::uint64_t>(),
  };
}

nlohmann::json stream_json(const StreamStats& s) {
  return {
      {"events", s.events},
      {"inserts", s.inserts},
      {"deletes", s.deletes},
      {"net_undirected_edges", s.net_edges()},
      {"directed_edges", s.directed_edges()},
  };
}

}  // namespace

std::string report_to_json(const EstimateReport& r) {
  nlohmann::json config = ensemble_config_json(r.config);
  config["instance_seeds"] = r.instance_seeds;
  config["stream"] = stream_json(r.stream);
  const nlohmann::json j = {
      {"mean_estimate", r.mean_estimate},
      {"per_instance_estimates", r.per_instance_estimates},
      {"standard_error", r.standard_error},
      {"imaginary_diagnostic", r.imaginary_diagnostic},
      {"config", std::move(config)},
  };
  return j.dump(2);
}

std::string report_to_text(const EstimateReport& r) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "mean_estimate:        " << r.mean_estimate << '\n'
      << "standard_error:       " << r.standard_error << '\n'
      << "imaginary_diagnostic: " << r.imaginary_diagnostic << '\n'
      << "instances:            " << r.config.instances << '\n'
      << "colors:               " << r.config.colors << '\n'
      << "group:                " << r.config.group.to_string() << '\n'
      << "algorithm:            " << static_cast<int>(r.config.algorithm) << '\n'
      << "finalizer:            " << to_string(r.config.finalizer) << '\n'
      << "master_seed:          " << r.config.master_seed << '\n'
      << "stream:               " << r.stream.events << " events (" << r.stream.inserts
      << " inserts, " << r.stream.deletes << " deletes), m = " << r.stream.directed_edges()
      << " directed edges\n";
  return out.str();
}

std::string plan_to_json(const Plan& p) {
  const nlohmann::json j = {
      {"colors", p.colors},
      {"group", p.group.to_string()},
      {"instances", p.instances},
      {"color_bound", p.color_bound},
      {"instance_value", p.instance_value},
      {"warnings", p.warnings},
  };
  return j.dump(2);
}

std::string plan_to_text(const Plan& p) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "colors:         " << p.colors << '\n'
      << "group:          " << p.group.to_string() << '\n'
      << "instances:      " << p.instances << '\n'
      << "color_bound:    " << p.color_bound << '\n'
      << "instance_value: " << p.instance_value << '\n';
  for (const auto& w : p.warnings) out << "warning: " << w << '\n';
  return out.str();
}

std::string Ensemble::dump() {
  flush();
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : instances_) states.push_back(detail::cells_to_json(s));
  const nlohmann::json j = {
      {"format", detail::kEnsembleFormat},
      {"version", detail::kDumpVersion},
      {"config", ensemble_config_json(config_)},
      {"stream", {{"events", stats_.events}, {"inserts", stats_.inserts}, {"deletes", stats_.deletes}}},
      {"states", std::move(states)},
  };
  return j.dump();
}

Ensemble Ensemble::load(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != detail::kEnsembleFormat) {
      throw InputError("not an ensemble dump");
    }
    if (j.at("version").get<int>() != detail::kDumpVersion) {
      throw InputError("unsupported ensemble dump version");
    }
    Ensemble ensemble(ensemble_config_from_json(j.at("config")));
    const auto& states = j.at("states");
    if (states.size() != ensemble.instances_.size()) {
      throw InputError("ensemble dump has " + std::to_string(states.size()) + " states for " +
                       std::to_string(ensemble.instances_.size()) + " instances");
    }
    for (std::size_t i = 0; i < states.size(); ++i) {
      detail::cells_from_json(states[i], ensemble.instances_[i]);
    }
    const auto& stream = j.at("stream");
    ensemble.stats_.events = stream.at("events").get<std::uint64_t>();
    ensemble.stats_.inserts = stream.at("inserts").get<std::uint64_t>();
    ensemble.stats_.deletes = stream.at("deletes").get<std::uint64_t>();
    return ensemble;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed ensemble dump: ") + e.what());
  }
}

}  // namespace motifsketch
