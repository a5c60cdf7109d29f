// motifsketch: estimate pattern counts in edge streams, plus the exact oracle,
// the parameter planner, a stream generator and a merger for ensemble dumps.

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "motifsketch/error.hpp"
#include "motifsketch/estimator.hpp"
#include "motifsketch/oracle.hpp"
#include "motifsketch/streamio.hpp"

using namespace motifsketch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

// Opens `path`, or stdin for "-".
class InputFile {
 public:
  explicit InputFile(const std::string& path) {
    if (path == "-") return;
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw InputError("cannot open '" + path + "'");
  }
  std::istream& stream() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

std::string slurp(const std::string& path) {
  InputFile in(path);
  return {std::istreambuf_iterator<char>(in.stream()), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
}

struct EstimateArgs {
  std::string pattern;
  std::string input = "-";
  std::uint32_t colors = 0;
  std::string group = "roots:4";
  std::uint32_t instances = 100;
  int algorithm = 0;  // 0: pick from the group
  std::uint64_t seed = 0;
  std::string finalizer = "auto";
  std::size_t block_size = 4096;
  bool allow_leaves = false;
  bool json = false;
  std::string dump;
};

int run_estimate(const EstimateArgs& a) {
  EnsembleConfig cfg;
  cfg.pattern = load_pattern(a.pattern, PatternOptions{a.allow_leaves});
  cfg.colors = a.colors;
  cfg.group = GroupSpec::parse(a.group);
  cfg.instances = a.instances;
  cfg.algorithm = a.algorithm == 0
                      ? (cfg.group.kind() == GroupKind::SignedPowers ? Algorithm::Counters : Algorithm::Accumulators)
                      : static_cast<Algorithm>(a.algorithm);
  cfg.finalizer = parse_finalizer(a.finalizer);
  cfg.master_seed = a.seed;
  validate(cfg.instance_config(0));
  if (a.allow_leaves) std::cerr << "warning: pattern leaves allowed; variance guarantees do not apply\n";

  Ensemble ensemble(cfg, a.block_size);
  InputFile in(a.input);
  StreamReader reader(in.stream());
  while (auto e = reader.next()) ensemble.update(*e);
  if (!a.dump.empty()) write_file(a.dump, ensemble.dump());
  const auto report = ensemble.report();
  std::cout << (a.json ? report_to_json(report) + "\n" : report_to_text(report));
  return kExitOk;
}

int run_exact(const std::string& pattern, const std::string& input, bool allow_leaves, bool json) {
  const auto p = load_pattern(pattern, PatternOptions{allow_leaves});
  InputFile in(input);
  StreamReader reader(in.stream());
  std::vector<EdgeEvent> events;
  while (auto e = reader.next()) events.push_back(*e);
  const auto g = replay(events);
  const auto count = exact_count(g, p);
  if (json) {
    const nlohmann::json j = {{"exact_count", count},
                              {"vertices", g.vertex_count()},
                              {"edges", g.edge_count()},
                              {"max_degree", g.max_degree()},
                              {"automorphisms", p.automorphisms()}};
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << count << '\n';
  }
  return kExitOk;
}

struct PlanArgs {
  double edges = 0;
  double alpha = 0;
  std::string pattern;
  double target = 0;
  std::optional<double> max_degree;
  std::uint32_t max_d = 1024;
  std::uint32_t roots = 4;
  double rel_variance = 1.0;
  std::optional<double> storage_budget;
  std::optional<double> time_budget;
  bool json = false;
};

int run_plan(const PlanArgs& a) {
  const auto p = load_pattern(a.pattern, PatternOptions{true});
  PlanInput in;
  in.directed_edges = a.edges;
  in.alpha = a.alpha;
  in.target_count = a.target;
  in.pattern_vertices = p.vertex_count();
  in.pattern_edges = p.edge_count();
  in.max_degree = a.max_degree;
  in.max_dimension = a.max_d;
  in.roots_order = a.roots;
  in.relative_variance = a.rel_variance;
  in.storage_budget = a.storage_budget;
  in.time_budget = a.time_budget;
  const auto plan = plan_parameters(in);
  std::cout << (a.json ? plan_to_json(plan) + "\n" : plan_to_text(plan));
  return kExitOk;
}

struct GenArgs {
  std::uint64_t nodes = 0;
  std::uint64_t edges = 0;
  std::uint32_t max_degree = 0;
  std::string plant;
  std::uint64_t churn = 0;
  std::uint64_t seed = 0;
  std::string output;
};

int run_gen(const GenArgs& a) {
  GenerateOptions o;
  o.nodes = a.nodes;
  o.edges = a.edges;
  o.max_degree = a.max_degree;
  o.churn_pairs = a.churn;
  o.seed = a.seed;
  if (!a.plant.empty()) {
    const auto eq = a.plant.rfind('=');
    if (eq == std::string::npos) throw ConfigError("--plant expects <pattern>=<count>");
    std::uint32_t copies = 0;
    try {
      std::size_t used = 0;
      copies = static_cast<std::uint32_t>(std::stoul(a.plant.substr(eq + 1), &used));
      if (used != a.plant.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("--plant count must be a non-negative integer");
    }
    o.plant = PlantSpec{load_pattern(a.plant.substr(0, eq), PatternOptions{true}), copies};
  }
  const auto text = serialize_stream(generate_stream(o));
  if (a.output.empty()) {
    std::cout << text;
  } else {
    write_file(a.output, text);
  }
  return kExitOk;
}

int run_merge(const std::vector<std::string>& inputs, const std::string& dump, bool json) {
  auto merged = Ensemble::load(slurp(inputs.front()));
  for (std::size_t i = 1; i < inputs.size(); ++i) {
    auto part = Ensemble::load(slurp(inputs[i]));
    merged.merge(part);
  }
  if (!dump.empty()) write_file(dump, merged.dump());
  const auto report = merged.report();
  std::cout << (json ? report_to_json(report) + "\n" : report_to_text(report));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming subgraph-count estimation with colored half-edge sketches"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "motifsketch 0.1.0");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the pattern count of an edge stream");
  estimate->add_option("--pattern", est.pattern, "Builtin pattern name or pattern file")->required();
  estimate->add_option("--input", est.input, "Edge stream file, - for stdin")->capture_default_str();
  estimate->add_option("--colors", est.colors, "Number of colors C (at least t)")->required();
  estimate->add_option("--group", est.group, "roots:<r> or matrix:<d>")->capture_default_str();
  estimate->add_option("--instances", est.instances, "Independent sketch instances")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  estimate->add_option("--algorithm", est.algorithm, "1 (accumulators) or 2 (counters, matrix only); "
                                                     "default 2 for matrix groups, else 1")
      ->check(CLI::IsMember({1, 2}));
  estimate->add_option("--seed", est.seed, "Master seed")->capture_default_str();
  estimate->add_option("--finalizer", est.finalizer, "auto, naive or cycle4")->capture_default_str();
  estimate->add_option("--block-size", est.block_size, "Events buffered per hashing batch")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  estimate->add_flag("--allow-leaves", est.allow_leaves, "Accept degree-1 pattern vertices");
  estimate->add_flag("--json", est.json, "Emit the report as JSON");
  estimate->add_option("--dump", est.dump, "Also write the ensemble state to this file");

  std::string exact_pattern, exact_input = "-";
  bool exact_leaves = false, exact_json = false;
  auto* exact = app.add_subcommand("exact", "Count pattern copies exactly (small graphs only)");
  exact->add_option("--pattern", exact_pattern, "Builtin pattern name or pattern file")->required();
  exact->add_option("--input", exact_input, "Edge stream file, - for stdin")->capture_default_str();
  exact->add_flag("--allow-leaves", exact_leaves, "Accept degree-1 pattern vertices");
  exact->add_flag("--json", exact_json, "Emit JSON");

  PlanArgs pl;
  auto* plan = app.add_subcommand("plan", "Choose colors, group and instance count");
  plan->add_option("--edges", pl.edges, "Directed edge count m (twice the undirected count)")->required();
  plan->add_option("--alpha", pl.alpha, "Exponent with max degree <= m^(1/2 - alpha)")->required();
  plan->add_option("--pattern", pl.pattern, "Builtin pattern name or pattern file")->required();
  plan->add_option("--target-count", pl.target, "Lower-bound guess for the count")->required();
  plan->add_option("--max-degree", pl.max_degree, "Known maximum degree, checked against the bound");
  plan->add_option("--max-d", pl.max_d, "Largest matrix dimension")->capture_default_str();
  plan->add_option("--roots", pl.roots, "r when a roots-of-unity group is chosen")->capture_default_str();
  plan->add_option("--rel-variance", pl.rel_variance, "Target variance relative to count^2")
      ->capture_default_str();
  plan->add_option("--storage-budget", pl.storage_budget, "Warn above this many sketch cells");
  plan->add_option("--time-budget", pl.time_budget, "Warn above this many cell updates per edge");
  plan->add_flag("--json", pl.json, "Emit JSON");

  GenArgs gn;
  auto* gen = app.add_subcommand("gen", "Generate a degree-capped random edge stream");
  gen->add_option("--nodes", gn.nodes, "Vertices 1..n for random edges")->required();
  gen->add_option("--edges", gn.edges, "Random undirected edges")->required();
  gen->add_option("--max-degree", gn.max_degree, "Degree cap on every prefix")->required();
  gen->add_option("--plant", gn.plant, "<pattern>=<count> copies on fresh vertices");
  gen->add_option("--churn", gn.churn, "Insert/delete pairs that cancel")->capture_default_str();
  gen->add_option("--seed", gn.seed, "Generator seed")->capture_default_str();
  gen->add_option("--output", gn.output, "Output file (default stdout)");

  std::vector<std::string> merge_inputs;
  std::string merge_dump;
  bool merge_json = false;
  auto* merge = app.add_subcommand("merge", "Merge ensemble dumps built over parts of one stream");
  merge->add_option("--inputs", merge_inputs, "Dump files written by estimate --dump")->required();
  merge->add_option("--dump", merge_dump, "Write the merged ensemble state to this file");
  merge->add_flag("--json", merge_json, "Emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*estimate) return run_estimate(est);
    if (*exact) return run_exact(exact_pattern, exact_input, exact_leaves, exact_json);
    if (*plan) return run_plan(pl);
    if (*gen) return run_gen(gn);
    if (*merge) return run_merge(merge_inputs, merge_dump, merge_json);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
