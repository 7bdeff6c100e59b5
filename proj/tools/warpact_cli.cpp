// Command-line front end: generate | stats | compare | experiment.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "warpact/warpact.hpp"

namespace {

using namespace warpact;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(parse(item));
  return out;
}

struct GenerateArgs {
  std::string model = "wp";
  std::string rule = "kr";
  std::string seed_kind = "matching";
  std::size_t nodes = 0;
  std::optional<std::size_t> edges;
  std::optional<double> mean_degree;
  double rewire = 0.1;
  std::uint64_t rng_seed = 0;
  std::string out;
};

ModelSpec to_spec(const GenerateArgs& a) {
  ModelSpec s;
  auto model = parse_model(a.model);
  auto rule = parse_rule(a.rule);
  auto seed = parse_seed_kind(a.seed_kind);
  if (!model) throw UsageError("unknown --model '" + a.model + "' (expected wp, er, ba or ws)");
  if (!rule) throw UsageError("unknown --rule '" + a.rule + "' (expected rr, kk, kr or ki)");
  if (!seed) throw UsageError("unknown --seed-kind '" + a.seed_kind + "' (expected matching, er or tree)");
  s.model = *model;
  s.rule = *rule;
  s.seed = *seed;
  s.nodes = a.nodes;
  s.edges = a.edges;
  s.mean_degree = a.mean_degree;
  s.rewire = a.rewire;
  s.rng_seed = a.rng_seed;
  return s;
}

int cmd_generate(const GenerateArgs& a) {
  const ModelSpec spec = to_spec(a);
  const StaticGraph g = StaticGraph::from(generate(spec));
  std::size_t isolated = 0;
  for (NodeId u = 0; u < g.node_count(); ++u) isolated += g.degree(u) == 0;
  const std::string summary =
      fmt::format("n={} m={} lcc={:.4f}", g.node_count(), g.edge_count(), lcc_fraction(g));
  if (isolated)
    std::cerr << fmt::format("warning: {} isolated nodes cannot be written to an edge list\n", isolated);
  if (a.out.empty()) {
    write_edge_list(std::cout, g);
    std::cerr << summary << '\n';
  } else {
    save_edge_list(g, a.out);
    std::cout << summary << '\n';
  }
  return 0;
}

struct StatsArgs {
  std::string path;
  std::string out;
  std::size_t modularity_runs = 100;
  bool simple_degrees = false;
  std::uint64_t rng_seed = 0;
};

int cmd_stats(const StatsArgs& a) {
  const LoadedGraph loaded = load_and_clean(a.path);
  const StaticGraph& g = loaded.graph;
  StatsOptions opt;
  opt.modularity_runs = a.modularity_runs;
  opt.simple_degrees = a.simple_degrees;
  opt.rng_seed = a.rng_seed;
  const DistanceProfile profile = DistanceProfile::compute(g);
  const StatsReport report = compute_stats(g, profile, opt);
  std::cout << to_json(report).dump(2) << '\n';
  if (!a.out.empty()) {
    const std::filesystem::path dir(a.out);
    save_stats_json(report, dir / "stats.json");
    save_degree_csv(degree_distribution(g, !a.simple_degrees), dir / "degree.csv");
    save_clustering_csv(clustering_by_degree(g.simple()), dir / "clustering.csv");
    save_distance_csv(distance_statistics(profile), dir / "distance.csv");
  }
  return 0;
}

struct CompareArgs {
  std::string a, b;
  std::string portraits;
};

int cmd_compare(const CompareArgs& args) {
  const StaticGraph ga = load_and_clean(args.a).graph;
  const StaticGraph gb = load_and_clean(args.b).graph;
  const DistanceProfile pa = DistanceProfile::compute(ga);
  const DistanceProfile pb = DistanceProfile::compute(gb);
  const Portrait qa(pa), qb(pb);
  nlohmann::ordered_json j;
  j["d_measure"] = d_measure(pa, pb).value;
  j["portrait_divergence"] = portrait_divergence(qa, qb).value;
  if (!args.portraits.empty()) {
    const std::filesystem::path dir(args.portraits);
    save_portrait_csv(qa, dir / "portrait_a.csv");
    save_portrait_csv(qb, dir / "portrait_b.csv");
  }
  std::cout << j.dump(2) << '\n';
  return 0;
}

struct ExperimentArgs {
  std::string kind;
  std::size_t realizations = 0;
  std::string target;
  std::string out = "experiment";
  std::uint64_t rng_seed = 0;
  std::size_t nodes = 10000;
  double mean_degree = 10.0;
  std::size_t evolution_nodes = 2500;
  std::string k_grid;
  std::string n_grid;
  std::string models;
  std::string best_fit_rule = "kr";
  std::size_t modularity_runs = 100;
  double rewire = 0.1;
  unsigned threads = 0;
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentPlan plan;
  auto kind = parse_experiment_kind(a.kind);
  if (!kind) throw UsageError("unknown --kind '" + a.kind + "' (expected distributions, evolution, comparison or bestfit)");
  plan.kind = *kind;
  plan.realizations = a.realizations;
  plan.out_dir = a.out;
  plan.base_seed = a.rng_seed;
  plan.nodes = a.nodes;
  plan.mean_degree = a.mean_degree;
  plan.evolution_nodes = a.evolution_nodes;
  if (!a.target.empty()) plan.target = a.target;
  if (!a.k_grid.empty())
    plan.degree_grid = parse_list<double>(a.k_grid, [](const std::string& s) { return std::stod(s); });
  if (!a.n_grid.empty())
    plan.node_grid = parse_list<std::size_t>(a.n_grid, [](const std::string& s) { return std::stoul(s); });
  if (!a.models.empty())
    plan.models = parse_list<ModelVariant>(a.models, [](const std::string& s) {
      auto v = parse_variant(s);
      if (!v) throw UsageError("unknown model '" + s + "' in --models");
      return *v;
    });
  auto rule = parse_rule(a.best_fit_rule);
  if (!rule) throw UsageError("unknown --best-fit-rule '" + a.best_fit_rule + "'");
  plan.best_fit_rule = *rule;
  plan.modularity_runs = a.modularity_runs;
  plan.rewire = a.rewire;
  if (a.threads) plan.threads = a.threads;
  if ((plan.kind == ExperimentKind::Comparison || plan.kind == ExperimentKind::BestFitTable) && !plan.target)
    throw UsageError("--target is required for the comparison and bestfit experiments");
  run_experiment(plan, std::cerr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shrinking-network generator, network statistics and graph comparison"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a network and write it as an edge list");
  generate->add_option("--model", gen.model, "wp, er, ba or ws")->capture_default_str();
  generate->add_option("--rule", gen.rule, "War pact selection rule: rr, kk, kr or ki")->capture_default_str();
  generate->add_option("--seed-kind", gen.seed_kind, "War pact seed: matching, er or tree")->capture_default_str();
  generate->add_option("-n", gen.nodes, "Number of nodes")->required();
  auto* edges_opt = generate->add_option("-m", gen.edges, "Number of edges");
  generate->add_option("-k", gen.mean_degree, "Average degree")->excludes(edges_opt);
  generate->add_option("--rewire", gen.rewire, "Watts-Strogatz rewiring probability")->capture_default_str();
  generate->add_option("--rng-seed", gen.rng_seed, "Random seed")->capture_default_str();
  generate->add_option("--out", gen.out, "Output edge list (stdout if omitted)");

  StatsArgs st;
  auto* stats = app.add_subcommand("stats", "Compute network statistics of an edge list");
  stats->add_option("path", st.path, "Edge list")->required();
  stats->add_option("--out", st.out, "Directory for stats.json and distribution CSVs");
  stats->add_option("--modularity-runs", st.modularity_runs, "Community detection runs")->capture_default_str();
  stats->add_flag("--simple-degrees", st.simple_degrees, "Ignore edge multiplicity in degree statistics");
  stats->add_option("--rng-seed", st.rng_seed, "Random seed")->capture_default_str();

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "D-measure and portrait divergence of two edge lists");
  compare->add_option("a", cmp.a, "First edge list")->required();
  compare->add_option("b", cmp.b, "Second edge list")->required();
  compare->add_option("--out", cmp.portraits, "Directory for portrait_a.csv and portrait_b.csv");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Run a batch experiment and write CSV/JSON results");
  experiment->add_option("--kind", ex.kind, "distributions, evolution, comparison or bestfit")->required();
  experiment->add_option("--realizations", ex.realizations, "Realizations (default 1, 25, 100, 100 by kind)");
  experiment->add_option("--target", ex.target, "Target edge list (comparison, bestfit)");
  experiment->add_option("--out", ex.out, "Output directory")->capture_default_str();
  experiment->add_option("--rng-seed", ex.rng_seed, "Base random seed")->capture_default_str();
  experiment->add_option("-n", ex.nodes, "Nodes (distributions)")->capture_default_str();
  experiment->add_option("-k", ex.mean_degree, "Average degree (distributions, evolution by n)")->capture_default_str();
  experiment->add_option("--evolution-n", ex.evolution_nodes, "Nodes for the sweep over <k>")->capture_default_str();
  experiment->add_option("--k-grid", ex.k_grid, "Comma-separated <k> values for the evolution sweep");
  experiment->add_option("--n-grid", ex.n_grid, "Comma-separated n values for the evolution sweep");
  experiment->add_option("--models", ex.models, "Comma-separated models, e.g. kr,rr,kk,ki,er,ba,ws");
  experiment->add_option("--best-fit-rule", ex.best_fit_rule, "War pact rule for bestfit")->capture_default_str();
  experiment->add_option("--modularity-runs", ex.modularity_runs, "Community detection runs")->capture_default_str();
  experiment->add_option("--rewire", ex.rewire, "Watts-Strogatz rewiring probability")->capture_default_str();
  experiment->add_option("--threads", ex.threads, "Worker threads (default: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*generate) return cmd_generate(gen);
    if (*stats) return cmd_stats(st);
    if (*compare) return cmd_compare(cmp);
    if (*experiment) return cmd_experiment(ex);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsageError;
  } catch (const InvalidSpecError& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}
