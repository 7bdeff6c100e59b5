#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "warpact/compare.hpp"
#include "warpact/distance.hpp"
#include "warpact/generators.hpp"
#include "warpact/io.hpp"
#include "warpact/netstats.hpp"
#include "warpact/parallel.hpp"
#include "warpact/random.hpp"

namespace warpact {

// A generator configuration compared against a target: a war pact rule or one
// of the baseline models.
struct ModelVariant {
  ModelKind kind = ModelKind::WarPact;
  SelectionRule rule = SelectionRule::KR;

  std::string name() const {
    return kind == ModelKind::WarPact ? std::string(to_string(rule)) : std::string(to_string(kind));
  }
  friend bool operator==(const ModelVariant&, const ModelVariant&) = default;
};

inline std::vector<ModelVariant> default_comparison_models() {
  return {{ModelKind::WarPact, SelectionRule::KR},  {ModelKind::WarPact, SelectionRule::RR},
          {ModelKind::WarPact, SelectionRule::KK},  {ModelKind::WarPact, SelectionRule::KI},
          {ModelKind::ErdosRenyi, {}},              {ModelKind::BarabasiAlbert, {}},
          {ModelKind::WattsStrogatz, {}}};
}

inline std::optional<ModelVariant> parse_variant(std::string_view s) {
  if (auto r = parse_rule(s)) return ModelVariant{ModelKind::WarPact, *r};
  if (auto k = parse_model(s); k && *k != ModelKind::WarPact) return ModelVariant{*k, {}};
  return std::nullopt;
}

// Spec of `variant` matched to a target with n nodes and m edges as closely
// as each model's integer constraints allow.
inline ModelSpec matched_spec(const ModelVariant& variant, std::size_t n, std::size_t m, std::uint64_t seed,
                              double rewire = 0.1) {
  ModelSpec s;
  s.model = variant.kind;
  s.nodes = n;
  s.rng_seed = seed;
  s.rewire = rewire;
  const double k = 2.0 * static_cast<double>(m) / static_cast<double>(n);
  switch (variant.kind) {
    case ModelKind::WarPact:
      s.rule = variant.rule;
      s.edges = m;
      break;
    case ModelKind::ErdosRenyi:
    case ModelKind::BarabasiAlbert:
      s.mean_degree = k;
      break;
    case ModelKind::WattsStrogatz:
      s.mean_degree = std::max(2.0, 2.0 * std::round(k / 2.0));
      break;
  }
  return s;
}

enum class ExperimentKind { Distributions, Evolution, Comparison, BestFitTable };

inline std::optional<ExperimentKind> parse_experiment_kind(std::string_view s) {
  if (s == "distributions") return ExperimentKind::Distributions;
  if (s == "evolution") return ExperimentKind::Evolution;
  if (s == "comparison") return ExperimentKind::Comparison;
  if (s == "bestfit") return ExperimentKind::BestFitTable;
  return std::nullopt;
}

struct ExperimentPlan {
  ExperimentKind kind = ExperimentKind::Distributions;
  std::size_t realizations = 0;  // 0 selects the per-kind default
  std::filesystem::path out_dir = ".";
  std::uint64_t base_seed = 0;
  std::size_t nodes = 10000;
  double mean_degree = 10.0;
  std::size_t evolution_nodes = 2500;
  std::vector<double> degree_grid{2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::vector<std::size_t> node_grid{500, 1000, 2500, 5000, 10000};
  std::optional<std::filesystem::path> target;
  std::vector<ModelVariant> models = default_comparison_models();
  SelectionRule best_fit_rule = SelectionRule::KR;
  std::size_t modularity_runs = 100;
  double rewire = 0.1;
  unsigned threads = default_threads();

  std::size_t realization_count() const {
    if (realizations) return realizations;
    switch (kind) {
      case ExperimentKind::Distributions: return 1;
      case ExperimentKind::Evolution: return 25;
      case ExperimentKind::Comparison:
      case ExperimentKind::BestFitTable: return 100;
    }
    return 1;
  }
};

namespace detail {

inline std::string fmt_double(double x) { return fmt::format("{}", x); }

inline double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

// Sizes of the networks analysed in the original study; other targets are
// accepted with a warning.
inline void warn_unknown_target(std::size_t n, std::size_t m, std::ostream& log) {
  constexpr std::pair<std::size_t, std::size_t> known[] = {{41, 54}, {130, 3730}, {1288, 6236}, {3213, 11248}};
  for (const auto& [kn, km] : known)
    if (kn == n && km == m) return;
  log << fmt::format("note: target has n={}, m={}, which matches none of the reference networks\n", n, m);
}

}  // namespace detail

struct ComparisonRecord {
  ModelVariant model;
  std::size_t realization = 0;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double d_measure = 0.0;
  double portrait_divergence = 0.0;
};

// Scores `realizations` graphs of every model against the target. Work items
// run concurrently; `on_record` sees records in (model, realization) order as
// soon as each prefix is complete.
template <class OnRecord>
std::vector<ComparisonRecord> run_comparison(const StaticGraph& target, const std::vector<ModelVariant>& models,
                                             std::size_t realizations, std::uint64_t base_seed, double rewire,
                                             unsigned threads, OnRecord&& on_record) {
  const DistanceProfile target_profile = DistanceProfile::compute(target, threads);
  const Portrait target_portrait(target_profile);
  const std::size_t n = target.node_count();
  const std::size_t m = target.edge_count();
  std::vector<ComparisonRecord> records(models.size() * realizations);
  std::vector<std::uint8_t> done(records.size(), 0);
  std::size_t cursor = 0;
  std::mutex mutex;
  parallel_for(
      records.size(),
      [&](std::size_t item) {
        const std::size_t mi = item / realizations, r = item % realizations;
        ComparisonRecord rec;
        rec.model = models[mi];
        rec.realization = r;
        rec.seed = derive_seed(derive_seed(base_seed, mi), r);
        const StaticGraph g = StaticGraph::from(generate(matched_spec(models[mi], n, m, rec.seed, rewire)));
        rec.nodes = g.node_count();
        rec.edges = g.edge_count();
        const DistanceProfile profile = DistanceProfile::compute(g, 1);
        rec.d_measure = d_measure(target_profile, profile).value;
        rec.portrait_divergence = portrait_divergence(target_portrait, Portrait(profile)).value;
        std::lock_guard lock(mutex);
        records[item] = rec;
        done[item] = 1;
        while (cursor < records.size() && done[cursor]) on_record(records[cursor++]);
      },
      threads);
  return records;
}

inline std::vector<ComparisonRecord> run_comparison(const StaticGraph& target, const std::vector<ModelVariant>& models,
                                                    std::size_t realizations, std::uint64_t base_seed,
                                                    double rewire = 0.1, unsigned threads = default_threads()) {
  return run_comparison(target, models, realizations, base_seed, rewire, threads, [](const ComparisonRecord&) {});
}

struct EvolutionPoint {
  SelectionRule rule = SelectionRule::KR;
  std::size_t nodes = 0;
  double mean_degree = 0.0;
  std::size_t realizations = 0;
  double lcc = 0.0;
  double mean_clustering = 0.0;
  double assortativity = 0.0;
  std::size_t assortativity_defined = 0;
};

inline EvolutionPoint evolution_point(SelectionRule rule, std::size_t n, double k, std::size_t realizations,
                                      std::uint64_t seed, unsigned threads) {
  EvolutionPoint p{rule, n, k, realizations};
  std::vector<double> lcc(realizations), clus(realizations), assort(realizations);
  std::vector<std::uint8_t> defined(realizations, 0);
  parallel_for(
      realizations,
      [&](std::size_t r) {
        ModelSpec s;
        s.nodes = n;
        s.mean_degree = k;
        s.rule = rule;
        s.rng_seed = derive_seed(seed, r);
        const StaticGraph g = StaticGraph::from(generate_war_pact(s));
        lcc[r] = lcc_fraction(g);
        clus[r] = mean_clustering(g.simple());
        try {
          assort[r] = assortativity(g);
          defined[r] = 1;
        } catch (const UndefinedCorrelationError&) {
        }
      },
      threads);
  for (std::size_t r = 0; r < realizations; ++r) {
    p.lcc += lcc[r] / static_cast<double>(realizations);
    p.mean_clustering += clus[r] / static_cast<double>(realizations);
    if (defined[r]) {
      p.assortativity += assort[r];
      ++p.assortativity_defined;
    }
  }
  if (p.assortativity_defined) p.assortativity /= static_cast<double>(p.assortativity_defined);
  return p;
}

namespace detail {

inline void write_evolution_header(std::ostream& out) {
  out << "rule,n,mean_degree,realizations,lcc,mean_clustering,assortativity,assortativity_defined\n";
}

inline void write_evolution_row(std::ostream& out, const EvolutionPoint& p) {
  out << fmt::format("{},{},{},{},{},{},{},{}\n", to_string(p.rule), p.nodes, p.mean_degree, p.realizations, p.lcc,
                     p.mean_clustering, p.assortativity, p.assortativity_defined);
  out.flush();
}

inline StaticGraph load_target(const ExperimentPlan& plan, std::ostream& log) {
  if (!plan.target) throw InvalidSpecError("this experiment requires --target <edge list>");
  StaticGraph g = load_and_clean(*plan.target).graph;
  warn_unknown_target(g.node_count(), g.edge_count(), log);
  return g;
}

}  // namespace detail

inline void run_distributions(const ExperimentPlan& plan, std::ostream& log) {
  const auto& dir = plan.out_dir;
  std::filesystem::create_directories(dir);
  std::ofstream summary(dir / "distributions_summary.csv", std::ios::binary);
  summary << "rule,seed_kind,realization,n,m,gamma,kmin,ks,lcc,mean_clustering,mean_distance,diameter\n";
  std::size_t index = 0;
  for (SelectionRule rule : kAllRules)
    for (SeedKind seed : kAllSeeds)
      for (std::size_t r = 0; r < plan.realization_count(); ++r, ++index) {
        ModelSpec s;
        s.nodes = plan.nodes;
        s.mean_degree = plan.mean_degree;
        s.rule = rule;
        s.seed = seed;
        s.rng_seed = derive_seed(plan.base_seed, index);
        const StaticGraph g = StaticGraph::from(generate_war_pact(s));
        const StaticGraph simple = g.simple();
        const DistanceProfile profile = DistanceProfile::compute(g, plan.threads);
        const DistanceStatistics ds = distance_statistics(profile);
        const DegreeDistribution dd = degree_distribution(g);
        const std::string tag = fmt::format("{}_{}_{}", to_string(rule), to_string(seed), r);
        save_degree_csv(dd, dir / ("degree_" + tag + ".csv"));
        save_clustering_csv(clustering_by_degree(simple), dir / ("clustering_" + tag + ".csv"));
        save_distance_csv(ds, dir / ("distance_" + tag + ".csv"));
        std::string fit_cols = ",,";
        try {
          const PowerLawFit fit = fit_power_law(dd);
          fit_cols = fmt::format("{},{},{}", fit.exponent, fit.kmin, fit.ks);
        } catch (const InsufficientDataError&) {
        }
        summary << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", to_string(rule), to_string(seed), r,
                               g.node_count(), g.edge_count(), fit_cols, lcc_fraction(g), mean_clustering(simple),
                               ds.mean, ds.diameter);
        summary.flush();
        log << fmt::format("distributions: {} done\n", tag);
      }
}

inline void run_evolution(const ExperimentPlan& plan, std::ostream& log) {
  std::filesystem::create_directories(plan.out_dir);
  const std::size_t reps = plan.realization_count();
  std::ofstream by_degree(plan.out_dir / "evolution_degree.csv", std::ios::binary);
  detail::write_evolution_header(by_degree);
  std::size_t point = 0;
  for (SelectionRule rule : kAllRules)
    for (double k : plan.degree_grid) {
      const auto p = evolution_point(rule, plan.evolution_nodes, k, reps, derive_seed(plan.base_seed, point++),
                                     plan.threads);
      detail::write_evolution_row(by_degree, p);
      log << fmt::format("evolution: rule={} n={} k={} done\n", to_string(rule), plan.evolution_nodes, k);
    }
  std::ofstream by_nodes(plan.out_dir / "evolution_nodes.csv", std::ios::binary);
  detail::write_evolution_header(by_nodes);
  for (SelectionRule rule : kAllRules)
    for (std::size_t n : plan.node_grid) {
      const auto p = evolution_point(rule, n, plan.mean_degree, reps, derive_seed(plan.base_seed, point++),
                                     plan.threads);
      detail::write_evolution_row(by_nodes, p);
      log << fmt::format("evolution: rule={} n={} k={} done\n", to_string(rule), n, plan.mean_degree);
    }
}

inline void run_comparison_experiment(const ExperimentPlan& plan, std::ostream& log) {
  const StaticGraph target = detail::load_target(plan, log);
  std::filesystem::create_directories(plan.out_dir);
  std::ofstream rows(plan.out_dir / "comparison.csv", std::ios::binary);
  rows << "model,realization,seed,n,m,d_measure,portrait_divergence\n";
  const std::size_t reps = plan.realization_count();
  const auto records =
      run_comparison(target, plan.models, reps, plan.base_seed, plan.rewire, plan.threads,
                     [&](const ComparisonRecord& r) {
                       rows << fmt::format("{},{},{},{},{},{},{}\n", r.model.name(), r.realization, r.seed, r.nodes,
                                           r.edges, r.d_measure, r.portrait_divergence);
                       rows.flush();
                     });
  std::ofstream summary(plan.out_dir / "comparison_summary.csv", std::ios::binary);
  summary << "model,realizations,target_n,target_m,mean_m,median_d_measure,median_portrait_divergence\n";
  for (const ModelVariant& model : plan.models) {
    std::vector<double> dm, pd;
    double edges = 0.0;
    for (const auto& r : records)
      if (r.model == model) {
        dm.push_back(r.d_measure);
        pd.push_back(r.portrait_divergence);
        edges += static_cast<double>(r.edges);
      }
    summary << fmt::format("{},{},{},{},{},{},{}\n", model.name(), dm.size(), target.node_count(),
                           target.edge_count(), edges / static_cast<double>(dm.size()), detail::median(dm),
                           detail::median(pd));
    log << fmt::format("comparison: {} median portrait divergence {:.4f}, mean m {}\n", model.name(),
                       detail::median(pd), edges / static_cast<double>(dm.size()));
  }
}

inline void run_best_fit(const ExperimentPlan& plan, std::ostream& log) {
  const StaticGraph target = detail::load_target(plan, log);
  std::filesystem::create_directories(plan.out_dir);
  const ModelVariant model{ModelKind::WarPact, plan.best_fit_rule};
  const auto records = run_comparison(target, {model}, plan.realization_count(), plan.base_seed, plan.rewire,
                                      plan.threads);
  const auto best = std::min_element(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return a.portrait_divergence < b.portrait_divergence;
  });
  const StaticGraph g = StaticGraph::from(
      generate(matched_spec(model, target.node_count(), target.edge_count(), best->seed, plan.rewire)));
  StatsOptions opt;
  opt.modularity_runs = plan.modularity_runs;
  opt.rng_seed = plan.base_seed;
  opt.threads = plan.threads;
  const StatsReport target_stats = compute_stats(target, opt);
  const StatsReport best_stats = compute_stats(g, opt);

  nlohmann::ordered_json j;
  j["model"] = model.name();
  j["realizations"] = records.size();
  j["best_realization"] = best->realization;
  j["best_seed"] = best->seed;
  j["portrait_divergence"] = best->portrait_divergence;
  j["d_measure"] = best->d_measure;
  j["target"] = to_json(target_stats);
  j["best"] = to_json(best_stats);
  std::ofstream(plan.out_dir / "bestfit.json", std::ios::binary) << j.dump(2) << '\n';

  std::ofstream table(plan.out_dir / "bestfit_table.csv", std::ios::binary);
  table << "network,n,m,lcc,mean_degree,mean_clustering,mean_distance,diameter,assortativity,modularity\n";
  auto row = [&](std::string_view name, const StatsReport& r) {
    table << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", name, r.n, r.m, r.lcc, r.mean_degree, r.mean_clustering,
                         r.mean_distance, r.diameter, r.assortativity ? detail::fmt_double(*r.assortativity) : "",
                         r.modularity);
  };
  row("target", target_stats);
  row(model.name(), best_stats);
  log << fmt::format("bestfit: realization {} of {} has portrait divergence {:.4f}\n", best->realization,
                     records.size(), best->portrait_divergence);
}

inline void run_experiment(const ExperimentPlan& plan, std::ostream& log = std::cerr) {
  switch (plan.kind) {
    case ExperimentKind::Distributions: return run_distributions(plan, log);
    case ExperimentKind::Evolution: return run_evolution(plan, log);
    case ExperimentKind::Comparison: return run_comparison_experiment(plan, log);
    case ExperimentKind::BestFitTable: return run_best_fit(plan, log);
  }
}

}  // namespace warpact
