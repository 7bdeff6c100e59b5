#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "warpact/compare.hpp"
#include "warpact/errors.hpp"
#include "warpact/graph.hpp"
#include "warpact/netstats.hpp"

namespace warpact {

inline constexpr std::string_view kMultigraphHeader = "%multigraph";

struct LoadedGraph {
  StaticGraph graph;
  std::vector<std::string> tokens;  // handle -> original node token
  bool multigraph = false;
};

// Reads an undirected edge list: two whitespace-separated tokens per line,
// '#' comment lines, blank lines ignored. Self-edges and nodes left without
// edges are dropped. Duplicate edges collapse unless the first line is
// "%multigraph", in which case each repeated line adds one unit of
// multiplicity. Handles are assigned by first appearance among kept edges.
inline LoadedGraph parse_edge_list(std::istream& in) {
  LoadedGraph out;
  std::vector<std::pair<std::string, std::string>> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    if (lineno == 1 && std::string_view(line).substr(first).starts_with(kMultigraphHeader)) {
      out.multigraph = true;
      continue;
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b)) throw ParseError(lineno, "expected two node tokens, got '" + line + "'");
    if (fields >> extra) throw ParseError(lineno, "unexpected third field '" + extra + "'");
    if (a != b) raw.emplace_back(std::move(a), std::move(b));
  }

  std::unordered_map<std::string, NodeId> index;
  auto handle = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<NodeId>(out.tokens.size()));
    if (inserted) out.tokens.push_back(token);
    return it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) {
    const NodeId u = handle(a);
    const NodeId v = handle(b);
    edges.push_back({u, v, 1});
  }
  if (edges.empty()) throw EmptyGraphError("edge list contains no edges after cleaning");
  StaticGraph g(out.tokens.size(), edges);
  out.graph = out.multigraph ? std::move(g) : g.simple();
  return out;
}

inline LoadedGraph load_and_clean(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  try {
    return parse_edge_list(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.what());
  }
}

// One line per unit of multiplicity; the "%multigraph" header is written only
// when some edge has multiplicity above one. Isolated nodes are not
// representable and are omitted.
inline void write_edge_list(std::ostream& out, const StaticGraph& g, const std::vector<std::string>* tokens = nullptr) {
  if (!g.is_simple()) out << kMultigraphHeader << '\n';
  auto name = [&](NodeId u) { return tokens ? (*tokens)[u] : std::to_string(u); };
  for (const Edge& e : g.edges())
    for (std::uint32_t k = 0; k < e.multiplicity; ++k) out << name(e.u) << ' ' << name(e.v) << '\n';
}

namespace detail {

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace detail

inline void save_edge_list(const StaticGraph& g, const std::filesystem::path& path,
                           const std::vector<std::string>* tokens = nullptr) {
  auto out = detail::open_for_write(path);
  write_edge_list(out, g, tokens);
  detail::finish(out, path);
}

inline nlohmann::ordered_json to_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["lcc"] = r.lcc;
  j["mean_degree"] = r.mean_degree;
  j["mean_clustering"] = r.mean_clustering;
  j["mean_distance"] = r.mean_distance;
  j["diameter"] = r.diameter;
  j["assortativity"] = r.assortativity ? nlohmann::ordered_json(*r.assortativity) : nlohmann::ordered_json();
  j["modularity"] = r.modularity;
  j["modularity_runs"] = r.modularity_runs;
  j["unreachable_fraction"] = r.unreachable_fraction;
  return j;
}

inline void save_stats_json(const StatsReport& r, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << to_json(r).dump(2) << '\n';
  detail::finish(out, path);
}

// Two-column CSV: header "<key>,<value>" then one row per entry.
template <class Key>
void write_distribution_csv(std::ostream& out, std::string_view key, std::string_view value,
                            const std::map<Key, double>& dist) {
  out << key << ',' << value << '\n';
  for (const auto& [k, p] : dist) out << fmt::format("{},{}\n", k, p);
}

template <class Key>
void save_distribution_csv(const std::map<Key, double>& dist, std::string_view key, std::string_view value,
                           const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_distribution_csv(out, key, value, dist);
  detail::finish(out, path);
}

inline void save_degree_csv(const DegreeDistribution& d, const std::filesystem::path& path) {
  save_distribution_csv(d.probabilities(), "k", "p_k", path);
}
inline void save_clustering_csv(const std::map<std::size_t, double>& c, const std::filesystem::path& path) {
  save_distribution_csv(c, "k", "C_k", path);
}
inline void save_distance_csv(const DistanceStatistics& s, const std::filesystem::path& path) {
  save_distribution_csv(s.distribution, "d", "p_d", path);
}

// Rows are distances d, columns node counts k = 0..n, values P_kd.
inline void write_portrait_csv(std::ostream& out, const Portrait& p) {
  out << 'd';
  for (std::size_t k = 0; k <= p.node_count(); ++k) out << ',' << k;
  out << '\n';
  for (std::size_t d = 0; d < p.rows().size(); ++d) {
    out << d;
    for (std::size_t k = 0; k <= p.node_count(); ++k) out << ',' << p.at(k, d);
    out << '\n';
  }
}

inline void save_portrait_csv(const Portrait& p, const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  write_portrait_csv(out, p);
  detail::finish(out, path);
}

}  // namespace warpact
