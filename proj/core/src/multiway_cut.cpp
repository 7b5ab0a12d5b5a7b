#include "cycleclust/multiway_cut.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(Errc::ParseError, "multiway cut: " + msg); }

bool is_terminal(const MultiwayCutInstance& mc, int v) {
  return std::find(mc.terminals.begin(), mc.terminals.end(), v) != mc.terminals.end();
}

}  // namespace

MultiwayCutInstance parse_multiway_cut(const std::string& text) {
  std::istringstream is(text);
  MultiwayCutInstance mc;
  int m = 0;
  if (!(is >> mc.vertices >> m) || mc.vertices < 1 || m < 0) fail("expected header 'n m'");
  for (int t = 0; t < m; ++t) {
    int s = 0;
    if (!(is >> s) || s < 1 || s > mc.vertices) fail("bad terminal index");
    mc.terminals.push_back(s - 1);
  }
  std::vector<int> sorted = mc.terminals;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("duplicate terminal");
  int u = 0, v = 0;
  double w = 0.0;
  while (is >> u) {
    if (!(is >> v >> w)) fail("edge line needs 'u v weight'");
    if (u < 1 || v < 1 || u > mc.vertices || v > mc.vertices || u == v) fail("bad edge endpoints");
    if (!(w >= 0.0) || !std::isfinite(w)) fail("edge weight must be finite and non-negative");
    mc.edges.push_back({u - 1, v - 1, w});
  }
  if (!is.eof()) fail("trailing garbage");
  return mc;
}

std::string write_multiway_cut(const MultiwayCutInstance& mc) {
  std::string out = std::to_string(mc.vertices) + " " + std::to_string(mc.terminals.size()) + "\n";
  for (std::size_t t = 0; t < mc.terminals.size(); ++t) {
    if (t > 0) out += ' ';
    out += std::to_string(mc.terminals[t] + 1);
  }
  out += '\n';
  char buf[48];
  for (const auto& e : mc.edges) {
    std::snprintf(buf, sizeof buf, " %.17g\n", e.weight);
    out += std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + buf;
  }
  return out;
}

double drop_terminal_edges(MultiwayCutInstance& mc) {
  double removed = 0.0;
  std::erase_if(mc.edges, [&](const WeightedEdge& e) {
    const bool both = is_terminal(mc, e.u) && is_terminal(mc, e.v);
    if (both) removed += e.weight;
    return both;
  });
  return removed;
}

double induced_cut_weight(const MultiwayCutInstance& mc, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != mc.vertices) throw Error(Errc::DimensionMismatch, "one label per vertex");
  double cut = 0.0;
  for (const auto& e : mc.edges) {
    if (labels[e.u] != labels[e.v]) cut += e.weight;
  }
  return cut;
}

CycleReduction multiway_cut_to_instance(const MultiwayCutInstance& mc, double alpha) {
  const int n = mc.vertices;
  const int m = static_cast<int>(mc.terminals.size());
  if (m < 3) throw Error(Errc::InvalidTerminalCount, "need at least 3 terminals, got " + std::to_string(m));
  if (!(alpha > 0.0)) throw Error(Errc::InvalidArgument, "alpha must be positive");

  double total_c = 0.0;
  Vector degree = Vector::Zero(n);
  Matrix q = Matrix::Zero(n, n);
  for (const auto& e : mc.edges) {
    if (is_terminal(mc, e.u) && is_terminal(mc, e.v))
      throw Error(Errc::InvalidArgument, "terminal-terminal edge; drop it first");
    q(e.u, e.v) += e.weight / 2.0;
    q(e.v, e.u) += e.weight / 2.0;
    degree[e.u] += e.weight;
    degree[e.v] += e.weight;
    total_c += e.weight;
  }
  for (int v = 0; v < n; ++v) {
    if (!is_terminal(mc, v) && !(degree[v] > 0.0))
      throw Error(Errc::IsolatedNonTerminal, "vertex " + std::to_string(v + 1) + " has zero weighted degree");
  }
  const double big_m = alpha * total_c + 1.0;
  for (int i = 0; i < m; ++i) q(mc.terminals[i], mc.terminals[(i + 1) % m]) = big_m;

  const Vector row = q.rowwise().sum();
  Matrix p(n, n);
  for (int u = 0; u < n; ++u) p.row(u) = q.row(u) / row[u];
  Vector pi = row / row.sum();
  return {validate_stochastic(std::move(p)), StationaryDistribution(std::move(pi)), std::move(q), big_m};
}

MultiwayCutInstance random_multiway_cut(int vertices, int terminals, double density, std::uint64_t seed) {
  if (terminals < 0 || terminals > vertices) throw Error(Errc::InvalidArgument, "terminal count out of range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, 9);
  MultiwayCutInstance mc;
  mc.vertices = vertices;
  for (int t = 0; t < terminals; ++t) mc.terminals.push_back(t);
  std::vector<bool> touched(vertices, false);
  for (int u = 0; u < vertices; ++u) {
    for (int v = std::max(u + 1, terminals); v < vertices; ++v) {
      if (uniform(rng) < density) {
        mc.edges.push_back({u, v, static_cast<double>(weight(rng))});
        touched[u] = touched[v] = true;
      }
    }
  }
  for (int v = terminals; v < vertices; ++v) {
    if (touched[v]) continue;
    std::uniform_int_distribution<int> other(0, vertices - 2);
    int u = other(rng);
    if (u >= v) ++u;
    mc.edges.push_back({std::min(u, v), std::max(u, v), static_cast<double>(weight(rng))});
    touched[u] = touched[v] = true;
  }
  return mc;
}

}  // namespace cycleclust
