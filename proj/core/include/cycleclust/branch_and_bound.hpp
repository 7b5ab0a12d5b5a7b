#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cycleclust/clustering.hpp"
#include "cycleclust/mip.hpp"
#include "cycleclust/simplex.hpp"

namespace cycleclust {

enum class NodeSelection { BestBound, DepthFirst };

struct HeuristicSwitches {
  bool greedy = true;
  bool rounding = true;
  bool exchange = true;

  friend bool operator==(const HeuristicSwitches&, const HeuristicSwitches&) = default;
};

struct SolverConfig {
  double gap_tol = 1e-6;
  std::optional<double> time_limit_s;
  std::optional<long> node_limit;
  NodeSelection node_selection = NodeSelection::BestBound;
  HeuristicSwitches heuristics;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

/// JSON keys: gap_tol, time_limit_s, node_limit, node_selection
/// ("best_bound" | "dfs"), heuristics {greedy, rounding, exchange}. Missing
/// keys keep their defaults.
SolverConfig parse_solver_config(const std::string& json_text);
std::string write_solver_config(const SolverConfig& config);

enum class SolveStatus { Optimal, GapLimit, TimeLimit, NodeLimit, Infeasible };

std::string_view to_string(SolveStatus s);

struct TracePoint {
  long nodes = 0;
  double seconds = 0.0;
  double primal = 0.0;
  double dual = 0.0;
};

struct SolveResult {
  std::optional<CycleClustering> incumbent;
  ObjectiveValue incumbent_value;
  double primal = 0.0;      ///< −inf without incumbent
  double dual_bound = 0.0;  ///< −inf when the tree proves infeasibility
  double gap = 0.0;
  long nodes = 0;
  long lp_iterations = 0;
  long failed_lps = 0;       ///< node LPs abandoned after a numerical failure
  SolveStatus status = SolveStatus::Infeasible;
  double wall_time = 0.0;
  std::vector<TracePoint> trace;  ///< primal non-decreasing, dual non-increasing
};

/// Upper bound Σ_{i<j} |q_ij − q_ji| + α Σ_ij q_ij valid for every clustering.
double trivial_dual_bound(const FlowMatrix& w, double alpha);

/// LP-based branch-and-bound over the linearized model (maximization).
/// `root_overrides` tighten variable bounds for the whole tree.
SolveResult branch_and_bound(const MipInstance& mip, const FlowMatrix& w, const SolverConfig& config,
                             std::span<const BoundOverride> root_overrides = {});

/// "solve-v1" report: {primal, dual_bound, gap, nodes, wall_time, status}.
std::string write_solve_report(const SolveResult& result);

}  // namespace cycleclust
