#include "cycleclust/branch_and_bound.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <queue>
#include <set>

#include <json.hpp>

#include "cycleclust/error.hpp"
#include "cycleclust/heuristics.hpp"

namespace cycleclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPruneTol = 1e-9;
constexpr double kIntegralTol = 1e-6;
constexpr double kOptimalGap = 1e-6;
constexpr int kRoundingEvery = 5;
constexpr long kTraceEvery = 100;

using Clock = std::chrono::steady_clock;

struct Node {
  long id = 0;
  int depth = 0;
  double bound = kInf;
  std::vector<BoundOverride> fixes;
  std::shared_ptr<const LpBasis> warm;
};

struct NodeOrder {
  NodeSelection mode;
  bool operator()(const std::shared_ptr<Node>& a, const std::shared_ptr<Node>& b) const {
    // priority_queue pops the "largest"; return true when a comes after b
    if (mode == NodeSelection::BestBound) {
      if (a->bound != b->bound) return a->bound < b->bound;
    } else if (a->depth != b->depth) {
      return a->depth < b->depth;
    }
    return a->id > b->id;
  }
};

double gap_of(double primal, double dual) {
  if (primal == -kInf) return kInf;
  return std::max(0.0, (dual - primal) / std::max(std::abs(primal), 1e-9));
}

class Search {
 public:
  Search(const MipInstance& mip, const FlowMatrix& w, const SolverConfig& config,
         std::span<const BoundOverride> root_overrides)
      : mip_(mip),
        w_(w),
        config_(config),
        root_(root_overrides.begin(), root_overrides.end()),
        lp_(mip),
        start_(Clock::now()),
        queue_(NodeOrder{config.node_selection}) {
    if (config.time_limit_s) deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                                                       std::chrono::duration<double>(*config.time_limit_s));
    lower_.resize(mip.num_variables());
    upper_.resize(mip.num_variables());
    for (int v = 0; v < mip.num_variables(); ++v) {
      lower_[v] = mip.variables[v].lower;
      upper_[v] = mip.variables[v].upper;
    }
    for (const auto& o : root_) {
      lower_[o.var] = std::max(lower_[o.var], o.lower);
      upper_[o.var] = std::min(upper_[o.var], o.upper);
    }
  }

  SolveResult run() {
    dual_ = trivial_dual_bound(w_, mip_.alpha);
    if (config_.heuristics.greedy) offer(greedy_heuristic(w_, mip_.m, mip_.alpha));

    auto root = std::make_shared<Node>();
    root->id = next_id_++;
    root->bound = dual_;
    push(root);
    checkpoint(true);

    SolveStatus status = SolveStatus::Optimal;
    bool stopped = false;
    while (!queue_.empty()) {
      if (deadline_ && Clock::now() >= *deadline_) {
        status = SolveStatus::TimeLimit;
        stopped = true;
        break;
      }
      if (config_.node_limit && result_.nodes >= *config_.node_limit) {
        status = SolveStatus::NodeLimit;
        stopped = true;
        break;
      }
      auto node = pop();
      if (has_incumbent() && node->bound <= result_.primal + kPruneTol) {
        checkpoint(false);
        if (gap_reached()) break;
        continue;
      }
      if (!process(node)) {
        push(node);
        status = SolveStatus::TimeLimit;
        stopped = true;
        break;
      }
      checkpoint(false);
      if (gap_reached()) break;
    }

    if (!stopped) {
      if (queue_.empty()) {
        dual_ = has_incumbent() ? result_.primal : -kInf;
        status = has_incumbent() ? SolveStatus::Optimal : SolveStatus::Infeasible;
      } else {
        status = gap_of(result_.primal, dual_) <= kOptimalGap ? SolveStatus::Optimal : SolveStatus::GapLimit;
      }
    }
    checkpoint(true);
    result_.status = status;
    result_.dual_bound = dual_;
    result_.gap = has_incumbent() ? gap_of(result_.primal, dual_) : kInf;
    if (status == SolveStatus::Infeasible) result_.gap = 0.0;
    result_.wall_time = elapsed();
    return std::move(result_);
  }

 private:
  bool has_incumbent() const { return result_.incumbent.has_value(); }

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  void push(const std::shared_ptr<Node>& node) {
    open_.insert(node->bound);
    queue_.push(node);
  }

  std::shared_ptr<Node> pop() {
    auto node = queue_.top();
    queue_.pop();
    open_.erase(open_.find(node->bound));
    return node;
  }

  bool gap_reached() const { return has_incumbent() && gap_of(result_.primal, dual_) <= config_.gap_tol; }

  // Refreshes the global dual bound and records a trace point when something
  // changed (or every kTraceEvery nodes).
  void checkpoint(bool force) {
    double open_max = open_.empty() ? -kInf : *open_.rbegin();
    double dual = std::min(dual_, open_.empty() ? (has_incumbent() ? result_.primal : -kInf) : open_max);
    if (has_incumbent()) dual = std::max(dual, result_.primal);
    const bool changed = dual != dual_ || result_.primal != last_trace_primal_;
    dual_ = dual;
    if (force || changed || result_.nodes % kTraceEvery == 0) {
      if (!result_.trace.empty() && result_.trace.back().nodes == result_.nodes && !changed) return;
      result_.trace.push_back({result_.nodes, elapsed(), result_.primal, dual_});
      last_trace_primal_ = result_.primal;
    }
  }

  bool respects_root(const CycleClustering& c) const {
    for (int i = 0; i < mip_.n; ++i) {
      for (int k = 0; k < mip_.m; ++k) {
        const double v = c.cluster_of(i) == k ? 1.0 : 0.0;
        const int var = mip_.x(i, k);
        if (v < lower_[var] - 1e-9 || v > upper_[var] + 1e-9) return false;
      }
    }
    return true;
  }

  // Considers a feasible clustering as the new incumbent; polishes new
  // incumbents with the exchange heuristic.
  void offer(const CycleClustering& candidate) {
    if (accept(candidate) && config_.heuristics.exchange)
      accept(exchange_improvement(w_, *result_.incumbent, mip_.alpha));
  }

  bool accept(const CycleClustering& raw) {
    const CycleClustering c = canonicalize(raw);
    if (!respects_root(c)) return false;
    const ObjectiveValue v = objective(w_, c, mip_.alpha);
    if (has_incumbent() && !(v.total > result_.primal)) return false;
    result_.incumbent = c;
    result_.incumbent_value = v;
    result_.primal = v.total;
    return true;
  }

  // Solves one node; returns false when the time limit interrupted its LP.
  bool process(const std::shared_ptr<Node>& node) {
    std::vector<BoundOverride> overrides = root_;
    overrides.insert(overrides.end(), node->fixes.begin(), node->fixes.end());
    LpOptions opts;
    opts.deadline = deadline_;
    opts.warm_start = node->warm;
    LpResult lp;
    try {
      lp = lp_.solve(overrides, opts);
    } catch (const Error& e) {
      if (e.code() != Errc::NumericalFailure) throw;
      lp.status = LpStatus::IterationLimit;
      ++result_.failed_lps;
    }
    result_.lp_iterations += lp.iterations;
    if (lp.status == LpStatus::TimeLimit) return false;
    ++result_.nodes;
    if (lp.status == LpStatus::Infeasible) return true;

    double bound = node->bound;
    const bool solved = lp.status == LpStatus::Optimal;
    if (solved) bound = std::min(bound, lp.objective);
    if (has_incumbent() && bound <= result_.primal + kPruneTol) return true;

    int branch_var = -1;
    if (solved) {
      double best_frac = kIntegralTol;
      for (int i = 0; i < mip_.n; ++i) {
        for (int k = 0; k < mip_.m; ++k) {
          const double v = lp.values[mip_.x(i, k)];
          const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
          if (frac > best_frac) {
            best_frac = frac;
            branch_var = mip_.x(i, k);
          }
        }
      }
      if (branch_var < 0) {
        std::vector<int> assign(mip_.n, 0);
        for (int i = 0; i < mip_.n; ++i) {
          for (int k = 0; k < mip_.m; ++k) {
            if (lp.values[mip_.x(i, k)] > 0.5) assign[i] = k;
          }
        }
        offer(CycleClustering(mip_.m, std::move(assign)));
        return true;
      }
      if (config_.heuristics.rounding && node->depth % kRoundingEvery == 0) {
        if (auto c = rounding_heuristic(mip_, lp, w_, overrides)) offer(*c);
        if (has_incumbent() && bound <= result_.primal + kPruneTol) return true;
      }
    } else {
      // No usable relaxation (iteration limit or numerical failure): branch on the first free x.
      std::vector<double> lo(lower_), up(upper_);
      for (const auto& f : node->fixes) {
        lo[f.var] = std::max(lo[f.var], f.lower);
        up[f.var] = std::min(up[f.var], f.upper);
      }
      for (int i = 0; i < mip_.n && branch_var < 0; ++i) {
        for (int k = 0; k < mip_.m; ++k) {
          const int var = mip_.x(i, k);
          if (lo[var] < up[var]) {
            branch_var = var;
            break;
          }
        }
      }
      if (branch_var < 0) return true;
    }

    for (const double value : {1.0, 0.0}) {
      auto child = std::make_shared<Node>();
      child->id = next_id_++;
      child->depth = node->depth + 1;
      child->bound = bound;
      child->fixes = node->fixes;
      child->fixes.push_back({branch_var, value, value});
      child->warm = solved ? lp.basis : node->warm;
      push(child);
    }
    return true;
  }

  const MipInstance& mip_;
  const FlowMatrix& w_;
  const SolverConfig& config_;
  std::vector<BoundOverride> root_;
  SimplexSolver lp_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  std::vector<double> lower_, upper_;

  std::priority_queue<std::shared_ptr<Node>, std::vector<std::shared_ptr<Node>>, NodeOrder> queue_;
  std::multiset<double> open_;
  long next_id_ = 0;
  double dual_ = kInf;
  double last_trace_primal_ = std::numeric_limits<double>::quiet_NaN();
  SolveResult result_{std::nullopt, {}, -kInf, kInf, kInf, 0, 0, 0, SolveStatus::Infeasible, 0.0, {}};
};

}  // namespace

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::GapLimit: return "gap-limit";
    case SolveStatus::TimeLimit: return "time-limit";
    case SolveStatus::NodeLimit: return "node-limit";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

double trivial_dual_bound(const FlowMatrix& w, double alpha) {
  const Matrix& q = w.entries();
  double bound = alpha * q.sum();
  for (int i = 0; i < q.rows(); ++i) {
    for (int j = i + 1; j < q.cols(); ++j) bound += std::abs(q(i, j) - q(j, i));
  }
  return bound;
}

SolveResult branch_and_bound(const MipInstance& mip, const FlowMatrix& w, const SolverConfig& config,
                             std::span<const BoundOverride> root_overrides) {
  if (!(config.gap_tol >= 0.0)) throw Error(Errc::InvalidArgument, "gap tolerance must be non-negative");
  if (config.time_limit_s && !(*config.time_limit_s >= 0.0))
    throw Error(Errc::InvalidArgument, "time limit must be non-negative");
  if (config.node_limit && *config.node_limit < 0) throw Error(Errc::InvalidArgument, "node limit must be non-negative");
  if (mip.x_index.empty() || w.size() != mip.n)
    throw Error(Errc::DimensionMismatch, "flow matrix does not match the model");
  return Search(mip, w, config, root_overrides).run();
}

SolverConfig parse_solver_config(const std::string& json_text) {
  SolverConfig cfg;
  try {
    const auto doc = nlohmann::json::parse(json_text);
    if (!doc.is_object()) throw Error(Errc::ParseError, "solver config: expected a JSON object");
    if (doc.contains("gap_tol")) cfg.gap_tol = doc.at("gap_tol").get<double>();
    if (doc.contains("time_limit_s") && !doc.at("time_limit_s").is_null())
      cfg.time_limit_s = doc.at("time_limit_s").get<double>();
    if (doc.contains("node_limit") && !doc.at("node_limit").is_null())
      cfg.node_limit = doc.at("node_limit").get<long>();
    if (doc.contains("node_selection")) {
      const auto sel = doc.at("node_selection").get<std::string>();
      if (sel == "best_bound") {
        cfg.node_selection = NodeSelection::BestBound;
      } else if (sel == "dfs") {
        cfg.node_selection = NodeSelection::DepthFirst;
      } else {
        throw Error(Errc::ParseError, "solver config: unknown node_selection '" + sel + "'");
      }
    }
    if (doc.contains("heuristics")) {
      const auto& h = doc.at("heuristics");
      if (h.contains("greedy")) cfg.heuristics.greedy = h.at("greedy").get<bool>();
      if (h.contains("rounding")) cfg.heuristics.rounding = h.at("rounding").get<bool>();
      if (h.contains("exchange")) cfg.heuristics.exchange = h.at("exchange").get<bool>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, std::string("solver config: ") + e.what());
  }
  if (!(cfg.gap_tol >= 0.0)) throw Error(Errc::InvalidArgument, "solver config: gap_tol must be non-negative");
  return cfg;
}

std::string write_solver_config(const SolverConfig& config) {
  nlohmann::ordered_json doc;
  doc["gap_tol"] = config.gap_tol;
  doc["time_limit_s"] = config.time_limit_s ? nlohmann::ordered_json(*config.time_limit_s) : nullptr;
  doc["node_limit"] = config.node_limit ? nlohmann::ordered_json(*config.node_limit) : nullptr;
  doc["node_selection"] = config.node_selection == NodeSelection::BestBound ? "best_bound" : "dfs";
  doc["heuristics"] = {{"greedy", config.heuristics.greedy},
                       {"rounding", config.heuristics.rounding},
                       {"exchange", config.heuristics.exchange}};
  return doc.dump(2) + "\n";
}

std::string write_solve_report(const SolveResult& result) {
  auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(); };
  nlohmann::ordered_json doc;
  doc["format"] = "solve-v1";
  doc["primal"] = finite_or_null(result.primal);
  doc["dual_bound"] = finite_or_null(result.dual_bound);
  doc["gap"] = finite_or_null(result.gap);
  doc["nodes"] = result.nodes;
  doc["wall_time"] = result.wall_time;
  doc["status"] = std::string(to_string(result.status));
  return doc.dump(2) + "\n";
}

}  // namespace cycleclust
