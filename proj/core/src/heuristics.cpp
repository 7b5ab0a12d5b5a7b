#include "cycleclust/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

constexpr double kImproveTol = 1e-12;

// L(i, l): objective contribution of bin i's pairs if i were in cluster l.
class GainTable {
 public:
  GainTable(const Matrix& q, int m, double alpha, const std::vector<int>& assign)
      : q_(q), m_(m), alpha_(alpha), n_(static_cast<int>(assign.size())), table_(Matrix::Zero(n_, m)) {
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i == j || assign[j] < 0) continue;
        for (int l = 0; l < m_; ++l) table_(i, l) += pair_contribution(q_, i, j, l, assign[j], m_, alpha_);
      }
    }
  }

  double operator()(int i, int l) const { return table_(i, l); }

  // Bin i moves from cluster `from` (−1 = unplaced) to `to`.
  void move(int i, int from, int to) {
    for (int k = 0; k < n_; ++k) {
      if (k == i) continue;
      for (int l = 0; l < m_; ++l) {
        double delta = pair_contribution(q_, k, i, l, to, m_, alpha_);
        if (from >= 0) delta -= pair_contribution(q_, k, i, l, from, m_, alpha_);
        table_(k, l) += delta;
      }
    }
  }

 private:
  const Matrix& q_;
  int m_;
  double alpha_;
  int n_;
  Matrix table_;
};

// Fills empty clusters by best-gain moves. `movable(i)` and `allowed(i, k)`
// restrict which bins may leave and where they may go.
template <class Movable, class Allowed>
bool repair(std::vector<int>& assign, int m, GainTable& gains, Movable movable, Allowed allowed) {
  const int n = static_cast<int>(assign.size());
  std::vector<int> size(m, 0);
  for (int k : assign) ++size[k];
  for (int e = 0; e < m; ++e) {
    if (size[e] > 0) continue;
    int best = -1;
    double best_gain = 0.0;
    for (int i = 1; i < n; ++i) {
      const int from = assign[i];
      if (size[from] < 2 || !movable(i) || !allowed(i, e)) continue;
      const double gain = gains(i, e) - gains(i, from);
      if (best < 0 || gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best < 0) return false;
    const int from = assign[best];
    gains.move(best, from, e);
    assign[best] = e;
    --size[from];
    ++size[e];
  }
  return true;
}

}  // namespace

CycleClustering greedy_heuristic(const FlowMatrix& w, int m, double alpha) {
  const int n = w.size();
  if (m < 1 || m > n) throw Error(Errc::InvalidClusterCount, "need 1 <= m <= n");
  const Matrix& q = w.entries();
  const Vector mass = w.row_sums();

  std::vector<int> order(n - 1);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return mass[a] > mass[b]; });

  std::vector<int> assign(n, -1);
  assign[0] = 0;
  GainTable gains(q, m, alpha, assign);
  for (int i : order) {
    int best = 0;
    for (int l = 1; l < m; ++l) {
      if (gains(i, l) > gains(i, best)) best = l;
    }
    assign[i] = best;
    gains.move(i, -1, best);
  }
  repair(assign, m, gains, [](int) { return true; }, [](int, int) { return true; });
  return CycleClustering(m, std::move(assign));
}

std::optional<CycleClustering> rounding_heuristic(const MipInstance& mip, const LpResult& lp, const FlowMatrix& w,
                                                  std::span<const BoundOverride> overrides) {
  const int n = mip.n;
  const int m = mip.m;
  if (w.size() != n) throw Error(Errc::DimensionMismatch, "flow matrix does not match the model");
  if (static_cast<int>(lp.values.size()) != mip.num_variables())
    throw Error(Errc::DimensionMismatch, "LP solution does not match the model");

  std::vector<double> lower(mip.num_variables()), upper(mip.num_variables());
  for (int v = 0; v < mip.num_variables(); ++v) {
    lower[v] = mip.variables[v].lower;
    upper[v] = mip.variables[v].upper;
  }
  for (const auto& o : overrides) {
    lower[o.var] = std::max(lower[o.var], o.lower);
    upper[o.var] = std::min(upper[o.var], o.upper);
  }
  auto allowed = [&](int i, int k) { return upper[mip.x(i, k)] >= 0.5; };
  auto pinned = [&](int i, int k) { return lower[mip.x(i, k)] >= 0.5; };

  std::vector<int> assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int k = 1; k < m; ++k) {
      if (lp.values[mip.x(i, k)] > lp.values[mip.x(i, best)] + 1e-9) best = k;
    }
    assign[i] = best;
    if (!allowed(i, best)) return std::nullopt;
    for (int k = 0; k < m; ++k) {
      if (k != best && pinned(i, k)) return std::nullopt;
    }
  }
  GainTable gains(w.entries(), m, mip.alpha, assign);
  auto movable = [&](int i) { return !pinned(i, assign[i]); };
  if (!repair(assign, m, gains, movable, allowed)) return std::nullopt;
  return CycleClustering(m, std::move(assign));
}

CycleClustering exchange_improvement(const FlowMatrix& w, const CycleClustering& c, double alpha,
                                     std::vector<double>* trace) {
  const int n = c.bins();
  const int m = c.clusters();
  if (w.size() != n) throw Error(Errc::DimensionMismatch, "flow matrix does not match the clustering");
  std::vector<int> assign = c.assignment();
  std::vector<int> size(m, 0);
  for (int k : assign) ++size[k];
  GainTable gains(w.entries(), m, alpha, assign);

  double value = 0.0;
  if (trace) {
    value = objective(w, c, alpha).total;
    trace->push_back(value);
  }
  for (;;) {
    int best_bin = -1, best_to = -1;
    double best_gain = kImproveTol;
    for (int i = 0; i < n; ++i) {
      const int from = assign[i];
      if (size[from] < 2) continue;
      for (int l = 0; l < m; ++l) {
        if (l == from) continue;
        const double gain = gains(i, l) - gains(i, from);
        if (gain > best_gain) {
          best_gain = gain;
          best_bin = i;
          best_to = l;
        }
      }
    }
    if (best_bin < 0) break;
    const int from = assign[best_bin];
    gains.move(best_bin, from, best_to);
    assign[best_bin] = best_to;
    --size[from];
    ++size[best_to];
    if (trace) {
      value += best_gain;
      trace->push_back(value);
    }
  }
  return CycleClustering(m, std::move(assign));
}

BruteForceResult brute_force(const FlowMatrix& w, int m, double alpha) {
  const int n = w.size();
  if (m < 1 || m > n) throw Error(Errc::InvalidClusterCount, "need 1 <= m <= n");
  if ((n - 1) * std::log10(static_cast<double>(m)) > 7.0 + 1e-12)
    throw Error(Errc::TooLarge, "m^(n-1) exceeds 1e7 assignments");
  const Matrix& q = w.entries();

  std::vector<int> assign(n, 0);
  std::vector<int> size(m, 0);
  size[0] = 1;
  std::vector<double> partial(n + 1, 0.0);

  std::optional<CycleClustering> best;
  ObjectiveValue best_value;
  double best_partial = -std::numeric_limits<double>::infinity();
  long evaluated = 0;

  // Depth-first in lexicographic order; partial[i] is the pair sum over bins < i.
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n) {
      ++evaluated;
      if (partial[n] < best_partial - 1e-12) return;
      CycleClustering c(m, assign);
      const ObjectiveValue v = objective(w, c, alpha);
      if (!best || v.total > best_value.total) {
        best.emplace(std::move(c));
        best_value = v;
        best_partial = std::max(best_partial, partial[n]);
      }
      return;
    }
    int empty = 0;
    for (int k = 0; k < m; ++k) empty += size[k] == 0;
    for (int k = 0; k < m; ++k) {
      if (size[k] > 0 && empty > n - i - 1) continue;  // too few bins left to fill every cluster
      assign[i] = k;
      double add = 0.0;
      for (int j = 0; j < i; ++j) add += pair_contribution(q, i, j, k, assign[j], m, alpha);
      partial[i + 1] = partial[i] + add;
      ++size[k];
      self(self, i + 1);
      --size[k];
    }
  };
  partial[1] = 0.0;
  recurse(recurse, 1);
  return {std::move(*best), best_value, evaluated};
}

}  // namespace cycleclust
