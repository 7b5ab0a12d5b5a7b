#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cycleclust/mip.hpp"

namespace cycleclust {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, TimeLimit };

std::string_view to_string(LpStatus s);

/// Tightens the bounds of one variable; the effective bounds are the
/// intersection with the model bounds.
struct BoundOverride {
  int var = 0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Per-column basis status (structurals first, then one logical per row).
struct LpBasis {
  enum : std::uint8_t { Basic = 0, AtLower = 1, AtUpper = 2 };
  std::vector<std::uint8_t> status;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> values;         ///< structural values
  std::vector<double> reduced_costs;  ///< obj_j − yᵀa_j; ≤ 0 at lower, ≥ 0 at upper when optimal
  std::vector<double> row_duals;      ///< y
  long iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  std::shared_ptr<const LpBasis> basis;
};

struct LpOptions {
  long iteration_limit = 0;  ///< 0 → 200·(rows + cols)
  int bland_after = 1000;    ///< consecutive degenerate pivots before Bland's rule
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::shared_ptr<const LpBasis> warm_start;
};

/// Bounded-variable dual simplex on the revised form with a sparse LU of the
/// basis and product-form updates. Infinite bounds are boxed at ±1e6 in scaled
/// units; an optimum resting on a box is re-solved with the box widened by 1e3
/// (twice at most) and is reported as Unbounded if it still has a nonzero
/// reduced cost there.
class SimplexSolver {
 public:
  explicit SimplexSolver(const MipInstance& mip);
  ~SimplexSolver();
  SimplexSolver(SimplexSolver&&) noexcept;
  SimplexSolver& operator=(SimplexSolver&&) noexcept;

  int rows() const noexcept;
  int cols() const noexcept;

  /// Throws Error(NumericalFailure) when the basis stays ill-conditioned after
  /// one cold restart.
  LpResult solve(std::span<const BoundOverride> overrides, const LpOptions& options = {}) const;

  struct Model;

 private:
  std::unique_ptr<Model> model_;
};

LpResult solve_lp(const MipInstance& mip, std::span<const BoundOverride> overrides = {}, const LpOptions& options = {});

}  // namespace cycleclust
