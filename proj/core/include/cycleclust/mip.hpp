#pragma once

#include <span>
#include <string>
#include <vector>

#include "cycleclust/clustering.hpp"
#include "cycleclust/markov.hpp"

namespace cycleclust {

enum class VarKind { Binary, Continuous };
enum class RowSense { LessEqual, Equal, GreaterEqual };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  double lower = 0.0;
  double upper = 0.0;
  double objective = 0.0;

  friend bool operator==(const Variable&, const Variable&) = default;
};

struct LinearTerm {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::Equal;
  double rhs = 0.0;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Product variable y = a·b over two binaries.
struct ProductVar {
  int var = 0;
  int a = 0;
  int b = 0;

  friend bool operator==(const ProductVar&, const ProductVar&) = default;
};

/// Linearized cycle-clustering model (always a maximization). The structural
/// index tables (`x_index`, `products`, …) are empty for general LPs built by
/// hand, which the simplex also accepts.
struct MipInstance {
  int n = 0;
  int m = 0;
  double alpha = 0.0;

  std::vector<Variable> variables;
  std::vector<Constraint> constraints;

  std::vector<int> x_index;  ///< row-major (bin, cluster) -> variable id
  std::vector<ProductVar> flow_products;       ///< e_{ijk} = x_ik · x_{jφ(k)}
  std::vector<ProductVar> coherence_products;  ///< c_{ijk} = x_ik · x_jk
  std::vector<int> flow_vars;                  ///< f_k
  std::vector<int> coherence_vars;             ///< g_k

  int num_variables() const noexcept { return static_cast<int>(variables.size()); }
  int num_constraints() const noexcept { return static_cast<int>(constraints.size()); }
  int x(int bin, int cluster) const { return x_index[static_cast<std::size_t>(bin) * m + cluster]; }

  double objective_value(std::span<const double> values) const;

  friend bool operator==(const MipInstance&, const MipInstance&) = default;
};

/// Builds assignment, set-cover, net-flow and coherence rows with the product
/// terms linearized by y ≤ a, y ≤ b, y ≥ a + b − 1, y ≥ 0, and fixes x_{0,0} = 1.
/// Products whose coefficient is zero are not created; for the net-flow terms
/// |q_ij − q_ji| ≤ 1e−14·max|q| counts as zero.
MipInstance build_mip(const FlowMatrix& w, int m, double alpha);

/// CPLEX-LP-style text. Deterministic for a fixed instance.
std::string export_lp(const MipInstance& mip);
MipInstance parse_lp(const std::string& text);

/// Rounds the x part of a 0/1 solution into a clustering and cross-checks the
/// model objective against the objective recomputed from `w`.
CycleClustering clustering_from_solution(const MipInstance& mip, std::span<const double> values,
                                         const FlowMatrix& w);

/// Values every auxiliary variable takes when the x block encodes `c`.
std::vector<double> solution_from_clustering(const MipInstance& mip, const CycleClustering& c);

}  // namespace cycleclust
