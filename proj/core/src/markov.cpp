#include "cycleclust/markov.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "cycleclust/clustering.hpp"
#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << " must be square and non-empty, got " << m.rows() << "x" << m.cols();
    throw Error(Errc::DimensionMismatch, os.str());
  }
  if (!m.allFinite()) throw Error(Errc::NonFinite, std::string(what) + " has non-finite entries");
}

double left_residual(const Vector& v, const Matrix& p) {
  return ((p.transpose() * v) - v).lpNorm<Eigen::Infinity>();
}

// One direct solve of πᵀ(P − I) = 0, Σπ = 1 started from the power-iteration
// answer; kept only when it lowers the residual and stays nonnegative.
Vector polish(const Vector& pi, const Matrix& p) {
  const int n = static_cast<int>(pi.size());
  Matrix a = p.transpose() - Matrix::Identity(n, n);
  a.row(n - 1).setOnes();
  Vector rhs = Vector::Zero(n);
  rhs(n - 1) = 1.0;
  Vector refined = a.partialPivLu().solve(rhs);
  if (!refined.allFinite() || refined.minCoeff() < -1e-12) return pi;
  refined = refined.cwiseMax(0.0);
  refined /= refined.sum();
  return left_residual(refined, p) < left_residual(pi, p) ? refined : pi;
}

struct PowerRun {
  Vector averaged;
  double residual = 0.0;
};

// One power-iteration step from `v`; returns the Cesàro average of v and vP
// together with its residual. Advances `v` in place.
PowerRun power_step(Vector& v, const Matrix& pt) {
  Vector next = pt * v;
  PowerRun run;
  run.averaged = 0.5 * (v + next);
  run.averaged /= run.averaged.sum();
  // residual of the average equals ||v P^2 - v|| / 2
  run.residual = 0.5 * ((pt * next) - v).lpNorm<Eigen::Infinity>();
  v = std::move(next);
  v /= v.sum();
  return run;
}

}  // namespace

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NegativeEntry: return "NegativeEntry";
    case Errc::RowSumViolation: return "RowSumViolation";
    case Errc::NotConverged: return "NotConverged";
    case Errc::NonUnique: return "NonUnique";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::OverlappingSets: return "OverlappingSets";
    case Errc::NonFinite: return "NonFinite";
    case Errc::InvalidClustering: return "InvalidClustering";
    case Errc::InvalidClusterCount: return "InvalidClusterCount";
    case Errc::FractionalSolution: return "FractionalSolution";
    case Errc::InfeasibleAssignment: return "InfeasibleAssignment";
    case Errc::ObjectiveMismatch: return "ObjectiveMismatch";
    case Errc::IterationLimit: return "IterationLimit";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::TooLarge: return "TooLarge";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::DegenerateRow: return "DegenerateRow";
    case Errc::NonFiniteState: return "NonFiniteState";
    case Errc::InvalidTerminalCount: return "InvalidTerminalCount";
    case Errc::IsolatedNonTerminal: return "IsolatedNonTerminal";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

TransitionMatrix validate_stochastic(Matrix raw) {
  require_square_finite(raw, "transition matrix");
  const int n = static_cast<int>(raw.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (raw(i, j) < 0.0) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << raw(i, j);
        throw Error(Errc::NegativeEntry, os.str());
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    const double sum = raw.row(i).sum();
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "row " << i << " sums to " << sum;
      throw Error(Errc::RowSumViolation, os.str());
    }
  }
  return TransitionMatrix(std::move(raw));
}

StationaryDistribution::StationaryDistribution(Vector pi) : pi_(std::move(pi)) {
  if (pi_.size() == 0 || !pi_.allFinite())
    throw Error(Errc::InvalidArgument, "stationary distribution must be a finite, non-empty vector");
  if ((pi_.array() < 0.0).any())
    throw Error(Errc::NegativeEntry, "stationary distribution has a negative entry");
  if (std::abs(pi_.sum() - 1.0) > 1e-9)
    throw Error(Errc::InvalidArgument, "stationary distribution does not sum to 1");
}

StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               const StationaryOptions& options) {
  if (!(options.tol > 0.0) || options.max_iter <= 0)
    throw Error(Errc::InvalidArgument, "tolerance and iteration limit must be positive");
  const int n = p.size();
  const Matrix pt = p.entries().transpose();

  Vector uniform = Vector::Constant(n, 1.0 / n);
  Vector random(n);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  for (int i = 0; i < n; ++i) random(i) = unit(rng);
  random /= random.sum();

  const double uniqueness_tol = 100.0 * options.tol;
  double previous_gap = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < options.max_iter; ++iter) {
    const PowerRun a = power_step(uniform, pt);
    const PowerRun b = power_step(random, pt);
    if (a.residual > options.tol || b.residual > options.tol) continue;

    const double gap = (a.averaged - b.averaged).lpNorm<Eigen::Infinity>();
    if (gap <= uniqueness_tol) {
      Vector pi = a.averaged.cwiseMax(0.0);
      pi /= pi.sum();
      return StationaryDistribution(polish(pi, p.entries()));
    }
    // Both runs sit at fixed points; if they stopped approaching each other the
    // eigenvalue 1 is not simple.
    if (previous_gap - gap <= 1e-15) {
      std::ostringstream os;
      os << "two starting vectors converged to fixed points " << gap << " apart";
      throw Error(Errc::NonUnique, os.str());
    }
    previous_gap = gap;
  }
  const double residual = std::max(left_residual(uniform, p.entries()), left_residual(random, p.entries()));
  if (residual <= options.tol) {
    throw Error(Errc::NonUnique, "starting vectors did not merge within the iteration limit");
  }
  std::ostringstream os;
  os << "power iteration did not converge in " << options.max_iter << " iterations";
  throw Error(Errc::NotConverged, os.str());
}

FlowMatrix FlowMatrix::from_entries(Matrix w) {
  require_square_finite(w, "flow matrix");
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = 0; j < w.cols(); ++j) {
      if (w(i, j) < 0.0) {
        std::ostringstream os;
        os << "entry (" << i << "," << j << ") = " << w(i, j);
        throw Error(Errc::NegativeEntry, os.str());
      }
    }
  }
  return FlowMatrix(std::move(w));
}

FlowMatrix flow_matrix(const TransitionMatrix& p, const StationaryDistribution& pi) {
  if (p.size() != pi.size()) {
    std::ostringstream os;
    os << "matrix has " << p.size() << " bins, distribution has " << pi.size();
    throw Error(Errc::DimensionMismatch, os.str());
  }
  return FlowMatrix(pi.values().asDiagonal() * p.entries());
}

double net_flow(const FlowMatrix& w, std::span<const int> a, std::span<const int> b) {
  const int n = w.size();
  std::vector<char> in_a(n, 0);
  for (int i : a) {
    if (i < 0 || i >= n) throw Error(Errc::DimensionMismatch, "bin index out of range");
    in_a[i] = 1;
  }
  for (int j : b) {
    if (j < 0 || j >= n) throw Error(Errc::DimensionMismatch, "bin index out of range");
    if (in_a[j]) throw Error(Errc::OverlappingSets, "bin " + std::to_string(j) + " is in both sets");
  }
  const Matrix& q = w.entries();
  double total = 0.0;
  for (int i : a) {
    for (int j : b) total += q(i, j) - q(j, i);
  }
  return total;
}

double coherence(const FlowMatrix& w, std::span<const int> a) {
  const int n = w.size();
  const Matrix& q = w.entries();
  double total = 0.0;
  for (int i : a) {
    if (i < 0 || i >= n) throw Error(Errc::DimensionMismatch, "bin index out of range");
    for (int j : a) total += q(i, j);
  }
  return total;
}

ProjectedMatrix project(const FlowMatrix& w, const CycleClustering& clustering) {
  if (clustering.bins() != w.size()) {
    std::ostringstream os;
    os << "clustering covers " << clustering.bins() << " bins, matrix has " << w.size();
    throw Error(Errc::DimensionMismatch, os.str());
  }
  const int m = clustering.clusters();
  const int n = w.size();
  const Matrix& q = w.entries();
  ProjectedMatrix out{Matrix::Zero(m, m)};
  for (int i = 0; i < n; ++i) {
    const int k = clustering.cluster_of(i);
    for (int j = 0; j < n; ++j) out.entries(k, clustering.cluster_of(j)) += q(i, j);
  }
  return out;
}

double epsilon_structure_residual(const Matrix& delta) {
  if (delta.rows() != 3 || delta.cols() != 3)
    throw Error(Errc::DimensionMismatch, "epsilon structure is defined for 3x3 matrices");
  const double eps = delta(0, 1);
  Matrix pattern(3, 3);
  pattern << 0, 1, -1, -1, 0, 1, 1, -1, 0;
  return (delta - eps * pattern).lpNorm<Eigen::Infinity>();
}

}  // namespace cycleclust
