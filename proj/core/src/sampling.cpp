#include "cycleclust/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

constexpr double kXs = 0.5;
const double kYs = 0.5 * std::sqrt(3.0);
constexpr double kWellDepth = 8.0;

}  // namespace

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Omega3: return "omega3";
    case PotentialKind::Omega4: return "omega4";
    case PotentialKind::Omega6: return "omega6";
    case PotentialKind::Flat: return "flat";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
  if (name == "omega3") return PotentialKind::Omega3;
  if (name == "omega4") return PotentialKind::Omega4;
  if (name == "omega6") return PotentialKind::Omega6;
  if (name == "flat") return PotentialKind::Flat;
  throw Error(Errc::InvalidArgument, "unknown potential '" + std::string(name) + "'");
}

Potential::Potential(PotentialKind kind) : kind_(kind), bump_(0.0) {
  switch (kind) {
    case PotentialKind::Omega3:
      bump_ = 6.0;
      minima_ = {{kXs, -kYs}, {-kXs, -kYs}, {0.0, 1.0}};
      break;
    case PotentialKind::Omega4:
      bump_ = 4.0;
      minima_ = {{0.0, 1.5}, {1.0, 0.0}, {-1.0, 0.0}, {0.0, -1.5}};
      break;
    case PotentialKind::Omega6:
      bump_ = 4.0;
      minima_ = {{2 * kXs, -2 * kYs}, {-2 * kXs, -2 * kYs}, {-2 * kXs, 2 * kYs},
                 {2 * kXs, 2 * kYs},  {-2.0, 1.0},         {2.0, 0.0}};
      break;
    case PotentialKind::Flat: break;
  }
}

double Potential::operator()(const Point2& p) const {
  if (kind_ == PotentialKind::Flat) return 0.0;
  double v = bump_ * std::exp(-3.0 * p.squaredNorm());
  for (const auto& c : minima_) v -= kWellDepth * std::exp(-(p - c).squaredNorm());
  return v;
}

DriftState update_drift(DriftState state, const Point2& position) {
  if (state.targets.empty()) {
    state.drift.setZero();
    return state;
  }
  const int count = static_cast<int>(state.targets.size());
  if ((position - state.targets[state.target]).norm() < state.radius) state.target = (state.target + 1) % count;
  const Point2 to = state.targets[state.target] - position;
  const double len = to.norm();
  state.drift = len > 0.0 ? Point2(state.magnitude * to / len) : Point2::Zero();
  return state;
}

Trajectory hmc_with_drift(const Potential& potential, const HmcParams& params) {
  if (!(params.beta > 0.0)) throw Error(Errc::InvalidArgument, "beta must be positive");
  if (params.steps < 2) throw Error(Errc::InvalidArgument, "need at least 2 steps");
  if (!(params.noise_std >= 0.0)) throw Error(Errc::InvalidArgument, "noise std must be non-negative");

  Trajectory out;
  out.seed = params.seed;
  out.beta = params.beta;
  out.drift = params.drift;
  out.points.resize(params.steps, 2);

  DriftState drift;
  drift.targets = params.targets.empty() ? potential.minima() : params.targets;
  drift.magnitude = params.drift;
  drift.radius = params.target_radius;

  Point2 x = params.start ? *params.start : (drift.targets.empty() ? Point2::Zero() : drift.targets.front());
  double energy = potential(x);
  drift = update_drift(std::move(drift), x);
  out.points.row(0) = x.transpose();

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> noise(0.0, params.noise_std);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int i = 1; i < params.steps; ++i) {
    const double rx = noise(rng);
    const double ry = noise(rng);
    const double u = uniform(rng);
    const Point2 proposal = x + Point2(rx, ry) + drift.drift;
    const double e_new = potential(proposal);
    ++out.proposals;
    if (u <= std::exp(-params.beta * (e_new - energy))) {
      ++out.accepted;
      if (e_new > energy) ++out.accepted_uphill;
      x = proposal;
      energy = e_new;
      drift = update_drift(std::move(drift), x);
    }
    out.points.row(i) = x.transpose();
  }
  return out;
}

std::string trajectory_csv(const Matrix& points, const std::vector<std::string>& names) {
  const int d = static_cast<int>(points.cols());
  std::vector<std::string> cols = names;
  if (cols.empty()) {
    if (d == 2) {
      cols = {"x", "y"};
    } else {
      for (int c = 0; c < d; ++c) cols.push_back("x" + std::to_string(c + 1));
    }
  }
  if (static_cast<int>(cols.size()) != d) throw Error(Errc::DimensionMismatch, "column names do not match dimension");
  std::string out = "step";
  for (const auto& c : cols) out += "," + c;
  out += '\n';
  char buf[40];
  for (int r = 0; r < points.rows(); ++r) {
    out += std::to_string(r);
    for (int c = 0; c < d; ++c) {
      std::snprintf(buf, sizeof buf, ",%.17g", points(r, c));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<int> select_bin_centers(const Matrix& points, int n) {
  const int count = static_cast<int>(points.rows());
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one center");
  if (count == 0) throw Error(Errc::TooFewPoints, "empty trajectory");
  std::vector<int> centers{0};
  Vector nearest = (points.rowwise() - points.row(0)).rowwise().norm();
  while (static_cast<int>(centers.size()) < n) {
    int far = 0;
    const double dist = nearest.maxCoeff(&far);
    if (!(dist > 0.0)) {
      throw Error(Errc::TooFewPoints, "only " + std::to_string(centers.size()) + " distinct points, " +
                                          std::to_string(n) + " centers requested");
    }
    centers.push_back(far);
    nearest = nearest.cwiseMin((points.rowwise() - points.row(far)).rowwise().norm());
  }
  return centers;
}

double fill_distance(const Matrix& points, const Matrix& centers) {
  double h = 0.0;
  for (int r = 0; r < points.rows(); ++r) {
    const double d = (centers.rowwise() - points.row(r)).rowwise().norm().minCoeff();
    h = std::max(h, d);
  }
  return h;
}

Vector rbf_membership(const Vector& x, const Matrix& centers) {
  if (centers.rows() == 0) throw Error(Errc::InvalidArgument, "need at least one center");
  if (centers.cols() != x.size()) throw Error(Errc::DimensionMismatch, "point and centers differ in dimension");
  Vector logits = -(centers.rowwise() - x.transpose()).rowwise().squaredNorm();
  const double shift = logits.maxCoeff();
  Vector e = (logits.array() - shift).exp().matrix();
  return e / e.sum();
}

TransitionMatrix hmc_transition_matrix(const Matrix& points, const Matrix& centers, int lag) {
  if (lag < 1) throw Error(Errc::InvalidArgument, "lag must be at least 1");
  const int count = static_cast<int>(points.rows());
  if (count <= lag) throw Error(Errc::InvalidArgument, "trajectory shorter than the lag");
  const int n = static_cast<int>(centers.rows());
  Matrix phi(count, n);
  for (int k = 0; k < count; ++k) phi.row(k) = rbf_membership(points.row(k).transpose(), centers).transpose();
  const int pairs = count - lag;
  const Matrix num = phi.topRows(pairs).transpose() * phi.bottomRows(pairs);
  const Vector den = phi.topRows(pairs).colwise().sum().transpose();
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(den[i] >= 1e-300)) throw Error(Errc::DegenerateRow, "bin " + std::to_string(i) + " has no membership mass");
    p.row(i) = num.row(i) / den[i];
  }
  return validate_stochastic(std::move(p));
}

Matrix gather_rows(const Matrix& points, const std::vector<int>& rows) {
  Matrix out(static_cast<int>(rows.size()), points.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<int>(r)) = points.row(rows[r]);
  return out;
}

}  // namespace cycleclust
