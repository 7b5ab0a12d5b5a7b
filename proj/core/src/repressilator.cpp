#include "cycleclust/repressilator.hpp"

#include <cmath>

#include "cycleclust/error.hpp"

namespace cycleclust {

State6 repressilator_rhs(const State6& s, const RepressilatorParams& params) {
  State6 d;
  for (int g = 0; g < 3; ++g) {
    const int m = 2 * g;
    const int p = m + 1;
    const int repressor = 2 * ((g + 2) % 3) + 1;  // A←C, B←A, C←B
    d[m] = -s[m] + params.v / (1.0 + std::pow(s[repressor], params.hill)) + params.v0;
    d[p] = -params.beta * (s[p] - s[m]);
  }
  return d;
}

Vector integrate_rk4(const OdeRhs& rhs, Vector y, double t_end, double dt) {
  if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "step size must be positive");
  if (!(t_end >= 0.0)) throw Error(Errc::InvalidArgument, "end time must be non-negative");
  const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  double t = 0.0;
  for (long k = 0; k < steps; ++k) {
    const double h = k + 1 == steps ? t_end - t : dt;
    const Vector k1 = rhs(y);
    const Vector k2 = rhs(y + 0.5 * h * k1);
    const Vector k3 = rhs(y + 0.5 * h * k2);
    const Vector k4 = rhs(y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (!y.allFinite()) throw Error(Errc::NonFiniteState, "state became non-finite at t=" + std::to_string(t));
  }
  return y;
}

namespace {

double radical_inverse(long index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int c = 2; static_cast<int>(primes.size()) < count; ++c) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(c);
  }
  return primes;
}

}  // namespace

Matrix low_discrepancy_points(int count, int dim, double lo, double hi) {
  if (count < 1 || dim < 1) throw Error(Errc::InvalidArgument, "count and dim must be positive");
  if (!(lo < hi)) throw Error(Errc::InvalidArgument, "need lo < hi");
  const auto primes = first_primes(dim);
  Matrix out(count, dim);
  for (int i = 0; i < count; ++i) {
    for (int d = 0; d < dim; ++d) out(i, d) = lo + (hi - lo) * radical_inverse(i + 1, primes[d]);
  }
  return out;
}

TransitionMatrix kernel_transition_matrix(const Matrix& starts, const Matrix& ends, double scale) {
  if (starts.rows() != ends.rows() || starts.cols() != ends.cols())
    throw Error(Errc::DimensionMismatch, "starts and ends differ in shape");
  const int n = static_cast<int>(starts.rows());
  Matrix p(n, n);
  for (int i = 0; i < n; ++i) {
    Vector logits = -scale * (ends.rowwise() - starts.row(i)).rowwise().norm();
    const double shift = logits.maxCoeff();
    Vector e = (logits.array() - shift).exp().matrix();
    p.row(i) = (e / e.sum()).transpose();
  }
  return validate_stochastic(std::move(p));
}

RepressilatorData repressilator_pipeline(const RepressilatorOptions& options) {
  Matrix starts = low_discrepancy_points(options.count, 6, options.lo, options.hi);
  Matrix ends(starts.rows(), starts.cols());
  const auto params = options.params;
  const OdeRhs rhs = [&params](const Vector& s) -> Vector { return repressilator_rhs(State6(s), params); };
  for (int i = 0; i < starts.rows(); ++i)
    ends.row(i) = integrate_rk4(rhs, starts.row(i).transpose(), options.t_end, options.dt).transpose();
  TransitionMatrix p = kernel_transition_matrix(starts, ends, options.kernel_scale);
  return {std::move(starts), std::move(ends), std::move(p)};
}

}  // namespace cycleclust
