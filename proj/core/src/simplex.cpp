#include "cycleclust/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBox = 1e6;
constexpr double kBoxGrowth = 1e3;
constexpr int kBoxWidenings = 3;
constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kMaxPivotTol = 1e-5;
constexpr double kMaxCondition = 1e12;
constexpr int kRefactorEvery = 50;
constexpr double kMaxScaleExponent = 20.0;
constexpr int kMaxUnshiftRounds = 20;
constexpr int kDeadlineStride = 64;

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Lu = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

struct IllConditioned {};

double nearest_power_of_two(double v) {
  return std::exp2(std::clamp(std::round(std::log2(v)), -kMaxScaleExponent, kMaxScaleExponent));
}

// A few passes of geometric-mean row/column scaling followed by column
// equilibration. Factors are powers of two so scaling is exact.
void geometric_scaling(const SpMat& a, std::vector<double>& row_scale, std::vector<double>& col_scale) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  row_scale.assign(m, 1.0);
  col_scale.assign(n, 1.0);
  std::vector<double> lo, hi;
  for (int pass = 0; pass < 4; ++pass) {
    lo.assign(m, kInf);
    hi.assign(m, 0.0);
    for (int j = 0; j < n; ++j) {
      for (SpMat::InnerIterator it(a, j); it; ++it) {
        const double v = std::abs(it.value()) * col_scale[j];
        lo[it.row()] = std::min(lo[it.row()], v);
        hi[it.row()] = std::max(hi[it.row()], v);
      }
    }
    for (int i = 0; i < m; ++i) {
      if (hi[i] > 0.0) row_scale[i] = nearest_power_of_two(1.0 / std::sqrt(lo[i] * hi[i]));
    }
    for (int j = 0; j < n; ++j) {
      double cl = kInf, ch = 0.0;
      for (SpMat::InnerIterator it(a, j); it; ++it) {
        const double v = std::abs(it.value()) * row_scale[it.row()];
        cl = std::min(cl, v);
        ch = std::max(ch, v);
      }
      if (ch > 0.0) col_scale[j] = nearest_power_of_two(1.0 / std::sqrt(cl * ch));
    }
  }
  for (int j = 0; j < n; ++j) {
    double ch = 0.0;
    for (SpMat::InnerIterator it(a, j); it; ++it) ch = std::max(ch, std::abs(it.value()) * row_scale[it.row()]);
    if (ch > 0.0) col_scale[j] = nearest_power_of_two(1.0 / ch);
  }
}

}  // namespace

std::string_view to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::TimeLimit: return "time-limit";
  }
  return "unknown";
}

struct SimplexSolver::Model {
  int rows = 0;
  int cols = 0;
  SpMat a;      // scaled: diag(row_scale) · A · diag(col_scale)
  SpMat a_raw;  // as given
  std::vector<double> row_scale;
  std::vector<double> col_scale;
  std::vector<double> cost;   // scaled minimization cost (= −objective · col_scale)
  std::vector<double> lower;  // unscaled structural then logical bounds
  std::vector<double> upper;
};

namespace {

struct Eta {
  int row;
  double pivot;
  std::vector<std::pair<int, double>> column;  // off-pivot entries
};

class Run {
 public:
  Run(const SimplexSolver::Model& model, std::vector<double> lower, std::vector<double> upper,
      const LpOptions& options, double box)
      : md_(model),
        m_(model.rows),
        n_(model.cols),
        lo_(std::move(lower)),
        up_(std::move(upper)),
        options_(options) {
    const int total = n_ + m_;
    lo_art_.assign(total, false);
    up_art_.assign(total, false);
    for (int j = 0; j < total; ++j) {
      if (lo_[j] == -kInf) {
        lo_[j] = std::min(up_[j], 0.0) - box;
        lo_art_[j] = true;
      }
      if (up_[j] == kInf) {
        up_[j] = std::max(lo_[j], 0.0) + box;
        up_art_[j] = true;
      }
    }
    // 1e-9 in scaled units and in the caller's units, whichever is tighter
    dual_tol_.resize(total);
    for (int j = 0; j < total; ++j) {
      const double unscale = j < n_ ? md_.col_scale[j] : 1.0 / md_.row_scale[j - n_];
      dual_tol_[j] = kDualTol * std::min(1.0, unscale);
    }
    cost_.assign(total, 0.0);
    std::copy(md_.cost.begin(), md_.cost.end(), cost_.begin());
    limit_ = options.iteration_limit > 0 ? options.iteration_limit : 200L * (m_ + n_);
  }

  LpResult run(const LpBasis* warm) {
    if (!(warm && install_warm(*warm))) install_cold();
    return iterate();
  }

  bool rested_on_box() const noexcept { return on_box_; }

 private:
  // ---- linear algebra ------------------------------------------------------

  void refactor() {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(m_) * 3);
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      if (j >= n_) {
        trip.emplace_back(j - n_, p, -1.0);
      } else {
        for (SpMat::InnerIterator it(md_.a, j); it; ++it) trip.emplace_back(it.row(), p, it.value());
      }
    }
    basis_.resize(m_, m_);
    basis_.setFromTriplets(trip.begin(), trip.end());
    basis_.makeCompressed();
    lu_.analyzePattern(basis_);
    lu_.factorize(basis_);
    etas_.clear();
    if (lu_.info() != Eigen::Success) throw IllConditioned{};
    if (condition_estimate() > kMaxCondition) throw IllConditioned{};
    checkpoint_ = status_;
  }

  // Hager's 1-norm estimate of ‖B‖·‖B⁻¹‖.
  double condition_estimate() {
    double norm_b = 0.0;
    for (int c = 0; c < m_; ++c) {
      double s = 0.0;
      for (SpMat::InnerIterator it(basis_, c); it; ++it) s += std::abs(it.value());
      norm_b = std::max(norm_b, s);
    }
    Eigen::VectorXd x = Eigen::VectorXd::Constant(m_, 1.0 / m_);
    double est = 0.0;
    int last = -1;
    for (int step = 0; step < 5; ++step) {
      Eigen::VectorXd y = lu_.solve(x);
      if (!y.allFinite()) return kInf;
      est = y.lpNorm<1>();
      Eigen::VectorXd xi = y.unaryExpr([](double v) { return v >= 0 ? 1.0 : -1.0; });
      Eigen::VectorXd z = lu_.transpose().solve(xi);
      int jmax = 0;
      const double zmax = z.cwiseAbs().maxCoeff(&jmax);
      if (zmax <= z.dot(x) || jmax == last) break;
      x.setZero();
      x[jmax] = 1.0;
      last = jmax;
    }
    return norm_b * est;
  }

  void ftran(Eigen::VectorXd& v) {
    v = lu_.solve(v).eval();
    for (const Eta& e : etas_) {
      const double vr = v[e.row];
      if (vr == 0.0) continue;
      const double t = vr / e.pivot;
      v[e.row] = t;
      for (const auto& [i, w] : e.column) v[i] -= w * t;
    }
  }

  void btran(Eigen::VectorXd& v) {
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = v[it->row];
      for (const auto& [i, w] : it->column) s -= w * v[i];
      v[it->row] = s / it->pivot;
    }
    v = lu_.transpose().solve(v).eval();
  }

  void load_column(int j, Eigen::VectorXd& v) const {
    v.setZero(m_);
    if (j >= n_) {
      v[j - n_] = -1.0;
    } else {
      for (SpMat::InnerIterator it(md_.a, j); it; ++it) v[it.row()] += it.value();
    }
  }

  double dot_column(int j, const Eigen::VectorXd& y) const {
    if (j >= n_) return -y[j - n_];
    double s = 0.0;
    for (SpMat::InnerIterator it(md_.a, j); it; ++it) s += it.value() * y[it.row()];
    return s;
  }

  // ---- basis setup ---------------------------------------------------------

  void set_nonbasic_values() {
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == LpBasis::AtLower) x_[j] = lo_[j];
      if (status_[j] == LpBasis::AtUpper) x_[j] = up_[j];
    }
  }

  void compute_primal() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == LpBasis::Basic || x_[j] == 0.0) continue;
      if (j >= n_) {
        rhs[j - n_] += x_[j];
      } else {
        for (SpMat::InnerIterator it(md_.a, j); it; ++it) rhs[it.row()] -= it.value() * x_[j];
      }
    }
    ftran(rhs);
    for (int p = 0; p < m_; ++p) x_[head_[p]] = rhs[p];
  }

  void compute_duals() {
    y_.setZero(m_);
    for (int p = 0; p < m_; ++p) y_[p] = cost_[head_[p]];
    btran(y_);
    for (int j = 0; j < n_ + m_; ++j) d_[j] = status_[j] == LpBasis::Basic ? 0.0 : cost_[j] - dot_column(j, y_);
  }

  // Moves nonbasics with a wrong-sign reduced cost to their opposite bound.
  bool flip_wrong_signs() {
    bool flipped = false;
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == LpBasis::Basic || lo_[j] == up_[j]) continue;
      if (status_[j] == LpBasis::AtLower && d_[j] < -dual_tol_[j]) {
        status_[j] = LpBasis::AtUpper;
        x_[j] = up_[j];
        flipped = true;
      } else if (status_[j] == LpBasis::AtUpper && d_[j] > dual_tol_[j]) {
        status_[j] = LpBasis::AtLower;
        x_[j] = lo_[j];
        flipped = true;
      }
    }
    return flipped;
  }

  void recompute() {
    refactor();
    compute_duals();
    flip_wrong_signs();
    compute_primal();
  }

  // Falls back to the last basis that factorized cleanly and tightens the pivot
  // tolerance. Gives up once the tolerance is at its ceiling.
  void recover() {
    if (checkpoint_.empty() || pivot_tol_ >= kMaxPivotTol) throw IllConditioned{};
    pivot_tol_ = std::min(pivot_tol_ * 100.0, kMaxPivotTol);
    status_ = checkpoint_;
    int p = 0;
    std::fill(pos_.begin(), pos_.end(), -1);
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == LpBasis::Basic) {
        head_[p] = j;
        pos_[j] = p++;
      }
    }
    set_nonbasic_values();
    recompute();
  }

  void stable_recompute() {
    try {
      recompute();
    } catch (const IllConditioned&) {
      recover();
    }
  }

  void allocate() {
    const int total = n_ + m_;
    x_.assign(total, 0.0);
    d_.assign(total, 0.0);
    pos_.assign(total, -1);
    head_.assign(m_, -1);
  }

  void install_cold() {
    allocate();
    status_.assign(n_ + m_, LpBasis::AtLower);
    for (int j = 0; j < n_; ++j) {
      if (cost_[j] < 0.0 && lo_[j] != up_[j]) status_[j] = LpBasis::AtUpper;
    }
    for (int i = 0; i < m_; ++i) {
      head_[i] = n_ + i;
      pos_[n_ + i] = i;
      status_[n_ + i] = LpBasis::Basic;
    }
    set_nonbasic_values();
    recompute();
  }

  bool install_warm(const LpBasis& warm) {
    if (static_cast<int>(warm.status.size()) != n_ + m_) return false;
    if (std::count(warm.status.begin(), warm.status.end(), LpBasis::Basic) != m_) return false;
    allocate();
    status_ = warm.status;
    int p = 0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == LpBasis::Basic) {
        head_[p] = j;
        pos_[j] = p++;
      }
    }
    set_nonbasic_values();
    try {
      recompute();
    } catch (const IllConditioned&) {
      return false;
    }
    return true;
  }

  // ---- iterations ----------------------------------------------------------

  // Returns the basis position of the leaving variable, or −1 if primal feasible.
  int choose_leaving(bool bland) const {
    int best = -1;
    double best_val = kPrimalTol;
    for (int p = 0; p < m_; ++p) {
      const int j = head_[p];
      const double infeas = std::max(lo_[j] - x_[j], x_[j] - up_[j]);
      if (infeas <= kPrimalTol) continue;
      if (bland) {
        if (best < 0 || j < head_[best]) best = p;
      } else if (infeas > best_val) {
        best_val = infeas;
        best = p;
      }
    }
    return best;
  }

  // Restores the original costs. Returns true when that leaves dual
  // infeasibilities, which are flipped away before iterating again.
  bool unshift() {
    std::copy(md_.cost.begin(), md_.cost.end(), cost_.begin());
    std::fill(cost_.begin() + n_, cost_.end(), 0.0);
    shifted_ = false;
    compute_duals();
    if (!flip_wrong_signs()) return false;
    if (++unshift_rounds_ > kMaxUnshiftRounds) throw IllConditioned{};
    compute_primal();
    return true;
  }

  bool timed_out() const {
    return options_.deadline && std::chrono::steady_clock::now() >= *options_.deadline;
  }

  LpResult iterate() {
    long degenerate = 0;
    bool fresh = true;  // factorization has no etas and x/d were just recomputed
    Eigen::VectorXd rho(m_), w(m_);
    std::vector<double> alpha(n_ + m_, 0.0);

    for (;;) {
      if (iterations_ >= limit_) return finish(LpStatus::IterationLimit);
      if (iterations_ % kDeadlineStride == 0 && timed_out()) return finish(LpStatus::TimeLimit);

      if (static_cast<int>(etas_.size()) >= kRefactorEvery) {
        stable_recompute();
        fresh = true;
      }
      const bool bland = degenerate >= options_.bland_after;
      const int r = choose_leaving(bland);
      if (r < 0) {
        if (!fresh) {
          stable_recompute();
          fresh = true;
          continue;
        }
        if (shifted_ && unshift()) continue;
        return finish(LpStatus::Optimal);
      }

      const int leaving = head_[r];
      const bool to_lower = x_[leaving] < lo_[leaving];
      const double sign = to_lower ? -1.0 : 1.0;

      rho.setZero(m_);
      rho[r] = 1.0;
      btran(rho);
      for (int j = 0; j < n_ + m_; ++j) alpha[j] = status_[j] == LpBasis::Basic ? 0.0 : dot_column(j, rho);

      const int q = ratio_test(alpha, sign, bland);
      if (q < 0) {
        if (!fresh) {
          stable_recompute();
          fresh = true;
          continue;
        }
        return finish(LpStatus::Infeasible);
      }

      load_column(q, w);
      ftran(w);
      const double wr = w[r];
      if (std::abs(wr) < 1e-11 || std::abs(wr - alpha[q]) > 1e-7 * (1.0 + std::abs(wr))) {
        if (!fresh) {
          stable_recompute();
          fresh = true;
          continue;
        }
        if (std::abs(wr) < 1e-11) {
          recover();
          continue;
        }
      }

      // dual step; a wrong-sign d_q left by the Harris tolerance is removed by
      // shifting its cost so the step stays consistent with the new basis
      double theta_d = d_[q] / alpha[q];
      if (to_lower ? theta_d > 0.0 : theta_d < 0.0) {
        cost_[q] -= d_[q];
        d_[q] = 0.0;
        theta_d = 0.0;
        shifted_ = true;
      }
      if (theta_d != 0.0) {
        for (int j = 0; j < n_ + m_; ++j) {
          if (alpha[j] != 0.0 && status_[j] != LpBasis::Basic) d_[j] -= theta_d * alpha[j];
        }
      }
      d_[q] = 0.0;
      d_[leaving] = -theta_d;
      degenerate = std::abs(theta_d) <= 1e-12 ? degenerate + 1 : 0;

      // primal step
      const double bound = to_lower ? lo_[leaving] : up_[leaving];
      const double theta_p = (x_[leaving] - bound) / wr;
      for (int p = 0; p < m_; ++p) {
        if (w[p] != 0.0) x_[head_[p]] -= theta_p * w[p];
      }
      x_[q] += theta_p;
      x_[leaving] = bound;

      // basis change
      head_[r] = q;
      pos_[q] = r;
      pos_[leaving] = -1;
      status_[q] = LpBasis::Basic;
      status_[leaving] = to_lower ? LpBasis::AtLower : LpBasis::AtUpper;

      Eta eta{r, wr, {}};
      for (int p = 0; p < m_; ++p) {
        if (p != r && w[p] != 0.0) eta.column.emplace_back(p, w[p]);
      }
      etas_.push_back(std::move(eta));
      fresh = false;
      ++iterations_;
    }
  }

  // Two-pass Harris ratio test; Bland mode takes the exact minimum ratio with
  // the smallest column index among ties.
  int ratio_test(const std::vector<double>& alpha, double sign, bool bland) const {
    auto candidate = [&](int j, double& ratio, double& mag) {
      if (status_[j] == LpBasis::Basic || lo_[j] == up_[j]) return false;
      const double a = sign * alpha[j];
      if (std::abs(a) <= pivot_tol_) return false;
      if (status_[j] == LpBasis::AtLower && a > 0.0) {
        ratio = d_[j] / a;
      } else if (status_[j] == LpBasis::AtUpper && a < 0.0) {
        ratio = d_[j] / a;
      } else {
        return false;
      }
      mag = std::abs(a);
      return true;
    };

    double ratio = 0.0, mag = 0.0;
    if (bland) {
      double best = kInf;
      int q = -1;
      for (int j = 0; j < n_ + m_; ++j) {
        if (!candidate(j, ratio, mag)) continue;
        ratio = std::max(ratio, 0.0);
        if (ratio < best - 1e-12) {
          best = ratio;
          q = j;
        }
      }
      return q;
    }

    double bound = kInf;
    for (int j = 0; j < n_ + m_; ++j) {
      if (!candidate(j, ratio, mag)) continue;
      bound = std::min(bound, (std::abs(d_[j]) + dual_tol_[j]) / mag);
    }
    if (bound == kInf) return -1;
    int q = -1;
    double best_mag = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      if (!candidate(j, ratio, mag)) continue;
      if (std::abs(d_[j]) / mag <= bound && mag > best_mag) {
        best_mag = mag;
        q = j;
      }
    }
    return q;
  }

  LpResult finish(LpStatus status) {
    LpResult out;
    out.status = status;
    out.iterations = iterations_;
    out.values.resize(n_);
    out.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) {
      out.values[j] = x_[j] * md_.col_scale[j];
      out.reduced_costs[j] = -d_[j] / md_.col_scale[j];
      out.objective -= md_.cost[j] * x_[j];
    }
    out.row_duals.resize(m_);
    for (int i = 0; i < m_; ++i) out.row_duals[i] = -y_[i] * md_.row_scale[i];
    auto basis = std::make_shared<LpBasis>();
    basis->status = status_;
    out.basis = std::move(basis);

    if (status == LpStatus::Optimal) {
      for (int j = 0; j < n_ + m_; ++j) {
        if (status_[j] == LpBasis::Basic) continue;
        const bool on_box = (status_[j] == LpBasis::AtLower && lo_art_[j]) ||
                            (status_[j] == LpBasis::AtUpper && up_art_[j]);
        if (!on_box) continue;
        on_box_ = true;
        if (std::abs(d_[j]) > dual_tol_[j]) out.status = LpStatus::Unbounded;
      }
      residuals(out);
    }
    return out;
  }

  // Residuals in the caller's units.
  void residuals(LpResult& out) const {
    auto unscale = [&](int j, double v) { return j < n_ ? v * md_.col_scale[j] : v / md_.row_scale[j - n_]; };
    Eigen::VectorXd act = Eigen::VectorXd::Zero(m_);
    double primal = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const double v = j < n_ ? out.values[j] : 0.0;
      if (j < n_) {
        for (SpMat::InnerIterator it(md_.a_raw, j); it; ++it) act[it.row()] += it.value() * v;
      }
      const double x = j < n_ ? v : act[j - n_];
      if (!lo_art_[j]) primal = std::max(primal, unscale(j, lo_[j]) - x);
      if (!up_art_[j]) primal = std::max(primal, x - unscale(j, up_[j]));
    }
    double dual = 0.0;
    for (int j = 0; j < n_ + m_; ++j) {
      const double d = j < n_ ? d_[j] / md_.col_scale[j] : d_[j] * md_.row_scale[j - n_];
      if (status_[j] == LpBasis::Basic) {
        dual = std::max(dual, std::abs(d));
      } else if (lo_[j] != up_[j]) {
        dual = std::max(dual, status_[j] == LpBasis::AtLower ? -d : d);
      }
    }
    out.primal_residual = primal;
    out.dual_residual = dual;
  }

  const SimplexSolver::Model& md_;
  const int m_;
  const int n_;
  std::vector<double> lo_, up_, cost_, dual_tol_;
  std::vector<bool> lo_art_, up_art_;
  const LpOptions& options_;
  long limit_ = 0;
  long iterations_ = 0;
  double pivot_tol_ = kPivotTol;
  bool shifted_ = false;
  bool on_box_ = false;
  int unshift_rounds_ = 0;
  std::vector<std::uint8_t> checkpoint_;

  std::vector<double> x_, d_;
  std::vector<std::uint8_t> status_;
  std::vector<int> head_, pos_;
  Eigen::VectorXd y_;

  SpMat basis_;
  Lu lu_;
  std::vector<Eta> etas_;
};

}  // namespace

SimplexSolver::SimplexSolver(const MipInstance& mip) : model_(std::make_unique<Model>()) {
  Model& md = *model_;
  md.rows = mip.num_constraints();
  md.cols = mip.num_variables();
  std::vector<Eigen::Triplet<double>> trip;
  for (int i = 0; i < md.rows; ++i) {
    for (const auto& t : mip.constraints[i].terms) {
      if (t.var < 0 || t.var >= md.cols) throw Error(Errc::InvalidArgument, "constraint references unknown variable");
      trip.emplace_back(i, t.var, t.coef);
    }
  }
  md.a_raw.resize(md.rows, md.cols);
  md.a_raw.setFromTriplets(trip.begin(), trip.end());
  md.a_raw.prune(0.0);
  md.a_raw.makeCompressed();
  geometric_scaling(md.a_raw, md.row_scale, md.col_scale);
  md.a = md.a_raw;
  for (int j = 0; j < md.cols; ++j) {
    for (SpMat::InnerIterator it(md.a, j); it; ++it) it.valueRef() *= md.row_scale[it.row()] * md.col_scale[j];
  }
  md.cost.resize(md.cols);
  md.lower.resize(md.cols + md.rows);
  md.upper.resize(md.cols + md.rows);
  for (int j = 0; j < md.cols; ++j) {
    const auto& v = mip.variables[j];
    md.cost[j] = -v.objective * md.col_scale[j];
    md.lower[j] = v.lower;
    md.upper[j] = v.upper;
  }
  for (int i = 0; i < md.rows; ++i) {
    const auto& row = mip.constraints[i];
    const int k = md.cols + i;
    md.lower[k] = row.sense == RowSense::LessEqual ? -kInf : row.rhs;
    md.upper[k] = row.sense == RowSense::GreaterEqual ? kInf : row.rhs;
  }
}

SimplexSolver::~SimplexSolver() = default;
SimplexSolver::SimplexSolver(SimplexSolver&&) noexcept = default;
SimplexSolver& SimplexSolver::operator=(SimplexSolver&&) noexcept = default;

int SimplexSolver::rows() const noexcept { return model_->rows; }
int SimplexSolver::cols() const noexcept { return model_->cols; }

LpResult SimplexSolver::solve(std::span<const BoundOverride> overrides, const LpOptions& options) const {
  const Model& md = *model_;
  std::vector<double> lower = md.lower;
  std::vector<double> upper = md.upper;
  for (const auto& o : overrides) {
    if (o.var < 0 || o.var >= md.cols) throw Error(Errc::InvalidArgument, "bound override on unknown variable");
    lower[o.var] = std::max(lower[o.var], o.lower);
    upper[o.var] = std::min(upper[o.var], o.upper);
  }
  for (int j = 0; j < md.cols + md.rows; ++j) {
    if (lower[j] > upper[j]) {
      LpResult out;
      out.status = LpStatus::Infeasible;
      return out;
    }
    const double f = j < md.cols ? 1.0 / md.col_scale[j] : md.row_scale[j - md.cols];
    lower[j] *= f;
    upper[j] *= f;
  }
  // An optimum resting on an artificial box is re-solved from its basis with a
  // wider box before it is reported as unbounded.
  std::shared_ptr<const LpBasis> start = options.warm_start;
  LpResult out;
  for (int widen = 0; widen < kBoxWidenings; ++widen) {
    const double box = kBox * std::pow(kBoxGrowth, widen);
    bool on_box = false;
    try {
      Run run(md, lower, upper, options, box);
      out = run.run(start.get());
      on_box = run.rested_on_box();
    } catch (const IllConditioned&) {
      try {
        Run run(md, lower, upper, options, box);
        out = run.run(nullptr);
        on_box = run.rested_on_box();
      } catch (const IllConditioned&) {
        throw Error(Errc::NumericalFailure, "basis condition estimate exceeds 1e12 after a cold restart");
      }
    }
    if (!on_box || (out.status != LpStatus::Optimal && out.status != LpStatus::Unbounded)) return out;
    start = out.basis;
  }
  return out;
}

LpResult solve_lp(const MipInstance& mip, std::span<const BoundOverride> overrides, const LpOptions& options) {
  return SimplexSolver(mip).solve(overrides, options);
}

}  // namespace cycleclust
