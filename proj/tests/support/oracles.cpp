#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool as_number(const std::string& tok, double& out) {
  std::string t = tok;
  for (char& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") {
    out = kInf;
    return true;
  }
  if (t == "-inf" || t == "-infinity") {
    out = -kInf;
    return true;
  }
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end != tok.c_str() && *end == '\0';
}

bool is_sense(const std::string& t) { return t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>" || t == "<" || t == ">"; }

char sense_char(const std::string& t) {
  if (t == "=") return 'E';
  return (t[0] == '<' || t == "=<") ? 'L' : 'G';
}

struct LinearExpr {
  std::map<std::string, double> terms;
  std::vector<std::string> order;
};

// Terms of the form [+|-] [coef] name. Stops at a sense token; returns its index.
std::size_t read_terms(const std::vector<std::string>& toks, std::size_t from, LinearExpr& e) {
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  std::size_t i = from;
  for (; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (is_sense(t)) break;
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    double v = 0.0;
    if (as_number(t, v)) {
      coef = v;
      have_coef = true;
      continue;
    }
    if (!e.terms.count(t)) e.order.push_back(t);
    e.terms[t] += sign * (have_coef ? coef : 1.0);
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  return i;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

int DenseLp::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? -1 : static_cast<int>(it - names.begin());
}

DenseLp read_lp_text(const std::string& text) {
  enum Sec { None, Obj, Rows, Bounds, Bin, End } sec = None;
  double obj_sign = 1.0;
  std::vector<std::string> obj_toks;
  std::vector<std::vector<std::string>> row_toks;
  std::vector<std::string> bound_lines, bin_names;

  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto toks = split(line);
    if (toks.empty() || toks[0][0] == '\\') continue;
    std::string low = line;
    for (char& ch : low) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    low.erase(0, low.find_first_not_of(" \t"));
    low.erase(low.find_last_not_of(" \t\r") + 1);
    if (low == "maximize" || low == "maximise" || low == "max") {
      sec = Obj;
      continue;
    }
    if (low == "minimize" || low == "minimise" || low == "min") {
      sec = Obj;
      obj_sign = -1.0;
      continue;
    }
    if (low == "subject to" || low == "st" || low == "s.t.") {
      sec = Rows;
      continue;
    }
    if (low == "bounds") {
      sec = Bounds;
      continue;
    }
    if (low == "binaries" || low == "binary" || low == "bin" || low == "generals") {
      sec = Bin;
      continue;
    }
    if (low == "end") {
      sec = End;
      break;
    }
    switch (sec) {
      case Obj: obj_toks.insert(obj_toks.end(), toks.begin(), toks.end()); break;
      case Rows:
        if (toks[0].back() == ':' || row_toks.empty()) {
          row_toks.push_back(toks);
        } else {
          row_toks.back().insert(row_toks.back().end(), toks.begin(), toks.end());
        }
        break;
      case Bounds: bound_lines.push_back(line); break;
      case Bin: bin_names.insert(bin_names.end(), toks.begin(), toks.end()); break;
      default: throw std::runtime_error("lp: text outside sections");
    }
  }
  if (sec != End) throw std::runtime_error("lp: missing End");

  DenseLp lp;
  std::map<std::string, int> id;
  auto var = [&](const std::string& name) {
    auto it = id.find(name);
    if (it != id.end()) return it->second;
    const int k = static_cast<int>(lp.names.size());
    id[name] = k;
    lp.names.push_back(name);
    lp.objective.push_back(0.0);
    lp.lower.push_back(0.0);
    lp.upper.push_back(kInf);
    lp.binary.push_back(false);
    return k;
  };

  LinearExpr obj;
  std::size_t start = (!obj_toks.empty() && obj_toks[0].back() == ':') ? 1 : 0;
  read_terms(obj_toks, start, obj);
  for (const auto& name : obj.order) lp.objective[var(name)] = obj_sign * obj.terms[name];

  std::vector<LinearExpr> exprs;
  for (const auto& toks : row_toks) {
    LinearExpr e;
    std::size_t s = toks[0].back() == ':' ? 1 : 0;
    const std::size_t at = read_terms(toks, s, e);
    if (at + 1 >= toks.size()) throw std::runtime_error("lp: row without right-hand side");
    double b = 0.0;
    if (!as_number(toks[at + 1], b)) throw std::runtime_error("lp: bad right-hand side");
    for (const auto& name : e.order) var(name);
    lp.sense.push_back(sense_char(toks[at]));
    lp.rhs.push_back(b);
    exprs.push_back(std::move(e));
  }
  for (const auto& name : bin_names) {
    const int k = var(name);
    lp.binary[k] = true;
    lp.upper[k] = 1.0;
  }
  for (const auto& bl : bound_lines) {
    const auto t = split(bl);
    double v = 0.0, w = 0.0;
    if (t.size() == 2) {
      const int k = var(t[0]);
      lp.lower[k] = -kInf;
      lp.upper[k] = kInf;
    } else if (t.size() == 3) {
      const int k = var(t[0]);
      if (!as_number(t[2], v)) throw std::runtime_error("lp: bad bound");
      const char s = sense_char(t[1]);
      if (s == 'E' || s == 'L') lp.upper[k] = v;
      if (s == 'E' || s == 'G') lp.lower[k] = v;
    } else if (t.size() == 5 && as_number(t[0], v) && as_number(t[4], w)) {
      const int k = var(t[2]);
      lp.lower[k] = v;
      lp.upper[k] = w;
    } else {
      throw std::runtime_error("lp: unsupported bound line: " + bl);
    }
  }
  const std::size_t n = lp.names.size();
  for (const auto& e : exprs) {
    std::vector<double> row(n, 0.0);
    for (const auto& [name, c] : e.terms) row[id[name]] += c;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

DenseResult solve_dense(const DenseLp& lp) {
  using Real = long double;
  const Real eps = 1e-12L;
  const int n = static_cast<int>(lp.names.size());

  // Columns y ≥ 0: y_j = x_j − l_j, or x_j = y⁺ − y⁻ when l_j = −∞.
  struct Col {
    int var;
    Real sign;
  };
  std::vector<Col> cols;
  std::vector<Real> shift(n, 0.0L);
  for (int j = 0; j < n; ++j) {
    if (lp.lower[j] == -kInf) {
      cols.push_back({j, 1.0L});
      cols.push_back({j, -1.0L});
    } else {
      shift[j] = lp.lower[j];
      cols.push_back({j, 1.0L});
    }
  }
  const int ny = static_cast<int>(cols.size());

  std::vector<std::vector<Real>> a;
  std::vector<char> sense;
  std::vector<Real> b;
  for (std::size_t r = 0; r < lp.rows.size(); ++r) {
    std::vector<Real> row(ny, 0.0L);
    Real rhs = lp.rhs[r];
    for (int c = 0; c < ny; ++c) row[c] = cols[c].sign * lp.rows[r][cols[c].var];
    for (int j = 0; j < n; ++j) rhs -= static_cast<Real>(lp.rows[r][j]) * shift[j];
    a.push_back(std::move(row));
    sense.push_back(lp.sense[r]);
    b.push_back(rhs);
  }
  for (int c = 0; c < ny; ++c) {
    const int j = cols[c].var;
    if (lp.upper[j] == kInf || cols[c].sign < 0) continue;
    std::vector<Real> row(ny, 0.0L);
    row[c] = 1.0L;
    a.push_back(std::move(row));
    sense.push_back('L');
    b.push_back(static_cast<Real>(lp.upper[j]) - shift[j]);
  }
  const int m = static_cast<int>(a.size());
  for (int r = 0; r < m; ++r) {
    if (b[r] < 0) {
      for (auto& v : a[r]) v = -v;
      b[r] = -b[r];
      if (sense[r] == 'L') {
        sense[r] = 'G';
      } else if (sense[r] == 'G') {
        sense[r] = 'L';
      }
    }
  }

  // Layout: y | slack/surplus | artificial | rhs
  int n_slack = 0, n_art = 0;
  for (char s : sense) {
    if (s != 'E') ++n_slack;
    if (s != 'L') ++n_art;
  }
  const int width = ny + n_slack + n_art;
  std::vector<std::vector<Real>> t(m, std::vector<Real>(width + 1, 0.0L));
  std::vector<int> basis(m, -1);
  int si = ny, ai = ny + n_slack;
  for (int r = 0; r < m; ++r) {
    std::copy(a[r].begin(), a[r].end(), t[r].begin());
    t[r][width] = b[r];
    if (sense[r] == 'L') {
      t[r][si] = 1.0L;
      basis[r] = si++;
    } else {
      if (sense[r] == 'G') t[r][si++] = -1.0L;
      t[r][ai] = 1.0L;
      basis[r] = ai++;
    }
  }

  auto pivot = [&](int pr, int pc) {
    const Real p = t[pr][pc];
    for (auto& v : t[pr]) v /= p;
    for (int r = 0; r < m; ++r) {
      if (r == pr) continue;
      const Real f = t[r][pc];
      if (f == 0.0L) continue;
      for (int c = 0; c <= width; ++c) t[r][c] -= f * t[pr][c];
    }
    basis[pr] = pc;
  };

  // Maximizes cost·z over columns < `allowed`. Returns false when unbounded.
  auto run = [&](const std::vector<Real>& cost, int allowed) {
    for (;;) {
      int enter = -1;
      for (int c = 0; c < allowed && enter < 0; ++c) {
        Real d = cost[c];
        for (int r = 0; r < m; ++r) d -= cost[basis[r]] * t[r][c];
        if (d > 1e-11L) enter = c;
      }
      if (enter < 0) return true;
      int leave = -1;
      Real best = 0.0L;
      for (int r = 0; r < m; ++r) {
        if (t[r][enter] <= eps) continue;
        const Real ratio = t[r][width] / t[r][enter];
        if (leave < 0 || ratio < best - 1e-15L || (ratio <= best + 1e-15L && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  DenseResult out;
  std::vector<Real> phase1(width, 0.0L);
  for (int c = ny + n_slack; c < width; ++c) phase1[c] = -1.0L;
  run(phase1, width);
  Real infeas = 0.0L;
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= ny + n_slack) infeas += t[r][width];
  }
  if (infeas > 1e-9L) {
    out.status = DenseStatus::Infeasible;
    return out;
  }
  for (int r = 0; r < m; ++r) {
    if (basis[r] < ny + n_slack) continue;
    for (int c = 0; c < ny + n_slack; ++c) {
      if (std::fabs(static_cast<double>(t[r][c])) > 1e-9) {
        pivot(r, c);
        break;
      }
    }
  }

  std::vector<Real> phase2(width, 0.0L);
  for (int c = 0; c < ny; ++c) phase2[c] = cols[c].sign * lp.objective[cols[c].var];
  if (!run(phase2, ny + n_slack)) {
    out.status = DenseStatus::Unbounded;
    return out;
  }
  std::vector<Real> y(width, 0.0L);
  for (int r = 0; r < m; ++r) y[basis[r]] = t[r][width];
  out.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j) out.x[j] = static_cast<double>(shift[j]);
  for (int c = 0; c < ny; ++c) out.x[cols[c].var] += static_cast<double>(cols[c].sign * y[c]);
  Real obj = 0.0L;
  for (int j = 0; j < n; ++j) obj += static_cast<Real>(lp.objective[j]) * out.x[j];
  out.objective = static_cast<double>(obj);
  out.status = DenseStatus::Optimal;
  return out;
}

double direct_flow(const Matrix& q, const std::vector<int>& labels, int m) {
  double s = 0.0;
  const int n = static_cast<int>(labels.size());
  for (int k = 0; k < m; ++k) {
    const int next = (k + 1) % m;
    for (int i = 0; i < n; ++i) {
      if (labels[i] != k) continue;
      for (int j = 0; j < n; ++j) {
        if (labels[j] == next) s += q(i, j) - q(j, i);
      }
    }
  }
  return s;
}

double direct_coherence(const Matrix& q, const std::vector<int>& labels) {
  double s = 0.0;
  const int n = static_cast<int>(labels.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (labels[i] == labels[j]) s += q(i, j);
    }
  }
  return s;
}

Enumerated enumerate_all(const Matrix& q, int m, double alpha) {
  const int n = static_cast<int>(q.rows());
  Enumerated out;
  out.best = -kInf;
  std::vector<int> lab(n, 0);
  for (;;) {
    std::vector<int> count(m, 0);
    for (int v : lab) ++count[v];
    if (std::all_of(count.begin(), count.end(), [](int c) { return c > 0; })) {
      ++out.surjective;
      const double v = direct_objective(q, lab, m, alpha);
      if (v > out.best) {
        out.best = v;
        out.labels = lab;
      }
    }
    int i = n - 1;
    while (i >= 0 && lab[i] == m - 1) lab[i--] = 0;
    if (i < 0) break;
    ++lab[i];
  }
  return out;
}

double min_multiway_cut(int vertices, const std::vector<int>& terminals, const std::vector<Edge>& edges) {
  const int k = static_cast<int>(terminals.size());
  std::vector<int> label(vertices, -1);
  for (int t = 0; t < k; ++t) label[terminals[t]] = t;
  std::vector<int> free;
  for (int v = 0; v < vertices; ++v) {
    if (label[v] < 0) free.push_back(v);
  }
  std::vector<int> digits(free.size(), 0);
  double best = kInf;
  for (;;) {
    for (std::size_t i = 0; i < free.size(); ++i) label[free[i]] = digits[i];
    double cut = 0.0;
    for (const auto& e : edges) {
      if (label[e.u] != label[e.v]) cut += e.w;
    }
    best = std::min(best, cut);
    int i = static_cast<int>(digits.size()) - 1;
    while (i >= 0 && digits[i] == k - 1) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  return best;
}

double best_fill_distance(const Matrix& points, int k) {
  const int n = static_cast<int>(points.rows());
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + k, true);
  double best = kInf;
  do {
    double h = 0.0;
    for (int r = 0; r < n; ++r) {
      double d = kInf;
      for (int c = 0; c < n; ++c) {
        if (pick[c]) d = std::min(d, (points.row(r) - points.row(c)).norm());
      }
      h = std::max(h, d);
    }
    best = std::min(best, h);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace oracle
