#include "cycleclust/mip.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "cycleclust/error.hpp"

namespace cycleclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntegralityTol = 1e-6;
constexpr double kObjectiveTol = 1e-6;
constexpr double kRoundingAsymmetry = 1e-14;

std::string name_of(char prefix, std::initializer_list<int> one_based) {
  std::string out(1, prefix);
  for (int v : one_based) {
    out += '_';
    out += std::to_string(v);
  }
  return out;
}

int add_variable(MipInstance& mip, std::string name, VarKind kind, double lo, double up, double obj) {
  mip.variables.push_back({std::move(name), kind, lo, up, obj});
  return mip.num_variables() - 1;
}

void add_product_rows(MipInstance& mip, const ProductVar& p) {
  const std::string& y = mip.variables[p.var].name;
  mip.constraints.push_back({y + "_a", {{p.var, 1.0}, {p.a, -1.0}}, RowSense::LessEqual, 0.0});
  mip.constraints.push_back({y + "_b", {{p.var, 1.0}, {p.b, -1.0}}, RowSense::LessEqual, 0.0});
  mip.constraints.push_back({y + "_ab", {{p.var, 1.0}, {p.a, -1.0}, {p.b, -1.0}}, RowSense::GreaterEqual, -1.0});
}

std::string fmt_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_expression(std::string& out, const MipInstance& mip, const std::vector<LinearTerm>& terms) {
  constexpr int kTermsPerLine = 6;
  int on_line = 0;
  bool first = true;
  for (const auto& t : terms) {
    if (on_line == kTermsPerLine) {
      out += "\n  ";
      on_line = 0;
    }
    double c = t.coef;
    if (first) {
      if (c < 0) {
        out += "- ";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      c = std::abs(c);
    }
    if (c != 1.0) {
      out += fmt_number(c);
      out += ' ';
    }
    out += mip.variables[t.var].name;
    first = false;
    ++on_line;
  }
  if (first) out += "0";
}

const char* sense_token(RowSense s) {
  switch (s) {
    case RowSense::LessEqual: return "<=";
    case RowSense::Equal: return "=";
    case RowSense::GreaterEqual: return ">=";
  }
  return "=";
}

// --- parsing ---------------------------------------------------------------

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(Errc::ParseError, "lp: " + msg); }

bool parse_double(const std::string& tok, double& out) {
  if (tok == "inf" || tok == "+inf" || tok == "infinity" || tok == "+infinity") {
    out = kInf;
    return true;
  }
  if (tok == "-inf" || tok == "-infinity") {
    out = -kInf;
    return true;
  }
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

bool is_sense(const std::string& tok) {
  return tok == "<=" || tok == ">=" || tok == "=" || tok == "=<" || tok == "=>" || tok == "<" || tok == ">";
}

RowSense sense_of(const std::string& tok) {
  if (tok == "<=" || tok == "=<" || tok == "<") return RowSense::LessEqual;
  if (tok == ">=" || tok == "=>" || tok == ">") return RowSense::GreaterEqual;
  return RowSense::Equal;
}

enum class Section { None, Objective, Constraints, Bounds, Binaries, Generals, End };

Section section_of(const std::string& lower_line) {
  if (lower_line == "maximize" || lower_line == "maximum" || lower_line == "max") return Section::Objective;
  if (lower_line == "minimize" || lower_line == "minimum" || lower_line == "min")
    parse_fail("only maximization models are supported");
  if (lower_line == "subject to" || lower_line == "such that" || lower_line == "st" || lower_line == "s.t.")
    return Section::Constraints;
  if (lower_line == "bounds" || lower_line == "bound") return Section::Bounds;
  if (lower_line == "binaries" || lower_line == "binary" || lower_line == "bin") return Section::Binaries;
  if (lower_line == "generals" || lower_line == "general") return Section::Generals;
  if (lower_line == "end") return Section::End;
  return Section::None;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

struct RawRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
  RowSense sense = RowSense::Equal;
  double rhs = 0.0;
};

// Parses "name: [±] [coef] var ... [sense rhs]" from a joined token list.
RawRow parse_row(const std::vector<std::string>& toks, bool objective) {
  RawRow row;
  std::size_t i = 0;
  if (!toks.empty()) {
    const std::string& t0 = toks[0];
    if (t0.size() > 1 && t0.back() == ':') {
      row.name = t0.substr(0, t0.size() - 1);
      i = 1;
    } else if (toks.size() > 1 && toks[1] == ":") {
      row.name = t0;
      i = 2;
    }
  }
  double sign = 1.0;
  double coef = 1.0;
  bool have_coef = false;
  for (; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t == "+") continue;
    if (t == "-") {
      sign = -sign;
      continue;
    }
    if (is_sense(t)) {
      if (objective) parse_fail("sense token in objective");
      row.sense = sense_of(t);
      if (i + 2 != toks.size()) parse_fail("row '" + row.name + "': expected a single right-hand side");
      if (!parse_double(toks[i + 1], row.rhs)) parse_fail("row '" + row.name + "': bad right-hand side");
      return row;
    }
    double value = 0.0;
    if (parse_double(t, value)) {
      if (have_coef) parse_fail("row '" + row.name + "': two coefficients in a row");
      coef = value;
      have_coef = true;
      continue;
    }
    row.terms.emplace_back(t, sign * coef);
    sign = 1.0;
    coef = 1.0;
    have_coef = false;
  }
  if (!objective) parse_fail("row '" + row.name + "': missing sense and right-hand side");
  return row;
}

// Recovers (prefix, indices) from names like e_1_2_3.
bool split_name(const std::string& name, char& prefix, std::vector<int>& idx) {
  idx.clear();
  if (name.size() < 3 || name[1] != '_') return false;
  prefix = name[0];
  std::size_t pos = 2;
  while (pos <= name.size()) {
    const auto next = name.find('_', pos);
    const std::string part = name.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || part.empty()) return false;
    idx.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return true;
}

void rebuild_structure(MipInstance& mip) {
  std::unordered_map<std::string, int> by_name;
  for (int v = 0; v < mip.num_variables(); ++v) by_name.emplace(mip.variables[v].name, v);

  int n = mip.n;
  int m = mip.m;
  char prefix = 0;
  std::vector<int> idx;
  if (n == 0 || m == 0) {
    for (const auto& var : mip.variables) {
      if (split_name(var.name, prefix, idx) && prefix == 'x' && idx.size() == 2) {
        n = std::max(n, idx[0]);
        m = std::max(m, idx[1]);
      }
    }
    mip.n = n;
    mip.m = m;
  }
  if (n == 0 || m == 0) return;  // not a cycle-clustering model

  auto lookup = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end()) parse_fail("missing variable " + name);
    return it->second;
  };
  mip.x_index.assign(static_cast<std::size_t>(n) * m, -1);
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= m; ++k) mip.x_index[(i - 1) * m + (k - 1)] = lookup(name_of('x', {i, k}));
  }
  mip.flow_vars.clear();
  mip.coherence_vars.clear();
  for (int k = 1; k <= m; ++k) {
    mip.flow_vars.push_back(lookup(name_of('f', {k})));
    mip.coherence_vars.push_back(lookup(name_of('g', {k})));
  }
  mip.flow_products.clear();
  mip.coherence_products.clear();
  for (int v = 0; v < mip.num_variables(); ++v) {
    if (!split_name(mip.variables[v].name, prefix, idx) || idx.size() != 3) continue;
    const int i = idx[0] - 1;
    const int j = idx[1] - 1;
    const int k = idx[2] - 1;
    if (prefix == 'e') {
      mip.flow_products.push_back({v, mip.x(i, k), mip.x(j, (k + 1) % m)});
    } else if (prefix == 'c') {
      mip.coherence_products.push_back({v, mip.x(i, k), mip.x(j, k)});
    }
  }
  if (mip.alpha == 0.0 && !mip.coherence_vars.empty())
    mip.alpha = mip.variables[mip.coherence_vars.front()].objective;
}

}  // namespace

double MipInstance::objective_value(std::span<const double> values) const {
  double total = 0.0;
  for (int v = 0; v < num_variables(); ++v) total += variables[v].objective * values[v];
  return total;
}

MipInstance build_mip(const FlowMatrix& w, int m, double alpha) {
  const int n = w.size();
  if (m < 3 || m > n) {
    std::ostringstream os;
    os << "need 3 <= m <= n, got m=" << m << " n=" << n;
    throw Error(Errc::InvalidClusterCount, os.str());
  }
  if (!(alpha > 0.0)) throw Error(Errc::InvalidArgument, "alpha must be positive");
  const Matrix& q = w.entries();

  MipInstance mip;
  mip.n = n;
  mip.m = m;
  mip.alpha = alpha;

  mip.x_index.resize(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k)
      mip.x_index[i * m + k] = add_variable(mip, name_of('x', {i + 1, k + 1}), VarKind::Binary, 0.0, 1.0, 0.0);
  }
  // symmetry breaking: bin 0 opens cluster 0
  mip.variables[mip.x(0, 0)].lower = 1.0;

  // differences at rounding level (e.g. from diag(π)P of a reversible chain)
  // count as symmetric
  const double symmetric_tol = kRoundingAsymmetry * q.cwiseAbs().maxCoeff();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || std::abs(q(i, j) - q(j, i)) <= symmetric_tol) continue;
      for (int k = 0; k < m; ++k) {
        const int v = add_variable(mip, name_of('e', {i + 1, j + 1, k + 1}), VarKind::Continuous, 0.0, kInf, 0.0);
        mip.flow_products.push_back({v, mip.x(i, k), mip.x(j, (k + 1) % m)});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!(q(i, j) + q(j, i) > 0.0)) continue;
      for (int k = 0; k < m; ++k) {
        const int v = add_variable(mip, name_of('c', {i + 1, j + 1, k + 1}), VarKind::Continuous, 0.0, kInf, 0.0);
        mip.coherence_products.push_back({v, mip.x(i, k), mip.x(j, k)});
      }
    }
  }
  for (int k = 0; k < m; ++k)
    mip.flow_vars.push_back(add_variable(mip, name_of('f', {k + 1}), VarKind::Continuous, 0.0, kInf, 1.0));
  for (int k = 0; k < m; ++k)
    mip.coherence_vars.push_back(add_variable(mip, name_of('g', {k + 1}), VarKind::Continuous, 0.0, kInf, alpha));

  for (int i = 0; i < n; ++i) {
    Constraint row{"assign_" + std::to_string(i + 1), {}, RowSense::Equal, 1.0};
    for (int k = 0; k < m; ++k) row.terms.push_back({mip.x(i, k), 1.0});
    mip.constraints.push_back(std::move(row));
  }
  for (int k = 0; k < m; ++k) {
    Constraint row{"cover_" + std::to_string(k + 1), {}, RowSense::GreaterEqual, 1.0};
    for (int i = 0; i < n; ++i) row.terms.push_back({mip.x(i, k), 1.0});
    mip.constraints.push_back(std::move(row));
  }

  // Products were created in (i, j, k) order; bucket them by cluster.
  std::vector<std::vector<LinearTerm>> flow_terms(m), coh_terms(m);
  for (const auto& p : mip.flow_products) {
    char prefix = 0;
    std::vector<int> idx;
    split_name(mip.variables[p.var].name, prefix, idx);
    const int i = idx[0] - 1, j = idx[1] - 1, k = idx[2] - 1;
    flow_terms[k].push_back({p.var, -(q(i, j) - q(j, i))});
  }
  for (const auto& p : mip.coherence_products) {
    char prefix = 0;
    std::vector<int> idx;
    split_name(mip.variables[p.var].name, prefix, idx);
    const int i = idx[0] - 1, j = idx[1] - 1, k = idx[2] - 1;
    coh_terms[k].push_back({p.var, -(q(i, j) + q(j, i))});
  }
  for (int k = 0; k < m; ++k) {
    Constraint row{"flow_" + std::to_string(k + 1), {{mip.flow_vars[k], 1.0}}, RowSense::Equal, 0.0};
    row.terms.insert(row.terms.end(), flow_terms[k].begin(), flow_terms[k].end());
    mip.constraints.push_back(std::move(row));
  }
  for (int k = 0; k < m; ++k) {
    Constraint row{"coh_" + std::to_string(k + 1), {{mip.coherence_vars[k], 1.0}}, RowSense::Equal, 0.0};
    for (int i = 0; i < n; ++i) {
      if (q(i, i) != 0.0) row.terms.push_back({mip.x(i, k), -q(i, i)});
    }
    row.terms.insert(row.terms.end(), coh_terms[k].begin(), coh_terms[k].end());
    mip.constraints.push_back(std::move(row));
  }
  for (const auto& p : mip.flow_products) add_product_rows(mip, p);
  for (const auto& p : mip.coherence_products) add_product_rows(mip, p);
  return mip;
}

std::string export_lp(const MipInstance& mip) {
  std::string out;
  out.reserve(64 * (mip.constraints.size() + mip.variables.size()));
  out += "\\ cycleclust n=" + std::to_string(mip.n) + " m=" + std::to_string(mip.m) + " alpha=" + fmt_number(mip.alpha) + "\n";
  out += "Maximize\n obj: ";
  std::vector<LinearTerm> obj;
  for (int v = 0; v < mip.num_variables(); ++v) {
    if (mip.variables[v].objective != 0.0) obj.push_back({v, mip.variables[v].objective});
  }
  append_expression(out, mip, obj);
  out += "\nSubject To\n";
  for (const auto& row : mip.constraints) {
    out += ' ';
    out += row.name;
    out += ": ";
    append_expression(out, mip, row.terms);
    out += ' ';
    out += sense_token(row.sense);
    out += ' ';
    out += fmt_number(row.rhs);
    out += '\n';
  }
  out += "Bounds\n";
  for (const auto& var : mip.variables) {
    const double def_lo = 0.0;
    const double def_up = var.kind == VarKind::Binary ? 1.0 : kInf;
    if (var.lower == def_lo && var.upper == def_up) continue;
    if (var.lower == var.upper) {
      out += " " + var.name + " = " + fmt_number(var.lower) + "\n";
    } else if (var.lower == -kInf && var.upper == kInf) {
      out += " " + var.name + " free\n";
    } else {
      const std::string lo = var.lower == -kInf ? "-inf" : fmt_number(var.lower);
      const std::string up = var.upper == kInf ? "+inf" : fmt_number(var.upper);
      out += " " + lo + " <= " + var.name + " <= " + up + "\n";
    }
  }
  std::string binaries;
  int on_line = 0;
  for (const auto& var : mip.variables) {
    if (var.kind != VarKind::Binary) continue;
    binaries += ' ';
    binaries += var.name;
    if (++on_line == 10) {
      binaries += '\n';
      on_line = 0;
    }
  }
  if (!binaries.empty()) {
    out += "Binaries\n";
    out += binaries;
    if (on_line != 0) out += '\n';
  }
  out += "End\n";
  return out;
}

MipInstance parse_lp(const std::string& text) {
  MipInstance mip;
  std::istringstream is(text);
  std::string line;
  Section section = Section::None;

  std::vector<std::string> objective_tokens;
  std::vector<std::vector<std::string>> row_tokens;
  std::vector<std::string> bound_lines;
  std::vector<std::string> binary_names;

  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '\\') {
      // metadata comment: "\ n=3 m=3 alpha=0.001"
      for (const auto& tok : tokens_of(t.substr(1))) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        double v = 0.0;
        if (!parse_double(val, v)) continue;
        if (key == "n") mip.n = static_cast<int>(v);
        if (key == "m") mip.m = static_cast<int>(v);
        if (key == "alpha") mip.alpha = v;
      }
      continue;
    }
    std::string lower = t;
    for (char& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    const Section next = section_of(lower);
    if (next != Section::None) {
      section = next;
      if (section == Section::End) break;
      continue;
    }
    const auto toks = tokens_of(t);
    switch (section) {
      case Section::Objective:
        objective_tokens.insert(objective_tokens.end(), toks.begin(), toks.end());
        break;
      case Section::Constraints: {
        const bool starts_row = (toks[0].size() > 1 && toks[0].back() == ':') || (toks.size() > 1 && toks[1] == ":");
        if (starts_row || row_tokens.empty()) {
          row_tokens.push_back(toks);
        } else {
          row_tokens.back().insert(row_tokens.back().end(), toks.begin(), toks.end());
        }
        break;
      }
      case Section::Bounds: bound_lines.push_back(t); break;
      case Section::Binaries:
      case Section::Generals: binary_names.insert(binary_names.end(), toks.begin(), toks.end()); break;
      case Section::None: parse_fail("content before the objective section: '" + t + "'");
      case Section::End: break;
    }
  }
  if (section != Section::End) parse_fail("missing End");

  std::unordered_map<std::string, int> by_name;
  auto var_id = [&](const std::string& name) {
    auto it = by_name.find(name);
    if (it != by_name.end()) return it->second;
    const int id = add_variable(mip, name, VarKind::Continuous, 0.0, kInf, 0.0);
    by_name.emplace(name, id);
    return id;
  };

  // Variables appear in first-use order: objective, then rows. The writer
  // lists the objective in variable order, so re-sorting restores the catalog.
  const RawRow obj = parse_row(objective_tokens, true);
  std::vector<RawRow> rows;
  rows.reserve(row_tokens.size());
  for (const auto& toks : row_tokens) rows.push_back(parse_row(toks, false));

  // Collect names in order of appearance, then sort into the canonical order
  // (x, e, c, f, g by numeric indices; anything else after, in appearance order).
  std::vector<std::string> names;
  std::unordered_map<std::string, int> seen;
  auto note = [&](const std::string& name) {
    if (seen.emplace(name, static_cast<int>(names.size())).second) names.push_back(name);
  };
  for (const auto& [name, c] : obj.terms) note(name);
  for (const auto& row : rows) {
    for (const auto& [name, c] : row.terms) note(name);
  }
  for (const auto& name : binary_names) note(name);
  auto rank = [](const std::string& name) {
    static const std::string order = "xecfg";
    char prefix = 0;
    std::vector<int> idx;
    if (!split_name(name, prefix, idx)) return std::make_pair(static_cast<int>(order.size()), std::vector<int>{});
    const auto p = order.find(prefix);
    return std::make_pair(p == std::string::npos ? static_cast<int>(order.size()) : static_cast<int>(p), idx);
  };
  std::stable_sort(names.begin(), names.end(), [&](const std::string& a, const std::string& b) {
    const auto ra = rank(a);
    const auto rb = rank(b);
    if (ra.first != rb.first) return ra.first < rb.first;
    if (ra.first == 5) return seen[a] < seen[b];
    return ra.second < rb.second;
  });
  for (const auto& name : names) var_id(name);

  for (const auto& [name, c] : obj.terms) mip.variables[var_id(name)].objective += c;
  for (const auto& raw : rows) {
    Constraint row{raw.name, {}, raw.sense, raw.rhs};
    for (const auto& [name, c] : raw.terms) row.terms.push_back({var_id(name), c});
    mip.constraints.push_back(std::move(row));
  }
  for (const auto& name : binary_names) {
    auto& var = mip.variables[var_id(name)];
    var.kind = VarKind::Binary;
    var.lower = 0.0;
    var.upper = 1.0;
  }
  for (const auto& b : bound_lines) {
    const auto toks = tokens_of(b);
    double v = 0.0;
    if (toks.size() == 2 && (toks[1] == "free" || toks[1] == "Free")) {
      auto& var = mip.variables[var_id(toks[0])];
      var.lower = -kInf;
      var.upper = kInf;
    } else if (toks.size() == 3 && is_sense(toks[1]) && parse_double(toks[2], v)) {
      auto& var = mip.variables[var_id(toks[0])];
      switch (sense_of(toks[1])) {
        case RowSense::Equal: var.lower = var.upper = v; break;
        case RowSense::LessEqual: var.upper = v; break;
        case RowSense::GreaterEqual: var.lower = v; break;
      }
    } else if (toks.size() == 3 && is_sense(toks[1]) && parse_double(toks[0], v)) {
      auto& var = mip.variables[var_id(toks[2])];
      switch (sense_of(toks[1])) {
        case RowSense::Equal: var.lower = var.upper = v; break;
        case RowSense::LessEqual: var.lower = v; break;
        case RowSense::GreaterEqual: var.upper = v; break;
      }
    } else if (toks.size() == 5 && parse_double(toks[0], v)) {
      auto& var = mip.variables[var_id(toks[2])];
      double hi = 0.0;
      if (!parse_double(toks[4], hi)) parse_fail("bad bound line '" + b + "'");
      var.lower = v;
      var.upper = hi;
    } else {
      parse_fail("bad bound line '" + b + "'");
    }
  }
  rebuild_structure(mip);
  return mip;
}

CycleClustering clustering_from_solution(const MipInstance& mip, std::span<const double> values,
                                         const FlowMatrix& w) {
  if (mip.x_index.empty()) throw Error(Errc::InvalidArgument, "model has no assignment variables");
  if (static_cast<int>(values.size()) != mip.num_variables())
    throw Error(Errc::DimensionMismatch, "solution vector length differs from the variable count");
  if (w.size() != mip.n) throw Error(Errc::DimensionMismatch, "flow matrix does not match the model");

  std::vector<int> assignment(mip.n, -1);
  std::vector<int> cover(mip.m, 0);
  for (int i = 0; i < mip.n; ++i) {
    int ones = 0;
    for (int k = 0; k < mip.m; ++k) {
      const double v = values[mip.x(i, k)];
      const double r = std::round(v);
      if (std::abs(v - r) > kIntegralityTol) {
        std::ostringstream os;
        os << mip.variables[mip.x(i, k)].name << " = " << v;
        throw Error(Errc::FractionalSolution, os.str());
      }
      if (r == 1.0) {
        ++ones;
        assignment[i] = k;
      }
    }
    if (ones != 1) {
      throw Error(Errc::InfeasibleAssignment,
                  "bin " + std::to_string(i + 1) + " is assigned to " + std::to_string(ones) + " clusters");
    }
    ++cover[assignment[i]];
  }
  for (int k = 0; k < mip.m; ++k) {
    if (cover[k] == 0) throw Error(Errc::InfeasibleAssignment, "cluster " + std::to_string(k + 1) + " is empty");
  }
  CycleClustering c(mip.m, std::move(assignment));
  const double direct = objective(w, c, mip.alpha).total;
  const double model = mip.objective_value(values);
  if (std::abs(direct - model) > kObjectiveTol) {
    std::ostringstream os;
    os.precision(17);
    os << "model objective " << model << " differs from direct objective " << direct;
    throw Error(Errc::ObjectiveMismatch, os.str());
  }
  return c;
}

std::vector<double> solution_from_clustering(const MipInstance& mip, const CycleClustering& c) {
  if (c.bins() != mip.n || c.clusters() != mip.m)
    throw Error(Errc::DimensionMismatch, "clustering does not match the model");
  std::vector<double> values(mip.num_variables(), 0.0);
  for (int i = 0; i < mip.n; ++i) values[mip.x(i, c.cluster_of(i))] = 1.0;
  for (const auto& p : mip.flow_products) values[p.var] = values[p.a] * values[p.b];
  for (const auto& p : mip.coherence_products) values[p.var] = values[p.a] * values[p.b];
  // f_k and g_k: the defining rows are `var - Σ coef·term = 0`
  for (const auto& row : mip.constraints) {
    if (row.terms.empty() || row.sense != RowSense::Equal) continue;
    const int head = row.terms.front().var;
    const bool defines = std::find(mip.flow_vars.begin(), mip.flow_vars.end(), head) != mip.flow_vars.end() ||
                         std::find(mip.coherence_vars.begin(), mip.coherence_vars.end(), head) != mip.coherence_vars.end();
    if (!defines) continue;
    double sum = row.rhs;
    for (std::size_t t = 1; t < row.terms.size(); ++t) sum -= row.terms[t].coef * values[row.terms[t].var];
    values[head] = sum;
  }
  return values;
}

}  // namespace cycleclust
