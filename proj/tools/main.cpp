#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cycleclust/branch_and_bound.hpp"
#include "cycleclust/error.hpp"
#include "cycleclust/fixtures.hpp"
#include "cycleclust/heuristics.hpp"
#include "cycleclust/matrix_io.hpp"
#include "cycleclust/multiway_cut.hpp"
#include "cycleclust/repressilator.hpp"
#include "cycleclust/sampling.hpp"

#ifndef CYCLECLUST_VERSION
#define CYCLECLUST_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace cycleclust;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 42;
  std::string out = ".";
  std::string config;
};

struct GenerateArgs {
  std::string kind;
  std::string name;
  // sampled potentials
  double drift = 0.1;
  double beta = HmcParams{}.beta;
  double noise = HmcParams{}.noise_std;
  double radius = HmcParams{}.target_radius;
  int steps = 10000;
  int bins = 20;
  int lag = 1;
  // repressilator
  int count = 200;
  double t_end = 1.5;
  double dt = 1e-3;
  // multiway cut
  std::string graph;
  int vertices = 9;
  int terminals = 3;
  double density = 0.4;
  double alpha = kDefaultAlpha;
};

struct SolveArgs {
  std::string matrix;
  int m = 3;
  double alpha = kDefaultAlpha;
  std::optional<double> time_limit;
  std::optional<long> node_limit;
  std::optional<double> gap_tol;
  bool emit_lp = false;
};

struct VerifyArgs {
  std::string matrix;
  std::string clustering;
  double tol = 1e-6;
};

struct OracleArgs {
  std::string matrix;
  int m = 3;
  double alpha = kDefaultAlpha;
};

// Records inputs/outputs of one command and writes `<command>.manifest.json`.
class Manifest {
 public:
  Manifest(std::string command, const Globals& g, std::vector<std::string> argv)
      : command_(std::move(command)), globals_(g), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

  void input(const std::string& path) { inputs_.push_back(path); }
  void output(const fs::path& path) { outputs_.push_back(path.filename().string()); }
  void param(const std::string& key, Json value) { params_[key] = std::move(value); }
  void stem(std::string s) { stem_ = std::move(s); }

  void write() const {
    Json doc;
    doc["format"] = "manifest-v1";
    doc["command"] = command_;
    doc["argv"] = argv_;
    doc["inputs"] = inputs_;
    doc["output_dir"] = globals_.out;
    doc["seed"] = globals_.seed;
    doc["config"] = globals_.config.empty() ? Json() : Json(globals_.config);
    doc["params"] = params_;
    doc["outputs"] = outputs_;
    doc["tool_version"] = CYCLECLUST_VERSION;
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    doc["wall_clock"] = stamp;
    doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const std::string file = stem_.empty() ? command_ : stem_ + "." + command_;
    write_text_file(fs::path(globals_.out) / (file + ".manifest.json"), doc.dump(2) + "\n");
  }

 private:
  std::string command_;
  std::string stem_;
  Globals globals_;
  std::vector<std::string> argv_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  Json params_ = Json::object();
  std::chrono::steady_clock::time_point start_;
};

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

FlowMatrix load_flow(const std::string& path) {
  const MatrixFile file = read_matrix_file(path);
  if (file.format == MatrixFormat::Flow) return FlowMatrix::from_entries(file.entries);
  const TransitionMatrix p = validate_stochastic(file.entries);
  return flow_matrix(p, stationary_distribution(p));
}

SolverConfig load_config(const Globals& g) {
  if (g.config.empty()) return {};
  return parse_solver_config(read_text_file(g.config));
}

void emit(Manifest& manifest, const fs::path& path, const std::string& text) {
  write_text_file(path, text);
  manifest.output(path);
  std::cout << "wrote " << path.string() << "\n";
}

std::string centers_csv(const Matrix& centers) {
  std::string out = "bin,x,y\n";
  char buf[80];
  for (int i = 0; i < centers.rows(); ++i) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", i + 1, centers(i, 0), centers(i, 1));
    out += buf;
  }
  return out;
}

int run_generate(const GenerateArgs& a, const Globals& g, Manifest& manifest) {
  const fs::path dir(g.out);
  const std::string name = a.name.empty() ? a.kind : a.name;
  manifest.param("kind", a.kind);
  manifest.stem(name);

  if (a.kind == "triangle") {
    const FlowMatrix w = triangle_fixture();
    emit(manifest, dir / (name + ".fm"), format_matrix(MatrixFormat::Flow, w.entries()));
    return kExitOk;
  }
  if (a.kind == "omega3" || a.kind == "omega4" || a.kind == "omega6") {
    const Potential potential(parse_potential_kind(a.kind));
    HmcParams hp;
    hp.beta = a.beta;
    hp.steps = a.steps;
    hp.drift = a.drift;
    hp.noise_std = a.noise;
    hp.target_radius = a.radius;
    hp.seed = g.seed;
    manifest.param("beta", a.beta);
    manifest.param("steps", a.steps);
    manifest.param("drift", a.drift);
    manifest.param("noise_std", a.noise);
    manifest.param("target_radius", a.radius);
    manifest.param("bins", a.bins);
    manifest.param("lag", a.lag);
    const Trajectory traj = hmc_with_drift(potential, hp);
    const Matrix centers = gather_rows(traj.points, select_bin_centers(traj.points, a.bins));
    const TransitionMatrix p = hmc_transition_matrix(traj.points, centers, a.lag);
    emit(manifest, dir / (name + ".tm"), format_matrix(MatrixFormat::Transition, p.entries()));
    emit(manifest, dir / (name + "_trajectory.csv"), trajectory_csv(traj.points));
    emit(manifest, dir / (name + "_centers.csv"), centers_csv(centers));
    manifest.param("acceptance_rate", static_cast<double>(traj.accepted) / static_cast<double>(traj.proposals));
    return kExitOk;
  }
  if (a.kind == "repressilator") {
    RepressilatorOptions opts;
    opts.count = a.count;
    opts.t_end = a.t_end;
    opts.dt = a.dt;
    manifest.param("count", a.count);
    manifest.param("t_end", a.t_end);
    manifest.param("dt", a.dt);
    const RepressilatorData data = repressilator_pipeline(opts);
    const std::vector<std::string> cols{"m_A", "p_A", "m_B", "p_B", "m_C", "p_C"};
    emit(manifest, dir / (name + ".tm"), format_matrix(MatrixFormat::Transition, data.transition.entries()));
    emit(manifest, dir / (name + "_starts.csv"), trajectory_csv(data.starts, cols));
    emit(manifest, dir / (name + "_ends.csv"), trajectory_csv(data.ends, cols));
    return kExitOk;
  }
  if (a.kind == "multiway-cut") {
    MultiwayCutInstance mc;
    if (!a.graph.empty()) {
      manifest.input(a.graph);
      mc = parse_multiway_cut(read_text_file(a.graph));
      const double dropped = drop_terminal_edges(mc);
      if (dropped > 0.0) std::cerr << "dropped terminal-terminal edges of total weight " << dropped << "\n";
    } else {
      mc = random_multiway_cut(a.vertices, a.terminals, a.density, g.seed);
      manifest.param("vertices", a.vertices);
      manifest.param("terminals", a.terminals);
      manifest.param("density", a.density);
    }
    manifest.param("alpha", a.alpha);
    const CycleReduction red = multiway_cut_to_instance(mc, a.alpha);
    manifest.param("big_m", red.big_m);
    emit(manifest, dir / (name + ".tm"), format_matrix(MatrixFormat::Transition, red.transition.entries()));
    emit(manifest, dir / (name + ".graph"), write_multiway_cut(mc));
    return kExitOk;
  }
  throw Error(Errc::InvalidArgument, "unknown generator '" + a.kind + "'");
}

std::string trace_csv(const SolveResult& r) {
  std::string out = "nodes,seconds,primal,dual\n";
  char buf[128];
  for (const auto& t : r.trace) {
    std::snprintf(buf, sizeof buf, "%ld,%.6f,%.17g,%.17g\n", t.nodes, t.seconds, t.primal, t.dual);
    out += buf;
  }
  return out;
}

int run_solve(const SolveArgs& a, const Globals& g, Manifest& manifest) {
  manifest.input(a.matrix);
  manifest.stem(stem_of(a.matrix));
  SolverConfig cfg = load_config(g);
  if (a.time_limit) cfg.time_limit_s = *a.time_limit;
  if (a.node_limit) cfg.node_limit = *a.node_limit;
  if (a.gap_tol) cfg.gap_tol = *a.gap_tol;
  manifest.param("m", a.m);
  manifest.param("alpha", a.alpha);
  manifest.param("solver", Json::parse(write_solver_config(cfg)));

  const FlowMatrix w = load_flow(a.matrix);
  const MipInstance mip = build_mip(w, a.m, a.alpha);
  const fs::path dir(g.out);
  const std::string stem = stem_of(a.matrix);
  if (a.emit_lp) emit(manifest, dir / (stem + ".lp"), export_lp(mip));

  const SolveResult r = branch_and_bound(mip, w, cfg);
  emit(manifest, dir / (stem + ".solve.json"), write_solve_report(r));
  emit(manifest, dir / (stem + ".trace.csv"), trace_csv(r));
  if (r.incumbent) emit(manifest, dir / (stem + ".cc.json"), write_clustering_json(*r.incumbent, r.incumbent_value));

  std::printf("status %s  primal %.12g  dual %.12g  gap %.3g  nodes %ld  %.2fs\n", std::string(to_string(r.status)).c_str(),
              r.primal, r.dual_bound, r.gap, r.nodes, r.wall_time);
  if (r.incumbent) {
    std::printf("flow %.12g  coherence %.12g\n", r.incumbent_value.flow_part, r.incumbent_value.coherence_part);
  }
  return kExitOk;
}

void print_matrix(const Matrix& mtx) {
  for (int i = 0; i < mtx.rows(); ++i) {
    for (int j = 0; j < mtx.cols(); ++j) std::printf(" %+.6e", mtx(i, j));
    std::printf("\n");
  }
}

int run_verify(const VerifyArgs& a, Manifest& manifest) {
  manifest.input(a.matrix);
  manifest.input(a.clustering);
  manifest.stem(stem_of(a.clustering));
  const FlowMatrix w = load_flow(a.matrix);
  const ClusteringDocument doc = read_clustering_json(read_text_file(a.clustering));
  const ObjectiveValue v = objective(w, doc.clustering, doc.objective.alpha);
  const double d_total = doc.objective.total - v.total;
  const double d_flow = doc.objective.flow_part - v.flow_part;
  const double d_coh = doc.objective.coherence_part - v.coherence_part;
  std::printf("objective  stored %.12g  recomputed %.12g  delta %+.3e\n", doc.objective.total, v.total, d_total);
  std::printf("flow       stored %.12g  recomputed %.12g  delta %+.3e\n", doc.objective.flow_part, v.flow_part, d_flow);
  std::printf("coherence  stored %.12g  recomputed %.12g  delta %+.3e\n", doc.objective.coherence_part,
              v.coherence_part, d_coh);

  const Matrix delta = project(w, doc.clustering).delta();
  std::printf("Delta (%d x %d):\n", static_cast<int>(delta.rows()), static_cast<int>(delta.cols()));
  print_matrix(delta);
  std::printf("max |row sum| %.3e  max |diag| %.3e\n", delta.rowwise().sum().cwiseAbs().maxCoeff(),
              delta.diagonal().cwiseAbs().maxCoeff());
  if (doc.clustering.clusters() == 3) {
    std::printf("epsilon %.12g  structure residual %.3e\n", delta(0, 1), epsilon_structure_residual(delta));
  }
  const bool ok = std::abs(d_total) <= a.tol && std::abs(d_flow) <= a.tol && std::abs(d_coh) <= a.tol;
  std::printf("%s\n", ok ? "verified" : "MISMATCH");
  return ok ? kExitOk : kExitRuntime;
}

int run_oracle(const OracleArgs& a, const Globals& g, Manifest& manifest) {
  manifest.input(a.matrix);
  manifest.stem(stem_of(a.matrix));
  manifest.param("m", a.m);
  manifest.param("alpha", a.alpha);
  const FlowMatrix w = load_flow(a.matrix);
  const BruteForceResult r = brute_force(w, a.m, a.alpha);
  emit(manifest, fs::path(g.out) / (stem_of(a.matrix) + ".oracle.json"), write_clustering_json(r.clustering, r.value));
  std::printf("optimum %.12g  flow %.12g  coherence %.12g  (%ld assignments)\n", r.value.total, r.value.flow_part,
              r.value.coherence_part, r.evaluated);
  return kExitOk;
}

int run_export(const OracleArgs& a, const Globals& g, Manifest& manifest) {
  manifest.input(a.matrix);
  manifest.stem(stem_of(a.matrix));
  manifest.param("m", a.m);
  manifest.param("alpha", a.alpha);
  const FlowMatrix w = load_flow(a.matrix);
  const MipInstance mip = build_mip(w, a.m, a.alpha);
  emit(manifest, fs::path(g.out) / (stem_of(a.matrix) + ".lp"), export_lp(mip));
  return kExitOk;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NegativeEntry:
    case Errc::RowSumViolation:
    case Errc::NonUnique:
    case Errc::NonFinite:
    case Errc::InvalidClustering:
    case Errc::ParseError:
    case Errc::IsolatedNonTerminal:
    case Errc::InvalidClusterCount:
    case Errc::InvalidArgument:
    case Errc::InvalidTerminalCount:
    case Errc::DimensionMismatch:
    case Errc::TooLarge: return kExitUsage;
    default: return kExitRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle clustering of non-reversible Markov chains"};
  app.set_version_flag("--version", CYCLECLUST_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--config", g.config, "Solver configuration (JSON)")->check(CLI::ExistingFile);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build an instance");
  generate->add_option("kind", gen.kind, "omega3 | omega4 | omega6 | repressilator | triangle | multiway-cut")
      ->required()
      ->check(CLI::IsMember({"omega3", "omega4", "omega6", "repressilator", "triangle", "multiway-cut"}));
  generate->add_option("--name", gen.name, "Output file stem (defaults to the kind)");
  generate->add_option("--drift", gen.drift, "Drift magnitude")->capture_default_str();
  generate->add_option("--beta", gen.beta, "Inverse temperature")->capture_default_str();
  generate->add_option("--noise", gen.noise, "Proposal standard deviation")->capture_default_str();
  generate->add_option("--radius", gen.radius, "Radius that advances the drift target")->capture_default_str();
  generate->add_option("--steps", gen.steps, "Trajectory length")->capture_default_str();
  generate->add_option("--bins", gen.bins, "Number of bins")->capture_default_str();
  generate->add_option("--lag", gen.lag, "Lag in steps")->capture_default_str();
  generate->add_option("--count", gen.count, "Repressilator start points")->capture_default_str();
  generate->add_option("--t-end", gen.t_end, "Repressilator integration time")->capture_default_str();
  generate->add_option("--dt", gen.dt, "RK4 step")->capture_default_str();
  generate->add_option("--graph", gen.graph, "Multiway-cut graph file")->check(CLI::ExistingFile);
  generate->add_option("--vertices", gen.vertices, "Random graph size")->capture_default_str();
  generate->add_option("--terminals", gen.terminals, "Random graph terminals")->capture_default_str();
  generate->add_option("--density", gen.density, "Random graph edge probability")->capture_default_str();
  generate->add_option("--alpha", gen.alpha, "Coherence weight used for the big-M")->capture_default_str();

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Branch-and-bound on a tm-v1/fm-v1 matrix");
  solve->add_option("matrix", sol.matrix)->required()->check(CLI::ExistingFile);
  solve->add_option("-m,--clusters", sol.m, "Cycle length")->capture_default_str();
  solve->add_option("--alpha", sol.alpha, "Coherence weight")->capture_default_str();
  solve->add_option("--time-limit", sol.time_limit, "Seconds");
  solve->add_option("--node-limit", sol.node_limit, "Nodes");
  solve->add_option("--gap-tol", sol.gap_tol, "Relative gap");
  solve->add_flag("--emit-lp", sol.emit_lp, "Also write the model in LP format");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "Recompute a stored clustering's objective");
  verify->add_option("matrix", ver.matrix)->required()->check(CLI::ExistingFile);
  verify->add_option("clustering", ver.clustering)->required()->check(CLI::ExistingFile);
  verify->add_option("--tol", ver.tol, "Accepted absolute deviation")->capture_default_str();

  OracleArgs ora;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum (small instances)");
  oracle->add_option("matrix", ora.matrix)->required()->check(CLI::ExistingFile);
  oracle->add_option("-m,--clusters", ora.m, "Cycle length")->capture_default_str();
  oracle->add_option("--alpha", ora.alpha, "Coherence weight")->capture_default_str();

  OracleArgs exp;
  auto* export_lp_cmd = app.add_subcommand("export-lp", "Write the linearized model");
  export_lp_cmd->add_option("matrix", exp.matrix)->required()->check(CLI::ExistingFile);
  export_lp_cmd->add_option("-m,--clusters", exp.m, "Cycle length")->capture_default_str();
  export_lp_cmd->add_option("--alpha", exp.alpha, "Coherence weight")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::string> args(argv, argv + argc);
  CLI::App* cmd = app.get_subcommands().front();
  Manifest manifest(cmd->get_name(), g, args);
  try {
    int rc = kExitOk;
    if (cmd == generate) rc = run_generate(gen, g, manifest);
    if (cmd == solve) rc = run_solve(sol, g, manifest);
    if (cmd == verify) rc = run_verify(ver, manifest);
    if (cmd == oracle) rc = run_oracle(ora, g, manifest);
    if (cmd == export_lp_cmd) rc = run_export(exp, g, manifest);
    manifest.write();
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
