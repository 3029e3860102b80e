#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "basp/error.hpp"
#include "basp/instances.hpp"
#include "basp/io.hpp"
#include "basp/oracles.hpp"
#include "basp/profile.hpp"
#include "basp/search.hpp"

namespace basp::cli {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr int kReportVersion = 1;
constexpr double kSelfCheckTolerance = 1e-6;

struct PlanFlags {
  std::string engine = "auto";
  std::optional<double> grid_step;
};

void AddPlanFlags(CLI::App* cmd, PlanFlags& flags) {
  cmd->add_option("--engine", flags.engine, "Profile engine")
      ->check(CLI::IsMember({"auto", "exact", "grid"}))
      ->capture_default_str();
  cmd->add_option("--grid-step", flags.grid_step,
                  "Grid cell length; selects the grid engine unless --engine is given "
                  "(default from BASP_GRID_STEP)")
      ->check(CLI::PositiveNumber);
}

PlanOptions ToPlanOptions(const PlanFlags& flags, const CLI::App* cmd) {
  PlanOptions opt;
  std::optional<double> step = flags.grid_step;
  if (!step) {
    if (const char* env = std::getenv("BASP_GRID_STEP"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const double v = std::strtod(env, &end);
      if (end == env || *end != '\0' || !(v > 0.0)) {
        throw CLI::ValidationError("BASP_GRID_STEP", "must be a positive number");
      }
      step = v;
    }
  }
  if (step) opt.grid_step = *step;
  const bool engine_given = cmd->count("--engine") > 0;
  if (flags.engine == "exact") {
    opt.engine = PlanOptions::EngineChoice::kExact;
  } else if (flags.engine == "grid" || (!engine_given && flags.grid_step)) {
    opt.engine = PlanOptions::EngineChoice::kGrid;
  }
  return opt;
}

std::string Fmt(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

json JsonNumber(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string Join(const RoadGraph& g, const PathWord& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += g.Label(p[i]);
  }
  return s;
}

json Labels(const RoadGraph& g, const PathWord& p) {
  json a = json::array();
  for (NodeId v : p) a.push_back(g.Label(v));
  return a;
}

PathWord ParsePath(const RoadGraph& g, const std::string& text) {
  std::istringstream in(text);
  PathWord p;
  std::string tok;
  while (in >> tok) {
    if (auto id = g.FindNode(tok)) {
      p.push_back(*id);
      continue;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0' || v >= g.node_count()) {
      throw Error(ErrorCode::kNotAPath, "unknown node '" + tok + "'");
    }
    p.push_back(static_cast<NodeId>(v));
  }
  if (p.empty()) throw Error(ErrorCode::kNotAPath, "empty path");
  return p;
}

std::vector<int> ParseIntList(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const long v = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0') throw CLI::ValidationError(what, "expected a comma-separated integer list");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw CLI::ValidationError(what, "empty list");
  return out;
}

void WriteText(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorCode::kIo, "cannot write " + path);
}

// --- solve ------------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  std::string algo = "adaptive";
  std::optional<int> k;
  int max_len = 10;
  bool json = false;
  PlanFlags plan;
};

int Solve(const SolveArgs& a, const CLI::App* cmd, std::ostream& out, std::ostream& err) {
  if ((a.algo == "astar-k" || a.algo == "dijkstra-k") && !a.k) {
    err << "basp solve: --k is required for " << a.algo << "\n";
    return kExitUsage;
  }
  const PlanOptions plan = ToPlanOptions(a.plan, cmd);
  const RoadGraph g = LoadInstance(a.instance);
  if (g.query().targets.empty()) {
    err << "basp solve: instance has no query targets\n";
    return kExitUsage;
  }
  SearchOptions opt;
  opt.plan = plan;
  Solution sol;
  if (a.algo == "adaptive") {
    sol = AdaptiveAstar(g, opt);
  } else if (a.algo == "astar-k") {
    sol = AstarK(g, *a.k, true, opt);
  } else if (a.algo == "dijkstra-k") {
    sol = DijkstraExtended(g, *a.k, opt);
  } else if (a.algo == "one-basp") {
    sol = OneBasp(g, opt);
  } else {
    sol = BruteForce(g, a.max_len, plan);
  }

  std::optional<double> replanned;
  if (sol.status == SearchStatus::kSolved) {
    replanned = TravelTime(sol.profile);
    if (!(std::abs(*replanned - sol.time) <= kSelfCheckTolerance)) {
      err << "basp solve: internal self-check failed: search time " << Fmt(sol.time) << " vs replanned "
          << Fmt(*replanned) << "\n";
      return kExitInternal;
    }
  }

  if (a.json) {
    json r;
    r["schema"] = "basp.solve";
    r["version"] = kReportVersion;
    r["algo"] = a.algo;
    r["status"] = std::string(ToString(sol.status));
    r["path"] = Labels(g, sol.path);
    r["path_ids"] = sol.path;
    r["time"] = JsonNumber(sol.time);
    r["replanned_time"] = replanned ? JsonNumber(*replanned) : json(nullptr);
    r["final_k"] = sol.stats.final_k;
    r["stats"] = {{"expanded", sol.stats.expanded},
                  {"generated", sol.stats.generated},
                  {"queue_peak", sol.stats.queue_peak},
                  {"restarts", sol.stats.restarts},
                  {"wall_time_s", sol.stats.wall_time}};
    if (sol.violation) {
      r["violation"] = {{"word", Labels(g, sol.violation->word)}, {"terminal", sol.violation->terminal}};
    } else {
      r["violation"] = nullptr;
    }
    out << r.dump(2) << "\n";
  } else {
    out << "algo: " << a.algo << "\n";
    out << "status: " << ToString(sol.status) << "\n";
    if (sol.status == SearchStatus::kSolved) {
      out << "path: " << Join(g, sol.path) << "\n";
      out << "time: " << Fmt(sol.time) << "\n";
      out << "replanned_time: " << Fmt(*replanned) << "\n";
    }
    if (sol.violation) {
      out << "violation: '" << Join(g, sol.violation->word) << "' is not saturating\n";
    }
    out << "final_k: " << sol.stats.final_k << "\n";
    out << "expanded: " << sol.stats.expanded << "\n";
    out << "generated: " << sol.stats.generated << "\n";
    out << "wall_time_s: " << Fmt(sol.stats.wall_time) << "\n";
  }
  switch (sol.status) {
    case SearchStatus::kSolved: return kExitOk;
    case SearchStatus::kNoPath: return kExitNoPath;
    case SearchStatus::kSaturationViolation: return kExitSaturation;
    case SearchStatus::kTimeout: return kExitInternal;
  }
  return kExitInternal;
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
  GeneratorParams params;
  std::string example;
  std::string out;
};

int Generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  if (!a.example.empty()) {
    WriteText(a.out, SerializeInstance(a.example == "chain" ? ChainExample() : ExampleOne()), out);
    return kExitOk;
  }
  if (a.params.n < 2) {
    err << "basp generate: --n must be >= 2\n";
    return kExitUsage;
  }
  WriteText(a.out, SerializeInstance(RandomInstance(a.params)), out);
  return kExitOk;
}

// --- bench ------------------------------------------------------------------

struct BenchArgs {
  std::string n_list = "100";
  int instances = 1;
  int queries = 10;
  std::uint64_t seed = 1;
  double timeout = 100.0;
  int workers = 1;
  double accel = 0.1;
  std::string csv;
};

struct BenchRow {
  int n = 0;
  std::uint64_t instance_seed = 0;
  int query = 0;
  std::string source;
  std::string target;
  double time_s = 0.0;
  int final_k = 0;
  std::string solved;
};

int Bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto ns = ParseIntList(a.n_list, "--n-list");
  for (int n : ns) {
    if (n < 2) {
      err << "basp bench: every n must be >= 2\n";
      return kExitUsage;
    }
  }
  struct Task {
    std::shared_ptr<const RoadGraph> graph;
    int n;
    std::uint64_t seed;
    int index;
    Query query;
  };
  std::vector<Task> tasks;
  for (int n : ns) {
    for (int i = 0; i < a.instances; ++i) {
      GeneratorParams p;
      p.n = n;
      p.seed = a.seed + static_cast<std::uint64_t>(i);
      p.accel = a.accel;
      auto g = std::make_shared<const RoadGraph>(RandomInstance(p));
      std::mt19937_64 rng(p.seed);
      for (int q = 0; q < a.queries; ++q) tasks.push_back({g, n, p.seed, q, RandomQuery(*g, rng)});
    }
  }

  std::vector<BenchRow> rows(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      RoadGraph g = *t.graph;
      g.set_query(t.query);
      BenchRow& row = rows[i];
      row.n = t.n;
      row.instance_seed = t.seed;
      row.query = t.index;
      row.source = g.Label(t.query.source);
      row.target = g.Label(t.query.targets.front());
      SearchOptions opt;
      const auto started = Clock::now();
      opt.deadline = started + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(a.timeout));
      try {
        const Solution sol = AdaptiveAstar(g, opt);
        row.final_k = sol.stats.final_k;
        row.solved = sol.status == SearchStatus::kSolved    ? "true"
                     : sol.status == SearchStatus::kTimeout ? "timeout"
                                                            : "false";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kKLimitExceeded) throw;
        row.solved = "k_limit";
      }
      row.time_s = std::chrono::duration<double>(Clock::now() - started).count();
    }
  };
  const int workers = std::max(1, a.workers);
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        work();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const BenchRow& x, const BenchRow& y) {
    return std::tie(x.n, x.instance_seed, x.query) < std::tie(y.n, y.instance_seed, y.query);
  });
  std::ostringstream csv;
  csv << "n,instance_seed,query,source,target,time_s,final_k,solved\n";
  for (const auto& r : rows) {
    csv << r.n << ',' << r.instance_seed << ',' << r.query << ',' << r.source << ',' << r.target << ','
        << Fmt(r.time_s) << ',' << r.final_k << ',' << r.solved << '\n';
  }
  WriteText(a.csv, csv.str(), out);
  return kExitOk;
}

// --- export-profile ---------------------------------------------------------

struct ExportArgs {
  std::string instance;
  std::string path;
  bool solve = false;
  std::string out;
  int samples = 0;
  PlanFlags plan;
};

std::string ProfileCsv(const SpeedProfile& w, int samples) {
  struct Row {
    double lambda;
    double w;
  };
  std::vector<Row> rows;
  const auto nodes = w.nodes();
  const double length = w.length();
  std::vector<double> extra;
  if (samples >= 2) {
    for (int i = 0; i < samples; ++i) extra.push_back(length * i / (samples - 1));
  }
  std::size_t j = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    while (j < extra.size() && extra[j] < nodes[i].lambda) {
      rows.push_back({extra[j], w.EvalRight(extra[j])});
      ++j;
    }
    while (j < extra.size() && extra[j] == nodes[i].lambda) ++j;
    rows.push_back({nodes[i].lambda, nodes[i].w});
  }
  std::ostringstream csv;
  csv << "lambda,w,v,t\n";
  double t = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) t += SegmentTime(rows[i].lambda - rows[i - 1].lambda, rows[i - 1].w, rows[i].w);
    csv << Fmt(rows[i].lambda) << ',' << Fmt(rows[i].w) << ',' << Fmt(std::sqrt(std::max(0.0, rows[i].w))) << ','
        << Fmt(t) << '\n';
  }
  return csv.str();
}

int ExportProfile(const ExportArgs& a, const CLI::App* cmd, std::ostream& out, std::ostream& err) {
  if (a.solve == !a.path.empty()) {
    err << "basp export-profile: give exactly one of --path or --solve\n";
    return kExitUsage;
  }
  const PlanOptions plan = ToPlanOptions(a.plan, cmd);
  const RoadGraph g = LoadInstance(a.instance);
  PathWord p;
  if (a.solve) {
    SearchOptions opt;
    opt.plan = plan;
    const Solution sol = AdaptiveAstar(g, opt);
    if (sol.status != SearchStatus::kSolved) {
      err << "basp export-profile: " << ToString(sol.status) << "\n";
      return kExitNoPath;
    }
    p = sol.path;
  } else {
    p = ParsePath(g, a.path);
  }
  const Query& q = g.query();
  const PlanResult r = PlanSpeed(ConcatBounds(g, p), {q.w_source, q.w_target}, plan);
  if (!r.feasible) {
    err << "basp export-profile: path is infeasible on [" << Fmt(r.violation->begin) << ", "
        << Fmt(r.violation->end) << "]\n";
    return kExitNoPath;
  }
  WriteText(a.out, ProfileCsv(r.profile, a.samples), out);
  return kExitOk;
}

// --- oracle -----------------------------------------------------------------

struct OracleArgs {
  std::string kind;
  std::string instance;
  int max_len = 10;
  std::string weights;
  std::string out;
};

int Oracle(const OracleArgs& a, std::ostream& out, std::ostream& err) {
  if (a.kind == "partition") {
    if (a.weights.empty()) {
      err << "basp oracle partition: --weights is required\n";
      return kExitUsage;
    }
    std::vector<std::uint32_t> w;
    for (int x : ParseIntList(a.weights, "--weights")) {
      if (x < 1) {
        err << "basp oracle partition: weights must be positive\n";
        return kExitUsage;
      }
      w.push_back(static_cast<std::uint32_t>(x));
    }
    const RoadGraph g = PartitionInstance(w);
    if (!a.out.empty()) SaveInstance(g, a.out);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    const Solution sol = AdaptiveAstar(g);
    out << "certificate: " << Fmt(std::sqrt(2.0 * total)) << "\n";
    out << "optimum: " << Fmt(sol.time) << "\n";
    out << "partitionable: " << (std::abs(sol.time - std::sqrt(2.0 * total)) <= 1e-6 ? "yes" : "no") << "\n";
    return sol.status == SearchStatus::kSolved ? kExitOk : kExitNoPath;
  }
  if (a.instance.empty()) {
    err << "basp oracle " << a.kind << ": instance file required\n";
    return kExitUsage;
  }
  const RoadGraph g = LoadInstance(a.instance);
  if (a.kind == "dp") {
    const DpResult r = PseudoPolyDp(g);
    out << "time: " << Fmt(r.time) << "\n";
    out << "states: " << r.states << "\n";
    out << "levels: " << r.levels << "\n";
    return std::isfinite(r.time) ? kExitOk : kExitNoPath;
  }
  const Solution sol = BruteForce(g, a.max_len);
  if (sol.status != SearchStatus::kSolved) {
    out << "status: " << ToString(sol.status) << "\n";
    return kExitNoPath;
  }
  out << "path: " << Join(g, sol.path) << "\n";
  out << "time: " << Fmt(sol.time) << "\n";
  out << "enumerated: " << sol.stats.expanded << "\n";
  return kExitOk;
}

int ExitFor(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kNotAPath:
      return kExitNoPath;
    case ErrorCode::kInvalidArgument:
      return kExitUsage;
    default:
      return kExitInternal;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-time routing with bounded acceleration", "basp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the instance's query");
  solve_cmd->add_option("instance", solve.instance, "Instance file (JSON)")->required();
  solve_cmd->add_option("--algo", solve.algo, "Solver")
      ->check(CLI::IsMember({"adaptive", "astar-k", "dijkstra-k", "one-basp", "brute"}))
      ->capture_default_str();
  solve_cmd->add_option("--k", solve.k, "Suffix length for astar-k and dijkstra-k")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--max-len", solve.max_len, "Word length limit for brute")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  solve_cmd->add_flag("--json", solve.json, "Machine-readable report");
  AddPlanFlags(solve_cmd, solve.plan);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Write a random geometric instance");
  auto* n_opt = gen_cmd->add_option("--n", gen.params.n, "Number of positions (nodes = 2n)");
  gen_cmd->add_option("--example", gen.example, "Write a built-in example instead")
      ->check(CLI::IsMember({"chain", "example1"}))
      ->excludes(n_opt);
  gen_cmd->add_option("--seed", gen.params.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");
  gen_cmd->add_flag("--curvature-bounds", gen.params.curvature_bounds, "Per-segment caps from curvature");
  gen_cmd->add_option("--accel", gen.params.accel, "Bound on |dw/dlambda|")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--scale", gen.params.scale, "Side of the position square (default 10 sqrt(n))");
  gen_cmd->add_option("--cap-per-radius", gen.params.cap_per_radius, "Squared-speed cap per meter of radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--max-radius", gen.params.max_radius, "Largest turning radius")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time adaptive solves on random instances");
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated position counts")->capture_default_str();
  bench_cmd->add_option("--instances", bench.instances, "Instances per n")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--queries", bench.queries, "Queries per instance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed of the first instance")->capture_default_str();
  bench_cmd->add_option("--timeout", bench.timeout, "Seconds per query")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--accel", bench.accel, "Generator acceleration bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench_cmd->add_option("--csv", bench.csv, "Output file (default stdout)");

  ExportArgs exp;
  auto* exp_cmd = app.add_subcommand("export-profile", "Write the optimal profile along a path as CSV");
  exp_cmd->add_option("instance", exp.instance, "Instance file (JSON)")->required();
  exp_cmd->add_option("--path", exp.path, "Node names or ids separated by spaces");
  exp_cmd->add_flag("--solve", exp.solve, "Use the adaptive solver's route");
  exp_cmd->add_option("--out", exp.out, "Output file (default stdout)");
  exp_cmd->add_option("--samples", exp.samples, "Extra uniformly spaced rows")->check(CLI::NonNegativeNumber);
  AddPlanFlags(exp_cmd, exp.plan);

  OracleArgs orc;
  auto* orc_cmd = app.add_subcommand("oracle", "Reference solvers");
  orc_cmd->add_option("kind", orc.kind, "brute, dp or partition")
      ->required()
      ->check(CLI::IsMember({"brute", "dp", "partition"}));
  orc_cmd->add_option("instance", orc.instance, "Instance file (brute, dp)");
  orc_cmd->add_option("--max-len", orc.max_len, "Word length limit for brute")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  orc_cmd->add_option("--weights", orc.weights, "Comma-separated positive integers (partition)");
  orc_cmd->add_option("--out", orc.out, "Also save the partition instance here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return Solve(solve, solve_cmd, out, err);
    if (*gen_cmd) {
      if (gen.example.empty() && n_opt->count() == 0) {
        err << "basp generate: --n or --example is required\n";
        return kExitUsage;
      }
      return Generate(gen, out, err);
    }
    if (*bench_cmd) return Bench(bench, out, err);
    if (*exp_cmd) return ExportProfile(exp, exp_cmd, out, err);
    if (*orc_cmd) return Oracle(orc, out, err);
  } catch (const CLI::ParseError& e) {
    err << "basp: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "basp: " << e.what() << "\n";
    return ExitFor(e);
  } catch (const std::exception& e) {
    err << "basp: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace basp::cli
