// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "basp/error.hpp"
#include "basp/instances.hpp"
#include "basp/oracles.hpp"
#include "basp/profile.hpp"
#include "basp/reach.hpp"
#include "basp/search.hpp"

namespace {

using namespace basp;
using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kGoldenTol = 1e-12;
constexpr double kTimeTol = 1e-9;
constexpr double kOracleTol = 1e-6;
constexpr double kPropertyTol = 1e-9;
constexpr double kHeuristicTol = 1e-9;
constexpr double kConvergenceLow = 0.4;
constexpr double kConvergenceHigh = 0.6;
constexpr double kScalingLow = 1.4;
constexpr double kScalingHigh = 2.6;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double Seconds(Clock::time_point since) { return std::chrono::duration<double>(Clock::now() - since).count(); }

std::string Num(double x, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

// --- 1 ----------------------------------------------------------------------

Outcome GoldenEll() {
  const RoadGraph g = ChainExample();
  const PathWord s1{0, 1}, s12{0, 1, 2};
  const auto started = Clock::now();
  const auto pb1 = ConcatBounds(g, s1);
  const auto pb12 = ConcatBounds(g, s12);
  const double v[4] = {EllPlus(pb1), EllMinus(pb1), EllPlus(pb12), EllMinus(pb12)};
  const double elapsed = Seconds(started);
  const double want[4] = {1.0, 0.0, 1.0, 4.0 / 3.0};
  Outcome o;
  for (int i = 0; i < 4; ++i) o.pass &= std::abs(v[i] - want[i]) <= kGoldenTol;
  o.pass &= elapsed < 1e-3;
  o.detail = "l+(s1)=" + Num(v[0]) + " l-(s1)=" + Num(v[1]) + " l+(s12)=" + Num(v[2]) + " l-(s12)=" + Num(v[3]) +
             " in " + Num(elapsed * 1e3, 3) + " ms";
  return o;
}

// --- 2 ----------------------------------------------------------------------

Outcome AdaptiveChain() {
  const RoadGraph g = ChainExample();
  const Solution sol = AdaptiveAstar(g);
  const Solution brute = BruteForce(g, 10);
  Outcome o;
  o.pass = sol.status == SearchStatus::kSolved && sol.stats.final_k == 3 && std::abs(sol.time - brute.time) <= kTimeTol;
  o.detail = "final_k=" + std::to_string(sol.stats.final_k) + " time=" + Num(sol.time, 12) +
             " brute=" + Num(brute.time, 12);
  return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome ExampleOneCriterion() {
  const RoadGraph g = ExampleOne();
  const Solution sol = AdaptiveAstar(g);
  const PathWord sf{0, 2};
  const ReachBounds r = Reach(ConcatBounds(g, sf));
  // Reading alpha as a bound on dv/dt would give sqrt(6) = 2.449; alpha here
  // bounds dw/dlambda, which gives 2 sqrt(3).
  const double expected = 2.0 * std::sqrt(3.0);
  Outcome o;
  o.pass = sol.status == SearchStatus::kSolved && sol.path == sf && std::abs(r.ell_plus - 1.5) <= kGoldenTol &&
           std::abs(r.ell_minus - 1.5) <= kGoldenTol && std::abs(sol.time - expected) <= kTimeTol;
  o.detail = "path=" + std::string(sol.path == sf ? "s f" : "other") + " l+=" + Num(r.ell_plus) +
             " l-=" + Num(r.ell_minus) + " time=" + Num(sol.time, 12) + " (sqrt(6)=" + Num(std::sqrt(6.0)) + ")";
  return o;
}

// --- 4 and 7 ----------------------------------------------------------------

// Smallest T(q) over walks q from v to a target with a free start speed.
class FreeStartOracle {
 public:
  explicit FreeStartOracle(const RoadGraph& g) : g_(g), memo_(g.node_count(), -1.0) {}

  double operator()(NodeId v) {
    if (memo_[v] < 0.0) {
      best_ = g_.IsTarget(v) ? 0.0 : kInf;
      word_ = {v};
      Visit();
      memo_[v] = best_;
    }
    return memo_[v];
  }

 private:
  void Visit() {
    const double prefix = PlanSpeed(ConcatBounds(g_, word_), {std::nullopt, std::nullopt}).time;
    if (!(prefix < best_)) return;
    if (word_.size() > 1 && g_.IsTarget(word_.back())) {
      best_ = std::min(best_, TimeOrInf(std::nullopt, g_.query().w_target));
    }
    if (word_.size() >= 10) return;
    for (ArcId a : g_.out_arcs(word_.back())) {
      word_.push_back(g_.arc(a).to);
      Visit();
      word_.pop_back();
    }
  }

  double TimeOrInf(std::optional<double> ws, std::optional<double> wt) {
    try {
      return PlanSpeed(ConcatBounds(g_, word_), {ws, wt}).time;
    } catch (const Error&) {
      return kInf;
    }
  }

  const RoadGraph& g_;
  std::vector<double> memo_;
  PathWord word_;
  double best_ = kInf;
};

struct HeuristicTally {
  std::size_t edges = 0;
  std::size_t states = 0;
  std::size_t consistency = 0;
  std::size_t admissibility = 0;
};

RoadGraph SmallRandomInstance(std::uint64_t seed) {
  static const double accels[] = {0.1, 0.5, 2.0};
  GeneratorParams p;
  p.n = 3 + static_cast<int>(seed % 6);
  p.seed = seed;
  p.accel = accels[seed % 3];
  return RandomInstance(p);
}

Outcome OracleEquivalence(HeuristicTally& tally) {
  const auto started = Clock::now();
  int disagreements = 0, solved = 0;
  std::map<int, int> ks;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RoadGraph g = SmallRandomInstance(seed);
    std::mt19937_64 rng(seed);
    g.set_query(RandomQuery(g, rng));
    const auto h = HeuristicTable(g);
    FreeStartOracle to_go(g);
    SearchOptions opt;
    opt.on_edge = [&](const EdgeEvent& e) {
      ++tally.edges;
      if (e.h_from > e.eta + e.h_to + kHeuristicTol) ++tally.consistency;
    };
    opt.on_expand = [&](const ExpandEvent& e) {
      ++tally.states;
      const NodeId v = e.state.word.back();
      const double bound = e.state.terminal ? 0.0 : to_go(v);
      if (e.h > bound + kHeuristicTol) ++tally.admissibility;
    };
    const Solution a = AdaptiveAstar(g, opt);
    const Solution d = DijkstraExtended(g, std::max(1, a.stats.final_k), opt);
    const Solution b = BruteForce(g, 10);
    ks[a.stats.final_k]++;
    const bool same_status = a.status == d.status && a.status == b.status;
    const bool same_time = a.status != SearchStatus::kSolved ||
                           (std::abs(a.time - d.time) <= kOracleTol && std::abs(a.time - b.time) <= kOracleTol);
    if (!same_status || !same_time) {
      ++disagreements;
      std::fprintf(stderr, "  criterion 4 seed %llu: adaptive %.12g dijkstra %.12g brute %.12g\n",
                   static_cast<unsigned long long>(seed), a.time, d.time, b.time);
    }
    solved += a.status == SearchStatus::kSolved;
  }
  const double elapsed = Seconds(started);
  Outcome o;
  o.pass = disagreements == 0 && elapsed < 60.0;
  std::string hist;
  for (auto [k, c] : ks) hist += " k" + std::to_string(k) + ":" + std::to_string(c);
  o.detail = "200 instances, " + std::to_string(solved) + " solved, " + std::to_string(disagreements) +
             " disagreements, final_k" + hist + ", " + Num(elapsed, 3) + " s";
  return o;
}

Outcome HeuristicProperties(const HeuristicTally& t) {
  Outcome o;
  o.pass = t.edges > 0 && t.consistency == 0 && t.admissibility == 0;
  o.detail = std::to_string(t.edges) + " edges, " + std::to_string(t.consistency) + " consistency violations; " +
             std::to_string(t.states) + " states, " + std::to_string(t.admissibility) + " admissibility violations";
  return o;
}

// --- 5 ----------------------------------------------------------------------

bool HasHalf(const std::vector<std::uint32_t>& w) {
  const std::uint32_t total = std::accumulate(w.begin(), w.end(), 0u);
  if (total % 2) return false;
  std::vector<bool> reach(total / 2 + 1, false);
  reach[0] = true;
  for (auto x : w) {
    for (std::uint32_t s = total / 2; s >= x; --s) reach[s] = reach[s] || reach[s - x];
  }
  return reach[total / 2];
}

void Multisets(int size, int max_sum, std::vector<std::vector<std::uint32_t>>& out) {
  std::vector<std::uint32_t> cur;
  std::function<void(int, std::uint32_t)> rec = [&](int sum, std::uint32_t lo) {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t x = lo; sum + static_cast<int>(x) * (size - static_cast<int>(cur.size())) <= max_sum; ++x) {
      cur.push_back(x);
      rec(sum + static_cast<int>(x), x);
      cur.pop_back();
    }
  };
  rec(0, 1);
}

Outcome PartitionStructure() {
  const auto started = Clock::now();
  std::mt19937_64 rng(2024);
  std::size_t tested = 0, yes = 0, wrong = 0;
  for (int size = 2; size <= 8; ++size) {
    std::vector<std::vector<std::uint32_t>> sets;
    Multisets(size, 40, sets);
    if (size >= 6) {
      std::shuffle(sets.begin(), sets.end(), rng);
      sets.resize(std::min<std::size_t>(sets.size(), 1000));
    }
    for (const auto& w : sets) {
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      const double certificate = std::sqrt(2.0 * total);
      const Solution sol = AdaptiveAstar(PartitionInstance(w));
      const bool half = HasHalf(w);
      const bool ok = sol.status == SearchStatus::kSolved &&
                      (half ? std::abs(sol.time - certificate) <= kOracleTol : sol.time > certificate + kOracleTol);
      wrong += !ok;
      yes += half;
      ++tested;
    }
  }
  const double elapsed = Seconds(started);
  Outcome o;
  o.pass = wrong == 0 && elapsed < 30.0;
  o.detail = std::to_string(tested) + " weight sets (" + std::to_string(yes) + " partitionable; all of sizes 2-5, " +
             "1000 sampled per size 6-8), " + std::to_string(wrong) + " wrong, " + Num(elapsed, 3) + " s";
  return o;
}

// --- 6 ----------------------------------------------------------------------

RoadGraph UnitInstance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nodes(4, 7), length(1, 3), cap2(1, 8);
  std::bernoulli_distribution edge(0.5);
  RoadGraph g;
  const int n = nodes(rng);
  for (int i = 0; i < n; ++i) g.AddNode();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (j == i + 1 || edge(rng)) {
        g.AddArc(i, j, length(rng), ArcBounds::Constant({0.0, cap2(rng) / 2.0, -1.0, 1.0}));
      }
    }
  }
  g.set_query({0, {static_cast<NodeId>(n - 1)}, 0.0, 0.0});
  return g;
}

Outcome PseudoPolynomial() {
  std::mt19937_64 rng(77);
  int mismatches = 0, over_bound = 0;
  std::size_t max_states = 0;
  for (int i = 0; i < 50; ++i) {
    const RoadGraph g = UnitInstance(rng);
    const DpResult dp = PseudoPolyDp(g);
    const Solution brute = BruteForce(g, static_cast<int>(g.node_count()));
    if (!(std::abs(dp.time - brute.time) <= kOracleTol)) ++mismatches;
    double max_cap = 0.0;
    for (const Arc& a : g.arcs()) max_cap = std::max(max_cap, a.bounds.values()[0].mu_plus);
    const double bound = static_cast<double>(dp.positions) * static_cast<double>(g.arc_count()) *
                         (1.0 + 0.5 * max_cap * max_cap);
    if (static_cast<double>(dp.states) > bound) ++over_bound;
    max_states = std::max(max_states, dp.states);
  }
  Outcome o;
  o.pass = mismatches == 0 && over_bound == 0;
  o.detail = "50 unit instances, " + std::to_string(mismatches) + " mismatches, " + std::to_string(over_bound) +
             " over the state bound (max states " + std::to_string(max_states) + ")";
  return o;
}

// --- 8 ----------------------------------------------------------------------

struct RandomPath {
  std::vector<std::pair<double, ArcBounds>> arcs;
};

RandomPath MakeRandomPath(std::mt19937_64& rng, bool with_floor) {
  std::uniform_int_distribution<int> arc_count(2, 5), pieces(1, 3);
  std::uniform_real_distribution<double> len(0.5, 3.0), cap(0.5, 5.0), acc(0.2, 3.0), u(0.0, 1.0);
  RandomPath p;
  const int n = arc_count(rng);
  for (int i = 0; i < n; ++i) {
    const double l = len(rng);
    const int m = pieces(rng);
    std::vector<double> bps{0.0};
    for (int j = 1; j < m; ++j) bps.push_back(l * j / m);
    std::vector<BoundValues> vals;
    for (int j = 0; j < m; ++j) {
      const double c = cap(rng);
      const double floor = with_floor && u(rng) < 0.3 ? c * 0.3 * u(rng) : 0.0;
      vals.push_back({floor, c, -acc(rng), acc(rng)});
    }
    p.arcs.emplace_back(l, ArcBounds::PiecewiseConstant(bps, vals));
  }
  return p;
}

double Time(const PathBounds& pb, std::optional<double> ws, std::optional<double> we) {
  return PlanSpeed(pb, {ws, we}).time;
}

bool Superadditivity(std::mt19937_64& rng, int trials) {
  for (int t = 0; t < trials; ++t) {
    const RandomPath p = MakeRandomPath(rng, false);
    std::uniform_int_distribution<std::size_t> cut(1, p.arcs.size() - 1);
    const std::size_t c = cut(rng);
    const auto whole = PathBounds::FromArcs(p.arcs);
    const auto head = PathBounds::FromArcs({p.arcs.begin(), p.arcs.begin() + static_cast<std::ptrdiff_t>(c)});
    const auto tail = PathBounds::FromArcs({p.arcs.begin() + static_cast<std::ptrdiff_t>(c), p.arcs.end()});
    if (Time(whole, 0.0, 0.0) + kPropertyTol < Time(head, 0.0, std::nullopt) + Time(tail, std::nullopt, 0.0)) {
      return false;
    }
  }
  return true;
}

bool Relaxation(std::mt19937_64& rng, int trials) {
  std::uniform_real_distribution<double> grow(1.0, 2.0);
  for (int t = 0; t < trials; ++t) {
    RandomPath p = MakeRandomPath(rng, true);
    RandomPath wide = p;
    for (auto& [l, b] : wide.arcs) {
      std::vector<BoundValues> vals(b.values().begin(), b.values().end());
      for (auto& v : vals) {
        v.mu_minus /= grow(rng);
        v.mu_plus *= grow(rng);
        v.alpha_minus *= grow(rng);
        v.alpha_plus *= grow(rng);
      }
      b = ArcBounds::PiecewiseConstant(std::vector<double>(b.breakpoints().begin(), b.breakpoints().end()), vals);
    }
    const double narrow = Time(PathBounds::FromArcs(p.arcs), 0.0, 0.0);
    const double relaxed = Time(PathBounds::FromArcs(wide.arcs), 0.0, 0.0);
    if (relaxed > narrow + kPropertyTol * std::max(1.0, narrow)) return false;
  }
  return true;
}

bool ForwardMerge(std::mt19937_64& rng, int trials) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const auto pb = PathBounds::FromArcs(MakeRandomPath(rng, false).arcs);
    const double merge = EllPlus(pb);
    if (!std::isfinite(merge)) continue;
    const double cap0 = pb.At(0.0).mu_plus;
    const auto f1 = ForwardOperator(pb, 0.0);
    const auto f2 = ForwardOperator(pb, cap0 * u(rng));
    for (int i = 0; i <= 200; ++i) {
      const double x = merge + (pb.length() - merge) * i / 200.0;
      if (std::abs(f1(x) - f2(x)) > kPropertyTol) return false;
    }
  }
  return true;
}

bool Maximality(std::mt19937_64& rng, int trials) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    const auto pb = PathBounds::FromArcs(MakeRandomPath(rng, false).arcs);
    const PlanResult best = PlanSpeed(pb, {0.0, 0.0});
    const SpeedProfile back = BackwardOperator(pb, 0.0);
    double w = 0.0;
    for (const auto& piece : pb.Pieces()) {
      const BoundValues& b = piece.values;
      w = std::min(w, b.mu_plus);
      for (int i = 1; i <= 50; ++i) {
        const double x = piece.begin + (piece.end - piece.begin) * i / 50.0;
        const double h = (piece.end - piece.begin) / 50.0;
        const double slope = b.alpha_minus + (b.alpha_plus - b.alpha_minus) * u(rng);
        // Clipping against the backward bound keeps the profile able to stop.
        w = std::max(0.0, std::min({b.mu_plus, back.EvalLeft(x), w + slope * h}));
        if (w > best.profile.EvalLeft(x) + kPropertyTol) return false;
      }
    }
  }
  return true;
}

Outcome OperatorProperties() {
  std::mt19937_64 rng(8);
  const bool sup = Superadditivity(rng, 200);
  const bool relax = Relaxation(rng, 200);
  const bool merge = ForwardMerge(rng, 100);
  const bool maximal = Maximality(rng, 100);
  Outcome o;
  o.pass = sup && relax && merge && maximal;
  auto word = [](bool b) { return b ? "ok" : "FAILED"; };
  o.detail = std::string("superadditivity ") + word(sup) + ", relaxation " + word(relax) + ", forward merge " +
             word(merge) + ", maximality " + word(maximal);
  return o;
}

// --- 9 ----------------------------------------------------------------------

double SupDifference(const SpeedProfile& a, const SpeedProfile& b) {
  std::vector<double> xs;
  for (const auto& n : a.nodes()) xs.push_back(n.lambda);
  for (const auto& n : b.nodes()) xs.push_back(n.lambda);
  double worst = 0.0;
  for (double x : xs) {
    worst = std::max(worst, std::abs(a.EvalLeft(x) - b.EvalLeft(x)));
    worst = std::max(worst, std::abs(a.EvalRight(x) - b.EvalRight(x)));
  }
  return worst;
}

Outcome GridConvergence() {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> arcs(3, 5), len(1, 4);
  std::uniform_real_distribution<double> cap(0.5, 6.0);
  std::vector<PathBounds> paths;
  for (int i = 0; i < 20; ++i) {
    std::vector<std::pair<double, ArcBounds>> a;
    const int n = arcs(rng);
    for (int j = 0; j < n; ++j) a.emplace_back(len(rng), ArcBounds::Constant({0.0, cap(rng), -1.0, 1.0}));
    paths.push_back(PathBounds::FromArcs(a));
  }
  double step = 0.1;
  std::vector<double> errors;
  bool within_cell_bound = true;
  for (int level = 0; level < 4; ++level, step /= 2.0) {
    PlanOptions grid;
    grid.engine = PlanOptions::EngineChoice::kGrid;
    grid.grid_step = step;
    double worst = 0.0;
    for (const auto& pb : paths) {
      const double e = SupDifference(PlanSpeed(pb, {0.0, 0.0}).profile, PlanSpeed(pb, {0.0, 0.0}, grid).profile);
      // A kink of slope change 2 inside a cell of length h costs at most h/2.
      within_cell_bound &= e <= step / 2.0 + 1e-12;
      worst = std::max(worst, e);
    }
    errors.push_back(worst);
  }
  Outcome o;
  o.pass = within_cell_bound;
  std::string ratios;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double r = errors[i] / errors[i - 1];
    o.pass &= r >= kConvergenceLow && r <= kConvergenceHigh;
    ratios += (i > 1 ? ", " : "") + Num(r, 4);
  }
  o.detail = "max errors " + Num(errors[0]) + " -> " + Num(errors.back()) + ", halving ratios " + ratios;
  return o;
}

// --- 10 ---------------------------------------------------------------------

Outcome Performance() {
  const RoadGraph base = CorridorInstance({});
  const double mean_degree = 2.0 * static_cast<double>(base.arc_count()) / static_cast<double>(base.node_count());
  std::mt19937_64 rng(10);
  double total = 0.0;
  int solved = 0;
  for (int q = 0; q < 100; ++q) {
    RoadGraph g = base;
    g.set_query(RandomQuery(g, rng));
    const auto started = Clock::now();
    solved += AdaptiveAstar(g).status == SearchStatus::kSolved;
    total += Seconds(started);
  }
  const double mean = total / 100.0;

  // Grid planner cost for N and 2N points along one long corridor path.
  PathWord aisle;
  for (NodeId v = 0;; ) {
    aisle.push_back(v);
    const auto out = base.out_arcs(v);
    if (aisle.size() >= 15 || out.empty()) break;
    v = base.arc(out.front()).to;
  }
  const auto pb = ConcatBounds(base, aisle);
  auto cost = [&](int cells) {
    PlanOptions opt;
    opt.engine = PlanOptions::EngineChoice::kGrid;
    opt.cells_per_arc = cells;
    double best = kInf;
    for (int rep = 0; rep < 15; ++rep) {
      const auto started = Clock::now();
      PlanSpeed(pb, {0.0, 0.0}, opt);
      best = std::min(best, Seconds(started));
    }
    return best;
  };
  const double ratio = cost(4000) / cost(2000);
  Outcome o;
  o.pass = base.node_count() == 400 && mean_degree <= 2.5 && solved == 100 && mean < 0.1 && ratio >= kScalingLow &&
           ratio <= kScalingHigh;
  o.detail = "400 nodes, mean degree " + Num(mean_degree, 3) + ", " + std::to_string(solved) + "/100 solved, mean " +
             Num(mean * 1e3, 3) + " ms; grid cost ratio 2N/N over " + std::to_string(aisle.size() - 1) +
             " arcs = " + Num(ratio, 3);
  return o;
}

// --- 11 ---------------------------------------------------------------------

Outcome KDistribution() {
  std::map<int, int> hist;
  int total = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorParams p;
    p.n = 100;
    p.seed = seed;
    RoadGraph g = RandomInstance(p);
    std::mt19937_64 rng(seed);
    for (int q = 0; q < 10; ++q) {
      g.set_query(RandomQuery(g, rng));
      const Solution sol = AdaptiveAstar(g);
      if (sol.status == SearchStatus::kSolved) hist[sol.stats.final_k]++;
      ++total;
    }
  }
  int in_support = 0, mode = 0, mode_count = 0;
  for (auto [k, c] : hist) {
    if (k >= 3 && k <= 5) in_support += c;
    if (c > mode_count) mode = k, mode_count = c;
  }
  Outcome o;
  o.pass = mode >= 3 && mode <= 5 && 2 * in_support > total;
  std::string h;
  for (auto [k, c] : hist) h += " k" + std::to_string(k) + ":" + std::to_string(c);
  o.detail = "n=100, " + std::to_string(total) + " queries, mode k=" + std::to_string(mode) + ", " +
             std::to_string(in_support) + " in {3,4,5};" + h;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  HeuristicTally tally;
  const std::vector<Criterion> criteria = {
      {1, "golden l+/l- on the chain", GoldenEll},
      {2, "adaptive k on the chain", AdaptiveChain},
      {3, "triangle example", ExampleOneCriterion},
      {4, "oracle equivalence", [&] { return OracleEquivalence(tally); }},
      {5, "partition reduction", PartitionStructure},
      {6, "pseudo-polynomial DP", PseudoPolynomial},
      {7, "heuristic admissible and consistent", [&] { return HeuristicProperties(tally); }},
      {8, "operator properties", OperatorProperties},
      {9, "grid convergence", GridConvergence},
      {10, "performance", Performance},
      {11, "final_k distribution (qualitative)", KDistribution},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %2d  %-38s %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
