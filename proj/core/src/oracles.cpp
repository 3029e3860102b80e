#include "basp/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_map>

#include "basp/error.hpp"

namespace basp {
namespace {

using Clock = std::chrono::steady_clock;

double PlanOrInf(const RoadGraph& g, std::span<const NodeId> p, std::optional<double> w_start,
                 std::optional<double> w_end, const PlanOptions& options) {
  try {
    return PlanSpeed(ConcatBounds(g, p), {w_start, w_end}, options).time;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kStartAboveCap || e.code() == ErrorCode::kEndAboveCap) return kInf;
    throw;
  }
}

class Enumerator {
 public:
  Enumerator(const RoadGraph& g, int max_len, const PlanOptions& options, std::size_t budget)
      : g_(g), max_len_(max_len), options_(options), budget_(budget) {}

  void Run() {
    word_.push_back(g_.query().source);
    Visit();
  }

  PathWord best_path;
  double best = kInf;
  std::size_t enumerated = 0;

 private:
  void Visit() {
    if (++enumerated > budget_) throw Error(ErrorCode::kBudgetExceeded, "brute force budget exhausted");
    const Query& q = g_.query();
    const double prefix = PlanOrInf(g_, word_, q.w_source, std::nullopt, options_);
    if (!(prefix < best)) return;
    if (g_.IsTarget(word_.back())) {
      const double t = PlanOrInf(g_, word_, q.w_source, q.w_target, options_);
      if (t < best) {
        best = t;
        best_path = word_;
      }
    }
    if (static_cast<int>(word_.size()) >= max_len_) return;
    for (ArcId a : g_.out_arcs(word_.back())) {
      word_.push_back(g_.arc(a).to);
      Visit();
      word_.pop_back();
    }
  }

  const RoadGraph& g_;
  int max_len_;
  const PlanOptions& options_;
  std::size_t budget_;
  PathWord word_;
};

// Exact rational p/q for a double, found by continued fractions.
bool ToRational(double x, std::int64_t max_den, std::int64_t& num, std::int64_t& den) {
  if (!std::isfinite(x) || x < 0.0) return false;
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    if (a > 1e15) return false;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) return false;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    if (static_cast<double>(h1) / static_cast<double>(k1) == x) {
      num = h1;
      den = k1;
      return true;
    }
    const double frac = r - a;
    if (frac <= 0.0) return false;
    r = 1.0 / frac;
  }
  return false;
}

struct UnitArc {
  NodeId to;
  std::int64_t cap;
  std::int64_t floor;
};

// Minimum time over one unit of length from a to b (values scaled by d)
// with |w'| <= 1 and w <= cap.
double UnitCost(std::int64_t a, std::int64_t b, std::int64_t cap, std::int64_t d) {
  if (std::abs(b - a) > d || a > cap || b > cap) return kInf;
  const double wa = static_cast<double>(a) / static_cast<double>(d);
  const double wb = static_cast<double>(b) / static_cast<double>(d);
  const double c = static_cast<double>(cap) / static_cast<double>(d);
  // Peak of min(wa + x, wb + 1 - x).
  if (2 * cap >= a + b + d) {
    const double p = (wa + wb + 1.0) / 2.0;
    if (p <= 0.0) return kInf;
    return 2.0 * (std::sqrt(p) - std::sqrt(wa)) + 2.0 * (std::sqrt(p) - std::sqrt(wb));
  }
  const double flat = 1.0 - (c - wa) - (c - wb);
  if (c <= 0.0) return kInf;
  return 2.0 * (std::sqrt(c) - std::sqrt(wa)) + flat / std::sqrt(c) + 2.0 * (std::sqrt(c) - std::sqrt(wb));
}

}  // namespace

Solution BruteForce(const RoadGraph& g, int max_len, const PlanOptions& options, std::size_t budget) {
  if (max_len < 1) throw Error(ErrorCode::kInvalidArgument, "max_len must be >= 1");
  const auto started = Clock::now();
  Enumerator e(g, max_len, options, budget);
  e.Run();
  Solution sol;
  sol.stats.expanded = e.enumerated;
  sol.stats.generated = e.enumerated;
  if (std::isfinite(e.best)) {
    const Query& q = g.query();
    sol.status = SearchStatus::kSolved;
    sol.path = e.best_path;
    sol.time = e.best;
    sol.profile = PlanSpeed(ConcatBounds(g, sol.path), {q.w_source, q.w_target}, options).profile;
  }
  sol.stats.wall_time = std::chrono::duration<double>(Clock::now() - started).count();
  return sol;
}

DpResult PseudoPolyDp(const RoadGraph& g) {
  auto reject = [](const std::string& why) { throw Error(ErrorCode::kNotUnitInstance, why); };
  constexpr std::int64_t kMaxDen = 1'000'000;

  // Gather every rational value and the common denominator.
  std::vector<std::pair<std::int64_t, std::int64_t>> fractions;
  auto rational = [&](double x, const char* what) {
    std::int64_t n = 0, d = 1;
    if (!ToRational(x, kMaxDen, n, d)) reject(std::string(what) + " is not a small rational");
    fractions.emplace_back(n, d);
    return fractions.size() - 1;
  };
  const Query& q = g.query();
  struct RawArc {
    NodeId from, to;
    std::int64_t length;
    std::size_t cap, floor;
  };
  std::vector<RawArc> raw;
  for (const Arc& arc : g.arcs()) {
    if (!arc.bounds.is_piecewise_constant() || arc.bounds.values().size() != 1) reject("bounds must be constant");
    const BoundValues v = arc.bounds.values()[0];
    if (v.alpha_plus != 1.0 || v.alpha_minus != -1.0) reject("acceleration bounds must be +-1");
    if (!(arc.length >= 1.0) || arc.length != std::floor(arc.length) || arc.length > 1e6) {
      reject("arc lengths must be positive integers");
    }
    raw.push_back({arc.from, arc.to, static_cast<std::int64_t>(arc.length), rational(v.mu_plus, "mu_plus"),
                   rational(v.mu_minus, "mu_minus")});
  }
  const std::size_t ws = rational(q.w_source, "w_source");
  const std::optional<std::size_t> wt = q.w_target ? std::optional(rational(*q.w_target, "w_target")) : std::nullopt;

  std::int64_t den = 1;
  for (const auto& [n, d] : fractions) {
    den = std::lcm(den, d);
    if (den > kMaxDen) reject("common denominator too large");
  }
  auto scaled = [&](std::size_t i) { return fractions[i].first * (den / fractions[i].second); };

  std::int64_t top = 0;
  for (const auto& a : raw) top = std::max(top, scaled(a.cap));
  // Levels: every cap and boundary value shifted by whole units.
  std::vector<std::int64_t> residues;
  for (const auto& a : raw) residues.push_back(scaled(a.cap) % den);
  residues.push_back(scaled(ws) % den);
  if (wt) residues.push_back(scaled(*wt) % den);
  std::sort(residues.begin(), residues.end());
  residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
  std::vector<std::int64_t> levels;
  for (std::int64_t r : residues) {
    for (std::int64_t v = r; v <= top; v += den) levels.push_back(v);
  }
  std::sort(levels.begin(), levels.end());
  std::unordered_map<std::int64_t, std::uint32_t> level_index;
  for (std::uint32_t i = 0; i < levels.size(); ++i) level_index[levels[i]] = i;

  // Unit subdivision: original nodes keep their ids, interior points follow.
  std::vector<std::vector<UnitArc>> adj(g.node_count());
  for (const auto& a : raw) {
    NodeId prev = a.from;
    for (std::int64_t step = 1; step <= a.length; ++step) {
      NodeId next = a.to;
      if (step < a.length) {
        next = static_cast<NodeId>(adj.size());
        adj.emplace_back();
      }
      adj[prev].push_back({next, scaled(a.cap), scaled(a.floor)});
      prev = next;
    }
  }

  DpResult result;
  result.levels = levels.size();
  result.positions = adj.size();
  const std::int64_t start_w = scaled(ws);
  if (start_w > top && !raw.empty()) return result;
  if (!level_index.count(start_w)) return result;
  const bool free_end = !wt.has_value();
  const std::int64_t end_w = wt ? scaled(*wt) : 0;

  const std::size_t nl = levels.size();
  std::vector<double> dist(adj.size() * nl, kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const std::size_t source = q.source * nl + level_index[start_w];
  dist[source] = 0.0;
  pq.push({0.0, source});
  while (!pq.empty()) {
    const auto [d, s] = pq.top();
    pq.pop();
    if (d > dist[s]) continue;
    ++result.states;
    const std::size_t pos = s / nl;
    const std::int64_t w = levels[s % nl];
    if (pos < g.node_count() && g.IsTarget(static_cast<NodeId>(pos)) && (free_end || end_w == w)) {
      result.time = d;
      break;
    }
    for (const UnitArc& u : adj[pos]) {
      if (w < u.floor) continue;
      // Neighbouring levels differ from w by at most one unit.
      auto lo = std::lower_bound(levels.begin(), levels.end(), std::max(u.floor, w - den));
      for (auto it = lo; it != levels.end() && *it <= w + den; ++it) {
        const double c = UnitCost(w, *it, u.cap, den);
        if (std::isinf(c)) continue;
        const std::size_t t = u.to * nl + static_cast<std::size_t>(it - levels.begin());
        if (d + c < dist[t]) {
          dist[t] = d + c;
          pq.push({d + c, t});
        }
      }
    }
  }
  return result;
}

RoadGraph PartitionInstance(const std::vector<std::uint32_t>& weights) {
  if (weights.empty()) throw Error(ErrorCode::kInvalidArgument, "no weights");
  for (auto w : weights) {
    if (w == 0) throw Error(ErrorCode::kInvalidArgument, "weights must be positive");
  }
  const std::size_t n = weights.size();
  RoadGraph g;
  for (std::size_t i = 0; i <= n + 1; ++i) g.AddNode(std::to_string(i));
  const auto bounds = ArcBounds::Constant({0.0, kInf, -1.0, 1.0});
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n + 1; ++j) {
      const double length = i == 0 ? 0.0 : static_cast<double>(weights[i - 1]);
      g.AddArc(static_cast<NodeId>(i), static_cast<NodeId>(j), length, bounds);
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  Query q;
  q.source = 0;
  q.targets = {static_cast<NodeId>(n + 1)};
  q.w_source = 0.0;
  q.w_target = total / 2.0;
  g.set_query(q);
  return g;
}

}  // namespace basp
