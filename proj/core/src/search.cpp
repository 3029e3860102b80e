#include "basp/search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_map>

#include "basp/error.hpp"
#include "basp/reach.hpp"

namespace basp {
namespace {

using Clock = std::chrono::steady_clock;

struct WordHash {
  std::size_t operator()(const PathWord& w) const {
    std::size_t h = w.size();
    for (NodeId v : w) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// T over word p, or +inf when the boundary speeds cannot be honored.
double PlanTime(const RoadGraph& g, std::span<const NodeId> p, std::optional<double> w_start,
                std::optional<double> w_end, const PlanOptions& options) {
  try {
    return PlanSpeed(ConcatBounds(g, p), {w_start, w_end}, options).time;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kStartAboveCap || e.code() == ErrorCode::kEndAboveCap) return kInf;
    throw;
  }
}

double StartSpeed(const RoadGraph& g, std::span<const NodeId> r, int k) {
  const bool full = static_cast<int>(r.size()) < k && r.front() == g.query().source;
  return full ? g.query().w_source : 0.0;
}

double Difference(double with, double without) {
  if (std::isinf(with) || std::isinf(without)) return kInf;
  return std::max(0.0, with - without);
}

class SuffixSearch {
 public:
  SuffixSearch(const RoadGraph& g, int k, const std::vector<double>* h, bool check_saturation,
               const SearchOptions& options)
      : g_(g), k_(k), h_(h), check_(check_saturation), options_(options) {}

  Solution Run() {
    const auto started = Clock::now();
    Solution sol = Search();
    sol.stats.final_k = k_;
    sol.stats.wall_time = std::chrono::duration<double>(Clock::now() - started).count();
    return sol;
  }

 private:
  struct Entry {
    double f;
    double g;
    std::uint32_t state;
  };

  struct StateInfo {
    double g = kInf;
    std::int64_t parent = -1;
    bool closed = false;
  };

  std::uint32_t Intern(PathWord word) {
    auto [it, inserted] = word_ids_.try_emplace(std::move(word), static_cast<std::uint32_t>(words_.size()));
    if (inserted) words_.push_back(&it->first);
    return it->second;
  }

  const PathWord& WordOf(std::uint32_t state) const { return *words_[state >> 1]; }
  static bool IsTerminal(std::uint32_t state) { return (state & 1u) != 0; }

  StateInfo& Info(std::uint32_t state) {
    if (state >= info_.size()) info_.resize(state + 1);
    return info_[state];
  }

  double H(NodeId v) const { return h_ ? (*h_)[v] : 0.0; }

  // true when a should be popped after b
  bool Later(const Entry& a, const Entry& b) const {
    if (a.f != b.f) return a.f > b.f;
    const auto& wa = WordOf(a.state);
    const auto& wb = WordOf(b.state);
    if (wa.size() != wb.size()) return wa.size() < wb.size();
    if (wa != wb) return wa > wb;
    return !IsTerminal(a.state) && IsTerminal(b.state);
  }

  double FreeTime(std::uint32_t word_id) {
    auto it = free_time_.find(word_id);
    if (it != free_time_.end()) return it->second;
    const auto& w = *words_[word_id];
    const double t = PlanTime(g_, w, StartSpeed(g_, w, k_), std::nullopt, options_.plan);
    free_time_.emplace(word_id, t);
    return t;
  }

  bool Saturating(std::uint32_t word_id) {
    auto it = saturating_.find(word_id);
    if (it != saturating_.end()) return it->second;
    const bool s = Reach(ConcatBounds(g_, *words_[word_id]), options_.plan).saturating;
    saturating_.emplace(word_id, s);
    return s;
  }

  SuffixState StateOf(std::uint32_t state) const { return {WordOf(state), IsTerminal(state)}; }

  void Push(std::uint32_t state, double g, std::int64_t parent) {
    auto& info = Info(state);
    if (info.closed || g >= info.g) return;
    info.g = g;
    info.parent = parent;
    queue_.push(Entry{g + (IsTerminal(state) ? 0.0 : H(WordOf(state).back())), g, state});
    stats_.queue_peak = std::max(stats_.queue_peak, queue_.size());
  }

  Solution Search() {
    Solution sol;
    const Query& q = g_.query();
    const std::uint32_t start = Intern({q.source}) << 1;
    ++stats_.generated;
    Push(start, 0.0, -1);
    if (g_.IsTarget(q.source)) {
      const double t = PlanTime(g_, WordOf(start), q.w_source, q.w_target, options_.plan);
      if (std::isfinite(t)) {
        ++stats_.generated;
        Push(start | 1u, t, -1);
      }
    }

    std::size_t pops = 0;
    while (!queue_.empty()) {
      const Entry e = queue_.top();
      queue_.pop();
      auto& info = Info(e.state);
      if (info.closed || e.g > info.g) continue;
      info.closed = true;
      ++stats_.expanded;
      if (options_.deadline && (++pops & 63u) == 0 && Clock::now() > *options_.deadline) {
        sol.status = SearchStatus::kTimeout;
        break;
      }

      const std::uint32_t word_id = e.state >> 1;
      const bool terminal = IsTerminal(e.state);
      if (options_.on_expand) {
        const SuffixState s = StateOf(e.state);
        options_.on_expand(ExpandEvent{s, e.g, terminal ? 0.0 : H(s.word.back())});
      }
      if (check_ && static_cast<int>(WordOf(e.state).size()) == k_ && !Saturating(word_id)) {
        sol.status = SearchStatus::kSaturationViolation;
        sol.violation = StateOf(e.state);
        break;
      }
      if (terminal) {
        sol.status = SearchStatus::kSolved;
        sol.time = e.g;
        sol.path = Reconstruct(e.state);
        break;
      }
      Expand(e.state, e.g);
    }
    sol.stats = stats_;
    if (sol.status == SearchStatus::kSolved) {
      sol.profile = PlanSpeed(ConcatBounds(g_, sol.path), {q.w_source, q.w_target}, options_.plan).profile;
    }
    return sol;
  }

  void Expand(std::uint32_t state, double g) {
    const Query& q = g_.query();
    const std::uint32_t word_id = state >> 1;
    const double base = FreeTime(word_id);
    if (std::isinf(base)) return;
    PathWord extended = WordOf(state);
    const double w0 = StartSpeed(g_, extended, k_);
    const double h_from = H(extended.back());
    for (ArcId a : g_.out_arcs(extended.back())) {
      const NodeId sigma = g_.arc(a).to;
      if (std::isinf(H(sigma))) continue;
      extended.push_back(sigma);
      const PathWord next = Suffix(extended, static_cast<std::size_t>(k_));
      const double eta = Difference(PlanTime(g_, extended, w0, std::nullopt, options_.plan), base);
      if (std::isfinite(eta)) {
        const std::uint32_t to = Intern(next) << 1;
        Report(state, to, eta, h_from);
        ++stats_.generated;
        Push(to, g + eta, state);
      }
      if (g_.IsTarget(sigma)) {
        const double eta_t = Difference(PlanTime(g_, extended, w0, q.w_target, options_.plan), base);
        if (std::isfinite(eta_t)) {
          const std::uint32_t to = (Intern(next) << 1) | 1u;
          Report(state, to, eta_t, h_from);
          ++stats_.generated;
          Push(to, g + eta_t, state);
        }
      }
      extended.pop_back();
    }
  }

  void Report(std::uint32_t from, std::uint32_t to, double eta, double h_from) {
    if (!options_.on_edge) return;
    const SuffixState a = StateOf(from);
    const SuffixState b = StateOf(to);
    options_.on_edge(EdgeEvent{a, b, eta, h_from, IsTerminal(to) ? 0.0 : H(b.word.back())});
  }

  PathWord Reconstruct(std::uint32_t state) {
    PathWord rev;
    std::int64_t cur = state;
    std::int64_t last = -1;
    while (cur >= 0) {
      const auto s = static_cast<std::uint32_t>(cur);
      last = cur;
      cur = Info(s).parent;
      if (cur >= 0) rev.push_back(WordOf(s).back());
    }
    const auto& head = WordOf(static_cast<std::uint32_t>(last));
    rev.insert(rev.end(), head.rbegin(), head.rend());
    std::reverse(rev.begin(), rev.end());
    return rev;
  }

  const RoadGraph& g_;
  int k_;
  const std::vector<double>* h_;
  bool check_;
  const SearchOptions& options_;

  std::unordered_map<PathWord, std::uint32_t, WordHash> word_ids_;
  std::vector<const PathWord*> words_;
  std::vector<StateInfo> info_;
  std::unordered_map<std::uint32_t, double> free_time_;
  std::unordered_map<std::uint32_t, bool> saturating_;
  SearchStats stats_;
  std::function<bool(const Entry&, const Entry&)> later_ = [this](const Entry& a, const Entry& b) {
    return Later(a, b);
  };
  std::priority_queue<Entry, std::vector<Entry>, std::function<bool(const Entry&, const Entry&)>> queue_{later_};
};

void CheckK(int k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
}

}  // namespace

std::string_view ToString(SearchStatus status) {
  switch (status) {
    case SearchStatus::kSolved: return "SOLVED";
    case SearchStatus::kNoPath: return "NO_PATH";
    case SearchStatus::kSaturationViolation: return "SATURATION_VIOLATION";
    case SearchStatus::kTimeout: return "TIMEOUT";
  }
  return "UNKNOWN";
}

double RelaxedArcTime(const Arc& arc) {
  const ArcBounds& b = arc.bounds;
  if (!(arc.length > 0.0)) return 0.0;
  double total = 0.0;
  if (b.is_piecewise_constant()) {
    const auto bps = b.breakpoints();
    const auto vals = b.values();
    for (std::size_t i = 0; i < bps.size(); ++i) {
      const double end = i + 1 < bps.size() ? bps[i + 1] : arc.length;
      total += SegmentTime(end - bps[i], vals[i].mu_plus, vals[i].mu_plus);
    }
    return total;
  }
  const double step = b.step();
  for (double x = 0.0; x < arc.length; x += step) {
    const double end = std::min(arc.length, x + step);
    total += SegmentTime(end - x, b.At(x).mu_plus, b.LeftLimit(end).mu_plus);
  }
  return total;
}

std::vector<double> HeuristicTable(const RoadGraph& g) {
  std::vector<double> h(g.node_count(), kInf);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (NodeId f : g.query().targets) {
    h[f] = 0.0;
    pq.push({0.0, f});
  }
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > h[v]) continue;
    for (ArcId a : g.in_arcs(v)) {
      const Arc& arc = g.arc(a);
      const double nd = d + RelaxedArcTime(arc);
      if (nd < h[arc.from]) {
        h[arc.from] = nd;
        pq.push({nd, arc.from});
      }
    }
  }
  return h;
}

double IncrementalCost(const RoadGraph& g, std::span<const NodeId> r, NodeId sigma, bool terminal,
                       int k, const PlanOptions& options) {
  if (r.empty() || sigma >= g.node_count() || g.FindArc(r.back(), sigma) == nullptr) return kInf;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) {
    if (g.FindArc(r[i], r[i + 1]) == nullptr) return kInf;
  }
  PathWord extended(r.begin(), r.end());
  extended.push_back(sigma);
  const double w0 = StartSpeed(g, r, k);
  const double base = PlanTime(g, r, w0, std::nullopt, options);
  const std::optional<double> end = terminal ? g.query().w_target : std::nullopt;
  return Difference(PlanTime(g, extended, w0, end, options), base);
}

std::optional<PathWord> Gamma(const RoadGraph& g, std::span<const NodeId> r, NodeId sigma, int k) {
  CheckK(k);
  if (r.empty() || g.FindArc(r.back(), sigma) == nullptr) return std::nullopt;
  PathWord extended(r.begin(), r.end());
  extended.push_back(sigma);
  return Suffix(extended, static_cast<std::size_t>(k));
}

Solution DijkstraExtended(const RoadGraph& g, int k, const SearchOptions& options) {
  CheckK(k);
  return SuffixSearch(g, k, nullptr, false, options).Run();
}

Solution AstarK(const RoadGraph& g, int k, bool check_saturation, const SearchOptions& options) {
  CheckK(k);
  const auto h = HeuristicTable(g);
  return SuffixSearch(g, k, &h, check_saturation, options).Run();
}

Solution AdaptiveAstar(const RoadGraph& g, const SearchOptions& options) {
  const auto started = Clock::now();
  int cap = 12;
  if (options.k_cap) {
    cap = *options.k_cap;
  } else {
    try {
      cap = std::max(2, KUpperBound(g));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnbounded) throw;
    }
  }
  const auto h = HeuristicTable(g);
  SearchStats total;
  for (int k = 2;; ++k) {
    if (k > cap) throw Error(ErrorCode::kKLimitExceeded, "k exceeded " + std::to_string(cap));
    Solution sol = SuffixSearch(g, k, &h, true, options).Run();
    total.expanded += sol.stats.expanded;
    total.generated += sol.stats.generated;
    total.queue_peak = std::max(total.queue_peak, sol.stats.queue_peak);
    if (sol.status != SearchStatus::kSaturationViolation) {
      sol.stats = total;
      sol.stats.final_k = k;
      sol.stats.restarts = k - 2;
      sol.stats.wall_time = std::chrono::duration<double>(Clock::now() - started).count();
      return sol;
    }
  }
}

Solution OneBasp(const RoadGraph& g, const SearchOptions& options) {
  const auto started = Clock::now();
  const Query& q = g.query();
  std::vector<double> dist(g.node_count(), kInf);
  std::vector<std::int64_t> parent(g.node_count(), -1);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  Solution sol;
  dist[q.source] = 0.0;
  pq.push({0.0, q.source});
  ++sol.stats.generated;
  std::optional<NodeId> reached;
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    ++sol.stats.expanded;
    if (g.IsTarget(v)) {
      reached = v;
      break;
    }
    for (ArcId a : g.out_arcs(v)) {
      const Arc& arc = g.arc(a);
      const double nd = d + RelaxedArcTime(arc);
      if (nd < dist[arc.to]) {
        dist[arc.to] = nd;
        parent[arc.to] = v;
        pq.push({nd, arc.to});
        ++sol.stats.generated;
      }
    }
    sol.stats.queue_peak = std::max(sol.stats.queue_peak, pq.size());
  }
  sol.stats.final_k = 1;
  if (reached) {
    for (std::int64_t v = *reached; v >= 0; v = parent[v]) sol.path.push_back(static_cast<NodeId>(v));
    std::reverse(sol.path.begin(), sol.path.end());
    try {
      const auto plan = PlanSpeed(ConcatBounds(g, sol.path), {q.w_source, q.w_target}, options.plan);
      if (plan.feasible) {
        sol.status = SearchStatus::kSolved;
        sol.time = plan.time;
        sol.profile = plan.profile;
      } else {
        sol.path.clear();
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStartAboveCap && e.code() != ErrorCode::kEndAboveCap) throw;
      sol.path.clear();
    }
  }
  sol.stats.wall_time = std::chrono::duration<double>(Clock::now() - started).count();
  return sol;
}

}  // namespace basp
