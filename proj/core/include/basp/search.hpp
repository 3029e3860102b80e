#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "basp/graph.hpp"
#include "basp/profile.hpp"

namespace basp {

// Search state: the last <= k nodes of a route, and whether the route has
// committed to stop at its last node.
struct SuffixState {
  PathWord word;
  bool terminal = false;

  bool operator==(const SuffixState&) const = default;
};

struct SearchStats {
  std::size_t expanded = 0;
  std::size_t generated = 0;
  int final_k = 0;
  std::size_t queue_peak = 0;
  double wall_time = 0.0;
  int restarts = 0;
};

enum class SearchStatus { kSolved, kNoPath, kSaturationViolation, kTimeout };

std::string_view ToString(SearchStatus status);

struct Solution {
  SearchStatus status = SearchStatus::kNoPath;
  PathWord path;
  double time = kInf;
  // Replanned over the whole path with the query's boundary speeds.
  SpeedProfile profile;
  SearchStats stats;
  // Set when status is kSaturationViolation.
  std::optional<SuffixState> violation;
};

// Reported for every successor the search generates.
struct EdgeEvent {
  const SuffixState& from;
  const SuffixState& to;
  double eta = 0.0;
  double h_from = 0.0;
  double h_to = 0.0;
};

// Reported for every state the search expands (or goal-tests).
struct ExpandEvent {
  const SuffixState& state;
  double g = 0.0;
  double h = 0.0;
};

struct SearchOptions {
  PlanOptions plan;
  // Adaptive search only; defaults to KUpperBound(g), or 12 when unbounded.
  std::optional<int> k_cap;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::function<void(const EdgeEvent&)> on_edge;
  std::function<void(const ExpandEvent&)> on_expand;
};

// Relaxed time-to-target per node: shortest path to the target set over
// arc weights integral of mu_plus^{-1/2}. Unreachable nodes get +inf.
std::vector<double> HeuristicTable(const RoadGraph& g);

// Relaxed arc weight used by HeuristicTable.
double RelaxedArcTime(const Arc& arc);

// T(r sigma) - T(r) on the suffix word r, or +inf when r sigma is not a path
// or cannot be driven. The start speed is the query's when r is a full path
// from the source shorter than k, zero otherwise; the end of r sigma is free
// unless `terminal`, in which case it must equal the query's target speed.
double IncrementalCost(const RoadGraph& g, std::span<const NodeId> r, NodeId sigma,
                       bool terminal, int k, const PlanOptions& options = {});

// Suff_k(r sigma) when r sigma is a path.
std::optional<PathWord> Gamma(const RoadGraph& g, std::span<const NodeId> r, NodeId sigma, int k);

// Dijkstra over suffix states of length <= k; no saturation check.
Solution DijkstraExtended(const RoadGraph& g, int k, const SearchOptions& options = {});

// A* over suffix states guided by HeuristicTable. With check_saturation,
// popping a non-saturating state of length k stops the search with
// kSaturationViolation.
Solution AstarK(const RoadGraph& g, int k, bool check_saturation,
                const SearchOptions& options = {});

// Runs AstarK with k = 2, 3, ... until no saturation violation occurs.
// Throws kKLimitExceeded past the cap.
Solution AdaptiveAstar(const RoadGraph& g, const SearchOptions& options = {});

// Plain shortest path over relaxed arc weights, then replanned with the real
// bounds. Optimal when acceleration is unbounded.
Solution OneBasp(const RoadGraph& g, const SearchOptions& options = {});

}  // namespace basp
