#pragma once

#include <optional>
#include <span>
#include <vector>

#include "basp/bounds.hpp"
#include "basp/graph.hpp"

namespace basp {

enum class Engine {
  kExact,  // piecewise-constant bounds, closed-form piecewise-linear profiles
  kGrid,   // first-order recurrences on a uniform per-arc grid
};

struct PlanOptions {
  enum class EngineChoice { kAuto, kExact, kGrid };

  // kAuto picks kExact when every arc is piecewise constant.
  EngineChoice engine = EngineChoice::kAuto;
  // Grid resolution: cells of at most grid_step per arc when grid_step > 0,
  // otherwise cells_per_arc uniform cells on each arc.
  double grid_step = 0.0;
  int cells_per_arc = 1000;
};

// Squared speed w(lambda), linear between consecutive nodes. Nodes are sorted
// by lambda; two consecutive nodes sharing a lambda encode a jump, the first
// holding the left limit and the second the value from the right.
class SpeedProfile {
 public:
  struct Node {
    double lambda = 0.0;
    double w = 0.0;
  };

  SpeedProfile() = default;
  SpeedProfile(std::vector<Node> nodes, Engine engine, double grid_step = 0.0)
      : nodes_(std::move(nodes)), engine_(engine), grid_step_(grid_step) {}

  std::span<const Node> nodes() const { return nodes_; }
  Engine engine() const { return engine_; }
  double grid_step() const { return grid_step_; }
  double length() const { return nodes_.empty() ? 0.0 : nodes_.back().lambda; }
  bool empty() const { return nodes_.empty(); }

  double EvalLeft(double lambda) const;
  double EvalRight(double lambda) const;
  double operator()(double lambda) const { return EvalRight(lambda); }

 private:
  std::vector<Node> nodes_;
  Engine engine_ = Engine::kExact;
  double grid_step_ = 0.0;
};

struct Interval {
  double begin = 0.0;
  double end = 0.0;
};

// Boundary squared speeds; std::nullopt leaves that end free.
struct Boundary {
  std::optional<double> w_start;
  std::optional<double> w_end;
};

struct PlanResult {
  SpeedProfile profile;
  bool feasible = false;
  double time = kInf;
  // First stretch where the profile cannot stay above mu_minus, or where a
  // boundary speed cannot be honored.
  std::optional<Interval> violation;
};

Engine ResolveEngine(const PathBounds& bounds, const PlanOptions& options);

// Maximal profile starting at w_start (mu_plus(0) when free) with slope at
// most alpha_plus that never exceeds mu_plus. Throws kStartAboveCap.
SpeedProfile ForwardOperator(const PathBounds& bounds, std::optional<double> w_start,
                             const PlanOptions& options = {});

// Mirror of ForwardOperator from the path end with slope at least
// alpha_minus. Throws kEndAboveCap.
SpeedProfile BackwardOperator(const PathBounds& bounds, std::optional<double> w_end,
                              const PlanOptions& options = {});

// Pointwise minimum; crossings of exact profiles become new nodes. Throws
// kDomainMismatch when domains or engines differ.
SpeedProfile Meet(const SpeedProfile& f, const SpeedProfile& b);

// Optimal profile of the fixed-path problem, its feasibility and travel time.
PlanResult PlanSpeed(const PathBounds& bounds, const Boundary& boundary,
                     const PlanOptions& options = {});

// Integral of w^{-1/2}; +inf if w vanishes on a stretch of positive length.
double TravelTime(const SpeedProfile& w);

// Time to cover `length` while w moves linearly from w0 to w1.
double SegmentTime(double length, double w0, double w1);

}  // namespace basp
