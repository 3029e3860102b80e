#pragma once

#include "basp/graph.hpp"
#include "basp/profile.hpp"

namespace basp {

struct ReachBounds {
  double ell_plus = kInf;
  double ell_minus = -kInf;
  bool saturating = false;
};

// First lambda where the zero-start full-acceleration ramp reaches mu_plus,
// or +inf. The engine follows the same rules as PlanSpeed.
double EllPlus(const PathBounds& bounds, const PlanOptions& options = {});

// Last lambda where the full-deceleration ramp ending at zero reaches
// mu_plus, or -inf.
double EllMinus(const PathBounds& bounds, const PlanOptions& options = {});

ReachBounds Reach(const PathBounds& bounds, const PlanOptions& options = {});

// A-priori bound on the suffix length that makes every path saturating.
// Throws kUnbounded when some arc has zero length, a zero acceleration
// magnitude, or an infinite cap with finite acceleration.
int KUpperBound(const RoadGraph& g);

}  // namespace basp
