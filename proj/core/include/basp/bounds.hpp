#pragma once

#include <limits>
#include <span>
#include <vector>

namespace basp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Bounds at a single arc-length position. Squared speed w = v^2 must satisfy
// mu_minus <= w <= mu_plus and alpha_minus <= dw/dlambda <= alpha_plus.
struct BoundValues {
  double mu_minus = 0.0;
  double mu_plus = kInf;
  double alpha_minus = -kInf;
  double alpha_plus = kInf;

  bool operator==(const BoundValues&) const = default;
};

enum class BoundsKind { kPiecewiseConstant, kSampled };

// The four bound functions of one arc, parameterized by arc length in
// [0, length]. Piecewise-constant functions are right-continuous at their
// breakpoints. Sampled functions hold values at lambda = i * step and are
// interpolated linearly; a cell touching an infinite sample is infinite in its
// interior.
class ArcBounds {
 public:
  ArcBounds() : breakpoints_{0.0}, values_{BoundValues{}} {}

  static ArcBounds Constant(const BoundValues& values);
  static ArcBounds PiecewiseConstant(std::vector<double> breakpoints,
                                     std::vector<BoundValues> values);
  static ArcBounds Sampled(double step, std::vector<BoundValues> samples);

  BoundsKind kind() const { return kind_; }
  bool is_piecewise_constant() const {
    return kind_ == BoundsKind::kPiecewiseConstant;
  }
  // Piece start positions (piecewise-constant only); the first is always 0.
  std::span<const double> breakpoints() const { return breakpoints_; }
  // Per-piece values, or per-sample values for the sampled kind.
  std::span<const BoundValues> values() const { return values_; }
  double step() const { return step_; }

  BoundValues At(double lambda) const;
  // Limit from the left; equals At() wherever the functions are continuous.
  BoundValues LeftLimit(double lambda) const;

  // Throws Error(kInvalidBounds) on sign violations, NaNs, malformed
  // breakpoints, or a domain that does not cover [0, length].
  void Validate(double length) const;

  double MaxMuPlus(double length) const;
  // min over the arc of (alpha_plus ∧ |alpha_minus|).
  double MinAccelMagnitude(double length) const;

  bool operator==(const ArcBounds&) const = default;

 private:
  BoundsKind kind_ = BoundsKind::kPiecewiseConstant;
  std::vector<double> breakpoints_;
  double step_ = 0.0;
  std::vector<BoundValues> values_;
};

}  // namespace basp
