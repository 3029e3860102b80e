#include "basp/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "basp/error.hpp"

namespace basp {
namespace {

double Lerp(double a, double b, double t) {
  if (t <= 0.0) return a;
  if (t >= 1.0) return b;
  if (std::isinf(a)) return a;
  if (std::isinf(b)) return b;
  return a + (b - a) * t;
}

BoundValues Lerp(const BoundValues& a, const BoundValues& b, double t) {
  return {Lerp(a.mu_minus, b.mu_minus, t), Lerp(a.mu_plus, b.mu_plus, t),
          Lerp(a.alpha_minus, b.alpha_minus, t),
          Lerp(a.alpha_plus, b.alpha_plus, t)};
}

void CheckValues(const BoundValues& v, std::size_t index) {
  auto fail = [index](const char* what) {
    std::ostringstream os;
    os << what << " at index " << index;
    throw Error(ErrorCode::kInvalidBounds, os.str());
  };
  if (std::isnan(v.mu_minus) || std::isnan(v.mu_plus) ||
      std::isnan(v.alpha_minus) || std::isnan(v.alpha_plus)) {
    fail("NaN bound");
  }
  if (v.mu_minus < 0.0 || std::isinf(v.mu_minus)) fail("mu_minus must be finite and >= 0");
  if (v.mu_plus < 0.0) fail("mu_plus must be >= 0");
  if (v.alpha_plus < 0.0) fail("alpha_plus must be >= 0");
  if (v.alpha_minus > 0.0) fail("alpha_minus must be <= 0");
}

}  // namespace

ArcBounds ArcBounds::Constant(const BoundValues& values) {
  return PiecewiseConstant({0.0}, {values});
}

ArcBounds ArcBounds::PiecewiseConstant(std::vector<double> breakpoints,
                                       std::vector<BoundValues> values) {
  ArcBounds b;
  b.kind_ = BoundsKind::kPiecewiseConstant;
  b.breakpoints_ = std::move(breakpoints);
  b.values_ = std::move(values);
  return b;
}

ArcBounds ArcBounds::Sampled(double step, std::vector<BoundValues> samples) {
  ArcBounds b;
  b.kind_ = BoundsKind::kSampled;
  b.step_ = step;
  b.values_ = std::move(samples);
  return b;
}

BoundValues ArcBounds::At(double lambda) const {
  if (kind_ == BoundsKind::kPiecewiseConstant) {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), lambda);
    const std::size_t idx =
        it == breakpoints_.begin() ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return values_[idx];
  }
  if (lambda <= 0.0) return values_.front();
  const double pos = lambda / step_;
  const auto cell = static_cast<std::size_t>(std::floor(pos));
  if (cell + 1 >= values_.size()) return values_.back();
  return Lerp(values_[cell], values_[cell + 1], pos - static_cast<double>(cell));
}

BoundValues ArcBounds::LeftLimit(double lambda) const {
  if (kind_ == BoundsKind::kPiecewiseConstant) {
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), lambda);
    const std::size_t idx =
        it == breakpoints_.begin() ? 0 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
    return values_[idx];
  }
  return At(lambda);
}

void ArcBounds::Validate(double length) const {
  if (values_.empty()) throw Error(ErrorCode::kInvalidBounds, "no bound values");
  for (std::size_t i = 0; i < values_.size(); ++i) CheckValues(values_[i], i);
  if (kind_ == BoundsKind::kPiecewiseConstant) {
    if (breakpoints_.size() != values_.size()) {
      throw Error(ErrorCode::kInvalidBounds, "breakpoint/value count mismatch");
    }
    if (breakpoints_.front() != 0.0) {
      throw Error(ErrorCode::kInvalidBounds, "first breakpoint must be 0");
    }
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
      if (!(breakpoints_[i] > breakpoints_[i - 1])) {
        throw Error(ErrorCode::kInvalidBounds, "breakpoints must be strictly increasing");
      }
    }
    if (breakpoints_.size() > 1 && !(breakpoints_.back() < length)) {
      throw Error(ErrorCode::kInvalidBounds, "breakpoint beyond arc length");
    }
    return;
  }
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw Error(ErrorCode::kInvalidBounds, "sampled bounds need a positive step");
  }
  const double covered = step_ * static_cast<double>(values_.size() - 1);
  if (covered < length * (1.0 - 1e-9)) {
    throw Error(ErrorCode::kInvalidBounds, "samples do not cover the arc");
  }
}

namespace {

// Values that influence the arc on [0, length]; trailing samples past the
// cell containing `length` are ignored.
std::span<const BoundValues> ActiveValues(const ArcBounds& b, double length) {
  if (b.is_piecewise_constant()) return b.values();
  const auto cells = static_cast<std::size_t>(std::ceil(length / b.step() - 1e-12));
  return b.values().first(std::min(b.values().size(), cells + 1));
}

}  // namespace

double ArcBounds::MaxMuPlus(double length) const {
  double best = 0.0;
  for (const auto& v : ActiveValues(*this, length)) best = std::max(best, v.mu_plus);
  return best;
}

double ArcBounds::MinAccelMagnitude(double length) const {
  double best = kInf;
  for (const auto& v : ActiveValues(*this, length)) {
    best = std::min(best, std::min(v.alpha_plus, -v.alpha_minus));
  }
  return best;
}

}  // namespace basp
