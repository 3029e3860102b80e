#include "basp/reach.hpp"

#include <algorithm>
#include <cmath>

#include "basp/error.hpp"

namespace basp {
namespace {

// Cap seen at a junction: the lower envelope of the adjacent pieces.
double JunctionCap(const std::vector<BoundPiece>& pieces, std::size_t i) {
  const double right = i < pieces.size() ? pieces[i].values.mu_plus : kInf;
  const double left = i > 0 ? pieces[i - 1].values.mu_plus : kInf;
  return std::min(left, right);
}

double ExactEllPlus(const std::vector<BoundPiece>& pieces) {
  double ramp = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (ramp >= JunctionCap(pieces, i)) return p.begin;
    const double cap = p.values.mu_plus;
    const double slope = p.values.alpha_plus;
    if (std::isinf(cap)) {
      ramp += slope * (p.end - p.begin);
      continue;
    }
    if (std::isinf(slope)) return p.begin;
    if (slope > 0.0) {
      const double hit = p.begin + (cap - ramp) / slope;
      if (hit < p.end) return hit;
    }
    ramp += slope * (p.end - p.begin);
  }
  if (!pieces.empty() && ramp >= pieces.back().values.mu_plus) return pieces.back().end;
  return kInf;
}

double ExactEllMinus(const std::vector<BoundPiece>& pieces) {
  double ramp = 0.0;
  for (std::size_t i = pieces.size(); i-- > 0;) {
    const auto& p = pieces[i];
    if (ramp >= JunctionCap(pieces, i + 1)) return p.end;
    const double cap = p.values.mu_plus;
    const double slope = -p.values.alpha_minus;
    if (std::isinf(cap)) {
      ramp += slope * (p.end - p.begin);
      continue;
    }
    if (std::isinf(slope)) return p.end;
    if (slope > 0.0) {
      const double hit = p.end - (cap - ramp) / slope;
      if (hit > p.begin) return hit;
    }
    ramp += slope * (p.end - p.begin);
  }
  if (!pieces.empty() && ramp >= pieces.front().values.mu_plus) return pieces.front().begin;
  return -kInf;
}

struct Samples {
  std::vector<double> x;
  std::vector<double> cap;
  std::vector<double> accel;
  std::vector<double> decel;
};

Samples Sample(const PathBounds& bounds, const PlanOptions& options) {
  Samples s;
  const auto junctions = bounds.junctions();
  const auto segments = bounds.segments();
  std::optional<BoundValues> pending;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.length <= 0.0) continue;
    std::size_t cells = options.grid_step > 0.0
        ? static_cast<std::size_t>(std::max(1.0, std::ceil(seg.length / options.grid_step - 1e-9)))
        : static_cast<std::size_t>(std::max(1, options.cells_per_arc));
    const double h = seg.length / static_cast<double>(cells);
    for (std::size_t c = 0; c < cells; ++c) {
      const double local = h * static_cast<double>(c);
      const BoundValues right = seg.bounds->At(local);
      const BoundValues left = c == 0 ? pending.value_or(right) : seg.bounds->LeftLimit(local);
      s.x.push_back(c == 0 ? junctions[i] : seg.offset + local);
      s.cap.push_back(std::min(left.mu_plus, right.mu_plus));
      s.accel.push_back(right.alpha_plus);
      s.decel.push_back(-right.alpha_minus);
    }
    pending = seg.bounds->LeftLimit(seg.length);
  }
  if (pending) {
    s.x.push_back(bounds.length());
    s.cap.push_back(pending->mu_plus);
  }
  return s;
}

double GridEllPlus(const Samples& s) {
  double ramp = 0.0;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    if (ramp >= s.cap[i]) return s.x[i];
    if (i + 1 < s.x.size()) ramp += s.accel[i] * (s.x[i + 1] - s.x[i]);
  }
  return kInf;
}

double GridEllMinus(const Samples& s) {
  double ramp = 0.0;
  for (std::size_t i = s.x.size(); i-- > 0;) {
    if (ramp >= s.cap[i]) return s.x[i];
    if (i > 0) ramp += s.decel[i - 1] * (s.x[i] - s.x[i - 1]);
  }
  return -kInf;
}

}  // namespace

double EllPlus(const PathBounds& bounds, const PlanOptions& options) {
  if (ResolveEngine(bounds, options) == Engine::kExact) return ExactEllPlus(bounds.Pieces());
  return GridEllPlus(Sample(bounds, options));
}

double EllMinus(const PathBounds& bounds, const PlanOptions& options) {
  if (ResolveEngine(bounds, options) == Engine::kExact) return ExactEllMinus(bounds.Pieces());
  return GridEllMinus(Sample(bounds, options));
}

ReachBounds Reach(const PathBounds& bounds, const PlanOptions& options) {
  ReachBounds r;
  r.ell_plus = EllPlus(bounds, options);
  r.ell_minus = EllMinus(bounds, options);
  r.saturating = std::isfinite(r.ell_plus) && std::isfinite(r.ell_minus) &&
                 r.ell_plus <= r.ell_minus + 1e-12 * std::max(1.0, bounds.length());
  return r;
}

int KUpperBound(const RoadGraph& g) {
  double worst = 0.0;
  for (const auto& arc : g.arcs()) {
    if (!(arc.length > 0.0)) throw Error(ErrorCode::kUnbounded, "arc of zero length");
    const double accel = arc.bounds.MinAccelMagnitude(arc.length);
    const double cap = arc.bounds.MaxMuPlus(arc.length);
    if (!(accel > 0.0)) throw Error(ErrorCode::kUnbounded, "arc with zero acceleration bound");
    if (std::isinf(accel)) continue;
    if (std::isinf(cap)) throw Error(ErrorCode::kUnbounded, "infinite cap with finite acceleration");
    worst = std::max(worst, cap / (accel * arc.length));
  }
  const double k = 1.0 + std::ceil(2.0 * worst - 1e-12);
  if (k > 1e6) throw Error(ErrorCode::kUnbounded, "bound does not fit");
  return static_cast<int>(k);
}

}  // namespace basp
