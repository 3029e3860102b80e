#include "basp/profile.hpp"

#include <algorithm>
#include <cmath>

#include "basp/error.hpp"

namespace basp {
namespace {

using ProfileNode = SpeedProfile::Node;

double Tol(double v) { return 1e-9 * std::max(1.0, std::abs(std::isfinite(v) ? v : 1.0)); }

bool AboveCap(double w, double cap) { return w > cap + 1e-12 * std::max(1.0, cap); }

void Push(std::vector<ProfileNode>& out, double lambda, double w) {
  if (!out.empty() && out.back().lambda == lambda && out.back().w == w) return;
  out.push_back({lambda, w});
}

// Drops interior nodes lying on the straight line through their neighbours.
std::vector<ProfileNode> Simplify(std::vector<ProfileNode> nodes) {
  if (nodes.size() < 3) return nodes;
  std::vector<ProfileNode> out;
  out.reserve(nodes.size());
  out.push_back(nodes[0]);
  for (std::size_t i = 1; i + 1 < nodes.size(); ++i) {
    const auto& a = out.back();
    const auto& b = nodes[i];
    const auto& c = nodes[i + 1];
    if (a.lambda < b.lambda && b.lambda < c.lambda && std::isfinite(a.w) &&
        std::isfinite(b.w) && std::isfinite(c.w)) {
      const double t = (b.lambda - a.lambda) / (c.lambda - a.lambda);
      const double on_line = a.w + t * (c.w - a.w);
      if (std::abs(on_line - b.w) <= 1e-12 * std::max(1.0, std::abs(b.w))) continue;
    }
    if (a.lambda == b.lambda && a.w == b.w) continue;
    out.push_back(b);
  }
  out.push_back(nodes.back());
  return out;
}

// --- exact engine -----------------------------------------------------------

SpeedProfile ExactForward(const PathBounds& bounds, std::optional<double> w_start) {
  const auto pieces = bounds.Pieces();
  if (pieces.empty()) {
    const double cap = bounds.At(0.0).mu_plus;
    const double w = w_start.value_or(cap);
    if (AboveCap(w, cap)) throw Error(ErrorCode::kStartAboveCap, "start speed above mu_plus(0)");
    return SpeedProfile({{0.0, w}}, Engine::kExact);
  }
  const double cap0 = pieces.front().values.mu_plus;
  double w = w_start.value_or(cap0);
  if (AboveCap(w, cap0)) throw Error(ErrorCode::kStartAboveCap, "start speed above mu_plus(0)");
  std::vector<ProfileNode> out;
  out.push_back({0.0, w});
  for (const auto& p : pieces) {
    const double cap = p.values.mu_plus;
    const double slope = p.values.alpha_plus;
    if (w > cap) {
      w = cap;
      Push(out, p.begin, w);
    }
    if (w < cap) {
      if (std::isinf(slope)) {
        w = cap;
        Push(out, p.begin, w);
      } else {
        const double reach = slope > 0.0 ? p.begin + (cap - w) / slope : kInf;
        if (reach < p.end) {
          w = cap;
          Push(out, reach, w);
        } else {
          w = std::min(cap, w + slope * (p.end - p.begin));
          Push(out, p.end, w);
          continue;
        }
      }
    }
    Push(out, p.end, w);
  }
  return SpeedProfile(Simplify(std::move(out)), Engine::kExact);
}

SpeedProfile ExactBackward(const PathBounds& bounds, std::optional<double> w_end) {
  const auto pieces = bounds.Pieces();
  const double length = bounds.length();
  if (pieces.empty()) {
    const double cap = bounds.At(length).mu_plus;
    const double w = w_end.value_or(cap);
    if (AboveCap(w, cap)) throw Error(ErrorCode::kEndAboveCap, "end speed above mu_plus(end)");
    return SpeedProfile({{length, w}}, Engine::kExact);
  }
  const double cap_end = pieces.back().values.mu_plus;
  double w = w_end.value_or(cap_end);
  if (AboveCap(w, cap_end)) throw Error(ErrorCode::kEndAboveCap, "end speed above mu_plus(end)");
  // Built right to left, so a jump is pushed as (right value, left limit).
  std::vector<ProfileNode> out;
  out.push_back({length, w});
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    const auto& p = *it;
    const double cap = p.values.mu_plus;
    const double slope = -p.values.alpha_minus;
    if (w > cap) {
      w = cap;
      Push(out, p.end, w);
    }
    if (w < cap) {
      if (std::isinf(slope)) {
        w = cap;
        Push(out, p.end, w);
      } else {
        const double reach = slope > 0.0 ? p.end - (cap - w) / slope : -kInf;
        if (reach > p.begin) {
          w = cap;
          Push(out, reach, w);
        } else {
          w = std::min(cap, w + slope * (p.end - p.begin));
          Push(out, p.begin, w);
          continue;
        }
      }
    }
    Push(out, p.begin, w);
  }
  std::reverse(out.begin(), out.end());
  return SpeedProfile(Simplify(std::move(out)), Engine::kExact);
}

// --- grid engine ------------------------------------------------------------

struct Grid {
  std::vector<double> x;
  std::vector<double> cap;     // lower envelope of mu_plus at each node
  std::vector<double> floor;   // upper envelope of mu_minus at each node
  std::vector<double> accel;   // alpha_plus on cell i = [x_i, x_{i+1}]
  std::vector<double> decel;   // -alpha_minus on cell i
  double step = 0.0;           // largest cell
};

Grid BuildGrid(const PathBounds& bounds, const PlanOptions& options) {
  Grid g;
  const auto segments = bounds.segments();
  const auto junctions = bounds.junctions();
  auto add_node = [&g](double x, const BoundValues& left, const BoundValues& right) {
    g.x.push_back(x);
    g.cap.push_back(std::min(left.mu_plus, right.mu_plus));
    g.floor.push_back(std::max(left.mu_minus, right.mu_minus));
  };
  std::optional<BoundValues> pending_left;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    if (s.length <= 0.0) continue;
    std::size_t cells;
    if (options.grid_step > 0.0) {
      cells = static_cast<std::size_t>(std::max(1.0, std::ceil(s.length / options.grid_step - 1e-9)));
    } else {
      cells = static_cast<std::size_t>(std::max(1, options.cells_per_arc));
    }
    const double h = s.length / static_cast<double>(cells);
    g.step = std::max(g.step, h);
    for (std::size_t c = 0; c < cells; ++c) {
      const double local = h * static_cast<double>(c);
      const BoundValues right = s.bounds->At(local);
      const BoundValues left = c == 0 ? pending_left.value_or(right) : s.bounds->LeftLimit(local);
      add_node(c == 0 ? junctions[i] : s.offset + local, left, right);
      g.accel.push_back(right.alpha_plus);
      g.decel.push_back(-right.alpha_minus);
    }
    pending_left = s.bounds->LeftLimit(s.length);
  }
  if (g.x.empty()) {
    const BoundValues v = bounds.At(0.0);
    add_node(0.0, v, v);
  } else {
    add_node(bounds.length(), *pending_left, *pending_left);
  }
  return g;
}

std::vector<ProfileNode> Zip(const Grid& g, const std::vector<double>& w) {
  std::vector<ProfileNode> out(g.x.size());
  for (std::size_t i = 0; i < g.x.size(); ++i) out[i] = {g.x[i], w[i]};
  return out;
}

std::vector<double> GridForward(const Grid& g, std::optional<double> w_start) {
  std::vector<double> w(g.x.size());
  w[0] = w_start.value_or(g.cap[0]);
  if (AboveCap(w[0], g.cap[0])) throw Error(ErrorCode::kStartAboveCap, "start speed above mu_plus(0)");
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    w[i + 1] = std::min(g.cap[i + 1], w[i] + g.accel[i] * (g.x[i + 1] - g.x[i]));
  }
  return w;
}

std::vector<double> GridBackward(const Grid& g, std::optional<double> w_end) {
  std::vector<double> w(g.x.size());
  const std::size_t n = w.size();
  w[n - 1] = w_end.value_or(g.cap[n - 1]);
  if (AboveCap(w[n - 1], g.cap[n - 1])) throw Error(ErrorCode::kEndAboveCap, "end speed above mu_plus(end)");
  for (std::size_t i = n - 1; i > 0; --i) {
    w[i - 1] = std::min(g.cap[i - 1], w[i] + g.decel[i - 1] * (g.x[i] - g.x[i - 1]));
  }
  return w;
}

// --- feasibility ------------------------------------------------------------

void Extend(std::optional<Interval>& found, double lo, double hi) {
  if (!found) {
    found = Interval{lo, hi};
  } else if (lo <= found->end + 1e-12) {
    found->end = std::max(found->end, hi);
  }
}

// First stretch where an exact profile dips below mu_minus.
std::optional<Interval> ExactFloorViolation(const PathBounds& bounds, const SpeedProfile& w) {
  std::optional<Interval> found;
  const auto nodes = w.nodes();
  for (const auto& p : bounds.Pieces()) {
    const double m = p.values.mu_minus;
    if (m <= 0.0) continue;
    const double tol = Tol(m);
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      const double lo = std::max(p.begin, nodes[i].lambda);
      const double hi = std::min(p.end, nodes[i + 1].lambda);
      if (!(hi > lo)) continue;
      const double w_lo = w.EvalRight(lo);
      const double w_hi = w.EvalLeft(hi);
      const bool below_lo = w_lo < m - tol;
      const bool below_hi = w_hi < m - tol;
      if (!below_lo && !below_hi) continue;
      double a = lo;
      double b = hi;
      if (below_lo != below_hi) {
        const double t = (m - tol - w_lo) / (w_hi - w_lo);
        const double x = lo + t * (hi - lo);
        if (below_lo) b = x; else a = x;
      }
      if (found && a > found->end + 1e-12) return found;
      Extend(found, a, b);
    }
    if (found && p.end > found->end + 1e-12) return found;
  }
  return found;
}

std::optional<Interval> GridFloorViolation(const Grid& g, const std::vector<double>& w) {
  std::optional<Interval> found;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < g.floor[i] - Tol(g.floor[i])) {
      if (found && found->end < g.x[i - 1]) return found;
      Extend(found, g.x[i], g.x[i]);
      found->end = g.x[i];
    }
  }
  return found;
}

void CheckBoundaries(const Boundary& boundary, const SpeedProfile& w,
                     std::optional<Interval>& violation) {
  if (violation) return;
  const auto nodes = w.nodes();
  if (boundary.w_start && nodes.front().w < *boundary.w_start - Tol(*boundary.w_start)) {
    violation = Interval{0.0, 0.0};
  } else if (boundary.w_end && nodes.back().w < *boundary.w_end - Tol(*boundary.w_end)) {
    violation = Interval{w.length(), w.length()};
  }
}

}  // namespace

double SpeedProfile::EvalLeft(double lambda) const {
  if (nodes_.empty()) return 0.0;
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), lambda,
                             [](const Node& n, double x) { return n.lambda < x; });
  if (it == nodes_.end()) return nodes_.back().w;
  if (it->lambda == lambda || it == nodes_.begin()) return it->w;
  const auto& a = *(it - 1);
  const double t = (lambda - a.lambda) / (it->lambda - a.lambda);
  return a.w + t * (it->w - a.w);
}

double SpeedProfile::EvalRight(double lambda) const {
  if (nodes_.empty()) return 0.0;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), lambda,
                             [](double x, const Node& n) { return x < n.lambda; });
  if (it == nodes_.begin()) return it->w;
  const auto& a = *(it - 1);
  if (a.lambda == lambda || it == nodes_.end()) return a.w;
  const double t = (lambda - a.lambda) / (it->lambda - a.lambda);
  return a.w + t * (it->w - a.w);
}

Engine ResolveEngine(const PathBounds& bounds, const PlanOptions& options) {
  switch (options.engine) {
    case PlanOptions::EngineChoice::kExact:
      if (!bounds.piecewise_constant()) {
        throw Error(ErrorCode::kEngineMismatch, "exact engine needs piecewise-constant bounds");
      }
      return Engine::kExact;
    case PlanOptions::EngineChoice::kGrid:
      return Engine::kGrid;
    case PlanOptions::EngineChoice::kAuto:
      break;
  }
  return bounds.piecewise_constant() ? Engine::kExact : Engine::kGrid;
}

SpeedProfile ForwardOperator(const PathBounds& bounds, std::optional<double> w_start,
                             const PlanOptions& options) {
  if (ResolveEngine(bounds, options) == Engine::kExact) return ExactForward(bounds, w_start);
  const Grid g = BuildGrid(bounds, options);
  return SpeedProfile(Zip(g, GridForward(g, w_start)), Engine::kGrid, g.step);
}

SpeedProfile BackwardOperator(const PathBounds& bounds, std::optional<double> w_end,
                              const PlanOptions& options) {
  if (ResolveEngine(bounds, options) == Engine::kExact) return ExactBackward(bounds, w_end);
  const Grid g = BuildGrid(bounds, options);
  return SpeedProfile(Zip(g, GridBackward(g, w_end)), Engine::kGrid, g.step);
}

SpeedProfile Meet(const SpeedProfile& f, const SpeedProfile& b) {
  if (f.empty() || b.empty() || f.engine() != b.engine() ||
      std::abs(f.length() - b.length()) > 1e-12 * std::max(1.0, f.length()) ||
      f.nodes().front().lambda != b.nodes().front().lambda) {
    throw Error(ErrorCode::kDomainMismatch, "profiles do not share a domain");
  }
  if (f.engine() == Engine::kGrid) {
    const auto fn = f.nodes();
    const auto bn = b.nodes();
    if (fn.size() != bn.size()) throw Error(ErrorCode::kDomainMismatch, "grids differ");
    std::vector<ProfileNode> out(fn.size());
    for (std::size_t i = 0; i < fn.size(); ++i) {
      if (fn[i].lambda != bn[i].lambda) throw Error(ErrorCode::kDomainMismatch, "grids differ");
      out[i] = {fn[i].lambda, std::min(fn[i].w, bn[i].w)};
    }
    return SpeedProfile(std::move(out), Engine::kGrid, f.grid_step());
  }

  std::vector<double> xs;
  xs.reserve(f.nodes().size() + b.nodes().size());
  for (const auto& n : f.nodes()) xs.push_back(n.lambda);
  for (const auto& n : b.nodes()) xs.push_back(std::min(n.lambda, f.length()));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<ProfileNode> out;
  out.reserve(xs.size() * 2);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (i > 0) {
      const double prev = xs[i - 1];
      const double f0 = f.EvalRight(prev), f1 = f.EvalLeft(x);
      const double b0 = b.EvalRight(prev), b1 = b.EvalLeft(x);
      const double d0 = f0 - b0, d1 = f1 - b1;
      if (std::isfinite(d0) && std::isfinite(d1) && ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0))) {
        const double t = d0 / (d0 - d1);
        const double xc = prev + t * (x - prev);
        if (xc > prev && xc < x) Push(out, xc, f0 + t * (f1 - f0));
      }
    }
    Push(out, x, std::min(f.EvalLeft(x), b.EvalLeft(x)));
    Push(out, x, std::min(f.EvalRight(x), b.EvalRight(x)));
  }
  return SpeedProfile(Simplify(std::move(out)), Engine::kExact);
}

PlanResult PlanSpeed(const PathBounds& bounds, const Boundary& boundary, const PlanOptions& options) {
  PlanResult result;
  if (ResolveEngine(bounds, options) == Engine::kExact) {
    result.profile = Meet(ExactForward(bounds, boundary.w_start), ExactBackward(bounds, boundary.w_end));
    result.violation = ExactFloorViolation(bounds, result.profile);
  } else {
    const Grid g = BuildGrid(bounds, options);
    const auto fw = GridForward(g, boundary.w_start);
    auto w = GridBackward(g, boundary.w_end);
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::min(w[i], fw[i]);
    result.violation = GridFloorViolation(g, w);
    result.profile = SpeedProfile(Zip(g, w), Engine::kGrid, g.step);
  }
  CheckBoundaries(boundary, result.profile, result.violation);
  result.feasible = !result.violation.has_value();
  result.time = result.feasible ? TravelTime(result.profile) : kInf;
  return result;
}

double SegmentTime(double length, double w0, double w1) {
  if (!(length > 0.0)) return 0.0;
  const double a = std::sqrt(std::max(w0, 0.0));
  const double b = std::sqrt(std::max(w1, 0.0));
  if (a + b == 0.0) return kInf;
  return 2.0 * length / (a + b);
}

double TravelTime(const SpeedProfile& w) {
  const auto nodes = w.nodes();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    total += SegmentTime(nodes[i + 1].lambda - nodes[i].lambda, nodes[i].w, nodes[i + 1].w);
  }
  return total;
}

}  // namespace basp
