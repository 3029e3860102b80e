#include "basp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>

#include "basp/error.hpp"

namespace basp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double Mod2Pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

RoadGraph Build(const std::vector<std::string>& names,
                const std::vector<std::tuple<int, int, double, BoundValues>>& arcs) {
  RoadGraph g;
  for (const auto& n : names) g.AddNode(n);
  for (const auto& [from, to, length, v] : arcs) {
    g.AddArc(static_cast<NodeId>(from), static_cast<NodeId>(to), length, ArcBounds::Constant(v));
  }
  return g;
}

struct Word {
  std::array<char, 3> letters;
  double t, p, q;  // normalized by radius
};

// Candidate words for the normalized problem; absent ones are skipped.
std::vector<Word> DubinsWords(double alpha, double beta, double d) {
  std::vector<Word> out;
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double cab = std::cos(alpha - beta);

  double p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sa - sb);
  if (p2 >= 0.0) {
    const double tmp = std::atan2(cb - ca, d + sa - sb);
    out.push_back({{'L', 'S', 'L'}, Mod2Pi(-alpha + tmp), std::sqrt(p2), Mod2Pi(beta - tmp)});
  }
  p2 = 2.0 + d * d - 2.0 * cab + 2.0 * d * (sb - sa);
  if (p2 >= 0.0) {
    const double tmp = std::atan2(ca - cb, d - sa + sb);
    out.push_back({{'R', 'S', 'R'}, Mod2Pi(alpha - tmp), std::sqrt(p2), Mod2Pi(-beta + tmp)});
  }
  p2 = -2.0 + d * d + 2.0 * cab + 2.0 * d * (sa + sb);
  if (p2 >= 0.0) {
    const double p = std::sqrt(p2);
    const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
    out.push_back({{'L', 'S', 'R'}, Mod2Pi(-alpha + tmp), p, Mod2Pi(-beta + tmp)});
  }
  p2 = -2.0 + d * d + 2.0 * cab - 2.0 * d * (sa + sb);
  if (p2 >= 0.0) {
    const double p = std::sqrt(p2);
    const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
    out.push_back({{'R', 'S', 'L'}, Mod2Pi(alpha - tmp), p, Mod2Pi(beta - tmp)});
  }
  double c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sa - sb)) / 8.0;
  if (std::abs(c) <= 1.0) {
    const double p = Mod2Pi(kTwoPi - std::acos(c));
    const double t = Mod2Pi(alpha - std::atan2(ca - cb, d - sa + sb) + p / 2.0);
    out.push_back({{'R', 'L', 'R'}, t, p, Mod2Pi(alpha - beta - t + p)});
  }
  c = (6.0 - d * d + 2.0 * cab + 2.0 * d * (sb - sa)) / 8.0;
  if (std::abs(c) <= 1.0) {
    const double p = Mod2Pi(kTwoPi - std::acos(c));
    const double t = Mod2Pi(-alpha - std::atan2(ca - cb, d + sa - sb) + p / 2.0);
    out.push_back({{'L', 'R', 'L'}, t, p, Mod2Pi(beta - alpha - t + p)});
  }
  return out;
}

struct Connection {
  double length = kInf;
  double radius = 0.0;
  DubinsPath path;
};

Connection Connect(const Pose& a, const Pose& b, double max_radius) {
  Connection c;
  c.radius = ConnectionRadius(a, b, max_radius);
  c.path = Dubins(a, b, c.radius);
  c.length = c.path.length;
  return c;
}

ArcBounds CurvatureBounds(const DubinsPath& path, bool reversed, double accel, double cap_per_radius,
                          double straight_cap) {
  std::vector<double> breakpoints;
  std::vector<BoundValues> values;
  double at = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int s = reversed ? 2 - i : i;
    if (path.segments[s] <= 1e-12) continue;
    const double cap = path.word[s] == 'S' ? straight_cap : cap_per_radius * path.radius;
    if (values.empty() || values.back().mu_plus != cap) {
      breakpoints.push_back(values.empty() ? 0.0 : at);
      values.push_back({0.0, cap, -accel, accel});
    }
    at += path.segments[s];
  }
  if (values.empty()) values.push_back({0.0, straight_cap, -accel, accel}), breakpoints.push_back(0.0);
  return ArcBounds::PiecewiseConstant(std::move(breakpoints), std::move(values));
}

struct Layout {
  std::vector<Pose> poses;  // one per position
  std::vector<std::pair<int, int>> edges;
};

// Doubles every position into nodes 2i (heading) and 2i+1 (heading + pi);
// each edge becomes the shortest of the four heading combinations and its
// reverse traversal.
RoadGraph Orient(const Layout& layout, double accel, double cap_per_radius, double max_radius,
                 bool curvature_bounds, double straight_cap) {
  RoadGraph g;
  for (std::size_t i = 0; i < layout.poses.size(); ++i) {
    Pose p = layout.poses[i];
    p.heading = Mod2Pi(p.heading);
    g.AddNode("p" + std::to_string(i) + "a", p);
    p.heading = Mod2Pi(p.heading + kPi);
    g.AddNode("p" + std::to_string(i) + "b", p);
  }
  for (const auto& [i, j] : layout.edges) {
    Connection best;
    int best_hi = 0, best_hj = 0;
    for (int hi = 0; hi < 2; ++hi) {
      for (int hj = 0; hj < 2; ++hj) {
        const Pose& a = *g.node(static_cast<NodeId>(2 * i + hi)).pose;
        const Pose& b = *g.node(static_cast<NodeId>(2 * j + hj)).pose;
        Connection c = Connect(a, b, max_radius);
        if (c.length < best.length) {
          best = c;
          best_hi = hi;
          best_hj = hj;
        }
      }
    }
    const auto from = static_cast<NodeId>(2 * i + best_hi);
    const auto to = static_cast<NodeId>(2 * j + best_hj);
    if (curvature_bounds) {
      g.AddArc(from, to, best.length, CurvatureBounds(best.path, false, accel, cap_per_radius, straight_cap));
      g.AddArc(to ^ 1u, from ^ 1u, best.length,
               CurvatureBounds(best.path, true, accel, cap_per_radius, straight_cap));
    } else {
      const auto bounds = ArcBounds::Constant({0.0, cap_per_radius * best.radius, -accel, accel});
      g.AddArc(from, to, best.length, bounds);
      g.AddArc(to ^ 1u, from ^ 1u, best.length, bounds);
    }
  }
  return g;
}

std::vector<bool> Reachable(const RoadGraph& g, NodeId source) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (ArcId a : g.out_arcs(v)) {
      const NodeId w = g.arc(a).to;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

RoadGraph ChainExample() {
  const BoundValues unit{0.0, 1.0, -1.0, 1.0};
  const BoundValues slow{0.0, 2.0 / 3.0, -1.0, 1.0};
  RoadGraph g = Build({"s", "1", "2", "f"}, {{0, 1, 1.0, unit}, {1, 2, 1.0, slow}, {2, 3, 1.0, unit}});
  g.set_query({0, {3}, 0.0, 0.0});
  return g;
}

RoadGraph ExampleOne() {
  RoadGraph g = Build({"s", "1", "f"}, {{0, 1, 2.0, {0.0, 4.0, -1.0, 1.0}},
                                        {1, 2, 2.0, {0.0, 4.0, -1.0, 1.0}},
                                        {0, 2, 3.0, {0.0, 3.0, -2.0, 2.0}}});
  g.set_query({0, {2}, 0.0, 0.0});
  return g;
}

DubinsPath Dubins(const Pose& a, const Pose& b, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::kInvalidArgument, "turning radius must be positive");
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double d = std::hypot(dx, dy) / r;
  const double theta = d > 0.0 ? Mod2Pi(std::atan2(dy, dx)) : 0.0;
  const double alpha = Mod2Pi(a.heading - theta);
  const double beta = Mod2Pi(b.heading - theta);
  DubinsPath best;
  best.radius = r;
  for (const Word& w : DubinsWords(alpha, beta, d)) {
    const double len = (w.t + w.p + w.q) * r;
    if (len < best.length) {
      best.length = len;
      best.word = w.letters;
      best.segments = {w.t * r, w.p * r, w.q * r};
    }
  }
  return best;
}

double AngularDistance(double a, double b) {
  const double diff = Mod2Pi(a - b);
  return std::min(diff, kTwoPi - diff);
}

double ConnectionRadius(const Pose& a, const Pose& b, double max_radius) {
  const double d = AngularDistance(a.heading, b.heading);
  if (d <= 0.0) return max_radius;
  double r = max_radius;
  for (int i = 0; i < 20; ++i) {
    const double next = std::min(DubinsLength(a, b, r) / d, max_radius);
    if (!(next > 0.0)) return max_radius;
    if (std::abs(next - r) <= 1e-9) return next;
    r = next;
  }
  return max_radius;
}

RoadGraph RandomInstance(const GeneratorParams& params) {
  if (params.n < 2) throw Error(ErrorCode::kInvalidArgument, "n must be >= 2");
  if (!(params.accel > 0.0) || !(params.cap_per_radius > 0.0) || !(params.max_radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "physical parameters must be positive");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double n = params.n;
  const double side = params.scale > 0.0 ? params.scale : 10.0 * std::sqrt(n);
  const double threshold = side * std::sqrt(4.0 / (kPi * (n - 1.0)));

  Layout layout;
  for (int i = 0; i < params.n; ++i) {
    const double x = unit(rng) * side;
    const double y = unit(rng) * side;
    layout.poses.push_back({x, y, 0.0});
  }
  for (auto& p : layout.poses) p.heading = unit(rng) * kTwoPi;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      const auto& a = layout.poses[i];
      const auto& b = layout.poses[j];
      if (std::hypot(a.x - b.x, a.y - b.y) < threshold) layout.edges.emplace_back(i, j);
    }
  }
  RoadGraph g = Orient(layout, params.accel, params.cap_per_radius, params.max_radius,
                       params.curvature_bounds, params.straight_cap);

  // Source: the first node reaching the most other nodes.
  NodeId source = 0;
  std::size_t most = 0;
  std::vector<bool> seen;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto r = Reachable(g, v);
    const auto count = static_cast<std::size_t>(std::count(r.begin(), r.end(), true));
    if (count > most) {
      most = count;
      source = v;
      seen = std::move(r);
    }
  }
  const Pose& origin = *g.node(source).pose;
  std::optional<NodeId> target;
  double farthest = -1.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!seen[v] || (v >> 1) == (source >> 1)) continue;
    const Pose& p = *g.node(v).pose;
    const double dist = std::hypot(p.x - origin.x, p.y - origin.y);
    if (dist > farthest) {
      farthest = dist;
      target = v & ~1u;
    }
  }
  if (!target) throw Error(ErrorCode::kDegenerate, "no node reaches another position");
  g.set_query({source, {*target, *target + 1}, 0.0, 0.0});
  return g;
}

RoadGraph CorridorInstance(const CorridorParams& params) {
  if (params.rows < 1 || params.cols < 2 || params.cross_every < 1) {
    throw Error(ErrorCode::kInvalidArgument, "corridor needs rows >= 1, cols >= 2, cross_every >= 1");
  }
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> jitter(-params.jitter, params.jitter);
  Layout layout;
  auto index = [&](int r, int c) { return r * params.cols + c; };
  for (int r = 0; r < params.rows; ++r) {
    for (int c = 0; c < params.cols; ++c) {
      const double x = c * params.spacing + jitter(rng);
      const double y = r * params.spacing + jitter(rng);
      layout.poses.push_back({x, y, 0.1 * jitter(rng)});
    }
  }
  for (int r = 0; r < params.rows; ++r) {
    for (int c = 0; c + 1 < params.cols; ++c) layout.edges.emplace_back(index(r, c), index(r, c + 1));
  }
  for (int r = 0; r + 1 < params.rows; ++r) {
    for (int c = 0; c < params.cols; ++c) {
      if (c % params.cross_every == 0 || c + 1 == params.cols) {
        layout.edges.emplace_back(index(r, c), index(r + 1, c));
      }
    }
  }
  RoadGraph g = Orient(layout, params.accel, params.cap_per_radius, params.max_radius, false, 0.0);
  const auto last = static_cast<NodeId>(2 * index(params.rows - 1, params.cols - 1));
  g.set_query({0, {last, last + 1}, 0.0, 0.0});
  return g;
}

Query RandomQuery(const RoadGraph& g, std::mt19937_64& rng) {
  if (g.node_count() < 4) throw Error(ErrorCode::kDegenerate, "too few nodes for a query");
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(g.node_count() - 1));
  for (int attempt = 0; attempt < 100; ++attempt) {
    const NodeId source = pick(rng);
    const auto seen = Reachable(g, source);
    std::vector<NodeId> positions;
    for (NodeId v = 0; v < g.node_count(); v += 2) {
      if (v == (source & ~1u)) continue;
      if (seen[v] || (v + 1 < g.node_count() && seen[v + 1])) positions.push_back(v);
    }
    if (positions.empty()) continue;
    std::uniform_int_distribution<std::size_t> which(0, positions.size() - 1);
    const NodeId t = positions[which(rng)];
    return Query{source, {t, t + 1}, 0.0, 0.0};
  }
  throw Error(ErrorCode::kDegenerate, "no reachable source-target pair found");
}

}  // namespace basp
