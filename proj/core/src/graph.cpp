#include "basp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "basp/error.hpp"

namespace basp {

NodeId RoadGraph::AddNode(std::string name, std::optional<Pose> pose) {
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{id, std::move(name), pose});
  out_.emplace_back();
  in_.emplace_back();
  is_target_.push_back(false);
  return id;
}

ArcId RoadGraph::AddArc(NodeId from, NodeId to, double length, ArcBounds bounds) {
  if (from >= nodes_.size() || to >= nodes_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "arc endpoint is not a node");
  }
  if (from == to) throw Error(ErrorCode::kInvalidArgument, "self-loop arcs are not allowed");
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::kInvalidArgument, "arc length must be finite and >= 0");
  }
  if (index_.contains(Key(from, to))) {
    std::ostringstream os;
    os << "arc " << Label(from) << "->" << Label(to) << " already exists";
    throw Error(ErrorCode::kDuplicateArc, os.str());
  }
  bounds.Validate(length);
  if (length == 0.0 && bounds.values().size() != 1) {
    throw Error(ErrorCode::kInvalidBounds, "zero-length arcs need constant bounds");
  }
  const auto id = static_cast<ArcId>(arcs_.size());
  arcs_.push_back(Arc{from, to, length, std::move(bounds)});
  out_[from].push_back(id);
  in_[to].push_back(id);
  index_.emplace(Key(from, to), id);
  return id;
}

const Arc* RoadGraph::FindArc(NodeId from, NodeId to) const {
  auto it = index_.find(Key(from, to));
  return it == index_.end() ? nullptr : &arcs_[it->second];
}

std::optional<NodeId> RoadGraph::FindNode(std::string_view name) const {
  for (const auto& n : nodes_) {
    if (n.name == name) return n.id;
  }
  return std::nullopt;
}

std::string RoadGraph::Label(NodeId id) const {
  if (id < nodes_.size() && !nodes_[id].name.empty()) return nodes_[id].name;
  return std::to_string(id);
}

void RoadGraph::set_query(Query query) {
  if (query.source >= nodes_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "query source is not a node");
  }
  for (NodeId t : query.targets) {
    if (t >= nodes_.size()) throw Error(ErrorCode::kInvalidArgument, "query target is not a node");
  }
  if (!(query.w_source >= 0.0) || (query.w_target && !(*query.w_target >= 0.0))) {
    throw Error(ErrorCode::kInvalidArgument, "boundary squared speeds must be >= 0");
  }
  std::sort(query.targets.begin(), query.targets.end());
  query.targets.erase(std::unique(query.targets.begin(), query.targets.end()),
                      query.targets.end());
  std::fill(is_target_.begin(), is_target_.end(), false);
  for (NodeId t : query.targets) is_target_[t] = true;
  query_ = std::move(query);
}

bool RoadGraph::IsTarget(NodeId id) const { return id < is_target_.size() && is_target_[id]; }

PathWord Suffix(std::span<const NodeId> p, std::size_t k) {
  if (p.size() <= k) return PathWord(p.begin(), p.end());
  return PathWord(p.end() - static_cast<std::ptrdiff_t>(k), p.end());
}

double PathLength(const RoadGraph& g, std::span<const NodeId> p) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Arc* a = g.FindArc(p[i], p[i + 1]);
    if (a == nullptr) throw Error(ErrorCode::kNotAPath, "no arc " + g.Label(p[i]) + "->" + g.Label(p[i + 1]));
    total += a->length;
  }
  return total;
}

PathBounds PathBounds::FromArcs(std::vector<std::pair<double, ArcBounds>> arcs) {
  auto storage = std::make_shared<std::vector<ArcBounds>>();
  storage->reserve(arcs.size());
  for (auto& [length, bounds] : arcs) {
    bounds.Validate(length);
    storage->push_back(std::move(bounds));
  }
  PathBounds pb;
  for (std::size_t i = 0; i < arcs.size(); ++i) pb.Append(arcs[i].first, &(*storage)[i]);
  pb.owned_ = std::move(storage);
  return pb;
}

void PathBounds::Append(double length, const ArcBounds* bounds) {
  segments_.push_back(Segment{length_, length, bounds});
  length_ += length;
  junctions_.push_back(length_);
}

bool PathBounds::piecewise_constant() const {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.bounds->is_piecewise_constant(); });
}

std::size_t PathBounds::SegmentAt(double lambda) const {
  // Last positive-length segment whose start is <= lambda.
  std::size_t found = segments_.size();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].length <= 0.0) continue;
    if (segments_[i].offset <= lambda || found == segments_.size()) found = i;
    if (segments_[i].offset > lambda) break;
  }
  return found;
}

BoundValues PathBounds::At(double lambda) const {
  const std::size_t i = SegmentAt(lambda);
  if (i == segments_.size()) {
    return segments_.empty() ? BoundValues{} : segments_.front().bounds->At(0.0);
  }
  const auto& s = segments_[i];
  return s.bounds->At(std::clamp(lambda - s.offset, 0.0, s.length));
}

BoundValues PathBounds::LeftLimit(double lambda) const {
  // The segment owning the open interval just left of lambda.
  std::size_t found = segments_.size();
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (segments_[i].length <= 0.0) continue;
    if (segments_[i].offset < lambda || found == segments_.size()) found = i;
    if (segments_[i].offset >= lambda) break;
  }
  if (found == segments_.size()) return At(lambda);
  const auto& s = segments_[found];
  return s.bounds->LeftLimit(std::clamp(lambda - s.offset, 0.0, s.length));
}

std::vector<BoundPiece> PathBounds::Pieces() const {
  std::vector<BoundPiece> pieces;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!s.bounds->is_piecewise_constant()) {
      throw Error(ErrorCode::kEngineMismatch, "exact engine needs piecewise-constant bounds");
    }
    if (s.length <= 0.0) continue;
    const auto bps = s.bounds->breakpoints();
    const auto vals = s.bounds->values();
    for (std::size_t j = 0; j < bps.size(); ++j) {
      const double begin = j == 0 ? junctions_[i] : s.offset + bps[j];
      const double end = j + 1 < bps.size() ? s.offset + bps[j + 1] : junctions_[i + 1];
      pieces.push_back(BoundPiece{begin, end, vals[j]});
    }
  }
  return pieces;
}

PathBounds ConcatBounds(const RoadGraph& g, std::span<const NodeId> p) {
  if (p.empty()) throw Error(ErrorCode::kNotAPath, "empty path");
  PathBounds pb;
  pb.segments_.reserve(p.size() - 1);
  pb.junctions_.reserve(p.size());
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    const Arc* a = g.FindArc(p[i], p[i + 1]);
    if (a == nullptr) {
      throw Error(ErrorCode::kNotAPath, "no arc " + g.Label(p[i]) + "->" + g.Label(p[i + 1]));
    }
    pb.Append(a->length, &a->bounds);
  }
  return pb;
}

}  // namespace basp
