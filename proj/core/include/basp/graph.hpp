#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "basp/bounds.hpp"

namespace basp {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;

// A path as a word over the node alphabet; consecutive symbols must be arcs.
using PathWord = std::vector<NodeId>;

// Planar pose; only generators and exports look at it.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  bool operator==(const Pose&) const = default;
};

struct Node {
  NodeId id = 0;
  std::string name;
  std::optional<Pose> pose;

  bool operator==(const Node&) const = default;
};

struct Arc {
  NodeId from = 0;
  NodeId to = 0;
  double length = 0.0;
  ArcBounds bounds;

  bool operator==(const Arc&) const = default;
};

// Boundary squared speeds live on the query, not on the arcs, so a target
// crossed in the middle of a route is unconstrained. An absent w_target means
// the arrival speed is free.
struct Query {
  NodeId source = 0;
  std::vector<NodeId> targets;
  double w_source = 0.0;
  std::optional<double> w_target = 0.0;

  bool operator==(const Query&) const = default;
};

class RoadGraph {
 public:
  NodeId AddNode(std::string name = {}, std::optional<Pose> pose = std::nullopt);

  // Throws kDuplicateArc if (from, to) already exists, kInvalidBounds if the
  // bounds are malformed for the given length, kInvalidArgument for unknown
  // nodes, self-loops, or a negative length.
  ArcId AddArc(NodeId from, NodeId to, double length, ArcBounds bounds);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Arc> arcs() const { return arcs_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Arc& arc(ArcId id) const { return arcs_.at(id); }
  std::span<const ArcId> out_arcs(NodeId id) const { return out_.at(id); }
  std::span<const ArcId> in_arcs(NodeId id) const { return in_.at(id); }

  const Arc* FindArc(NodeId from, NodeId to) const;
  std::optional<NodeId> FindNode(std::string_view name) const;
  // Node name when present, decimal id otherwise.
  std::string Label(NodeId id) const;

  const Query& query() const { return query_; }
  // Throws kInvalidArgument for unknown nodes or a negative squared speed.
  void set_query(Query query);
  bool IsTarget(NodeId id) const;

  bool operator==(const RoadGraph& other) const {
    return nodes_ == other.nodes_ && arcs_ == other.arcs_ && query_ == other.query_;
  }

 private:
  static std::uint64_t Key(NodeId from, NodeId to) {
    return (static_cast<std::uint64_t>(from) << 32) | to;
  }

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
  std::unordered_map<std::uint64_t, ArcId> index_;
  std::vector<bool> is_target_;
  Query query_;
};

// Last k symbols of p, or p itself when |p| <= k.
PathWord Suffix(std::span<const NodeId> p, std::size_t k);

// Sum of arc lengths along p. Throws kNotAPath.
double PathLength(const RoadGraph& g, std::span<const NodeId> p);

// One piece of a piecewise-constant path bound: constant values on
// [begin, end).
struct BoundPiece {
  double begin = 0.0;
  double end = 0.0;
  BoundValues values;
};

// The four bound functions of a path, expressed on the global arc-length
// coordinate [0, length()]. Position lambda belongs to the last arc whose
// start is <= lambda, so functions are right-continuous at junctions and
// zero-length arcs own no interval.
class PathBounds {
 public:
  struct Segment {
    double offset = 0.0;
    double length = 0.0;
    const ArcBounds* bounds = nullptr;
  };

  PathBounds() = default;

  // Standalone path built from (length, bounds) pairs; owns its bounds.
  static PathBounds FromArcs(std::vector<std::pair<double, ArcBounds>> arcs);

  double length() const { return length_; }
  // Prefix sums of arc lengths: junctions()[i] is where arc i starts.
  std::span<const double> junctions() const { return junctions_; }
  std::span<const Segment> segments() const { return segments_; }
  bool piecewise_constant() const;

  BoundValues At(double lambda) const;
  BoundValues LeftLimit(double lambda) const;

  // Piecewise-constant view with zero-length arcs dropped. Throws
  // kEngineMismatch if some arc is sampled.
  std::vector<BoundPiece> Pieces() const;

 private:
  friend PathBounds ConcatBounds(const RoadGraph&, std::span<const NodeId>);

  void Append(double length, const ArcBounds* bounds);
  std::size_t SegmentAt(double lambda) const;

  std::vector<Segment> segments_;
  std::vector<double> junctions_{0.0};
  double length_ = 0.0;
  std::shared_ptr<const std::vector<ArcBounds>> owned_;
};

// Concatenates the arc bounds along p. The result references the graph's
// arcs and must not outlive it. Throws kNotAPath.
PathBounds ConcatBounds(const RoadGraph& g, std::span<const NodeId> p);

}  // namespace basp
