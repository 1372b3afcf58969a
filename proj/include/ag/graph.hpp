#ifndef AG_GRAPH_HPP
#define AG_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ag/error.hpp"
#include "ag/time.hpp"

namespace ag {

/// Side of a two-channel recording.
enum class Channel { A, B };

char to_char(Channel c);
Channel channel_from_char(char c);

/// Opaque node handle, unique within one graph.
struct NodeId {
  std::uint32_t value = 0;
  auto operator<=>(const NodeId&) const = default;
};

/// Opaque arc handle, unique within one graph.
struct ArcId {
  std::uint32_t value = 0;
  auto operator<=>(const ArcId&) const = default;
};

struct Node {
  NodeId id;
  std::optional<Time> anchor;  // absent for nodes bounding untimed tokens
};

/// Typed, labeled arc. `type` is the annotation-layer namespace ("W/",
/// "Pos/", "DISF/", "T/", or an extension namespace) and always ends in
/// '/'. `provenance` names the source annotation stream. Word arcs lifted
/// from two-channel transcripts additionally carry the signal channel so
/// that speaker-label repairs have something to relabel.
struct Arc {
  ArcId id;
  NodeId from;
  NodeId to;
  std::string type;
  std::string label;
  std::string provenance;
  std::optional<Channel> channel;
};

enum class ViolationKind { Cycle, TimeOrder, DanglingRef, SelfLoop, BadType };

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  ArcId arc;
  std::string detail;
};

/// Inherited time bracket of a node: [max anchored ancestor offset,
/// min anchored descendant offset]. Anchored nodes collapse to a point;
/// absent sides are unbounded.
struct Bracket {
  std::optional<Time> lo;
  std::optional<Time> hi;

  bool intersects(Time t0, Time t1) const {
    return (!lo || *lo <= t1) && (!hi || *hi >= t0);
  }
};

/// Directed acyclic graph of optionally time-anchored nodes and typed
/// arcs over a single signal timeline. Built through add_node/add_arc,
/// which preserve validity; raw deserializers use `unchecked` and then
/// run `validate`. Once built, a graph is treated as an immutable value:
/// all queries are const and safe to run concurrently on shared graphs.
class AnnotationGraph {
 public:
  /// Creates an empty graph. Throws Error(InvalidArgument) when
  /// timeline_id is empty.
  explicit AnnotationGraph(std::string timeline_id);

  /// Adopts possibly-invalid parts as-is (deserializers, tests). Node ids
  /// must be dense 0..n-1; arc ids dense 0..m-1; arc endpoints may dangle.
  static AnnotationGraph unchecked(std::string timeline_id,
                                   std::vector<Node> nodes,
                                   std::vector<Arc> arcs);

  const std::string& timeline_id() const { return timeline_id_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::set<std::string>& streams() const { return streams_; }

  bool has_node(NodeId id) const { return id.value < nodes_.size(); }
  const Node& node(NodeId id) const;
  const Arc& arc(ArcId id) const;

  std::vector<ArcId> out_arcs(NodeId id) const;
  std::vector<ArcId> in_arcs(NodeId id) const;

  /// Adds a node; returns a fresh id. The anchor, when present, was
  /// range-checked at Time construction, so this cannot fail.
  NodeId add_node(std::optional<Time> anchor);

  /// Adds an arc, keeping the graph acyclic and time-monotonic.
  /// Throws: NotFound (unknown endpoint), InvalidArgument (self-loop,
  /// malformed type, empty provenance), Cycle, TimeOrder.
  ArcId add_arc(NodeId from, NodeId to, std::string type, std::string label,
                std::string provenance, std::optional<Channel> channel = {});

  /// Lists every acyclicity, time-order and dangling-reference violation,
  /// sorted by arc id. Empty report == valid graph.
  std::vector<Violation> validate() const;

  /// Every arc both of whose endpoint brackets intersect [t0, t1],
  /// optionally restricted to one type namespace; ordered by
  /// (start offset, arc_type, label, arc id). Requires a valid graph.
  /// Throws Error(InvalidArgument) when t0 > t1.
  std::vector<ArcId> arcs_in_interval(Time t0, Time t1,
                                      const std::optional<std::string>& type_filter = {}) const;

  /// Merges two graphs over the same timeline. Anchored nodes whose
  /// offsets differ by at most `tolerance` are unified (earliest offset
  /// wins); unanchored nodes are never unified across graphs; all arcs
  /// keep their provenance. Throws Timeline on mismatched timelines and
  /// MergeConflict when the union would violate validity.
  static AnnotationGraph merge(const AnnotationGraph& g1,
                               const AnnotationGraph& g2,
                               Time tolerance = Time::from_centis(0));

  /// Inherited time bracket per node, indexed by node id. Requires a
  /// valid (acyclic) graph.
  std::vector<Bracket> node_brackets() const;

  /// Widest time interval an arc can occupy: [bracket(from).lo,
  /// bracket(to).hi].
  Bracket arc_span(ArcId id, const std::vector<Bracket>& brackets) const;

  /// Isomorphism-invariant rendering: equal signatures imply isomorphic
  /// graphs whenever the refinement separates all nodes (true for the
  /// anchored, distinctly-labeled graphs this toolkit builds). Used for
  /// fixture-level graph identity; ids never appear in the output.
  std::string canonical_signature() const;

  // Plumbing mutators for repair application; callers re-validate.
  void set_arc_label(ArcId id, std::string label);
  void set_arc_channel(ArcId id, std::optional<Channel> channel);
  void set_node_anchor(NodeId id, std::optional<Time> anchor);

 private:
  AnnotationGraph() = default;

  bool reaches(NodeId from, NodeId to) const;
  std::optional<Time> max_anchor_through_ancestors(NodeId id) const;
  std::optional<Time> min_anchor_through_descendants(NodeId id) const;
  // Topological order; nullopt when the graph has a cycle.
  std::optional<std::vector<NodeId>> topo_order() const;

  std::string timeline_id_;
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::uint32_t>> out_;  // node index -> arc indexes
  std::vector<std::vector<std::uint32_t>> in_;
  std::set<std::string> streams_;
};

/// Fixture-level isomorphism check via canonical signatures.
bool isomorphic(const AnnotationGraph& a, const AnnotationGraph& b);

}  // namespace ag

#endif  // AG_GRAPH_HPP
