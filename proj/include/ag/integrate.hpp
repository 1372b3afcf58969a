#ifndef AG_INTEGRATE_HPP
#define AG_INTEGRATE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ag/align.hpp"
#include "ag/graph.hpp"

namespace ag::integrate {

/// Ordered surface-token arcs of a lifted graph: per weakly-connected
/// chain, the minimal-id arc covering each consecutive node gap, skipping
/// structural material (slash-unit boundaries in DISF/, traces, E_S and
/// CODE/RM/IP/RS-covered leaves in T/). Chains are ordered by earliest
/// inherited time, then by first node id, which survives XML round-trips.
std::vector<ArcId> token_spine(const AnnotationGraph& graph);

/// Alignable surface text of a token arc: Pos/ labels are "word/TAG" and
/// yield the word; other namespaces label token arcs with the token itself.
std::string surface_text(const Arc& arc);

/// Aligns an unanchored stream graph against the timed word graph and
/// copies anchors onto the matched stream nodes: every matched token
/// anchors its start node, and the last token of a chain also anchors its
/// end node, so unmatched stream tokens become unanchored detours between
/// their matched neighbors. The timed graph's anchors are never moved.
/// Throws Timeline on mismatched timelines and AlignmentFailure when the
/// fraction of matched stream tokens falls below min_match_rate.
AnnotationGraph anchor_by_alignment(const AnnotationGraph& timed_graph,
                                    const AnnotationGraph& stream_graph,
                                    const align::NormPolicy& policy = {},
                                    double min_match_rate = 0.5);

/// Merges any number of graphs over one timeline into a single valid
/// graph. Inputs are folded in canonical order, so permutations of the
/// input list yield isomorphic results.
AnnotationGraph integrate(const std::vector<AnnotationGraph>& graphs,
                          Time tolerance = Time::from_centis(0));

// ---------------------------------------------------------------------------
// Repairs.

struct RepairEvent {
  enum class Kind { ChannelSwap, TokenCorrection, Resegmentation };

  Kind kind = Kind::ChannelSwap;
  Time span_start;
  Time span_end;
  // TokenCorrection: rewrite W/ arcs labeled old_label to new_label.
  std::string old_label;
  std::string new_label;
  // Resegmentation: anchored nodes at `first` move to `second`.
  std::vector<std::pair<Time, Time>> anchor_moves;
  // Filled on apply: every arc whose span intersects the repair span.
  std::vector<ArcId> affected;
};

const char* to_string(RepairEvent::Kind kind);

struct ImpactGroup {
  std::string arc_type;
  std::string provenance;
  std::vector<ArcId> arcs;
};

struct ImpactReport {
  std::vector<ImpactGroup> groups;  // sorted by (type, provenance)
  std::size_t total = 0;
};

struct RepairResult {
  AnnotationGraph graph;
  ImpactReport impact;
  RepairEvent event;  // input event with `affected` filled in
};

/// Applies one repair copy-on-write; the input graph is never mutated and
/// the impact report references input arc ids. The affected set is exactly
/// the arcs whose occupied interval intersects the repair span. Repairs
/// that would break time order are rejected with the violation list.
RepairResult apply_repair(const AnnotationGraph& graph, const RepairEvent& repair);

/// Line-oriented repair ledger: KIND<TAB>START:END<TAB>PAYLOAD. Payloads:
/// "-" for CHANNEL_SWAP, "old=>new" for TOKEN_CORRECTION, space-separated
/// "old=>new" time pairs for RESEGMENTATION.
RepairEvent parse_repair_line(std::string_view line, std::size_t line_no);
std::vector<RepairEvent> parse_repair_ledger(std::string_view text);
std::string render_impact(const AnnotationGraph& graph, const ImpactReport& impact);

}  // namespace ag::integrate

#endif  // AG_INTEGRATE_HPP
