#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "ag/integrate.hpp"

namespace ag::integrate {

namespace {

// Weakly-connected components, each topologically ordered. Lifted graphs
// are chains with forward shortcut arcs, so the order within a component
// is unique.
struct Chain {
  std::vector<NodeId> nodes;  // topological order
  std::optional<Time> earliest;
  std::uint32_t min_node = 0;
};

std::vector<Chain> chains_of(const AnnotationGraph& g) {
  const std::size_t n = g.nodes().size();
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (comp[start] != -1) continue;
    comp[start] = ncomp;
    std::vector<std::uint32_t> work{start};
    while (!work.empty()) {
      std::uint32_t cur = work.back();
      work.pop_back();
      for (ArcId ai : g.out_arcs(NodeId{cur})) {
        std::uint32_t next = g.arc(ai).to.value;
        if (comp[next] == -1) {
          comp[next] = ncomp;
          work.push_back(next);
        }
      }
      for (ArcId ai : g.in_arcs(NodeId{cur})) {
        std::uint32_t prev = g.arc(ai).from.value;
        if (comp[prev] == -1) {
          comp[prev] = ncomp;
          work.push_back(prev);
        }
      }
    }
    ++ncomp;
  }

  // Kahn per component, smallest node id first for determinism.
  std::vector<std::uint32_t> indegree(n, 0);
  for (const Arc& a : g.arcs()) ++indegree[a.to.value];
  std::vector<std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                                  std::greater<>>> ready(ncomp);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready[comp[i]].push(i);
  }
  std::vector<Chain> chains(ncomp);
  for (int c = 0; c < ncomp; ++c) {
    auto& queue = ready[c];
    while (!queue.empty()) {
      std::uint32_t cur = queue.top();
      queue.pop();
      chains[c].nodes.push_back(NodeId{cur});
      for (ArcId ai : g.out_arcs(NodeId{cur})) {
        std::uint32_t next = g.arc(ai).to.value;
        if (--indegree[next] == 0) queue.push(next);
      }
    }
  }

  auto brackets = g.node_brackets();
  for (Chain& chain : chains) {
    chain.min_node = chain.nodes.front().value;
    for (NodeId id : chain.nodes) {
      chain.min_node = std::min(chain.min_node, id.value);
      const auto& lo = brackets[id.value].lo;
      if (lo && (!chain.earliest || *lo < *chain.earliest)) chain.earliest = lo;
    }
  }
  std::sort(chains.begin(), chains.end(), [](const Chain& a, const Chain& b) {
    // Timed chains in time order, untimed chains after, by first node.
    auto key = [](const Chain& c) {
      return std::tuple(c.earliest ? 0 : 1,
                        c.earliest ? c.earliest->centis() : 0, c.min_node);
    };
    return key(a) < key(b);
  });
  return chains;
}

// Position of each node inside its chain, for covering-arc tests.
std::vector<std::size_t> chain_positions(const std::vector<Chain>& chains,
                                         std::size_t node_count) {
  std::vector<std::size_t> pos(node_count, 0);
  for (const Chain& chain : chains) {
    for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
      pos[chain.nodes[i].value] = i;
    }
  }
  return pos;
}

}  // namespace

// Alignable surface text of a spine arc. Pos/ labels are "word/TAG"; the
// other namespaces label token arcs with the token itself.
std::string surface_text(const Arc& arc) {
  if (arc.type == "Pos/") {
    std::size_t slash = arc.label.rfind('/');
    if (slash != std::string::npos) return arc.label.substr(0, slash);
  }
  return arc.label;
}

std::vector<ArcId> token_spine(const AnnotationGraph& g) {
  auto chains = chains_of(g);
  auto pos = chain_positions(chains, g.nodes().size());

  std::vector<ArcId> spine;
  for (const Chain& chain : chains) {
    for (std::size_t i = 0; i + 1 < chain.nodes.size(); ++i) {
      NodeId from = chain.nodes[i];
      NodeId to = chain.nodes[i + 1];
      // Token arc for this gap: the earliest-created arc covering exactly
      // it. Lifts emit token arcs before any coinciding span arc, and XML
      // round-trips preserve relative arc order.
      std::optional<ArcId> token_arc;
      for (ArcId ai : g.out_arcs(from)) {
        if (g.arc(ai).to == to && (!token_arc || ai < *token_arc)) {
          token_arc = ai;
        }
      }
      if (!token_arc) continue;  // gap bridged only by spans; not a chain
      const Arc& arc = g.arc(*token_arc);

      if (arc.type == "DISF/" && arc.label == "/") continue;
      if (arc.type == "T/") {
        if (formats::is_annotation_leaf(arc.label)) continue;
        // Leaves under CODE or edit-region bookkeeping constituents are
        // annotation, not transcription.
        bool covered = false;
        for (const Arc& other : g.arcs()) {
          if (other.id == *token_arc || other.type != "T/") continue;
          if (other.label != "CODE" && other.label != "RM" &&
              other.label != "IP" && other.label != "RS") {
            continue;
          }
          if (pos[other.from.value] <= i && pos[other.to.value] >= i + 1 &&
              // same chain membership is implied by position bounds only
              // when the nodes belong to this chain
              std::find(chain.nodes.begin(), chain.nodes.end(), other.from) !=
                  chain.nodes.end()) {
            covered = true;
            break;
          }
        }
        if (covered) continue;
      }
      spine.push_back(*token_arc);
    }
  }
  return spine;
}

AnnotationGraph anchor_by_alignment(const AnnotationGraph& timed_graph,
                                    const AnnotationGraph& stream_graph,
                                    const align::NormPolicy& policy,
                                    double min_match_rate) {
  if (timed_graph.timeline_id() != stream_graph.timeline_id()) {
    throw Error(ErrorKind::Timeline,
                "cannot anchor stream over timeline '" +
                    stream_graph.timeline_id() + "' against timed graph over '" +
                    timed_graph.timeline_id() + "'");
  }
  for (const Node& n : stream_graph.nodes()) {
    if (n.anchor) {
      throw Error(ErrorKind::InvalidArgument,
                  "stream graph node " + std::to_string(n.id.value) +
                      " is already anchored");
    }
  }

  std::vector<ArcId> ref_spine;
  for (ArcId ai : token_spine(timed_graph)) {
    if (timed_graph.arc(ai).type == "W/") ref_spine.push_back(ai);
  }
  std::vector<ArcId> hyp_spine = token_spine(stream_graph);

  std::vector<std::string> ref_tokens, hyp_tokens;
  for (ArcId ai : ref_spine) {
    ref_tokens.push_back(surface_text(timed_graph.arc(ai)));
  }
  for (ArcId ai : hyp_spine) {
    hyp_tokens.push_back(surface_text(stream_graph.arc(ai)));
  }

  align::EditScript script = align::align(ref_tokens, hyp_tokens, policy);
  long long matched = script.count(align::OpKind::Cor);
  if (!hyp_spine.empty() &&
      static_cast<double>(matched) < min_match_rate *
                                         static_cast<double>(hyp_spine.size())) {
    throw Error(ErrorKind::AlignmentFailure,
                "only " + std::to_string(matched) + " of " +
                    std::to_string(hyp_spine.size()) +
                    " stream tokens matched the timed transcript; wrong pairing?");
  }

  // Last token per chain: its end node has no outgoing spine successor.
  std::set<std::uint32_t> nonfinal;  // stream arcs whose end starts another token
  for (ArcId ai : hyp_spine) nonfinal.insert(stream_graph.arc(ai).from.value);

  AnnotationGraph anchored = stream_graph;
  // Track the last anchor placed along each chain so that stray
  // cross-channel matches can never introduce a time regression.
  std::map<std::uint32_t, Time> chain_floor;  // chain index -> latest anchor
  auto chains = chains_of(stream_graph);
  std::vector<std::uint32_t> chain_of_node(stream_graph.nodes().size(), 0);
  for (std::uint32_t c = 0; c < chains.size(); ++c) {
    for (NodeId id : chains[c].nodes) chain_of_node[id.value] = c;
  }

  for (const align::EditOp& op : script.ops) {
    if (op.kind != align::OpKind::Cor) continue;
    const Arc& ref_arc = timed_graph.arc(ref_spine[*op.ref_index]);
    const Arc& stream_arc = stream_graph.arc(hyp_spine[*op.hyp_index]);
    std::uint32_t chain = chain_of_node[stream_arc.from.value];

    auto place = [&](NodeId node, const std::optional<Time>& t) {
      if (!t) return;
      auto floor = chain_floor.find(chain);
      if (floor != chain_floor.end() && *t < floor->second) return;  // drop
      anchored.set_node_anchor(node, t);
      chain_floor[chain] = *t;
    };
    place(stream_arc.from, timed_graph.node(ref_arc.from).anchor);
    if (!nonfinal.count(stream_arc.to.value)) {
      place(stream_arc.to, timed_graph.node(ref_arc.to).anchor);
    }
  }
  return anchored;
}

AnnotationGraph integrate(const std::vector<AnnotationGraph>& graphs,
                          Time tolerance) {
  if (graphs.empty()) {
    throw Error(ErrorKind::InvalidArgument, "integrate requires at least one graph");
  }
  for (const AnnotationGraph& g : graphs) {
    if (g.timeline_id() != graphs.front().timeline_id()) {
      throw Error(ErrorKind::Timeline,
                  "cannot integrate graphs over timelines '" +
                      graphs.front().timeline_id() + "' and '" +
                      g.timeline_id() + "'");
    }
    if (!g.validate().empty()) {
      throw Error(ErrorKind::Validation, "integrate requires valid input graphs");
    }
  }
  // Fold in canonical order so any permutation of the inputs produces the
  // same result.
  std::vector<const AnnotationGraph*> ordered;
  for (const AnnotationGraph& g : graphs) ordered.push_back(&g);
  std::sort(ordered.begin(), ordered.end(),
            [](const AnnotationGraph* a, const AnnotationGraph* b) {
              return a->canonical_signature() < b->canonical_signature();
            });
  AnnotationGraph merged = *ordered.front();
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    merged = AnnotationGraph::merge(merged, *ordered[i], tolerance);
  }
  return merged;
}

}  // namespace ag::integrate
