#include <map>

#include "ag/error.hpp"
#include "ag/formats.hpp"

namespace ag::formats {

AnnotationGraph tokens_to_graph(const std::vector<Token>& tokens,
                                const std::string& timeline_id,
                                const std::string& provenance) {
  AnnotationGraph g(timeline_id);

  // Indices per channel, in source order.
  std::map<Channel, std::vector<std::size_t>> by_channel;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    by_channel[tokens[i].channel].push_back(i);
  }

  for (const auto& [channel, indices] : by_channel) {
    constexpr std::int64_t kUnknown = -1;
    std::optional<NodeId> tail;          // chain node the next token grows from
    std::int64_t tail_centis = kUnknown; // anchor of tail, when anchored
    std::optional<NodeId> reserved;      // start node premade by a '*' bridge
    std::int64_t last_centis = kUnknown; // latest time seen on this channel

    for (std::size_t k = 0; k < indices.size(); ++k) {
      const Token& tok = tokens[indices[k]];
      if (tok.timed()) {
        if (last_centis != kUnknown && tok.start->centis() < last_centis) {
          throw Error(ErrorKind::TimeOrder,
                      "channel " + std::string(1, to_char(channel)) +
                          " token '" + tok.text + "' starts at " +
                          tok.start->str() + ", before preceding material at " +
                          Time::from_centis(last_centis).str());
        }
        NodeId from;
        if (reserved) {
          from = *reserved;
          reserved.reset();
        } else if (tail && tail_centis == tok.start->centis()) {
          from = *tail;  // flush boundary: share the node
        } else {
          from = g.add_node(tok.start);
        }
        NodeId to = g.add_node(tok.end());
        g.add_arc(from, to, "W/", tok.text, provenance, channel);
        tail = to;
        tail_centis = tok.end().centis();
        last_centis = tail_centis;
      } else {
        NodeId from = tail ? *tail : g.add_node(std::nullopt);
        // Bridge to the next timed neighbor when there is one, so the
        // untimed token stays inside its chain-order interval.
        const Token* next = k + 1 < indices.size() ? &tokens[indices[k + 1]] : nullptr;
        NodeId to;
        if (next && next->timed()) {
          to = g.add_node(next->start);
          reserved = to;
          tail_centis = next->start->centis();
        } else {
          to = g.add_node(std::nullopt);
          reserved.reset();
          tail_centis = kUnknown;
        }
        g.add_arc(from, to, "W/", tok.text, provenance, channel);
        tail = to;
      }
    }
  }
  return g;
}

AnnotationGraph pos_to_graph(const std::vector<PosTurn>& turns,
                             const std::string& timeline_id,
                             const std::string& provenance) {
  AnnotationGraph g(timeline_id);
  // One continuous chain per file: consecutive turns share their boundary
  // node, so later anchoring bounds every unanchored stretch between real
  // anchors on both sides.
  std::optional<NodeId> chain;
  for (const PosTurn& turn : turns) {
    if (turn.tokens.empty()) continue;
    NodeId cur = chain ? *chain : g.add_node(std::nullopt);
    std::optional<NodeId> chunk_start;
    for (std::size_t i = 0; i < turn.tokens.size(); ++i) {
      const PosToken& tok = turn.tokens[i];
      if (tok.chunk_member && !chunk_start) chunk_start = cur;
      NodeId next = g.add_node(std::nullopt);
      g.add_arc(cur, next, "Pos/", tok.source(), provenance);
      cur = next;
      bool chunk_ends = tok.chunk_member &&
                        (i + 1 == turn.tokens.size() || !turn.tokens[i + 1].chunk_member);
      if (chunk_ends) {
        g.add_arc(*chunk_start, cur, "Pos/", "NP-chunk", provenance);
        chunk_start.reset();
      }
    }
    chain = cur;
  }
  return g;
}

namespace {

using DKind = DisfluencyElement::Kind;

std::string span_label(const DisfluencyElement& e) {
  switch (e.kind) {
    case DKind::Restart: return "restart";
    case DKind::FillerF: return "F";
    case DKind::CoordC: return "C";
    case DKind::OtherBrace: return e.text;
    default: return {};
  }
}

void lift_element(AnnotationGraph& g, const DisfluencyElement& e, NodeId* cur,
                  const std::string& provenance) {
  switch (e.kind) {
    case DKind::Word:
    case DKind::NonSpeech:
    case DKind::SentBoundary: {
      std::string label = e.kind == DKind::Word          ? e.text
                          : e.kind == DKind::SentBoundary ? "/"
                                                          : "<" + e.text + ">";
      NodeId next = g.add_node(std::nullopt);
      g.add_arc(*cur, next, "DISF/", label, provenance);
      *cur = next;
      break;
    }
    case DKind::Restart:
    case DKind::FillerF:
    case DKind::CoordC:
    case DKind::OtherBrace: {
      NodeId start = *cur;
      for (const auto& child : e.children) {
        lift_element(g, child, cur, provenance);
      }
      if (*cur != start) {
        g.add_arc(start, *cur, "DISF/", span_label(e), provenance);
      }
      break;
    }
  }
}

}  // namespace

AnnotationGraph disfluency_to_graph(const std::vector<DisfluencyTurn>& turns,
                                    const std::string& timeline_id,
                                    const std::string& provenance) {
  AnnotationGraph g(timeline_id);
  std::optional<NodeId> chain;
  for (const DisfluencyTurn& turn : turns) {
    if (turn.elements.empty()) continue;
    NodeId cur = chain ? *chain : g.add_node(std::nullopt);
    for (const auto& e : turn.elements) {
      lift_element(g, e, &cur, provenance);
    }
    chain = cur;
  }
  return g;
}

namespace {

void lift_tree(AnnotationGraph& g, const ParseTree& tree, NodeId* cur,
               const std::string& provenance) {
  if (tree.is_leaf()) {
    NodeId next = g.add_node(std::nullopt);
    g.add_arc(*cur, next, "T/", *tree.leaf_text, provenance);
    *cur = next;
    return;
  }
  NodeId start = *cur;
  for (const ParseTree& child : tree.children) {
    lift_tree(g, child, cur, provenance);
  }
  if (*cur != start) {
    g.add_arc(start, *cur, "T/", tree.label, provenance);
  }
}

}  // namespace

AnnotationGraph treebank_to_graph(const std::vector<ParseTree>& trees,
                                  const std::string& timeline_id,
                                  const std::string& provenance) {
  AnnotationGraph g(timeline_id);
  std::optional<NodeId> chain;
  for (const ParseTree& tree : trees) {
    NodeId cur = chain ? *chain : g.add_node(std::nullopt);
    lift_tree(g, tree, &cur, provenance);
    chain = cur;
  }
  return g;
}

}  // namespace ag::formats
