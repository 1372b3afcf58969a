#include "ag/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <tuple>

namespace ag {

char to_char(Channel c) { return c == Channel::A ? 'A' : 'B'; }

Channel channel_from_char(char c) {
  if (c == 'A') return Channel::A;
  if (c == 'B') return Channel::B;
  throw Error(ErrorKind::InvalidArgument,
              std::string("unknown channel '") + c + "'");
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::TimeOrder: return "time-order";
    case ViolationKind::DanglingRef: return "dangling-ref";
    case ViolationKind::SelfLoop: return "self-loop";
    case ViolationKind::BadType: return "bad-type";
  }
  return "violation";
}

AnnotationGraph::AnnotationGraph(std::string timeline_id)
    : timeline_id_(std::move(timeline_id)) {
  if (timeline_id_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "timeline_id must be non-empty");
  }
}

AnnotationGraph AnnotationGraph::unchecked(std::string timeline_id,
                                           std::vector<Node> nodes,
                                           std::vector<Arc> arcs) {
  AnnotationGraph g(std::move(timeline_id));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id.value != i) {
      throw Error(ErrorKind::InvalidArgument,
                  "unchecked graphs need dense node ids (index " +
                      std::to_string(i) + " holds id " +
                      std::to_string(nodes[i].id.value) + ")");
    }
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].id.value != i) {
      throw Error(ErrorKind::InvalidArgument,
                  "unchecked graphs need dense arc ids (index " +
                      std::to_string(i) + " holds id " +
                      std::to_string(arcs[i].id.value) + ")");
    }
  }
  g.nodes_ = std::move(nodes);
  g.arcs_ = std::move(arcs);
  g.out_.assign(g.nodes_.size(), {});
  g.in_.assign(g.nodes_.size(), {});
  for (std::uint32_t ai = 0; ai < g.arcs_.size(); ++ai) {
    const Arc& a = g.arcs_[ai];
    if (a.from.value < g.nodes_.size()) g.out_[a.from.value].push_back(ai);
    if (a.to.value < g.nodes_.size()) g.in_[a.to.value].push_back(ai);
    if (!a.provenance.empty()) g.streams_.insert(a.provenance);
  }
  return g;
}

const Node& AnnotationGraph::node(NodeId id) const {
  if (!has_node(id)) {
    throw Error(ErrorKind::NotFound,
                "unknown node id " + std::to_string(id.value));
  }
  return nodes_[id.value];
}

const Arc& AnnotationGraph::arc(ArcId id) const {
  if (id.value >= arcs_.size()) {
    throw Error(ErrorKind::NotFound,
                "unknown arc id " + std::to_string(id.value));
  }
  return arcs_[id.value];
}

std::vector<ArcId> AnnotationGraph::out_arcs(NodeId id) const {
  node(id);
  std::vector<ArcId> out;
  for (std::uint32_t ai : out_[id.value]) out.push_back(ArcId{ai});
  return out;
}

std::vector<ArcId> AnnotationGraph::in_arcs(NodeId id) const {
  node(id);
  std::vector<ArcId> out;
  for (std::uint32_t ai : in_[id.value]) out.push_back(ArcId{ai});
  return out;
}

NodeId AnnotationGraph::add_node(std::optional<Time> anchor) {
  NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(Node{id, anchor});
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

bool AnnotationGraph::reaches(NodeId from, NodeId to) const {
  if (from == to) return true;
  std::vector<bool> seen(nodes_.size(), false);
  std::deque<std::uint32_t> work{from.value};
  seen[from.value] = true;
  while (!work.empty()) {
    std::uint32_t n = work.front();
    work.pop_front();
    for (std::uint32_t ai : out_[n]) {
      std::uint32_t next = arcs_[ai].to.value;
      if (next >= nodes_.size() || seen[next]) continue;
      if (next == to.value) return true;
      seen[next] = true;
      work.push_back(next);
    }
  }
  return false;
}

std::optional<Time> AnnotationGraph::max_anchor_through_ancestors(NodeId id) const {
  std::optional<Time> best = nodes_[id.value].anchor;
  std::vector<bool> seen(nodes_.size(), false);
  std::deque<std::uint32_t> work{id.value};
  seen[id.value] = true;
  while (!work.empty()) {
    std::uint32_t n = work.front();
    work.pop_front();
    for (std::uint32_t ai : in_[n]) {
      std::uint32_t prev = arcs_[ai].from.value;
      if (prev >= nodes_.size() || seen[prev]) continue;
      seen[prev] = true;
      const auto& anchor = nodes_[prev].anchor;
      if (anchor && (!best || *anchor > *best)) best = anchor;
      work.push_back(prev);
    }
  }
  return best;
}

std::optional<Time> AnnotationGraph::min_anchor_through_descendants(NodeId id) const {
  std::optional<Time> best = nodes_[id.value].anchor;
  std::vector<bool> seen(nodes_.size(), false);
  std::deque<std::uint32_t> work{id.value};
  seen[id.value] = true;
  while (!work.empty()) {
    std::uint32_t n = work.front();
    work.pop_front();
    for (std::uint32_t ai : out_[n]) {
      std::uint32_t next = arcs_[ai].to.value;
      if (next >= nodes_.size() || seen[next]) continue;
      seen[next] = true;
      const auto& anchor = nodes_[next].anchor;
      if (anchor && (!best || *anchor < *best)) best = anchor;
      work.push_back(next);
    }
  }
  return best;
}

ArcId AnnotationGraph::add_arc(NodeId from, NodeId to, std::string type,
                               std::string label, std::string provenance,
                               std::optional<Channel> channel) {
  node(from);
  node(to);
  if (from == to) {
    throw Error(ErrorKind::InvalidArgument,
                "arc endpoints must differ (node " + std::to_string(from.value) + ")");
  }
  if (type.empty() || type.back() != '/') {
    throw Error(ErrorKind::InvalidArgument,
                "arc type must be a namespace ending in '/', got '" + type + "'");
  }
  if (provenance.empty()) {
    throw Error(ErrorKind::InvalidArgument, "arc provenance must be non-empty");
  }
  auto upstream = max_anchor_through_ancestors(from);
  auto downstream = min_anchor_through_descendants(to);
  if (upstream && downstream && *upstream > *downstream) {
    throw Error(ErrorKind::TimeOrder,
                "arc " + std::to_string(from.value) + "->" +
                    std::to_string(to.value) + " regresses in time (" +
                    upstream->str() + " > " + downstream->str() + ")");
  }
  if (reaches(to, from)) {
    throw Error(ErrorKind::Cycle,
                "arc " + std::to_string(from.value) + "->" +
                    std::to_string(to.value) + " would close a cycle");
  }

  ArcId id{static_cast<std::uint32_t>(arcs_.size())};
  arcs_.push_back(Arc{id, from, to, std::move(type), std::move(label),
                      provenance, channel});
  out_[from.value].push_back(id.value);
  in_[to.value].push_back(id.value);
  streams_.insert(std::move(provenance));
  return id;
}

std::optional<std::vector<NodeId>> AnnotationGraph::topo_order() const {
  std::vector<std::uint32_t> indegree(nodes_.size(), 0);
  for (const Arc& a : arcs_) {
    if (a.from.value < nodes_.size() && a.to.value < nodes_.size() &&
        a.from != a.to) {
      ++indegree[a.to.value];
    }
  }
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                      std::greater<>> ready;
  for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
    if (indegree[n] == 0) ready.push(n);
  }
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  while (!ready.empty()) {
    std::uint32_t n = ready.top();
    ready.pop();
    order.push_back(NodeId{n});
    for (std::uint32_t ai : out_[n]) {
      const Arc& a = arcs_[ai];
      if (a.to.value >= nodes_.size() || a.from == a.to) continue;
      if (--indegree[a.to.value] == 0) ready.push(a.to.value);
    }
  }
  if (order.size() != nodes_.size()) return std::nullopt;
  return order;
}

std::vector<Violation> AnnotationGraph::validate() const {
  std::vector<Violation> report;
  std::vector<bool> structural_ok(arcs_.size(), true);

  for (const Arc& a : arcs_) {
    if (a.from.value >= nodes_.size() || a.to.value >= nodes_.size()) {
      report.push_back({ViolationKind::DanglingRef, a.id,
                        "arc references a missing node"});
      structural_ok[a.id.value] = false;
      continue;
    }
    if (a.from == a.to) {
      report.push_back({ViolationKind::SelfLoop, a.id,
                        "arc endpoints coincide"});
      structural_ok[a.id.value] = false;
    }
    if (a.type.empty() || a.type.back() != '/') {
      report.push_back({ViolationKind::BadType, a.id,
                        "arc type '" + a.type + "' is not a namespace"});
    }
  }

  // Cycle detection: every arc on some cycle (strongly connected component
  // of size > 1) is reported.
  {
    std::vector<int> comp(nodes_.size(), -1);
    std::vector<int> low(nodes_.size(), 0), num(nodes_.size(), -1);
    std::vector<bool> on_stack(nodes_.size(), false);
    std::vector<std::uint32_t> stack;
    int counter = 0, ncomp = 0;

    // Iterative Tarjan.
    struct Frame { std::uint32_t node; std::size_t arc_pos; };
    for (std::uint32_t start = 0; start < nodes_.size(); ++start) {
      if (num[start] != -1) continue;
      std::vector<Frame> frames{{start, 0}};
      num[start] = low[start] = counter++;
      stack.push_back(start);
      on_stack[start] = true;
      while (!frames.empty()) {
        Frame& f = frames.back();
        if (f.arc_pos < out_[f.node].size()) {
          const Arc& a = arcs_[out_[f.node][f.arc_pos++]];
          if (a.to.value >= nodes_.size() || a.from == a.to) continue;
          std::uint32_t next = a.to.value;
          if (num[next] == -1) {
            num[next] = low[next] = counter++;
            stack.push_back(next);
            on_stack[next] = true;
            frames.push_back({next, 0});
          } else if (on_stack[next]) {
            low[f.node] = std::min(low[f.node], num[next]);
          }
        } else {
          std::uint32_t n = f.node;
          frames.pop_back();
          if (!frames.empty()) {
            low[frames.back().node] = std::min(low[frames.back().node], low[n]);
          }
          if (low[n] == num[n]) {
            while (true) {
              std::uint32_t m = stack.back();
              stack.pop_back();
              on_stack[m] = false;
              comp[m] = ncomp;
              if (m == n) break;
            }
            ++ncomp;
          }
        }
      }
    }
    std::vector<std::uint32_t> comp_size(ncomp, 0);
    for (std::uint32_t n = 0; n < nodes_.size(); ++n) ++comp_size[comp[n]];
    for (const Arc& a : arcs_) {
      if (!structural_ok[a.id.value]) continue;
      if (comp[a.from.value] == comp[a.to.value] &&
          comp_size[comp[a.from.value]] > 1) {
        report.push_back({ViolationKind::Cycle, a.id, "arc lies on a cycle"});
      }
    }
  }

  // Time-order: an arc violates when the tightest anchored bound above its
  // source exceeds the tightest anchored bound below its target. This
  // covers both direct regressions and path-level inconsistencies.
  for (const Arc& a : arcs_) {
    if (!structural_ok[a.id.value]) continue;
    auto upstream = max_anchor_through_ancestors(a.from);
    auto downstream = min_anchor_through_descendants(a.to);
    if (upstream && downstream && *upstream > *downstream) {
      report.push_back({ViolationKind::TimeOrder, a.id,
                        "time regresses across arc (" + upstream->str() +
                            " > " + downstream->str() + ")"});
    }
  }

  std::stable_sort(report.begin(), report.end(),
                   [](const Violation& x, const Violation& y) {
                     return x.arc < y.arc;
                   });
  return report;
}

std::vector<Bracket> AnnotationGraph::node_brackets() const {
  auto order = topo_order();
  if (!order) {
    throw Error(ErrorKind::Validation,
                "node_brackets requires an acyclic graph");
  }
  std::vector<Bracket> brackets(nodes_.size());
  for (NodeId nid : *order) {
    const Node& n = nodes_[nid.value];
    std::optional<Time> lo = n.anchor;
    if (!lo) {
      for (std::uint32_t ai : in_[nid.value]) {
        const auto& prev = brackets[arcs_[ai].from.value].lo;
        if (prev && (!lo || *prev > *lo)) lo = prev;
      }
    }
    brackets[nid.value].lo = lo;
  }
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    const Node& n = nodes_[it->value];
    std::optional<Time> hi = n.anchor;
    if (!hi) {
      for (std::uint32_t ai : out_[it->value]) {
        const auto& next = brackets[arcs_[ai].to.value].hi;
        if (next && (!hi || *next < *hi)) hi = next;
      }
    }
    brackets[it->value].hi = hi;
  }
  return brackets;
}

Bracket AnnotationGraph::arc_span(ArcId id,
                                  const std::vector<Bracket>& brackets) const {
  const Arc& a = arc(id);
  return Bracket{brackets[a.from.value].lo, brackets[a.to.value].hi};
}

std::vector<ArcId> AnnotationGraph::arcs_in_interval(
    Time t0, Time t1, const std::optional<std::string>& type_filter) const {
  if (t0 > t1) {
    throw Error(ErrorKind::InvalidArgument,
                "interval start " + t0.str() + " exceeds end " + t1.str());
  }
  auto brackets = node_brackets();
  std::vector<ArcId> hits;
  for (const Arc& a : arcs_) {
    if (type_filter && a.type != *type_filter) continue;
    if (brackets[a.from.value].intersects(t0, t1) &&
        brackets[a.to.value].intersects(t0, t1)) {
      hits.push_back(a.id);
    }
  }
  auto start_key = [&](ArcId id) {
    const auto& b = brackets[arcs_[id.value].from.value];
    // Unbounded starts sort first.
    return b.lo ? std::pair<int, std::int64_t>(1, b.lo->centis())
                : std::pair<int, std::int64_t>(0, 0);
  };
  std::sort(hits.begin(), hits.end(), [&](ArcId x, ArcId y) {
    const Arc& ax = arcs_[x.value];
    const Arc& ay = arcs_[y.value];
    return std::tuple(start_key(x), ax.type, ax.label, x.value) <
           std::tuple(start_key(y), ay.type, ay.label, y.value);
  });
  return hits;
}

namespace {

// Topological rank per node; used to keep unification order-preserving
// among equal-offset anchors.
std::vector<std::uint32_t> topo_ranks(const AnnotationGraph& g) {
  std::vector<std::uint32_t> rank(g.nodes().size(), 0);
  std::vector<std::uint32_t> indegree(g.nodes().size(), 0);
  for (const Arc& a : g.arcs()) ++indegree[a.to.value];
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>,
                      std::greater<>> ready;
  for (std::uint32_t n = 0; n < g.nodes().size(); ++n) {
    if (indegree[n] == 0) ready.push(n);
  }
  std::uint32_t next_rank = 0;
  while (!ready.empty()) {
    std::uint32_t n = ready.top();
    ready.pop();
    rank[n] = next_rank++;
    for (ArcId ai : g.out_arcs(NodeId{n})) {
      if (--indegree[g.arc(ai).to.value] == 0) ready.push(g.arc(ai).to.value);
    }
  }
  return rank;
}

}  // namespace

AnnotationGraph AnnotationGraph::merge(const AnnotationGraph& g1,
                                       const AnnotationGraph& g2,
                                       Time tolerance) {
  if (g1.timeline_id() != g2.timeline_id()) {
    throw Error(ErrorKind::Timeline,
                "cannot merge graphs over timelines '" + g1.timeline_id() +
                    "' and '" + g2.timeline_id() + "'");
  }
  if (!g1.validate().empty() || !g2.validate().empty()) {
    throw Error(ErrorKind::Validation, "merge requires valid input graphs");
  }

  struct AnchoredRef {
    std::int64_t centis;
    std::uint32_t rank;
    std::uint32_t node;
  };
  auto anchored_sorted = [](const AnnotationGraph& g) {
    auto ranks = topo_ranks(g);
    std::vector<AnchoredRef> out;
    for (const Node& n : g.nodes()) {
      if (n.anchor) out.push_back({n.anchor->centis(), ranks[n.id.value], n.id.value});
    }
    std::sort(out.begin(), out.end(), [](const AnchoredRef& a, const AnchoredRef& b) {
      return std::tuple(a.centis, a.rank, a.node) <
             std::tuple(b.centis, b.rank, b.node);
    });
    return out;
  };
  auto left = anchored_sorted(g1);
  auto right = anchored_sorted(g2);

  // Greedy clustering over the union of anchored offsets; within one
  // cluster, nodes of the two graphs are paired in (offset, topological)
  // order, which keeps same-offset chains from crossing.
  std::vector<std::optional<std::uint32_t>> mapping(g2.nodes().size());
  std::vector<std::optional<Time>> reanchor1(g1.nodes().size());
  std::vector<std::int64_t> offsets;
  for (const auto& r : left) offsets.push_back(r.centis);
  for (const auto& r : right) offsets.push_back(r.centis);
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());

  std::size_t li = 0, ri = 0;
  std::size_t oi = 0;
  while (oi < offsets.size()) {
    std::int64_t base = offsets[oi];
    std::int64_t limit = base + tolerance.centis();
    while (oi < offsets.size() && offsets[oi] <= limit) ++oi;
    std::vector<AnchoredRef> lc, rc;
    while (li < left.size() && left[li].centis <= limit) lc.push_back(left[li++]);
    while (ri < right.size() && right[ri].centis <= limit) rc.push_back(right[ri++]);
    for (std::size_t k = 0; k < lc.size() && k < rc.size(); ++k) {
      mapping[rc[k].node] = lc[k].node;
      std::int64_t unified = std::min(lc[k].centis, rc[k].centis);
      if (unified != lc[k].centis) {
        reanchor1[lc[k].node] = Time::from_centis(unified);
      }
    }
  }

  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  nodes.reserve(g1.nodes().size() + g2.nodes().size());
  for (const Node& n : g1.nodes()) {
    Node copy = n;
    if (reanchor1[n.id.value]) copy.anchor = reanchor1[n.id.value];
    nodes.push_back(copy);
  }
  // Fresh nodes for every unmapped g2 node.
  std::vector<std::uint32_t> fresh(g2.nodes().size(), 0);
  for (const Node& n : g2.nodes()) {
    if (!mapping[n.id.value]) {
      fresh[n.id.value] = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back(Node{NodeId{fresh[n.id.value]}, n.anchor});
    }
  }
  auto map2 = [&](NodeId id) {
    return mapping[id.value] ? NodeId{*mapping[id.value]} : NodeId{fresh[id.value]};
  };

  for (const Arc& a : g1.arcs()) arcs.push_back(a);
  for (const Arc& a : g2.arcs()) {
    Arc copy = a;
    copy.id = ArcId{static_cast<std::uint32_t>(arcs.size())};
    copy.from = map2(a.from);
    copy.to = map2(a.to);
    arcs.push_back(copy);
  }

  AnnotationGraph merged =
      AnnotationGraph::unchecked(g1.timeline_id(), std::move(nodes), std::move(arcs));
  auto violations = merged.validate();
  if (!violations.empty()) {
    std::string detail = "merge would violate graph constraints:";
    for (const Violation& v : violations) {
      detail += " arc " + std::to_string(v.arc.value) + " (" +
                to_string(v.kind) + ")";
    }
    throw Error(ErrorKind::MergeConflict, detail);
  }
  return merged;
}

std::string AnnotationGraph::canonical_signature() const {
  // Color refinement over (anchor, incident arc multisets). The rendered
  // signature never mentions node or arc ids, so it is invariant under
  // relabeling.
  std::vector<std::string> color(nodes_.size());
  for (const Node& n : nodes_) {
    color[n.id.value] = n.anchor ? "t" + std::to_string(n.anchor->centis()) : "u";
  }
  auto arc_tag = [](const Arc& a) {
    std::string tag = a.type;
    tag += '\x01';
    tag += a.label;
    tag += '\x01';
    tag += a.provenance;
    tag += '\x01';
    if (a.channel) tag += to_char(*a.channel);
    return tag;
  };

  std::size_t classes = 0;
  for (std::size_t round = 0; round < nodes_.size() + 1; ++round) {
    std::vector<std::string> next(nodes_.size());
    for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
      std::vector<std::string> outs, ins;
      for (std::uint32_t ai : out_[n]) {
        const Arc& a = arcs_[ai];
        if (a.to.value < nodes_.size())
          outs.push_back(arc_tag(a) + '\x02' + color[a.to.value]);
      }
      for (std::uint32_t ai : in_[n]) {
        const Arc& a = arcs_[ai];
        if (a.from.value < nodes_.size())
          ins.push_back(arc_tag(a) + '\x02' + color[a.from.value]);
      }
      std::sort(outs.begin(), outs.end());
      std::sort(ins.begin(), ins.end());
      std::string sig = color[n] + "|>";
      for (const auto& s : outs) sig += s + '\x03';
      sig += "|<";
      for (const auto& s : ins) sig += s + '\x03';
      next[n] = std::move(sig);
    }
    // Re-intern to compact names so colors do not grow unboundedly.
    std::map<std::string, std::size_t> intern;
    for (const auto& s : next) intern.emplace(s, 0);
    std::size_t idx = 0;
    for (auto& [key, val] : intern) val = idx++;
    for (std::uint32_t n = 0; n < nodes_.size(); ++n) {
      color[n] = "c" + std::to_string(intern[next[n]]);
    }
    if (intern.size() == classes) break;
    classes = intern.size();
  }

  std::vector<std::string> node_sigs;
  for (const Node& n : nodes_) {
    node_sigs.push_back((n.anchor ? "t" + std::to_string(n.anchor->centis()) : "u") +
                        ":" + color[n.id.value]);
  }
  std::sort(node_sigs.begin(), node_sigs.end());
  std::vector<std::string> arc_sigs;
  for (const Arc& a : arcs_) {
    std::string from = a.from.value < nodes_.size() ? color[a.from.value] : "?";
    std::string to = a.to.value < nodes_.size() ? color[a.to.value] : "?";
    arc_sigs.push_back(from + ">" + to + ">" + arc_tag(a));
  }
  std::sort(arc_sigs.begin(), arc_sigs.end());

  std::string out = "timeline=" + timeline_id_ + ";nodes=";
  for (const auto& s : node_sigs) out += s + ",";
  out += ";arcs=";
  for (const auto& s : arc_sigs) out += s + ",";
  return out;
}

bool isomorphic(const AnnotationGraph& a, const AnnotationGraph& b) {
  return a.canonical_signature() == b.canonical_signature();
}

void AnnotationGraph::set_arc_label(ArcId id, std::string label) {
  arc(id);
  arcs_[id.value].label = std::move(label);
}

void AnnotationGraph::set_arc_channel(ArcId id, std::optional<Channel> channel) {
  arc(id);
  arcs_[id.value].channel = channel;
}

void AnnotationGraph::set_node_anchor(NodeId id, std::optional<Time> anchor) {
  node(id);
  nodes_[id.value].anchor = anchor;
}

}  // namespace ag
