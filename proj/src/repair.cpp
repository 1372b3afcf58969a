#include <algorithm>
#include <map>
#include <sstream>

#include "ag/integrate.hpp"

namespace ag::integrate {

const char* to_string(RepairEvent::Kind kind) {
  switch (kind) {
    case RepairEvent::Kind::ChannelSwap: return "CHANNEL_SWAP";
    case RepairEvent::Kind::TokenCorrection: return "TOKEN_CORRECTION";
    case RepairEvent::Kind::Resegmentation: return "RESEGMENTATION";
  }
  return "?";
}

RepairResult apply_repair(const AnnotationGraph& graph, const RepairEvent& repair) {
  if (repair.span_start > repair.span_end) {
    throw Error(ErrorKind::InvalidArgument,
                "repair span start " + repair.span_start.str() +
                    " exceeds end " + repair.span_end.str());
  }
  std::optional<Time> extent_lo, extent_hi;
  for (const Node& n : graph.nodes()) {
    if (!n.anchor) continue;
    if (!extent_lo || *n.anchor < *extent_lo) extent_lo = n.anchor;
    if (!extent_hi || *n.anchor > *extent_hi) extent_hi = n.anchor;
  }
  if (!extent_lo || repair.span_end < *extent_lo || repair.span_start > *extent_hi) {
    throw Error(ErrorKind::InvalidArgument,
                "repair span [" + repair.span_start.str() + ", " +
                    repair.span_end.str() + "] lies outside the graph's time extent");
  }

  // Affected: every arc whose occupied interval intersects the span.
  auto brackets = graph.node_brackets();
  std::vector<ArcId> affected;
  for (const Arc& a : graph.arcs()) {
    Bracket span = graph.arc_span(a.id, brackets);
    if (span.intersects(repair.span_start, repair.span_end)) {
      affected.push_back(a.id);
    }
  }

  AnnotationGraph repaired = graph;
  switch (repair.kind) {
    case RepairEvent::Kind::ChannelSwap:
      for (ArcId id : affected) {
        const Arc& a = graph.arc(id);
        if (a.type != "W/" || !a.channel) continue;
        repaired.set_arc_channel(
            id, a.channel == Channel::A ? Channel::B : Channel::A);
      }
      break;
    case RepairEvent::Kind::TokenCorrection:
      for (ArcId id : affected) {
        const Arc& a = graph.arc(id);
        if (a.type == "W/" && a.label == repair.old_label) {
          repaired.set_arc_label(id, repair.new_label);
        }
      }
      break;
    case RepairEvent::Kind::Resegmentation: {
      for (const Node& n : graph.nodes()) {
        if (!n.anchor) continue;
        if (*n.anchor < repair.span_start || *n.anchor > repair.span_end) continue;
        for (const auto& [from, to] : repair.anchor_moves) {
          if (*n.anchor == from) {
            repaired.set_node_anchor(n.id, to);
            break;
          }
        }
      }
      auto violations = repaired.validate();
      if (!violations.empty()) {
        std::string detail = "resegmentation rejected, it would violate time order:";
        for (const Violation& v : violations) {
          detail += " arc " + std::to_string(v.arc.value) + " (" +
                    std::string(to_string(v.kind)) + ")";
        }
        throw Error(ErrorKind::TimeOrder, detail);
      }
      break;
    }
  }

  // Group by (namespace, provenance) for the report.
  std::map<std::pair<std::string, std::string>, std::vector<ArcId>> grouped;
  for (ArcId id : affected) {
    const Arc& a = graph.arc(id);
    grouped[{a.type, a.provenance}].push_back(id);
  }
  ImpactReport impact;
  impact.total = affected.size();
  for (auto& [key, arcs] : grouped) {
    std::sort(arcs.begin(), arcs.end());
    impact.groups.push_back({key.first, key.second, std::move(arcs)});
  }

  RepairEvent event = repair;
  std::sort(affected.begin(), affected.end());
  event.affected = std::move(affected);
  return RepairResult{std::move(repaired), std::move(impact), std::move(event)};
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(sep, pos);
    if (next == std::string_view::npos) {
      parts.emplace_back(text.substr(pos));
      break;
    }
    parts.emplace_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  return parts;
}

std::pair<std::string, std::string> split_arrow(std::string_view text,
                                                std::size_t line_no) {
  std::size_t arrow = text.find("=>");
  if (arrow == std::string_view::npos) {
    throw ParseError("expected 'old=>new' payload, got '" + std::string(text) + "'",
                     line_no);
  }
  return {std::string(text.substr(0, arrow)), std::string(text.substr(arrow + 2))};
}

}  // namespace

RepairEvent parse_repair_line(std::string_view line, std::size_t line_no) {
  auto fields = split(line, '\t');
  if (fields.size() != 3) {
    throw ParseError("expected KIND<TAB>SPAN<TAB>PAYLOAD, got " +
                         std::to_string(fields.size()) + " fields",
                     line_no);
  }
  RepairEvent event;
  if (fields[0] == "CHANNEL_SWAP") {
    event.kind = RepairEvent::Kind::ChannelSwap;
  } else if (fields[0] == "TOKEN_CORRECTION") {
    event.kind = RepairEvent::Kind::TokenCorrection;
  } else if (fields[0] == "RESEGMENTATION") {
    event.kind = RepairEvent::Kind::Resegmentation;
  } else {
    throw ParseError("unknown repair kind '" + fields[0] + "'", line_no);
  }

  auto span = split(fields[1], ':');
  if (span.size() != 2) {
    throw ParseError("expected START:END span, got '" + fields[1] + "'", line_no);
  }
  try {
    event.span_start = Time::parse(span[0]);
    event.span_end = Time::parse(span[1]);
  } catch (const Error& e) {
    throw ParseError(e.what(), line_no);
  }

  switch (event.kind) {
    case RepairEvent::Kind::ChannelSwap:
      break;  // payload carries no information
    case RepairEvent::Kind::TokenCorrection: {
      auto [old_label, new_label] = split_arrow(fields[2], line_no);
      event.old_label = old_label;
      event.new_label = new_label;
      break;
    }
    case RepairEvent::Kind::Resegmentation: {
      for (const std::string& pair : split(fields[2], ' ')) {
        if (pair.empty()) continue;
        auto [from, to] = split_arrow(pair, line_no);
        try {
          event.anchor_moves.emplace_back(Time::parse(from), Time::parse(to));
        } catch (const Error& e) {
          throw ParseError(e.what(), line_no);
        }
      }
      break;
    }
  }
  return event;
}

std::vector<RepairEvent> parse_repair_ledger(std::string_view text) {
  std::vector<RepairEvent> events;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    if (line.empty() || line[0] == '#') continue;
    events.push_back(parse_repair_line(line, line_no));
  }
  return events;
}

std::string render_impact(const AnnotationGraph& graph, const ImpactReport& impact) {
  std::ostringstream out;
  out << "impact total=" << impact.total << '\n';
  for (const ImpactGroup& group : impact.groups) {
    out << "impact type=" << group.arc_type << " provenance=" << group.provenance
        << " count=" << group.arcs.size() << " arcs=";
    for (std::size_t i = 0; i < group.arcs.size(); ++i) {
      if (i) out << ',';
      out << group.arcs[i].value;
      const Arc& a = graph.arc(group.arcs[i]);
      out << ':' << a.label;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ag::integrate
