#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "ag/xml_io.hpp"

namespace ag::xmlio {

namespace {

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string write_xml(const AnnotationGraph& graph) {
  auto violations = graph.validate();
  if (!violations.empty()) {
    std::string detail = "refusing to serialize an invalid graph:";
    for (const Violation& v : violations) {
      detail += " arc " + std::to_string(v.arc.value) + " (" +
                std::string(to_string(v.kind)) + ")";
    }
    throw Error(ErrorKind::Validation, detail);
  }

  std::vector<const Node*> nodes;
  for (const Node& n : graph.nodes()) nodes.push_back(&n);
  std::sort(nodes.begin(), nodes.end(), [](const Node* a, const Node* b) {
    auto key = [](const Node* n) {
      return std::tuple(n->anchor ? 0 : 1,
                        n->anchor ? n->anchor->centis() : 0, n->id.value);
    };
    return key(a) < key(b);
  });

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<annotation-graph timeline=\"" << escape(graph.timeline_id()) << "\">\n";
  for (const Node* n : nodes) {
    out << "  <node id=\"n" << n->id.value << "\"";
    if (n->anchor) out << " t=\"" << n->anchor->centis() << "\"";
    out << "/>\n";
  }
  for (const Arc& a : graph.arcs()) {
    out << "  <arc id=\"a" << a.id.value << "\" from=\"n" << a.from.value
        << "\" to=\"n" << a.to.value << "\" type=\"" << escape(a.type)
        << "\" label=\"" << escape(a.label) << "\" provenance=\""
        << escape(a.provenance) << "\"";
    if (a.channel) out << " channel=\"" << to_char(*a.channel) << "\"";
    out << "/>\n";
  }
  out << "</annotation-graph>\n";
  return out.str();
}

namespace {

struct Reader {
  std::string_view text;
  std::size_t pos = 0;
  std::size_t line = 1;
  std::size_t column = 1;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line, column);
  }

  void advance() {
    if (done()) fail("unexpected end of document");
    if (text[pos] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++pos;
  }

  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool try_consume(std::string_view token) {
    if (text.substr(pos, token.size()) != token) return false;
    for (std::size_t i = 0; i < token.size(); ++i) advance();
    return true;
  }

  void expect(std::string_view token) {
    if (!try_consume(token)) {
      fail("expected '" + std::string(token) + "'");
    }
  }

  std::string name() {
    std::size_t start = pos;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) ||
                       peek() == '-' || peek() == '_' || peek() == ':')) {
      advance();
    }
    if (pos == start) fail("expected a name");
    return std::string(text.substr(start, pos - start));
  }

  std::string attribute_value() {
    expect("\"");
    std::string out;
    while (true) {
      if (done()) fail("unterminated attribute value");
      char c = peek();
      if (c == '"') {
        advance();
        return out;
      }
      if (c == '<') fail("raw '<' inside attribute value");
      if (c == '&') {
        advance();
        std::string entity;
        while (!done() && peek() != ';') {
          entity += peek();
          advance();
        }
        expect(";");
        if (entity == "amp") out += '&';
        else if (entity == "lt") out += '<';
        else if (entity == "gt") out += '>';
        else if (entity == "quot") out += '"';
        else if (entity == "apos") out += '\'';
        else if (entity.size() > 1 && entity[0] == '#') {
          long code = std::strtol(entity.c_str() + 1, nullptr, 10);
          if (code <= 0 || code > 127) fail("unsupported character reference &" + entity + ";");
          out += static_cast<char>(code);
        } else {
          fail("unknown entity &" + entity + ";");
        }
        continue;
      }
      out += c;
      advance();
    }
  }

  // Parses attributes up to "/>" or ">"; returns (attrs, self_closing).
  std::pair<std::map<std::string, std::string>, bool> attributes() {
    std::map<std::string, std::string> attrs;
    while (true) {
      skip_space();
      if (done()) fail("unterminated element");
      if (try_consume("/>")) return {attrs, true};
      if (try_consume(">")) return {attrs, false};
      std::string key = name();
      skip_space();
      expect("=");
      skip_space();
      if (!attrs.emplace(key, attribute_value()).second) {
        fail("duplicate attribute '" + key + "'");
      }
    }
  }
};

const std::string& require(const std::map<std::string, std::string>& attrs,
                           const std::string& key, const Reader& reader,
                           const std::string& element) {
  auto it = attrs.find(key);
  if (it == attrs.end()) {
    throw ParseError("<" + element + "> is missing attribute '" + key + "'",
                     reader.line, reader.column);
  }
  return it->second;
}

}  // namespace

AnnotationGraph read_xml(std::string_view bytes) {
  Reader reader{bytes};
  reader.skip_space();
  if (reader.try_consume("<?xml")) {
    while (!reader.done() && !reader.try_consume("?>")) reader.advance();
  }
  reader.skip_space();
  reader.expect("<annotation-graph");
  auto [root_attrs, root_closed] = reader.attributes();
  std::string timeline = require(root_attrs, "timeline", reader, "annotation-graph");
  for (const auto& [key, value] : root_attrs) {
    (void)value;
    if (key != "timeline") reader.fail("unknown attribute '" + key + "' on <annotation-graph>");
  }
  if (timeline.empty()) reader.fail("timeline must be non-empty");

  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::map<std::string, std::uint32_t> node_names;
  std::map<std::string, std::uint32_t> arc_names;
  struct PendingArc {
    std::string from, to;
    std::size_t line, column;
  };
  std::vector<PendingArc> pending;

  while (!root_closed) {
    reader.skip_space();
    if (reader.try_consume("</annotation-graph")) {
      reader.skip_space();
      reader.expect(">");
      break;
    }
    if (reader.done()) reader.fail("unterminated <annotation-graph>");
    std::size_t elem_line = reader.line, elem_column = reader.column;
    if (reader.try_consume("<node")) {
      auto [attrs, closed] = reader.attributes();
      if (!closed) reader.fail("<node> must be self-closing");
      const std::string& id = require(attrs, "id", reader, "node");
      std::optional<Time> anchor;
      for (const auto& [key, value] : attrs) {
        if (key == "id") continue;
        if (key == "t") {
          if (value.empty() ||
              !std::all_of(value.begin(), value.end(), [](unsigned char c) {
                return std::isdigit(c);
              })) {
            throw ParseError("bad centisecond value '" + value + "'", elem_line,
                             elem_column);
          }
          anchor = Time::from_centis(std::stoll(value));
          continue;
        }
        throw ParseError("unknown attribute '" + key + "' on <node>", elem_line,
                         elem_column);
      }
      std::uint32_t index = static_cast<std::uint32_t>(nodes.size());
      if (!node_names.emplace(id, index).second) {
        throw ParseError("duplicate node id '" + id + "'", elem_line, elem_column);
      }
      nodes.push_back(Node{NodeId{index}, anchor});
      continue;
    }
    if (reader.try_consume("<arc")) {
      auto [attrs, closed] = reader.attributes();
      if (!closed) reader.fail("<arc> must be self-closing");
      const std::string& id = require(attrs, "id", reader, "arc");
      Arc arc;
      arc.type = require(attrs, "type", reader, "arc");
      arc.label = require(attrs, "label", reader, "arc");
      arc.provenance = require(attrs, "provenance", reader, "arc");
      for (const auto& [key, value] : attrs) {
        if (key == "id" || key == "from" || key == "to" || key == "type" ||
            key == "label" || key == "provenance") {
          continue;
        }
        if (key == "channel") {
          if (value != "A" && value != "B") {
            throw ParseError("bad channel '" + value + "'", elem_line, elem_column);
          }
          arc.channel = channel_from_char(value[0]);
          continue;
        }
        throw ParseError("unknown attribute '" + key + "' on <arc>", elem_line,
                         elem_column);
      }
      std::uint32_t index = static_cast<std::uint32_t>(arcs.size());
      if (!arc_names.emplace(id, index).second) {
        throw ParseError("duplicate arc id '" + id + "'", elem_line, elem_column);
      }
      arc.id = ArcId{index};
      arcs.push_back(std::move(arc));
      pending.push_back({require(attrs, "from", reader, "arc"),
                         require(attrs, "to", reader, "arc"), elem_line,
                         elem_column});
      continue;
    }
    reader.fail("expected <node>, <arc>, or </annotation-graph>");
  }
  reader.skip_space();
  if (!reader.done()) reader.fail("content after </annotation-graph>");

  for (std::size_t i = 0; i < arcs.size(); ++i) {
    auto from = node_names.find(pending[i].from);
    auto to = node_names.find(pending[i].to);
    if (from == node_names.end() || to == node_names.end()) {
      throw Error(ErrorKind::Reference,
                  "arc references missing node '" +
                      (from == node_names.end() ? pending[i].from : pending[i].to) +
                      "' (line " + std::to_string(pending[i].line) + ")");
    }
    arcs[i].from = NodeId{from->second};
    arcs[i].to = NodeId{to->second};
  }

  AnnotationGraph graph =
      AnnotationGraph::unchecked(timeline, std::move(nodes), std::move(arcs));
  auto violations = graph.validate();
  if (!violations.empty()) {
    std::string detail = "document encodes an invalid graph:";
    for (const Violation& v : violations) {
      detail += " arc " + std::to_string(v.arc.value) + " (" +
                std::string(to_string(v.kind)) + ")";
    }
    throw Error(ErrorKind::Validation, detail);
  }
  return graph;
}

}  // namespace ag::xmlio
