#include <cctype>
#include <sstream>

#include "ag/error.hpp"
#include "ag/formats.hpp"

namespace ag::formats {

namespace {

using Kind = DisfluencyElement::Kind;

struct RawToken {
  std::string text;
  std::size_t line;
  std::size_t column;
};

// Turn header "B.22:"; returns speaker and index when the line starts one.
bool match_header(std::string_view line, Channel* speaker, int* index,
                  std::size_t* header_len) {
  if (line.size() < 4) return false;
  if (line[0] != 'A' && line[0] != 'B') return false;
  if (line[1] != '.') return false;
  std::size_t i = 2;
  int value = 0;
  bool any = false;
  while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
    value = value * 10 + (line[i] - '0');
    any = true;
    ++i;
  }
  if (!any || i >= line.size() || line[i] != ':') return false;
  *speaker = channel_from_char(line[0]);
  *index = value;
  *header_len = i + 1;
  return true;
}

std::vector<RawToken> tokenize(std::string_view text, std::size_t line,
                               std::size_t col_offset) {
  std::vector<RawToken> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) {
      tokens.push_back({std::string(text.substr(start, i - start)), line,
                        col_offset + start + 1});
    }
  }
  return tokens;
}

struct Parser {
  const std::vector<RawToken>& tokens;
  std::size_t pos = 0;

  bool done() const { return pos >= tokens.size(); }
  const RawToken& peek() const { return tokens[pos]; }
  RawToken take() { return tokens[pos++]; }

  // Parses elements until one of `stoppers` (or end of turn); the stopper
  // is left unconsumed.
  std::vector<DisfluencyElement> elements(std::string_view stoppers) {
    std::vector<DisfluencyElement> out;
    while (!done()) {
      const RawToken& t = peek();
      if (t.text.size() == 1 && stoppers.find(t.text[0]) != std::string_view::npos) {
        break;
      }
      out.push_back(element());
    }
    return out;
  }

  DisfluencyElement element() {
    RawToken t = take();
    if (t.text == "[") {
      DisfluencyElement restart;
      restart.kind = Kind::Restart;
      restart.children = elements("+]");
      if (done() || peek().text != "+") {
        throw ParseError("restart '[' without interruption point '+'", t.line,
                         t.column);
      }
      take();  // '+'
      restart.ip_index = restart.children.size();
      auto repair = elements("+]");
      if (done()) {
        throw ParseError("unclosed restart '['", t.line, t.column);
      }
      if (peek().text == "+") {
        RawToken extra = take();
        throw ParseError("second interruption point in one restart", extra.line,
                         extra.column);
      }
      take();  // ']'
      for (auto& e : repair) restart.children.push_back(std::move(e));
      return restart;
    }
    if (t.text == "]") {
      throw ParseError("unbalanced ']'", t.line, t.column);
    }
    if (t.text == "+") {
      throw ParseError("interruption point outside a restart", t.line, t.column);
    }
    if (t.text == "}") {
      throw ParseError("unbalanced '}'", t.line, t.column);
    }
    if (t.text[0] == '{') {
      std::string code = t.text.substr(1);
      if (code.empty()) {
        throw ParseError("brace code missing after '{'", t.line, t.column);
      }
      DisfluencyElement elem;
      elem.kind = code == "F"   ? Kind::FillerF
                  : code == "C" ? Kind::CoordC
                                : Kind::OtherBrace;
      elem.text = code;
      elem.children = elements("]}+");
      if (done() || peek().text != "}") {
        throw ParseError("unclosed '{" + code + "'", t.line, t.column);
      }
      take();  // '}'
      return elem;
    }
    if (t.text == "/") {
      DisfluencyElement elem;
      elem.kind = Kind::SentBoundary;
      elem.text = "/";
      return elem;
    }
    if (t.text[0] == '<') {
      std::size_t close = t.text.find('>');
      if (close == std::string::npos) {
        throw ParseError("unclosed '<'", t.line, t.column);
      }
      DisfluencyElement elem;
      elem.kind = Kind::NonSpeech;
      elem.text = t.text.substr(1, close - 1);
      return elem;
    }
    DisfluencyElement elem;
    elem.kind = Kind::Word;
    elem.text = t.text;
    return elem;
  }
};

}  // namespace

std::vector<DisfluencyTurn> parse_disfluency(std::string_view text) {
  // Gather turn bodies: a header line starts a turn, other lines continue it.
  struct RawTurn {
    Channel speaker;
    int index;
    std::size_t line;
    std::vector<RawToken> tokens;
  };
  std::vector<RawTurn> raw_turns;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    Channel speaker;
    int index;
    std::size_t header_len;
    if (match_header(line, &speaker, &index, &header_len)) {
      if (!raw_turns.empty() && index <= raw_turns.back().index) {
        throw ParseError("turn index " + std::to_string(index) +
                             " does not increase (previous " +
                             std::to_string(raw_turns.back().index) + ")",
                         line_no);
      }
      raw_turns.push_back({speaker, index, line_no, {}});
      auto toks = tokenize(line.substr(header_len), line_no, header_len);
      raw_turns.back().tokens.insert(raw_turns.back().tokens.end(), toks.begin(),
                                     toks.end());
      continue;
    }
    auto toks = tokenize(line, line_no, 0);
    if (toks.empty()) continue;
    if (raw_turns.empty()) {
      throw ParseError("content before any turn header", line_no);
    }
    raw_turns.back().tokens.insert(raw_turns.back().tokens.end(), toks.begin(),
                                   toks.end());
  }

  std::vector<DisfluencyTurn> turns;
  for (const RawTurn& raw : raw_turns) {
    // Expand non-speech tokens with attached punctuation ("<laughter>.")
    // into two tokens before the structural pass.
    std::vector<RawToken> expanded;
    for (const RawToken& t : raw.tokens) {
      if (t.text.size() > 1 && t.text[0] == '<') {
        std::size_t close = t.text.find('>');
        if (close != std::string::npos && close + 1 < t.text.size()) {
          expanded.push_back({t.text.substr(0, close + 1), t.line, t.column});
          expanded.push_back({t.text.substr(close + 1), t.line, t.column + close + 1});
          continue;
        }
      }
      expanded.push_back(t);
    }
    Parser parser{expanded};
    DisfluencyTurn turn;
    turn.speaker = raw.speaker;
    turn.turn_index = raw.index;
    turn.elements = parser.elements("");
    if (!parser.done()) {
      const RawToken& t = parser.peek();
      throw ParseError("unbalanced '" + t.text + "'", t.line, t.column);
    }
    turns.push_back(std::move(turn));
  }
  return turns;
}

namespace {

void write_element(std::ostringstream& out, const DisfluencyElement& e,
                   bool* first) {
  auto space = [&]() {
    if (!*first) out << ' ';
    *first = false;
  };
  switch (e.kind) {
    case Kind::Word:
      space();
      out << e.text;
      break;
    case Kind::SentBoundary:
      space();
      out << '/';
      break;
    case Kind::NonSpeech:
      space();
      out << '<' << e.text << '>';
      break;
    case Kind::FillerF:
    case Kind::CoordC:
    case Kind::OtherBrace:
      space();
      out << '{' << e.text;
      for (const auto& c : e.children) write_element(out, c, first);
      space();
      out << '}';
      break;
    case Kind::Restart: {
      space();
      out << '[';
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i == e.ip_index) {
          space();
          out << '+';
        }
        write_element(out, e.children[i], first);
      }
      if (e.ip_index == e.children.size()) {
        space();
        out << '+';
      }
      space();
      out << ']';
      break;
    }
  }
}

}  // namespace

std::string write_disfluency(const std::vector<DisfluencyTurn>& turns) {
  std::ostringstream out;
  for (const DisfluencyTurn& turn : turns) {
    out << to_char(turn.speaker) << '.' << turn.turn_index << ':';
    bool first = false;
    for (const auto& e : turn.elements) write_element(out, e, &first);
    out << '\n';
  }
  return out.str();
}

namespace {

void collect_words(const DisfluencyElement& e, std::vector<std::string>* out) {
  switch (e.kind) {
    case Kind::Word:
      out->push_back(e.text);
      break;
    case Kind::Restart:
    case Kind::FillerF:
    case Kind::CoordC:
    case Kind::OtherBrace:
      for (const auto& c : e.children) collect_words(c, out);
      break;
    case Kind::NonSpeech:
    case Kind::SentBoundary:
      break;  // markup
  }
}

}  // namespace

std::vector<std::string> surface_words(const std::vector<DisfluencyTurn>& turns) {
  std::vector<std::string> words;
  for (const DisfluencyTurn& turn : turns) {
    for (const auto& e : turn.elements) collect_words(e, &words);
  }
  return words;
}

}  // namespace ag::formats
