#include <cctype>
#include <regex>
#include <sstream>

#include "ag/error.hpp"
#include "ag/formats.hpp"

namespace ag::formats {

namespace {

bool is_delimiter_line(std::string_view line) {
  std::size_t count = 0;
  for (char c : line) {
    if (c == '=') {
      ++count;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return count >= 4;
}

const std::regex kSpeakerCode("Speaker[AB][0-9]+");

struct RawToken {
  std::string text;
  std::size_t line;
};

}  // namespace

std::vector<PosTurn> parse_pos(std::string_view text) {
  // Split into segments between ==== delimiter lines; a segment whose first
  // real token is a Speaker.../SYM code opens a new turn, every other
  // segment extends the current one.
  std::vector<std::vector<RawToken>> segments(1);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    if (is_delimiter_line(line) && line.find('=') != std::string_view::npos) {
      segments.emplace_back();
      continue;
    }
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) {
        segments.back().push_back({std::string(line.substr(start, i - start)), line_no});
      }
    }
  }

  std::vector<PosTurn> turns;
  for (const auto& segment : segments) {
    if (segment.empty()) continue;

    // Header segments look like "[ SpeakerB22/SYM ] ./.".
    std::string first_word;
    for (const auto& raw : segment) {
      if (raw.text == "[" || raw.text == "]") continue;
      first_word = raw.text.substr(0, raw.text.rfind('/'));
      break;
    }
    if (std::regex_match(first_word, kSpeakerCode)) {
      turns.push_back(PosTurn{first_word, {}});
      continue;
    }
    if (turns.empty()) {
      throw ParseError("token block before any speaker header", segment.front().line);
    }

    bool in_chunk = false;
    for (const auto& raw : segment) {
      if (raw.text == "[") {
        if (in_chunk) {
          throw ParseError("nested chunk bracket", raw.line);
        }
        in_chunk = true;
        continue;
      }
      if (raw.text == "]") {
        if (!in_chunk) {
          throw ParseError("unbalanced chunk bracket ']'", raw.line);
        }
        in_chunk = false;
        continue;
      }
      std::size_t slash = raw.text.rfind('/');
      if (slash == std::string::npos) {
        throw ParseError("token '" + raw.text + "' has no /TAG suffix", raw.line);
      }
      PosToken tok;
      tok.word = raw.text.substr(0, slash);
      tok.tag = raw.text.substr(slash + 1);
      if (tok.tag.empty()) {
        throw ParseError("token '" + raw.text + "' has an empty tag", raw.line);
      }
      tok.chunk_member = in_chunk;
      turns.back().tokens.push_back(std::move(tok));
    }
    if (in_chunk) {
      throw ParseError("unbalanced chunk bracket '['", segment.back().line);
    }
  }
  return turns;
}

std::string write_pos(const std::vector<PosTurn>& turns) {
  std::ostringstream out;
  for (const PosTurn& turn : turns) {
    out << "====================\n[ " << turn.speaker_code
        << "/SYM ]\n./.\n====================\n\n";
    bool in_chunk = false;
    bool first = true;
    for (const PosToken& tok : turn.tokens) {
      if (tok.chunk_member && !in_chunk) {
        if (!first) out << ' ';
        out << '[';
        in_chunk = true;
        first = false;
      } else if (!tok.chunk_member && in_chunk) {
        out << " ]";
        in_chunk = false;
      }
      if (!first) out << ' ';
      out << tok.source();
      first = false;
    }
    if (in_chunk) out << " ]";
    out << "\n\n";
  }
  return out.str();
}

std::vector<std::string> surface_words(const std::vector<PosTurn>& turns) {
  std::vector<std::string> words;
  for (const PosTurn& turn : turns) {
    for (const PosToken& tok : turn.tokens) words.push_back(tok.word);
  }
  return words;
}

}  // namespace ag::formats
